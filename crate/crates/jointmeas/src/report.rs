//! JSON input/output documents and the command runners behind the
//! command-line front end.
//!
//! All floating-point numbers serialize with 17 significant digits so that
//! `parse(serialize(doc)) == doc` holds exactly.

use crate::analytic::{approximate, ApproximationResult, CaseClass};
use crate::bloch::{
    pair_worst_case_sq, stat_distance_sq, total_worst_case_sq, BlochVector, MeasurementTriple,
    QubitState,
};
use crate::compat::{
    incompatibility_bound, is_jointly_measurable_triple_with_tol, BoundReport, JmVerdict,
};
use crate::error::{Error, Result};
use crate::ft::{fermat_torricelli, FtResult, QuadVertices};
use crate::oracle::{certify, minimize_total_distance, CertificateReport, OracleConfig, OracleResult};
use crate::tol;
use crate::vec3::Vec3;
use serde::{Deserialize, Serialize};
use std::io::Write;

pub const SCHEMA_VERSION: u32 = 1;

pub fn tool_version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}

/// Parsed input document. Which fields are required depends on the command.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m1: Option<[f64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m2: Option<[f64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m3: Option<[f64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n1: Option<[f64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n2: Option<[f64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n3: Option<[f64; 3]>,
    /// Optional probe state for per-state distance evaluation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<[f64; 3]>,
    /// Four explicit points for the Fermat-Torricelli command.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<[f64; 3]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restarts: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
}

/// Resolved run options (command-line flags override document fields).
#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub seed: u64,
    pub restarts: usize,
    pub tol: f64,
    pub verify: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            seed: 0,
            restarts: OracleConfig::default().restarts,
            tol: tol::JM_TOL,
            verify: false,
        }
    }
}

impl RunOptions {
    /// Document fields fill in anything the flags left unset.
    pub fn resolve(
        input: &InputDocument,
        seed: Option<u64>,
        restarts: Option<usize>,
        tol_flag: Option<f64>,
        verify: bool,
    ) -> Self {
        let defaults = RunOptions::default();
        RunOptions {
            seed: seed.or(input.seed).unwrap_or(defaults.seed),
            restarts: restarts.or(input.restarts).unwrap_or(defaults.restarts),
            tol: tol_flag.or(input.tol).unwrap_or(defaults.tol),
            verify,
        }
    }

    fn oracle_config(&self) -> OracleConfig {
        OracleConfig {
            seed: self.seed,
            restarts: self.restarts,
            ..OracleConfig::default()
        }
    }
}

/// Per-state distance evaluation for a given probe state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateEvaluation {
    pub r: QubitState,
    pub per_pair: [f64; 3],
    pub total: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceReport {
    /// Worst-case squared distance per measurement pair.
    pub per_pair: [f64; 3],
    pub per_pair_states: [QubitState; 3],
    /// Worst case of the summed squared distances over all states.
    pub total: f64,
    pub maximizing_state: QubitState,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub at_state: Option<StateEvaluation>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub schema_version: u32,
    pub tool_version: String,
    pub command: String,
    pub input: InputDocument,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<CaseClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jm: Option<JmVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<BoundReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub approximation: Option<ApproximationResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numeric_only: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distance: Option<DistanceReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ft: Option<FtResult>,
}

impl ResultDocument {
    fn new(command: &str, input: &InputDocument, seed: u64) -> Self {
        ResultDocument {
            schema_version: SCHEMA_VERSION,
            tool_version: tool_version().to_string(),
            command: command.to_string(),
            input: input.clone(),
            seed,
            case: None,
            jm: None,
            bound: None,
            approximation: None,
            numeric_only: None,
            oracle: None,
            certificate: None,
            distance: None,
            ft: None,
        }
    }
}

fn vec_field(name: &'static str, field: &Option<[f64; 3]>) -> Result<Vec3> {
    match field {
        Some(a) => {
            let v = Vec3::from(*a);
            if !v.is_finite() {
                return Err(Error::NonFinite);
            }
            Ok(v)
        }
        None => Err(Error::Schema(name)),
    }
}

fn m_triple(input: &InputDocument) -> Result<MeasurementTriple> {
    MeasurementTriple::from_vecs(
        vec_field("m1 is required", &input.m1)?,
        vec_field("m2 is required", &input.m2)?,
        vec_field("m3 is required", &input.m3)?,
    )
}

fn n_triple(input: &InputDocument) -> Result<MeasurementTriple> {
    MeasurementTriple::from_vecs(
        vec_field("n1 is required", &input.n1)?,
        vec_field("n2 is required", &input.n2)?,
        vec_field("n3 is required", &input.n3)?,
    )
}

/// Joint-measurability check of the n-vectors (falling back to the
/// m-vectors when no n-vectors are present).
pub fn run_jm_check(input: &InputDocument, opts: &RunOptions) -> Result<ResultDocument> {
    let triple = if input.n1.is_some() || input.n2.is_some() || input.n3.is_some() {
        n_triple(input)?
    } else {
        m_triple(input)?
    };
    let verdict = is_jointly_measurable_triple_with_tol(&triple, opts.tol)?;
    let mut doc = ResultDocument::new("jm-check", input, opts.seed);
    doc.jm = Some(verdict);
    Ok(doc)
}

pub fn run_bound(input: &InputDocument, opts: &RunOptions) -> Result<ResultDocument> {
    let m = m_triple(input)?;
    let report = incompatibility_bound(&m)?;
    let mut doc = ResultDocument::new("bound", input, opts.seed);
    doc.bound = Some(report);
    Ok(doc)
}

/// Classification plus analytic approximation; generic targets fall back to
/// the numerical search, and `--verify` adds an independent certificate.
pub fn run_approx(input: &InputDocument, opts: &RunOptions) -> Result<ResultDocument> {
    let m = m_triple(input)?;
    let (case, result) = approximate(&m)?;
    let mut doc = ResultDocument::new("approx", input, opts.seed);
    doc.case = Some(case);
    doc.bound = Some(incompatibility_bound(&m)?);
    match result {
        Some(approx) => {
            if opts.verify {
                let report = certify(&m, &approx, &opts.oracle_config())?;
                doc.certificate = Some(report);
            }
            doc.approximation = Some(approx);
        }
        None => {
            doc.numeric_only = Some(true);
            doc.oracle = Some(minimize_total_distance(&m, &opts.oracle_config())?);
        }
    }
    Ok(doc)
}

pub fn run_distance(input: &InputDocument, opts: &RunOptions) -> Result<ResultDocument> {
    let m = m_triple(input)?;
    let n = n_triple(input)?;
    let pairs = [(m.m1, n.m1), (m.m2, n.m2), (m.m3, n.m3)];
    let mut per_pair = [0.0; 3];
    let mut per_pair_states = [QubitState::maximally_mixed(); 3];
    for (i, (mi, ni)) in pairs.iter().enumerate() {
        let (value, state) = pair_worst_case_sq(mi, ni);
        per_pair[i] = value;
        per_pair_states[i] = state;
    }
    let (total, maximizing_state) = total_worst_case_sq(&m, &n);
    let at_state = match &input.r {
        Some(a) => {
            let r = QubitState::new(BlochVector::new(Vec3::from(*a))?);
            let per: Vec<f64> = pairs
                .iter()
                .map(|(mi, ni)| stat_distance_sq(&r, mi, ni))
                .collect();
            Some(StateEvaluation {
                r,
                per_pair: [per[0], per[1], per[2]],
                total: per.iter().sum(),
            })
        }
        None => None,
    };
    let mut doc = ResultDocument::new("distance", input, opts.seed);
    doc.distance = Some(DistanceReport {
        per_pair,
        per_pair_states,
        total,
        maximizing_state,
        at_state,
    });
    Ok(doc)
}

/// Fermat-Torricelli point of four explicit points, or of the derived
/// vertices of an m-triple.
pub fn run_ft_point(input: &InputDocument, opts: &RunOptions) -> Result<ResultDocument> {
    let quad = match &input.points {
        Some(points) => {
            if points.len() != 4 {
                return Err(Error::Schema("points must contain exactly 4 entries"));
            }
            QuadVertices::new([
                Vec3::from(points[0]),
                Vec3::from(points[1]),
                Vec3::from(points[2]),
                Vec3::from(points[3]),
            ])
        }
        None => QuadVertices::from_triple(&m_triple(input)?),
    };
    let ft = fermat_torricelli(&quad)?;
    let mut doc = ResultDocument::new("ft-point", input, opts.seed);
    doc.ft = Some(ft);
    Ok(doc)
}

/// JSON serializer that writes every float with 17 significant digits.
struct FullPrecision;

impl serde_json::ser::Formatter for FullPrecision {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }
}

pub fn serialize_document(doc: &ResultDocument) -> Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FullPrecision);
    doc.serialize(&mut ser)
        .map_err(|_| Error::Schema("serialization failed"))?;
    out.push(b'\n');
    String::from_utf8(out).map_err(|_| Error::Schema("serialization produced invalid UTF-8"))
}

pub fn parse_document(text: &str) -> Result<ResultDocument> {
    serde_json::from_str(text).map_err(|_| Error::Schema("malformed result document"))
}

pub fn parse_input(text: &str) -> Result<InputDocument> {
    serde_json::from_str(text).map_err(|_| Error::Schema("malformed input document"))
}

fn flatten(prefix: &str, value: &serde_json::Value, rows: &mut Vec<(String, String)>) {
    match value {
        serde_json::Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, v, rows);
            }
        }
        serde_json::Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), v, rows);
            }
        }
        serde_json::Value::Number(n) => {
            let text = match n.as_f64() {
                Some(f) if n.is_f64() => format!("{f:.16e}"),
                _ => n.to_string(),
            };
            rows.push((prefix.to_string(), text));
        }
        serde_json::Value::Bool(b) => rows.push((prefix.to_string(), b.to_string())),
        serde_json::Value::String(s) => rows.push((prefix.to_string(), s.clone())),
        serde_json::Value::Null => rows.push((prefix.to_string(), String::new())),
    }
}

/// Flattens a result document into `key,value` CSV rows.
pub fn document_to_csv(doc: &ResultDocument) -> Result<String> {
    let value =
        serde_json::to_value(doc).map_err(|_| Error::Schema("serialization failed"))?;
    let mut rows = Vec::new();
    flatten("", &value, &mut rows);
    let mut out = String::from("key,value\n");
    for (k, v) in rows {
        let quoted = if v.contains(',') || v.contains('"') {
            format!("\"{}\"", v.replace('"', "\"\""))
        } else {
            v
        };
        out.push_str(&format!("{k},{quoted}\n"));
    }
    Ok(out)
}
