//! Joint-measurability decisions and the incompatibility lower bound.
//!
//! A triple of unbiased qubit POVMs with Bloch vectors `(n1, n2, n3)` is
//! jointly measurable iff the four derived vertices satisfy
//! `Σ‖q_F − q_k‖ ≤ 4`, with `q_F` their Fermat-Torricelli point. For a
//! target triple `m`, the total worst-case approximation error of any
//! jointly measurable triple is bounded below by `½[Σ‖p_k − p_F‖ − 4]`.

use crate::bloch::{BlochVector, MeasurementTriple};
use crate::error::Result;
use crate::ft::{fermat_torricelli, FtResult, QuadVertices};
use crate::tol;
use serde::{Deserialize, Serialize};

/// Outcome of the triple joint-measurability test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JmVerdict {
    pub jointly_measurable: bool,
    /// `4 − Σ‖q_F − q_k‖`; non-negative (within tolerance) iff jointly measurable.
    pub margin: f64,
    pub ft: FtResult,
}

/// The incompatibility lower bound on the total approximation error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    /// `½[Σ‖p_k − p_F‖ − 4]`; negative for compatible triples.
    pub raw_bound: f64,
    /// `max(0, raw_bound)`.
    pub bound: f64,
    pub ft: FtResult,
    pub quad: QuadVertices,
}

pub fn is_jointly_measurable_triple(n: &MeasurementTriple) -> Result<JmVerdict> {
    is_jointly_measurable_triple_with_tol(n, tol::JM_TOL)
}

pub fn is_jointly_measurable_triple_with_tol(
    n: &MeasurementTriple,
    jm_tol: f64,
) -> Result<JmVerdict> {
    let quad = QuadVertices::from_triple(n);
    let ft = fermat_torricelli(&quad)?;
    let margin = 4.0 - ft.total_distance;
    Ok(JmVerdict {
        jointly_measurable: margin >= -jm_tol,
        margin,
        ft,
    })
}

/// Pair criterion: jointly measurable iff `‖m1+m2‖ + ‖m1−m2‖ ≤ 2`.
pub fn is_jointly_measurable_pair(m1: &BlochVector, m2: &BlochVector) -> (bool, f64) {
    let margin = 2.0 - ((m1.vec() + m2.vec()).norm() + (m1.vec() - m2.vec()).norm());
    (margin >= -tol::JM_TOL, margin)
}

pub fn incompatibility_bound(m: &MeasurementTriple) -> Result<BoundReport> {
    let quad = QuadVertices::from_triple(m);
    let ft = fermat_torricelli(&quad)?;
    let raw_bound = 0.5 * (ft.total_distance - 4.0);
    Ok(BoundReport {
        raw_bound,
        bound: raw_bound.max(0.0),
        ft,
        quad,
    })
}
