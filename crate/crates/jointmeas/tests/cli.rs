//! Black-box tests of the command-line interface.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use jointmeas::report::parse_document;

const BIN: &str = env!("CARGO_BIN_EXE_jointmeas");

const PAULI: &str = r#"{"m1":[1,0,0],"m2":[0,1,0],"m3":[0,0,1]}"#;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(BIN)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().expect("wait")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn jm_check_pauli() {
    let out = run(&["jm-check"], PAULI);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = parse_document(&stdout_str(&out)).unwrap();
    let jm = doc.jm.unwrap();
    assert!(!jm.jointly_measurable);
    assert!((jm.margin - (4.0 - 4.0 * 3f64.sqrt())).abs() < 1e-12);
}

#[test]
fn bound_pauli_full_precision() {
    let out = run(&["bound"], PAULI);
    assert!(out.status.success());
    let text = stdout_str(&out);
    let doc = parse_document(&text).unwrap();
    let bound = doc.bound.unwrap();
    assert!((bound.bound - 2.0 * (3f64.sqrt() - 1.0)).abs() < 1e-12);
    // floats are emitted in full-precision scientific notation
    assert!(text.contains("e0") || text.contains("e-"));
}

#[test]
fn approx_pauli_with_verification() {
    let out = run(&["approx", "--verify", "--seed", "3", "--restarts", "8"], PAULI);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = parse_document(&stdout_str(&out)).unwrap();
    let approx = doc.approximation.unwrap();
    assert!(approx.attains_bound);
    let cert = doc.certificate.unwrap();
    assert!(cert.pass, "notes: {:?}", cert.notes);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("PASS"));
}

#[test]
fn approx_generic_routes_to_search_and_is_deterministic() {
    let input = r#"{"m1":[1,0,0],"m2":[0,1,0],"m3":[0.3,0.3,0.5]}"#;
    let args = ["approx", "--seed", "11", "--restarts", "8"];
    let a = run(&args, input);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    let doc = parse_document(&stdout_str(&a)).unwrap();
    assert_eq!(doc.numeric_only, Some(true));
    assert!(doc.oracle.is_some());
    let b = run(&args, input);
    assert_eq!(a.stdout, b.stdout, "same seed must reproduce byte-identical output");
}

#[test]
fn distance_with_probe_state() {
    let input = r#"{"m1":[1,0,0],"m2":[0,1,0],"m3":[0,0,1],
                    "n1":[0.5773502691896258,0,0],"n2":[0,0.5773502691896258,0],
                    "n3":[0,0,0.5773502691896258],"r":[1,0,0]}"#;
    let out = run(&["distance"], input);
    assert!(out.status.success());
    let doc = parse_document(&stdout_str(&out)).unwrap();
    let d = doc.distance.unwrap();
    assert!((d.total - 2.0 * (3f64.sqrt() - 1.0)).abs() < 1e-12);
    let at = d.at_state.unwrap();
    assert!((at.total - 2.0 * (1.0 - 1.0 / 3f64.sqrt())).abs() < 1e-12);
}

#[test]
fn ft_point_from_explicit_points() {
    let input = r#"{"points":[[1,1,1],[1,-1,-1],[-1,1,-1],[-1,-1,1]]}"#;
    let out = run(&["ft-point"], input);
    assert!(out.status.success());
    let doc = parse_document(&stdout_str(&out)).unwrap();
    let ft = doc.ft.unwrap();
    assert!(ft.point.norm() < 1e-9);
    assert!((ft.total_distance - 4.0 * 3f64.sqrt()).abs() < 1e-9);
}

#[test]
fn file_input_and_output() {
    let dir = tempfile::tempdir().unwrap();
    let input_path = dir.path().join("in.json");
    let output_path = dir.path().join("out.json");
    std::fs::write(&input_path, PAULI).unwrap();
    let out = run(
        &[
            "jm-check",
            "--input",
            input_path.to_str().unwrap(),
            "--output",
            output_path.to_str().unwrap(),
        ],
        "",
    );
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&output_path).unwrap();
    assert!(parse_document(&text).unwrap().jm.is_some());
}

#[test]
fn csv_output() {
    let out = run(&["jm-check", "--csv"], PAULI);
    assert!(out.status.success());
    let text = stdout_str(&out);
    assert!(text.starts_with("key,value\n"));
    assert!(text.contains("command,jm-check\n"));
    assert!(text.contains("jm.jointly_measurable,false\n"));
}

#[test]
fn exit_code_malformed_input() {
    let out = run(&["jm-check"], "{not json");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_code_missing_field() {
    let out = run(&["bound"], r#"{"m1":[1,0,0],"m2":[0,1,0]}"#);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_code_norm_exceeded() {
    let out = run(&["jm-check"], r#"{"m1":[1.5,0,0],"m2":[0,1,0],"m3":[0,0,1]}"#);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn exit_code_ill_conditioned() {
    let input = r#"{"m1":[0.9,0,0],"m2":[0.8999999999999,0,0],"m3":[0.3,0.9,0]}"#;
    let out = run(&["approx"], input);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn result_round_trips_through_json() {
    let out = run(&["approx", "--restarts", "8"], PAULI);
    let text = stdout_str(&out);
    let doc = parse_document(&text).unwrap();
    let re = jointmeas::report::serialize_document(&doc).unwrap();
    assert_eq!(text, re, "serialization must be a fixed point");
}
