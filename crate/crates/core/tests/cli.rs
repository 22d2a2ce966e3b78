mod common;

use std::process::{Command, Output};

use serde_json::Value;

use projquiver::construct::QuiverRepresentation;
use projquiver::polysys::parse_system;

use common::fixture_path;

fn projquiver(args: &[&str], input: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_projquiver"))
        .args(args)
        .arg("--input")
        .arg(fixture_path(input))
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_conic_passes() {
    let out = projquiver(&["verify", "--primes", "2,3,5"], "conic.poly");
    assert_eq!(out.status.code(), Some(0));
    let reports = json(&out);
    let reports = reports.as_array().unwrap();
    assert_eq!(reports.len(), 3);
    for (r, count) in reports.iter().zip([3, 4, 6]) {
        assert_eq!(r["bijection_ok"], true);
        assert_eq!(r["variety_count"], count);
        assert_eq!(r["grassmannian_count"], count);
        assert_eq!(r["endo_dim"], 1);
    }
}

#[test]
fn verify_text_format() {
    let out = projquiver(&["verify", "--primes", "3", "--format", "text"], "conic.poly");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("q=3 X=4 Gr=4 bijection=ok endo=1"), "{text}");
    assert!(text.lines().last().unwrap().starts_with("PASS"));
}

#[test]
fn build_emits_representation() {
    let out = projquiver(&["build"], "conic.poly");
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["dims"], serde_json::json!({"1": 1, "2": 6, "3": 3}));
    assert_eq!(doc["n"], 2);
    assert_eq!(doc["d"], 2);

    let text = String::from_utf8(out.stdout).unwrap();
    let (rep, e) = QuiverRepresentation::from_json(&text).unwrap();
    let expected = projquiver::build_representation(&parse_system("x0*x2 - x1^2").unwrap()).unwrap();
    assert_eq!((rep, e), expected);
}

#[test]
fn build_with_explicit_degree() {
    let out = projquiver(&["build", "--degree", "2"], "p2.poly");
    let doc = json(&out);
    assert_eq!(doc["vertices"], serde_json::json!([2, 3]));
    assert_eq!(doc["dims"], serde_json::json!({"2": 6, "3": 3}));
    assert_eq!(doc["dimension_vector"], serde_json::json!({"2": 1, "3": 1}));
}

#[test]
fn points_of_projective_line() {
    let out = projquiver(&["points", "--primes", "7"], "p1.poly");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)[0]["count"], 8);
}

#[test]
fn grass_and_endo() {
    let out = projquiver(&["grass", "--primes", "5"], "cubic.poly");
    assert_eq!(json(&out)[0]["count"], 8);

    let out = projquiver(&["endo"], "conic.poly");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out), serde_json::json!([{"field": "Q", "endo_dim": 1}]));

    let out = projquiver(&["endo", "--primes", "3,5", "--format", "text"], "conic.poly");
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "field=F_3 endo=1\nfield=F_5 endo=1\n");
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = Command::new(env!("CARGO_BIN_EXE_projquiver"))
        .args(["verify", "--primes", "2", "--input"])
        .arg(fixture_path("two_points.poly"))
        .arg("--output")
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc[0]["variety_count"], 2);
}

#[test]
fn input_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.poly");
    std::fs::write(&bad, "x0*x1 + 2x1^2\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_projquiver"))
        .args(["build", "--input"])
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 1, column 10"), "{err}");

    let out = projquiver(&["verify", "--primes", "4"], "conic.poly");
    assert_eq!(out.status.code(), Some(1));
    let out = projquiver(&["verify", "--primes", "101"], "conic.poly");
    assert_eq!(out.status.code(), Some(1));
    let out = projquiver(&["points"], "conic.poly");
    assert_eq!(out.status.code(), Some(1));
    let out = projquiver(&["verify", "--primes", "2"], "missing.poly");
    assert_eq!(out.status.code(), Some(1));
    let out = projquiver(&["frobnicate"], "conic.poly");
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn oversized_enumeration_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p4.poly");
    std::fs::write(&path, "ambient n=4\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_projquiver"))
        .args(["grass", "--primes", "97", "--degree", "3", "--input"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("lines"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [&["build"][..], &["grass", "--primes", "3,5"], &["verify", "--primes", "3", "--format", "text"]] {
        let a = projquiver(args, "mixed.poly");
        let b = projquiver(args, "mixed.poly");
        assert_eq!(a.stdout, b.stdout);
    }
}
