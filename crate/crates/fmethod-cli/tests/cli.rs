//! End-to-end tests of the fmethod binary: exit codes, report schema,
//! and byte stability.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fmethod"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON report")
}

fn strip_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing_ms");
    v
}

#[test]
fn verify_rep_passes() {
    let r = report(&["verify-rep", "--n", "2", "--lambda", "1/3"]);
    assert_eq!(r["command"], "verify-rep");
    assert_eq!(r["status"], "pass");
    assert_eq!(r["params"]["lambda"], "1/3");
    for d in r["details"].as_array().unwrap() {
        assert_eq!(d["defect_terms"], 0);
        assert!(d["name"].is_string() && d["expected"].is_string() && d["got"].is_string());
    }
}

#[test]
fn classify_full_case_example() {
    let dir = std::env::temp_dir().join("fmethod-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let out = run(&[
        "classify", "--n", "1", "--lambda", "1/2", "--max-m", "4", "--max-q", "3",
        "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let sr = &r["singular_report"];
    assert_eq!(sr["classification_case"], "n1_full_case");
    assert_eq!(sr["match"], true);
}

#[test]
fn check_factorization_d5() {
    let r = report(&["check-factorization", "--n", "1", "--a", "5"]);
    assert_eq!(r["status"], "pass");
}

#[test]
fn reports_are_byte_stable() {
    let a = strip_timing(report(&["build-phi0", "--n", "1", "--a", "2", "--seed", "7"]));
    let b = strip_timing(report(&["build-phi0", "--n", "1", "--a", "2", "--seed", "7"]));
    assert_eq!(a, b);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["classify", "--lambda", "x/y"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--n", "0"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn markdown_format_renders() {
    let out = run(&["verify-sl2", "--n", "1", "--format", "markdown"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# verify-sl2"));
    assert!(text.contains("| check | expected | got | defect terms |"));
}
