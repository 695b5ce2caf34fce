use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn defq(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_defq"))
        .args(args)
        .current_dir(dir)
        .env_remove("DEFQ_OUT_DIR")
        .output()
        .unwrap()
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn invert_geometric_series() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "inv.json",
        r#"{"base": {"kind": "scalar"}, "precision": 4, "inputs": {"a": ["1", "-1"]}}"#,
    );
    let out = defq(dir.path(), &["invert", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(0));
    let report = read_json(&dir.path().join("invert.json"));
    assert_eq!(report["passed"], true);
    assert_eq!(report["entries"][0]["inverse"]["coeffs"], serde_json::json!(["1", "1", "1", "1"]));
}

#[test]
fn singular_input_fails_the_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "inv.json",
        r#"{"base": {"kind": "scalar"}, "precision": 3, "inputs": {"a": ["0", "1"]}}"#,
    );
    let out = defq(dir.path(), &["invert", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn characteristic_two_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "c2.json",
        r#"{"field": "F_2", "base": {"kind": "matrix", "n": 2}, "precision": 3}"#,
    );
    let out = defq(dir.path(), &["lift-idempotent", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("2a-1"));
}

#[test]
fn broken_cochain_reports_the_failing_triple() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "ap.json",
        r#"{"base": {"kind": "polynomial", "dof": 1},
            "star": {"kind": "user", "cochains": [{"builtin": "x_projection"}]},
            "precision": 2,
            "inputs": {"triples": [[["x"], ["p"], ["x"]]]}}"#,
    );
    let out = defq(dir.path(), &["assoc-check", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("a = x1, b = p1, c = x1"), "{stdout}");
    let report = read_json(&dir.path().join("assoc-check.json"));
    assert_eq!(report["failures"][0]["order"], 1);
}

#[test]
fn malformed_config_exits_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    for body in [r#"{"base":"#, r#"{"base": {"kind": "matrix", "n": 2}, "bogus": 1}"#, r#"{"base": {"kind": "scalar"}, "precision": 0}"#] {
        let cfg = write_config(dir.path(), "bad.json", body);
        let out = defq(dir.path(), &["invert", "--config", &cfg]);
        assert_eq!(out.status.code(), Some(2), "{body}");
        assert!(!String::from_utf8_lossy(&out.stderr).contains("panicked"));
    }
    let out = defq(dir.path(), &["invert", "--config", "missing.json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = defq(dir.path(), &["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let reports = dir.path().join("reports");
    let cfg = write_config(
        dir.path(),
        "mt.json",
        r#"{"base": {"kind": "polynomial", "dof": 1}, "precision": 3, "inputs": {"max_degree": 1}}"#,
    );
    let out = Command::new(env!("CARGO_BIN_EXE_defq"))
        .args(["moyal-table", "--config", &cfg])
        .current_dir(dir.path())
        .env("DEFQ_OUT_DIR", &reports)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("x1 * p1 = x1 p1 + (1/2) h"), "{stdout}");
    assert!(stdout.contains("p1 * x1 = x1 p1 + (-1/2) h"), "{stdout}");
    let report = read_json(&reports.join("moyal-table.json"));
    assert_eq!(report["rows"].as_array().unwrap().len(), 9);
}
