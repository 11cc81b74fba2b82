use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn nhv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nhv")).args(args).env_remove("NHV_DEGREE_BOUND").output().expect("nhv runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = nhv(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

#[test]
fn report_schema() {
    let (code, v) = json(&["relations", "--n", "2", "--degree", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "relations");
    assert_eq!(v["status"], "pass");
    assert_eq!(v["params"]["n"], 2);
    assert_eq!(v["params"]["degree"], 6);
    assert!(v["timing_ms"].is_u64());
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        for key in ["name", "lhs", "rhs", "detail"] {
            assert!(c[key].is_string(), "{key} in {c}");
        }
        assert_eq!(c["equal"], true);
    }
}

#[test]
fn apply_and_mul() {
    let (code, v) = json(&["apply", "--n", "2", "--op", "h", "--expr", "w1"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "info");
    assert_eq!(v["checks"][0]["lhs"], "2*x2*w2");
    let (_, v) = json(&["apply", "--n", "2", "--op", "d", "--expr", "T1", "--context", "algebra"]);
    assert_eq!(v["checks"][0]["lhs"], "1 - 2*x1*T1");
    let (_, v) = json(&["mul", "--n", "2", "--lhs", "T1", "--rhs", "x1"]);
    assert_eq!(v["checks"][0]["lhs"], "1 + x2*T1");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["relations", "--n", "9"][..],
        &["apply", "--n", "2", "--op", "d", "--expr", "x3"],
        &["apply", "--n", "2", "--op", "d", "--expr", "x1 +"],
        &["k0", "--p", "4"],
        &["pcomplex", "blocks", "--p", "3", "--input", "/nonexistent/complex.json"],
        &["no-such-command"],
    ] {
        let out = nhv(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

const NOT_NILPOTENT: &str = r#"{"pieces":[
    {"q":0,"lambda":0,"parity":0,"dim":1},{"q":2,"lambda":0,"parity":0,"dim":1},
    {"q":4,"lambda":0,"parity":0,"dim":1},{"q":6,"lambda":0,"parity":0,"dim":1}],
  "maps":[
    {"from":{"q":0,"lambda":0,"parity":0},"to":{"q":2,"lambda":0,"parity":0},"matrix":[[1]]},
    {"from":{"q":2,"lambda":0,"parity":0},"to":{"q":4,"lambda":0,"parity":0},"matrix":[[1]]},
    {"from":{"q":4,"lambda":0,"parity":0},"to":{"q":6,"lambda":0,"parity":0},"matrix":[[1]]}]}"#;

#[test]
fn pcomplex_blocks_and_failure_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    fs::write(&path, NOT_NILPOTENT).unwrap();
    let p = path.to_str().unwrap();
    let (code, v) = json(&["pcomplex", "blocks", "--p", "5", "--input", p]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"][0]["lhs"], "size 4 at q^0 l^0 parity 0");
    let (code, v) = json(&["pcomplex", "blocks", "--p", "3", "--input", p]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "fail");
}

#[test]
fn out_file_and_text_format() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    let out = nhv(&["--out", path.to_str().unwrap(), "epsilon", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("epsilon "), "{text}");
    assert!(text.contains("[ok]"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn degree_bound_from_env() {
    let out = Command::new(env!("CARGO_BIN_EXE_nhv"))
        .args(["--format", "json", "relations", "--n", "1"])
        .env("NHV_DEGREE_BOUND", "4")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["params"]["degree"], 4);
    let (_, v) = json(&["relations", "--n", "1"]);
    assert_eq!(v["params"]["degree"], 12);
}

#[test]
fn k0_and_alpha() {
    let (code, v) = json(&["k0", "--p", "5"]);
    assert_eq!((code, v["status"].as_str()), (0, Some("pass")));
    let (code, v) = json(&["alpha", "--n", "5"]);
    assert_eq!((code, v["status"].as_str()), (0, Some("pass")));
    let (code, _) = json(&["suite", "--criterion", "7"]);
    assert_eq!(code, 0);
}
