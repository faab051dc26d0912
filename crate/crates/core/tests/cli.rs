use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_hdgcert");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn certify_determined_exits_zero() {
    let out = run(&["certify", "--n", "5", "--p", "3", "--r", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "Determined");
    assert_eq!(v["witness"]["branch"], "CaseA_i1");
    assert_eq!(v["dim_abelian_variety"], 4);
}

#[test]
fn certify_inconclusive_still_exits_zero() {
    let out = run(&["certify", "--n", "19", "--p", "3", "--r", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "Inconclusive");
    assert_eq!(v["witness"], Value::Null);
    assert_eq!(v["dim_unitary"], 972);
}

#[test]
fn parameter_errors_exit_one() {
    for args in [
        &["certify", "--n", "9", "--p", "3", "--r", "1"][..],
        &["certify", "--n", "7", "--p", "4", "--r", "1"],
        &["certify", "--n", "3", "--p", "5", "--r", "1"],
        &["certify", "--n", "7", "--p", "3", "--r", "0"],
        &["certify", "--n", "-7", "--p", "3", "--r", "1"],
        &["certify", "--n", "7", "--p", "2", "--r", "1"],
        &["certify", "--n", "10", "--p", "3", "--r", "2", "--product"],
        &["witness", "--n", "10", "--p", "5", "--r", "1"],
        &["scan", "--n-min", "10", "--n-max", "4", "--primes", "3"],
        &["scan", "--n-min", "4", "--n-max", "10", "--primes", "3,x"],
        &["remark-check", "--n-max", "8"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn usage_errors_exit_one_and_help_exits_zero() {
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(run(&["certify", "--n", "5"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["scan", "--n-min", "4", "--n-max", "9", "--primes", "3", "--format", "xml"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let version = run(&["--version"]);
    assert_eq!(version.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&version.stdout).contains(env!("CARGO_PKG_VERSION")));
}

#[test]
fn witness_reports_both_routes() {
    let out = run(&["witness", "--n", "31", "--p", "3", "--r", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["q_route"]["branch"], "Qint_eps1");
    assert_eq!(v["q_route"]["i"], 4);
    assert_eq!(v["q_route"]["determinant_check"], 3);
    assert_eq!(v["brute_force"]["i"], 4);

    let out = run(&["witness", "--n", "19", "--p", "3", "--r", "2", "--method", "brute"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["brute_force"], Value::Null);
    assert_eq!(v["q_route"], Value::Null);
}

#[test]
fn product_certificate() {
    let out = run(&["certify", "--n", "11", "--p", "3", "--r", "2", "--product"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["dim_total"], 399);
    assert_eq!(v["levels"].as_array().map(Vec::len), Some(2));
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    let args = ["scan", "--n-min", "4", "--n-max", "60", "--primes", "2,3", "--r-max", "2", "--format", "csv"];
    let stdout = run(&args).stdout;
    let mut with_out = args.to_vec();
    let path_s = path.to_string_lossy().into_owned();
    with_out.extend(["--out", path_s.as_str()]);
    let out = run(&with_out);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), stdout);
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(entries.len(), 1, "temporary file left behind");
}

#[test]
fn unwritable_output_exits_one() {
    let out = run(&["remark-check", "--n-max", "20", "--out", "/nonexistent-dir/x.json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn remark_check_output() {
    let out = run(&["remark-check", "--n-max", "15"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["matching"], serde_json::json!([7, 15]));
}

#[test]
fn cross_validate_summary() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cv.json");
    let path_s = path.to_string_lossy().into_owned();
    let out = run(&["cross-validate", "--n-min", "4", "--n-max", "200", "--primes", "2,3,5", "--r-max", "3", "--out", &path_s]);
    assert_eq!(out.status.code(), Some(0));
    let summary = json(&out);
    assert_eq!(summary["disagreements"], serde_json::json!([]));
    assert_eq!(summary["records"], serde_json::json!([]));
    let full: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(full["records"].as_array().map(Vec::len), summary["points"].as_u64().map(|n| n as usize));
}
