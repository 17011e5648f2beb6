use std::path::PathBuf;
use std::process::Command;

use nccalc::cli::run;
use serde_json::Value;
use sha2::{Digest, Sha256};

const DUAL: &str = r#"{"name": "dual", "basis": ["1", "e"], "unit": "1",
  "table": [[0, 0, [[0, "1"]]], [0, 1, [[1, "1"]]], [1, 0, [[1, "1"]]]]}"#;

const BROKEN: &str = r#"{"name": "broken", "basis": ["1", "a", "b"], "unit": "1",
  "table": [[0, 0, [[0, "1"]]], [0, 1, [[1, "1"]]], [0, 2, [[2, "1"]]], [1, 0, [[1, "1"]]], [2, 0, [[2, "1"]]],
            [1, 1, [[2, "1"]]], [1, 2, [[1, "1"]]], [2, 1, [[0, "1"]]]]}"#;

const COM: &str = r#"{"name": "com", "arities": [{"arity": 2, "dim": 1,
  "action": [{"perm": [2, 1], "matrix": [["1"]]}]}]}"#;

fn write(name: &str, text: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn nccalc(args: &[&str]) -> (i32, String) {
    run(std::iter::once("nccalc").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.push("--json");
    let (code, out) = nccalc(&full);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}")))
}

fn witness(report: &Value, name_prefix: &str) -> String {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"].as_str().unwrap().starts_with(name_prefix))
        .unwrap_or_else(|| panic!("no check {name_prefix}"))["witness"]
        .as_str()
        .unwrap()
        .to_string()
}

#[test]
fn hochschild_table_from_a_file() {
    let path = write("dual.json", DUAL);
    let (code, r) = json(&["hh", &path, "--max-degree", "3"]);
    assert_eq!(code, 0);
    assert_eq!(witness(&r, "HH_n"), "[2, 1, 1, 1]");
    assert_eq!(witness(&r, "HH^n"), "[2, 1, 1, 1]");
    let expected = hex::encode(Sha256::digest(DUAL.as_bytes()));
    assert_eq!(r["inputs"], serde_json::json!([expected]));
}

#[test]
fn report_schema_and_ordering() {
    let (code, r) = json(&["verify", "cartan", "dual_numbers", "--samples", "10", "--seed", "4"]);
    assert_eq!(code, 0);
    let keys: Vec<&String> = r.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["checks", "command", "elapsed_ms", "inputs", "params", "seed"]);
    assert_eq!(r["seed"], 4);
    assert_eq!(r["elapsed_ms"], 0);
    assert_eq!(r["command"], "verify cartan dual_numbers --samples 10 --seed 4 --json");
    let names: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    for c in r["checks"].as_array().unwrap() {
        assert!(["pass", "fail", "stable", "unstable", "info"].contains(&c["status"].as_str().unwrap()));
    }
}

#[test]
fn zeta_reports_the_exp_form_mismatch_without_failing() {
    let (code, r) = json(&["zeta", "--order", "8"]);
    assert_eq!(code, 0);
    assert!(witness(&r, "u^2 coefficient").starts_with("-1/24 "));
    assert!(witness(&r, "exp form").starts_with("mismatch"));
}

#[test]
fn broken_algebra_is_rejected_with_a_triple() {
    let path = write("broken.json", BROKEN);
    let (code, out) = nccalc(&["algebra", "validate", &path]);
    assert_eq!(code, 2);
    assert!(out.contains("FAIL     associativity: (a a) a"), "{out}");
}

#[test]
fn usage_and_input_errors_exit_with_two() {
    assert_eq!(nccalc(&["frobnicate"]).0, 2);
    assert_eq!(nccalc(&["hh", "dual_numbers"]).0, 2);
    assert_eq!(nccalc(&["hh", "no_such_algebra", "--max-degree", "2"]).0, 2);
    assert_eq!(nccalc(&["hc", "dual_numbers", "--variant", "sideways", "--max-degree", "2"]).0, 2);
    assert_eq!(nccalc(&["goodwillie", "dual_numbers", "--ideal", "x", "--trunc", "2"]).0, 2);
    assert_eq!(nccalc(&["dk", "--n", "7", "--max-degree", "2"]).0, 2);
    assert_eq!(nccalc(&["--help"]).0, 0);
}

#[test]
fn operad_commands_accept_files_and_presets() {
    let path = write("com.json", COM);
    let (code, from_file) = json(&["operad", "free", &path, "--arity", "5"]);
    assert_eq!(code, 0);
    assert_eq!(witness(&from_file, "dim FreeOp"), "[1, 1, 3, 15, 105]");
    let (_, preset) = json(&["operad", "free", "com", "--arity", "5"]);
    assert_eq!(witness(&preset, "dim FreeOp"), "[1, 1, 3, 15, 105]");
    let (code, bar) = json(&["operad", "bar-check", &path, "--max-vertices", "4"]);
    assert_eq!(code, 0);
    assert!(bar["checks"].as_array().unwrap().len() >= 5);
    let (code, k) = json(&["operad", "koszul", "--preset", "lie"]);
    assert_eq!(code, 0);
    assert_eq!(witness(&k, "dims of the dual"), "[1, 1, 1]");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_nccalc");
    let ok = Command::new(bin).args(["hc", "k", "--variant", "cyclic", "--max-degree", "3"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("[1, 0, 1, 0]"));
    let bad = Command::new(bin).args(["hh"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let path = write("dual_det.json", DUAL);
    let runs: [&[&str]; 4] = [
        &["verify", "identities", &path, "--samples", "5", "--seed", "9"],
        &["homotopy-t", "dual_numbers", "--window", "2", "--pairs", "4", "--seed", "2"],
        &["moyal", "--pairs", "1", "--degree", "2", "--samples", "5", "--seed", "3"],
        &["operad", "bar-check", "lie", "--max-vertices", "3", "--seed", "1"],
    ];
    for args in runs {
        let mut full = args.to_vec();
        full.push("--json");
        assert_eq!(nccalc(&full), nccalc(&full), "{args:?}");
    }
}
