use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn jacklab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jacklab"))
        .args(args)
        .env_remove("JACKLAB_CACHE")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = jacklab(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn coeff_single_key() {
    let v = json(&["coeff", "c", "--k", "1", "--n", "2", "--lambda", "2", "--mus", "2,2"]);
    assert_eq!(v["c"], serde_json::json!({"coeffs": ["0/1", "1/1"]}));
    let v = json(&["coeff", "h", "--k", "1", "--n", "2", "--lambda", "2", "--mus", "1,1;2"]);
    assert_eq!(v["mus"], serde_json::json!([[1, 1], [2]]));
}

#[test]
fn coeff_full_table_is_canonical_and_stable() {
    let a = jacklab(&["coeff", "c", "--k", "1", "--n", "3"]);
    let b = jacklab(&["coeff", "c", "--k", "1", "--n", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 27);
    assert_eq!(rows[0]["lambda"], serde_json::json!([3]));
}

#[test]
fn enum_f_example() {
    let v = json(&["enum-f", "--lambda", "2", "--mus", "2,2"]);
    assert_eq!(v["count"], 1);
    assert_eq!(v["tuples"][0]["bipartite"], false);
    let v = json(&["enum-f", "--lambda", "2", "--mus", "2,2", "--bipartite-only"]);
    assert_eq!(v["count"], 0);
}

#[test]
fn count_const_examples() {
    let v = json(&["count-const", "--k", "1", "--profile", "2;2;2"]);
    assert_eq!(v["count"], 1);
    let v = json(&["count-const", "--k", "1", "--profile", "2,2,2", "--orientable"]);
    assert_eq!(v["count"], 0);
    let v = json(&["count-const", "--k", "1", "--profile", "1,1,1"]);
    assert_eq!(v["count"], 1);
}

#[test]
fn marginal_and_theta() {
    let v = json(&["marginal", "c", "--lambda", "2", "--mu", "2", "--lengths", "1"]);
    assert_eq!(v["c"]["coeffs"], serde_json::json!(["0/1", "1/1"]));
    let v = json(&["theta", "--mu", "2", "--rect", "1,2"]);
    assert_eq!(v["value"], serde_json::json!(["1/1", "1/1"]));
    let v = json(&["theta", "--mu", "2", "--poly"]);
    assert!(v.as_array().unwrap().iter().all(|t| t["poly_b"].is_array()));
}

#[test]
fn verify_exit_status() {
    let out = jacklab(&["verify", "positivity", "--kmax", "1", "--nmax", "6"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], true);
    let out = jacklab(&["verify", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_partitions_are_usage_errors() {
    for args in [
        &["coeff", "c", "--k", "1", "--n", "3", "--lambda", "1,2", "--mus", "3;3"][..],
        &["coeff", "c", "--k", "1", "--n", "3", "--lambda", "3", "--mus", "2;3"][..],
        &["enum-f", "--lambda", "2", "--mus", "2,1"][..],
    ] {
        let out = jacklab(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    }
}

#[test]
fn csv_output() {
    let out = jacklab(&["jack", "--n", "2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "lambda,mu,c0,c1");
    assert_eq!(lines[1], "[2],[2],1,1");
    assert_eq!(lines.len(), 5);
}

#[test]
fn cache_directory_and_regeneration() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let first = jacklab(&["jack", "--n", "4", "--cache-dir", d]);
    assert!(first.status.success());
    let file = dir.path().join("jack_n4.jsonl");
    let stored = fs::read_to_string(&file).unwrap();
    assert!(stored.lines().count() > 1);

    let mut broken: Vec<&str> = stored.lines().collect();
    broken[2] = "not json";
    fs::write(&file, broken.join("\n")).unwrap();
    let again = jacklab(&["jack", "--n", "4", "--cache-dir", d]);
    assert!(again.status.success());
    assert_eq!(again.stdout, first.stdout);
    assert!(String::from_utf8_lossy(&again.stderr).contains("regenerating"));
    assert_eq!(fs::read_to_string(&file).unwrap(), stored);

    let other = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_jacklab"))
        .args(["jack", "--n", "3", "--cache-dir", d])
        .env("JACKLAB_CACHE", other.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(other.path().join("jack_n3.jsonl").exists());
    assert!(!dir.path().join("jack_n3.jsonl").exists());
}

#[test]
fn output_file_and_threads() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = jacklab(&["--threads", "2", "coeff", "c", "--k", "1", "--n", "2", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 8);
}
