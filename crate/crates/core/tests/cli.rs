use std::process::{Command, Output};

use pivotgrowth::linalg::read_csv;
use pivotgrowth::models;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pivotgrowth")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn sample_is_reproducible_for_a_seed() {
    let args = ["sample", "--n", "4", "--count", "200", "--seed", "3"];
    let a = json(&args);
    assert_eq!(a, json(&args));
    assert_eq!(a["count"], 200);
    let b = json(&["sample", "--n", "4", "--count", "200", "--seed", "4"]);
    assert_ne!(a["stats"], b["stats"]);
    let p = &a["stats"];
    let total = p["pLess"].as_f64().unwrap() + p["pEqual"].as_f64().unwrap() + p["pGreater"].as_f64().unwrap();
    assert!((total - 1.0).abs() < 1e-12);
}

#[test]
fn sample_writes_pairs_and_histogram_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pairs.csv");
    let hist = dir.path().join("hist.csv");
    stdout(&[
        "sample", "--ensemble", "ginibre", "--n", "3", "--count", "50", "--grid", "8", "--histogram",
        hist.to_str().unwrap(), "--format", "csv", "--out", out.to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("gepp,gecp"));
    assert_eq!(lines.count(), 50);
    let h = read_csv(std::fs::File::open(&hist).unwrap()).unwrap();
    assert_eq!((h.rows(), h.cols()), (8, 8));
    assert!((h.as_slice().iter().sum::<f64>() - 1.0).abs() < 1e-12);
}

#[test]
fn model_csv_round_trips() {
    let text = stdout(&["model", "--name", "q4", "--format", "csv"]);
    assert_eq!(read_csv(text.as_bytes()).unwrap(), models::q4());
    let text = stdout(&["model", "--name", "wilkinsonA", "--n", "6", "--format", "csv"]);
    assert_eq!(read_csv(text.as_bytes()).unwrap(), models::wilkinson_a(6).unwrap());
}

#[test]
fn search_reports_a_nonnegative_difference() {
    let v = json(&["search", "--n", "3", "--starts", "2", "--M", "100", "--schedule", "1e-2:50,1e-3:50", "--seed", "5"]);
    let end = v["endValue"].as_f64().unwrap();
    assert!(end >= 0.0);
    let endpoint = read_csv(v["endpoint"].as_str().unwrap().as_bytes()).unwrap();
    assert!(endpoint.orthogonality_defect() < 1e-12);
}

#[test]
fn table_rows_follow_the_requested_orders() {
    let v = json(&["table4", "--model", "an", "--n", "4,6", "--count", "50"]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["n"], 4);
    assert_eq!(rows[1]["n"], 6);
    assert_eq!(rows[1]["baseGecp"], 2.0);
}

#[test]
fn verify_passes_with_exit_code_zero() {
    let out = run(&["verify", "--n-max", "12"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().count() >= 10);
    assert!(text.lines().all(|l| l.starts_with("PASS ")), "{text}");
}

#[test]
fn bad_input_exits_with_code_two() {
    for args in [
        &["search", "--n", "3", "--schedule", "bogus"][..],
        &["model", "--name", "nope"][..],
        &["sample", "--n", "3", "--count", "0"][..],
        &["neighborhood", "--model", "q4", "--eps", "-1"][..],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}
