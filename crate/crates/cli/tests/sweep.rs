use std::path::Path;
use std::process::Command;

use clt_transport::dist::poisson;
use clt_transport::transport::{kolmogorov_distance, w1_distance};
use clt_transport_cli::report::{rows_from_json, rows_to_json, CSV_COLUMNS};
use clt_transport_cli::{run_sweep, SweepConfig};

const POISSON: &str = r#"
[family]
kind = "poisson"

[grid]
values = [0.5, 3, 12]

[metrics]
distances = ["rho", "levy", "w1", "w2", "wpsi"]

[output]
csv = "rows.csv"
json = "rows.json"
plot = "plot.csv"
summary = "summary.json"
timings = "timings.csv"

[assertions]
smoothing_bounds_rho = true
"#;

fn write_config(dir: &Path, text: &str) -> std::path::PathBuf {
    let path = dir.join("sweep.toml");
    std::fs::write(&path, text).unwrap();
    path
}

fn cli() -> Command {
    Command::new(env!("CARGO_BIN_EXE_clt-transport"))
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap()
}

#[test]
fn outputs_are_reproducible_across_thread_counts() {
    let mut seen = Vec::new();
    for threads in [1, 3] {
        let dir = tempfile::tempdir().unwrap();
        let text = format!("{POISSON}\n[run]\nthreads = {threads}\n");
        let out = cli().arg("sweep").arg(write_config(dir.path(), &text)).output().unwrap();
        assert_eq!(out.status.code(), Some(0));
        let files: Vec<String> = ["rows.csv", "rows.json", "plot.csv", "summary.json"]
            .iter()
            .map(|f| read(dir.path(), f))
            .collect();
        assert_eq!(read(dir.path(), "timings.csv").lines().count(), 4);
        seen.push(files);
    }
    assert_eq!(seen[0], seen[1]);
    let csv = &seen[0][0];
    assert_eq!(csv.lines().next().unwrap(), CSV_COLUMNS.join(","));
    assert_eq!(csv.lines().count(), 4);
}

#[test]
fn json_rows_round_trip_exactly() {
    let outcome = run_sweep(&SweepConfig::parse(POISSON).unwrap()).unwrap();
    let text = rows_to_json(&outcome.rows).unwrap();
    assert_eq!(rows_from_json(&text).unwrap(), outcome.rows);
}

#[test]
fn rows_agree_with_direct_computation() {
    let outcome = run_sweep(&SweepConfig::parse(POISSON).unwrap()).unwrap();
    let params: Vec<f64> = outcome.rows.iter().map(|r| r.parameter).collect();
    assert_eq!(params, [0.5, 3.0, 12.0]);
    for row in &outcome.rows {
        let d = poisson(row.parameter).unwrap().centered();
        let g = d.gaussian_companion().unwrap();
        let (f, g) = (d.into(), g.into());
        assert_eq!(row.rho, Some(kolmogorov_distance(&f, &g).value));
        assert_eq!(row.w1, Some(w1_distance(&f, &g).unwrap().value));
        assert!(row.error.is_none(), "{:?}", row.error);
    }
    assert!(outcome.summary.passed);
}

#[test]
fn invalid_config_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let text = POISSON.replace("values = [0.5, 3, 12]", "values = []");
    let out = cli().arg("sweep").arg(write_config(dir.path(), &text)).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    assert!(!dir.path().join("rows.csv").exists());
    assert!(!dir.path().join("summary.json").exists());
}

#[test]
fn failed_assertion_sets_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let text = POISSON.replace("smoothing_bounds_rho = true", "max_wpsi = 0.01");
    let out = cli().arg("sweep").arg(write_config(dir.path(), &text)).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL max_wpsi"));
    let summary: serde_json::Value = serde_json::from_str(&read(dir.path(), "summary.json")).unwrap();
    assert_eq!(summary["passed"], false);
}

#[test]
fn single_law_subcommands() {
    let out = cli().args(["dist", "rademacher", "companion", "--metric", "w1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["value"].as_f64().unwrap() - 0.535_377_321_547_879_8).abs() < 1e-12);

    let out = cli().args(["certify", "poisson:10", "--class", "stat"]).output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["tau_estimate"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-9);

    let out = cli().args(["tilt", "rademacher", "--target-mean", "-0.8"]).output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["solution"]["h"].as_f64().unwrap() + 0.8f64.atanh()).abs() < 1e-9);

    let out = cli().args(["dist", "nope", "companion", "--metric", "rho"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
