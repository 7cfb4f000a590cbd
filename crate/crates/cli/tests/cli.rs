//! End-to-end runs of the `flatband` binary.

use std::fs;
use std::process::{Command, Output};

fn flatband(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flatband")).args(args).output().expect("spawn flatband")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv(o: &Output) -> Vec<Vec<String>> {
    stdout(o).lines().map(|l| l.split(',').map(String::from).collect()).collect()
}

#[test]
fn spectrum_csv() {
    let o = flatband(&["spectrum", "--alpha", "-1", "--regime", "neg", "--n-max", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv(&o);
    assert_eq!(rows[0].join(","), "alpha,n,parity,regime,E_exact_over_m,E_wkb_over_m,residual,status");
    assert_eq!(rows.len(), 7);
    assert_eq!(rows[1][..4].join(","), "-1,1,odd,neg");
    assert_eq!(rows[1][4], "0.743086733649");
    assert!(rows[1..].iter().all(|r| r[7] == "ok"));
}

#[test]
fn scan_json_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("scan.json");
    let o = flatband(&[
        "scan",
        "--alpha-min",
        "0.5",
        "--alpha-max",
        "1.5",
        "--alpha-steps",
        "3",
        "--regime",
        "interval",
        "--parity",
        "odd",
        "--n-max",
        "3",
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 9);
    assert_eq!(rows[0]["alpha"], 0.5);
    assert_eq!(rows[0]["regime"], "interval");
    assert!((rows[0]["E_exact_over_m"].as_f64().unwrap() - 0.12770830065261315).abs() < 1e-12);
}

#[test]
fn empty_grid_is_header_only() {
    let o = flatband(&["scan", "--alpha-min", "-1", "--alpha-max", "-0.5", "--alpha-steps", "0", "--regime", "neg"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "alpha,n,parity,regime,E_exact_over_m,E_wkb_over_m,residual,status\n");
}

#[test]
fn scan_output_is_deterministic() {
    let args =
        ["scan", "--alpha-min", "-2", "--alpha-max", "-0.5", "--alpha-steps", "7", "--regime", "neg", "--n-max", "4"];
    let a = flatband(&args);
    let b = flatband(&[&args[..], &["--threads", "3"]].concat());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn critical_table() {
    let o = flatband(&["critical", "--regime", "interval", "--parity", "odd", "--n-max", "2"]);
    let rows = csv(&o);
    assert_eq!(rows[0].join(","), "regime,parity,k,alpha_c_exact,alpha_c_asymptotic,rel_diff");
    assert_eq!(rows[1][3], "1.9158529851");
    assert_eq!(rows.len(), 3);
}

#[test]
fn wkb_levels_and_phase() {
    let o = flatband(&["wkb", "--alpha", "-1", "--regime", "neg", "--parity", "even", "--n-max", "2"]);
    assert_eq!(csv(&o).len(), 3);
    let o = flatband(&["wkb", "--alpha", "-1", "--regime", "neg", "--parity", "odd", "--energy", "0.9"]);
    let rows = csv(&o);
    assert_eq!(rows[0].join(","), "alpha,parity,regime,E_over_m,phase_over_pi,n_effective");
}

#[test]
fn wavefunction_columns_and_parity() {
    let o = flatband(&["wavefunction", "--energy", "0.5", "--regime", "neg", "--parity", "odd", "--points", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv(&o);
    assert_eq!(rows[0].join(","), "x,psi,psi1,psi2_imag,psi3");
    assert_eq!(rows.len(), 21);
    let (first, last) = (&rows[1], &rows[20]);
    assert_eq!(first[0].trim_start_matches('-'), last[0]);
    assert_eq!(first[1].trim_start_matches('-'), last[1].trim_start_matches('-'));
}

#[test]
fn config_file_with_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# defaults\nalpha = -1\nregime = neg\nparity = odd\nn_max = 3\n").unwrap();
    let o = flatband(&["spectrum", "--config", cfg.to_str().unwrap()]);
    assert_eq!(csv(&o).len(), 4);
    let o = flatband(&["spectrum", "--config", cfg.to_str().unwrap(), "--n-max", "1", "--alpha", "-2"]);
    let rows = csv(&o);
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1][0], "-2");
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(flatband(&["spectrum", "--regime", "neg"]).status.code(), Some(1));
    assert_eq!(flatband(&["spectrum", "--alpha", "1", "--regime", "neg"]).status.code(), Some(1));
    assert_eq!(flatband(&["scan", "--alpha-min", "2", "--alpha-max", "1", "--regime", "neg"]).status.code(), Some(1));
    assert_eq!(flatband(&["critical", "--regime", "neg"]).status.code(), Some(1));
    assert_eq!(flatband(&["spectrum", "--config", "/nonexistent.cfg"]).status.code(), Some(1));
    assert_eq!(flatband(&["verify", "--check", "nope"]).status.code(), Some(1));
    assert_eq!(flatband(&["--help"]).status.code(), Some(0));
}

#[test]
fn computation_failure_exits_2() {
    // The lowest even whole-line level has merged with the continuum at this strength.
    let o = flatband(&["wavefunction", "--alpha", "0.5", "--regime", "whole", "--parity", "even", "--n", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_report_and_perturbation() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = flatband(&["verify", "--check", "special_functions,flat_band_tail", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 2);
    assert!(v["checks"][0]["elapsed_ms"].as_f64().unwrap() >= 0.0);
    let o = flatband(&["verify", "--check", "flat_band_tail", "--delta-shift", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["checks"][0]["passed"], false);
}
