//! End-to-end runs of the `biconfluent` binary.

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_biconfluent"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

/// Header and numeric rows of a CSV table; text cells parse as NaN.
fn csv(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines.next().expect("header").split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap_or(f64::NAN)).collect())
        .collect();
    (header, rows)
}

fn column(header: &[String], name: &str) -> usize {
    header
        .iter()
        .position(|h| h == name)
        .unwrap_or_else(|| panic!("no column {name}"))
}

/// `V` for unit mass, ħ and V1, V0 = V2 = 0.
fn unit_potential(x: f64) -> f64 {
    5.0 / (32.0 * x * x) + x.powf(-1.5) - 16.0 / x.sqrt()
}

#[test]
fn potential_table_matches_the_formula() {
    let out = run(&["potential", "--x-min", "0.5", "--x-max", "2", "--points", "4"]);
    assert!(out.status.success());
    let (header, rows) = csv(&stdout(&out));
    assert_eq!(header, ["x", "V"]);
    assert_eq!(rows.len(), 4);
    assert!((rows[1][0] - 1.0).abs() < 1e-15);
    assert!((rows[1][1] + 14.84375).abs() < 1e-12);
    for r in &rows {
        assert!((r[1] - unit_potential(r[0])).abs() <= 1e-13 * r[1].abs());
    }
}

#[test]
fn potential_without_the_well_is_repulsive() {
    let out = run(&["--v1", "0", "potential", "--points", "200"]);
    assert!(out.status.success());
    let (_, rows) = csv(&stdout(&out));
    assert!(rows.windows(2).all(|w| w[1][1] < w[0][1]));
    assert!(rows.iter().all(|r| r[1] > 0.0));
}

#[test]
fn identical_runs_give_identical_bytes() {
    let args = ["levels", "--n-max", "6", "--method", "all"];
    let (a, b) = (run(&args), run(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["levels", "--n-max", "0"],
        vec!["potential", "--x-min", "0"],
        vec!["potential", "--x-min", "2", "--x-max", "1"],
        vec!["wavefunction", "--n", "0"],
        vec!["wavefunction", "--n", "1", "--x-min", "-1"],
        vec!["figure", "--id", "7"],
        vec!["--mass", "-1", "levels"],
        vec!["--v1", "0", "levels"],
        vec!["--v2", "0.3", "levels"],
        vec!["levels", "--method", "nonsense"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn oracle_levels_accept_a_coulomb_term() {
    let out = run(&["--v2", "0.3", "levels", "--n-max", "2", "--method", "oracle"]);
    assert!(out.status.success());
    let (header, rows) = csv(&stdout(&out));
    let e = column(&header, "E");
    assert!(rows[0][e] < rows[1][e] && rows[1][e] < 0.0);
}

#[test]
fn closed_form_ground_state() {
    let out = run(&["levels", "--n-max", "1", "--method", "closed-form"]);
    let (header, rows) = csv(&stdout(&out));
    let e = rows[0][column(&header, "E")];
    let expect = -32.0 / 9f64.cbrt();
    assert!((e - expect).abs() < 1e-12, "{e}");
    assert!((e + 15.384).abs() < 1e-3);
}

#[test]
fn all_methods_agree() {
    let out = run(&["levels", "--n-max", "5", "--method", "all"]);
    let (header, rows) = csv(&stdout(&out));
    let closed = column(&header, "rel_err_closed_form");
    let oracle = column(&header, "rel_err_oracle");
    for r in &rows {
        assert!(r[closed] <= 5e-3);
        assert!(r[oracle] <= 1e-8);
    }
}

#[test]
fn ground_state_has_no_node() {
    let out = run(&["wavefunction", "--n", "1", "--normalize"]);
    assert!(out.status.success());
    let (header, rows) = csv(&stdout(&out));
    let psi = column(&header, "psi");
    let values: Vec<f64> = rows.iter().map(|r| r[psi]).filter(|v| v.abs() > 1e-12).collect();
    assert!(values.windows(2).all(|w| (w[0] < 0.0) == (w[1] < 0.0)));
}

#[test]
fn out_dir_writes_table_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = run(&["--out-dir", d, "wavefunction", "--n", "2", "--source", "oracle"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let manifest = read_json(&dir.path().join("manifest.json"));
    assert_eq!(manifest["command"], "wavefunction");
    assert_eq!(manifest["params"]["command"]["n"], 2);
    assert!(manifest["summary"]["overlap"].as_f64().unwrap() >= 0.9999);
    let output = &manifest["outputs"][0];
    assert_eq!(output["file"], "wavefunction.csv");
    let body = std::fs::read_to_string(dir.path().join("wavefunction.csv")).unwrap();
    assert!(body.starts_with("x,psi,psi_oracle\n"));
    assert_eq!(output["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn json_output_is_an_array_of_records() {
    let out = run(&["--format", "json", "levels", "--n-max", "3"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[2]["n"], 3);
    assert_eq!(rows[0]["method"], "exact");
}

#[test]
fn validate_reports_every_check() {
    let out = run(&["validate"]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = csv(&stdout(&out));
    assert_eq!(header[0], "check");
    assert_eq!(rows.len(), String::from_utf8_lossy(&out.stderr).matches("PASS").count());

    let strict = run(&["validate", "--tolerance-scale", "0"]);
    assert_eq!(strict.status.code(), Some(1));
    // the failing report is still written in full
    assert_eq!(csv(&stdout(&strict)).1.len(), rows.len());
}

#[test]
fn figures_have_their_columns() {
    let headers = [
        "x,V_v1=0,V_v1=0.5,V_v1=1,V_v1=2",
        "a,F_exact,F_approx",
        "n,a_exact,E_exact,E_closed_form,rel_err",
        "x,psi1,psi2,psi3",
    ];
    for (id, expect) in headers.iter().enumerate() {
        let out = run(&["figure", "--id", &(id + 1).to_string()]);
        assert!(out.status.success());
        assert_eq!(stdout(&out).lines().next().unwrap(), *expect);
    }
}

fn read_json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}
