use std::process::{Command, Output};

use serde_json::Value;

fn hankel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hankel")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn rows(out: &Output) -> Vec<Vec<f64>> {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,re,im"));
    lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect()
}

#[test]
fn weight_two_exponential_is_fixed() {
    let out = hankel(&["transform", "--nu", "2", "--spec", "exp(-x)"]);
    assert_eq!(code(&out), 0);
    let rows = rows(&out);
    assert_eq!(rows.len(), 512);
    for r in &rows {
        let want = r[0].powf(1.5) * (-r[0]).exp();
        assert!((r[1] - want).abs() <= 1e-9 * (1.0 + want.abs()) && r[2].abs() < 1e-9, "{r:?}");
    }
}

#[test]
fn complex_order_matches_closed_form() {
    let grid = "lin:0.2:12:40";
    let spec = "(1,0.5)*x^1*exp(-1.2x) + exp(-0.8x)*osc(0.4x)";
    let quad = rows(&hankel(&["transform", "--nu", "0.7+0.3i", "--spec", spec, "--grid", grid]));
    let exact = rows(&hankel(&["transform", "--nu", "0.7+0.3i", "--spec", spec, "--grid", grid, "--op", "hankel-exact"]));
    let scale = exact.iter().map(|r| r[1].hypot(r[2])).fold(0.0, f64::max);
    for (q, e) in quad.iter().zip(&exact) {
        assert!((q[1] - e[1]).hypot(q[2] - e[2]) <= 1e-8 * scale);
    }
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(code(&hankel(&["transform", "--nu", "-1.5", "--spec", "exp(-x)"])), 2);
    let out = hankel(&["transform", "--nu", "1", "--spec", "exp(-x"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("syntax"));
    assert_eq!(code(&hankel(&["transform", "--nu", "1", "--spec", "exp(-x)", "--grid", "log:0:1:4"])), 2);
    assert_eq!(code(&hankel(&["verify", "--suite", "nonsense"])), 2);
    assert_eq!(code(&hankel(&["basis", "--d", "0"])), 2);
}

#[test]
fn thread_count_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_hankel"))
        .args(["basis", "--d", "1"])
        .env("HANKEL_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_inversion() {
    let out = hankel(&["verify", "--suite", "inversion", "--nu", "1", "--tol", "1e-8"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["pass"], true);
    assert_eq!(report["suite"], "inversion");
    assert!(report["max_error"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn verify_diagram_complex_order() {
    let out = hankel(&["verify", "--suite", "diagram", "--nu", "0.7+0.3i"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["pass"], true);
}

#[test]
fn grouplaw_case_count() {
    let out = hankel(&["verify", "--suite", "grouplaw", "--d", "2", "--seed", "7"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["cases"], 20);
}

#[test]
fn impossible_tolerance_reports_failures() {
    let out = hankel(&["verify", "--suite", "weber", "--nu", "1", "--tol", "1e-30"]);
    assert_eq!(code(&out), 1);
    let report = json(&out);
    assert_eq!(report["pass"], false);
    assert!(!report["failures"].as_array().unwrap().is_empty());
}

#[test]
fn basis_checks() {
    let out = hankel(&["basis", "--d", "3", "--n", "8"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert!(report["gram_deviation"].as_f64().unwrap() <= 1e-8);
    assert_eq!(report["vectors"].as_array().unwrap().len(), 9);

    let out = hankel(&["basis", "--d", "3", "--check-hankel-fixed-point"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["hankel_fixed_point"]["pass"], true);

    let out = hankel(&["basis", "--d", "2", "--n", "1", "--grid", "lin:1:2:3", "--out", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("n,x,re,im"));
    assert_eq!(text.lines().count(), 7);
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--suite", "grouplaw", "--d", "1", "--seed", "3"];
    assert_eq!(hankel(&args).stdout, hankel(&args).stdout);
    let args = ["transform", "--nu", "0.5", "--spec", "x^2*exp(-1.5x)", "--out", "json"];
    assert_eq!(hankel(&args).stdout, hankel(&args).stdout);
}

#[test]
fn writes_file_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.json");
    let out = hankel(&["transform", "--nu", "1", "--spec", "exp(-x)", "--grid", "lin:1:2:5", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let value: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(value["x"].as_array().unwrap().len(), 5);
    assert_eq!(value["config"]["op"], "hankel");
}
