use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn cheeger(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cheeger"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn cheeger_threads(args: &[&str], threads: usize) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cheeger"))
        .args(args)
        .env("RAYON_NUM_THREADS", threads.to_string())
        .output()
        .expect("binary runs")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cheeger-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

fn row<'a>(report: &'a Value, family: &str) -> &'a Value {
    report["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["family"] == family)
        .unwrap_or_else(|| panic!("no row {family}"))
}

fn value(row: &Value, name: &str) -> Value {
    row["values"]
        .as_array()
        .unwrap()
        .iter()
        .find(|v| v["name"] == name)
        .map(|v| v["value"].clone())
        .unwrap_or_else(|| panic!("no value {name}"))
}

fn num(v: Value) -> f64 {
    v.as_f64().expect("finite number")
}

#[test]
fn verify_passes_and_lists_every_check() {
    let out = cheeger(&["verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.starts_with("#schema=cheeger-report/1;table=verify\n"));
    for name in [
        "strictly_decreasing",
        "at_least_abs_s_below_minus_2",
        "residual_below_1e-6",
        "second_order_decay",
        "below_identity",
        "quarter_lower_bound",
        "phi_b_below_c_gamma",
        "lower_below_quadrature",
        "identity_residual",
    ] {
        assert!(csv.contains(&format!(",{name},")), "missing {name}");
    }
    assert!(!csv.contains(",fail"));
    assert!(csv.contains("#config,root_tol,1e-14\n"));
}

#[test]
fn compute_unit_disc() {
    let path = scratch(
        "disc.json",
        r#"{"schema":"cheeger-shape/1","kind":"disc","center":["0","0"],"radius":"1"}"#,
    );
    let out = cheeger(&["compute", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    let h = row(&report, "cheeger");
    assert_eq!(num(value(h, "h_lower")), 2.0);
    assert_eq!(num(value(h, "h_upper")), 2.0);
    for index in ["alpha", "zeta", "beta_sq"] {
        let v = num(value(row(&report, index), "value"));
        assert!(v.abs() < 1e-12, "{index} = {v}");
    }
}

#[test]
fn compute_interval_set_and_echo_tolerances() {
    let path = scratch(
        "omega.json",
        r#"{"schema":"cheeger-shape/1","kind":"intervals","intervals":[["-inf","-1"],["4","inf"]]}"#,
    );
    let out = cheeger(&["compute", path.to_str().unwrap(), "--format", "json", "--tol-quad", "1e-11"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["config"]["quad_abs_tol"], "1e-11");
    let r = row(&report, "intervals");
    assert!(num(value(r, "gap")) > 0.0);
    let notes = report["notes"].as_array().unwrap();
    assert!(notes.iter().any(|n| n == "cheeger minimizer: (-inf, -1)"));
}

#[test]
fn gauss_sharpness_minimizer_on_every_row() {
    let out = cheeger(&["reproduce", "gauss-sharpness", "--T", "3,4,5,6,7,8", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    let rows = report["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    for r in rows {
        assert_eq!(value(r, "minimizer_lo"), "-inf");
        assert!((num(value(r, "minimizer_hi")) + 1.0).abs() < 1e-6);
    }
}

#[test]
fn violated_tolerance_exits_1_and_names_the_row() {
    let out = cheeger(&["reproduce", "gauss-sharpness", "--T", "3.3,4", "--tol-root", "1e-30"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("T=3.3"), "{err}");
    assert!(err.contains("eps_residual_within_root_tol"), "{err}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(cheeger(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(cheeger(&["sweep", "zeta"]).status.code(), Some(2));
    assert_eq!(cheeger(&["verify", "--tol-quad", "-1"]).status.code(), Some(2));
    assert_eq!(cheeger(&["reproduce", "flower", "--eps", "1.5"]).status.code(), Some(2));
    let bad = scratch("bad.json", r#"{"schema":"cheeger-shape/1","kind":"polygon","vertices":[[0,0],[1,0]]}"#);
    assert_eq!(cheeger(&["compute", bad.to_str().unwrap()]).status.code(), Some(2));
    let garbled = scratch("garbled.json", "{not json");
    assert_eq!(cheeger(&["compute", garbled.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(cheeger(&["compute", "/nonexistent/shape.json"]).status.code(), Some(2));
}

#[test]
fn out_flag_writes_the_report() {
    let dir = std::env::temp_dir().join(format!("cheeger-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("annulus.csv");
    let out = cheeger(&["reproduce", "annulus", "--j", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("#schema=cheeger-report/1;table=annulus\n"));
}

#[test]
fn sweeps_are_byte_identical_across_thread_counts() {
    for args in [
        vec!["sweep", "zeta", "--seed", "7", "--samples", "50"],
        vec!["sweep", "gauss", "--seed", "11", "--samples", "30", "--bins", "0.5", "--format", "json"],
    ] {
        let one = cheeger_threads(&args, 1);
        let four = cheeger_threads(&args, 4);
        let again = cheeger_threads(&args, 4);
        assert_eq!(one.status.code(), Some(0));
        assert!(!one.stdout.is_empty());
        assert_eq!(one.stdout, four.stdout, "{args:?}");
        assert_eq!(four.stdout, again.stdout, "{args:?}");
    }
}
