//! Black-box tests of the binary: exit codes, formats, file handling.

use std::path::PathBuf;
use std::process::{Command, Output};

fn specker(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_specker"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_scenario(name: &str, body: &str) -> PathBuf {
    let path =
        std::env::temp_dir().join(format!("specker-test-{name}-{}.json", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn evaluate_reports_the_trine_violation() {
    let path = write_scenario(
        "trine",
        r#"{ "axes": "trine", "eta": "optimal-constrained" }"#,
    );
    let out = specker(&["evaluate", path.to_str().unwrap(), "--format", "json"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((report["violation_s"].as_f64().unwrap() - 0.03364).abs() < 5e-5);
    assert!((report["r3_quantum"].as_f64().unwrap() - 0.8114).abs() < 5e-5);
    assert_eq!(report["violated"], serde_json::Value::Bool(true));
    std::fs::remove_file(path).ok();
}

#[test]
fn evaluate_rejects_malformed_and_unknown_keys_with_exit_2() {
    let bad_json = write_scenario("badjson", "{ not json");
    let out = specker(&["evaluate", bad_json.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let unknown = write_scenario("unknown", r#"{ "axes": "trine", "eta": 0.7, "typo": 1 }"#);
    let out = specker(&["evaluate", unknown.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.contains("typo") || err.contains("unknown field"),
        "stderr: {err}"
    );
    std::fs::remove_file(bad_json).ok();
    std::fs::remove_file(unknown).ok();
}

#[test]
fn evaluate_rejects_incompatible_sharpness_with_exit_2() {
    let path = write_scenario("eta09", r#"{ "axes": "trine", "eta": 0.9 }"#);
    let out = specker(&["evaluate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(path).ok();
}

#[test]
fn evaluate_accepts_explicit_params_and_reports_slack_on_invalid_ones() {
    let valid = write_scenario(
        "explicit",
        r#"{
            "axes": "trine",
            "eta": 0.6666666666666666,
            "joint_params": [
                { "alpha": 0.7777777777777778, "a": [0, 0.4006168083848878, 0] },
                { "alpha": 0.7777777777777778, "a": [0, 0.4006168083848878, 0] },
                { "alpha": 0.7777777777777778, "a": [0, 0.4006168083848878, 0] }
            ],
            "state": [0, 1, 0]
        }"#,
    );
    let out = specker(&["evaluate", valid.to_str().unwrap(), "--format", "json"]);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((report["r3_quantum"].as_f64().unwrap() - 0.8114).abs() < 5e-5);

    let invalid = write_scenario(
        "invalidalpha",
        r#"{
            "axes": "trine",
            "eta": 0.7,
            "joint_params": [
                { "alpha": 1.5, "a": [0, 0.1, 0] },
                { "alpha": 0.75, "a": [0, 0.1, 0] },
                { "alpha": 0.75, "a": [0, 0.1, 0] }
            ]
        }"#,
    );
    let out = specker(&["evaluate", invalid.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.contains("validity window") && err.contains("upper bound by"),
        "stderr: {err}"
    );
    std::fs::remove_file(valid).ok();
    std::fs::remove_file(invalid).ok();
}

#[test]
fn evaluate_tracks_the_violation_sign_across_the_window() {
    // Optimal parameters still violate at eta = 0.68 but no longer at 0.70.
    let inside = write_scenario("eta068", r#"{ "axes": "trine", "eta": 0.68 }"#);
    let out = specker(&["evaluate", inside.to_str().unwrap(), "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["violation_s"].as_f64().unwrap() > 0.0);
    assert_eq!(v["in_specker_window"], serde_json::Value::Bool(true));

    let outside = write_scenario("eta070", r#"{ "axes": "trine", "eta": 0.70 }"#);
    let out = specker(&["evaluate", outside.to_str().unwrap(), "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["violation_s"].as_f64().unwrap() < 0.0);
    assert_eq!(v["violated"], serde_json::Value::Bool(false));
    std::fs::remove_file(inside).ok();
    std::fs::remove_file(outside).ok();
}

#[test]
fn reproduce_is_deterministic_across_runs() {
    let a = specker(&["reproduce", "--format", "csv"]);
    let b = specker(&["reproduce", "--format", "csv"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn reproduce_honors_tight_tolerance_on_closed_form_rows() {
    let out = specker(&["reproduce", "--tolerance", "1e-12", "--format", "csv"]);
    assert!(out.status.success(), "closed-form rows must hold at 1e-12");
    // An absurd tolerance below machine precision must fail some rows (exit 3).
    let out = specker(&["reproduce", "--tolerance", "1e-18", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn sweep_writes_csv_with_lf_endings() {
    let path = std::env::temp_dir().join(format!("specker-sweep-{}.csv", std::process::id()));
    let out = specker(&[
        "sweep",
        "--preset",
        "trine",
        "--eta-min",
        "0.45",
        "--eta-max",
        "0.46",
        "--step",
        "0.005",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let content = std::fs::read_to_string(&path).unwrap();
    assert!(content.starts_with("eta,c_max,s,r3_quantum,lsw_bound,in_specker_window\n"));
    assert!(!content.contains('\r'));
    assert_eq!(content.lines().count(), 4); // header + 0.45, 0.455, 0.46
    std::fs::remove_file(path).ok();
}

#[test]
fn sweep_step_larger_than_range_yields_single_row() {
    let out = specker(&[
        "sweep",
        "--preset",
        "trine",
        "--eta-min",
        "0.5",
        "--eta-max",
        "0.55",
        "--step",
        "0.2",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 2);
}

#[test]
fn sweep_rejects_bad_ranges() {
    let out = specker(&[
        "sweep",
        "--preset",
        "trine",
        "--eta-min",
        "0.5",
        "--eta-max",
        "0.6",
        "--step",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = specker(&[
        "sweep",
        "--preset",
        "orthogonal",
        "--eta-min",
        "0.5",
        "--eta-max",
        "0.8",
        "--step",
        "0.1",
    ]);
    assert_eq!(
        out.status.code(),
        Some(2),
        "0.8 exceeds the orthogonal eta_u"
    );
}

#[test]
fn window_requires_a_source_and_reports_presets() {
    let out = specker(&["window"]);
    assert_eq!(out.status.code(), Some(2));

    let out = specker(&["window", "--preset", "orthogonal", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["eta_lower"].as_f64().unwrap() - 1.0 / 3f64.sqrt()).abs() < 1e-12);
    assert!((v["eta_upper"].as_f64().unwrap() - 1.0 / 2f64.sqrt()).abs() < 1e-12);
}

#[test]
fn model_json_reports_feasibility_flags() {
    let out = specker(&["model", "--eta", "0.5", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        v["feasible"]["product_pairs"],
        serde_json::Value::Bool(true)
    );
    assert_eq!(
        v["feasible"]["perfect_anticorrelation"],
        serde_json::Value::Bool(false)
    );
    assert_eq!(
        v["feasible"]["model_at_assignment"],
        serde_json::Value::Bool(false)
    );
    assert_eq!(
        v["feasible"]["quantum_trine_optimum"],
        serde_json::Value::Bool(false)
    );
    assert!((v["r3_max"].as_f64().unwrap() - (1.0 - 0.5 / 3.0)).abs() < 1e-15);
}

#[test]
fn model_sampling_is_seed_stable() {
    let a = specker(&[
        "model",
        "--eta",
        "0.5",
        "--samples",
        "10000",
        "--seed",
        "7",
        "--format",
        "json",
    ]);
    let b = specker(&[
        "model",
        "--eta",
        "0.5",
        "--samples",
        "10000",
        "--seed",
        "7",
        "--format",
        "json",
    ]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn scan_si_validates_resolution_and_finds_interior_minimum() {
    let out = specker(&["scan-si", "--resolution", "2"]);
    assert_eq!(out.status.code(), Some(2));

    let out = specker(&["scan-si", "--resolution", "25", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let min = v["min_value"].as_f64().unwrap();
    assert!(min > 1.0 && min < 1.04);
    assert_eq!(v["exceeds_one"], serde_json::Value::Bool(true));
}
