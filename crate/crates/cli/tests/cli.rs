//! End-to-end tests of the `equator` binary: exit codes, report shape,
//! deterministic sampling, and seed resolution.

use std::path::PathBuf;
use std::process::{Command, Output};

fn equator(args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_equator"));
    cmd.env_remove("EQUATOR_SEED");
    cmd.args(args);
    cmd
}

fn run(args: &[&str]) -> Output {
    equator(args).output().expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).expect("stdout is valid JSON")
}

fn temp_path(name: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("equator-cli-test-{}-{name}", std::process::id()));
    path
}

#[test]
fn verify_single_suite_reports_json() {
    let output = run(&["verify", "--suite", "z2-coincide", "--samples", "100"]);
    assert!(output.status.success());
    let report = stdout_json(&output);
    assert_eq!(report["suite"], "z2-coincide");
    assert_eq!(report["pass"], true);
    assert_eq!(report["seed"], 42);
    assert!(report["checks"].as_array().unwrap().len() >= 2);
    for check in report["checks"].as_array().unwrap() {
        assert!(check["name"].is_string());
        assert!(check["max_residual"].is_number());
        assert!(check["tolerance"].is_number());
        assert_eq!(check["pass"], true);
    }
    // Human summary goes to stderr, not into the JSON payload.
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("z2-coincide"));
}

#[test]
fn verify_all_runs_every_suite() {
    let output = run(&["verify", "--samples", "200"]);
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    let reports = stdout_json(&output);
    let array = reports.as_array().expect("array of reports");
    assert_eq!(array.len(), 9);
    assert!(array.iter().all(|r| r["pass"] == true));
}

#[test]
fn verify_respects_algebra_restriction() {
    let output = run(&[
        "verify",
        "--suite",
        "automorphism",
        "--samples",
        "100",
        "--algebra",
        "quaternion",
    ]);
    assert!(output.status.success());
    let report = stdout_json(&output);
    assert_eq!(
        report["config"]["algebra"],
        serde_json::json!(["quaternion"])
    );
    assert!(
        run(&["verify", "--suite", "algebra", "--algebra", "nonion"])
            .status
            .code()
            .is_some_and(|c| c == 2)
    );
}

#[test]
fn unknown_suite_is_usage_error() {
    let output = run(&["verify", "--suite", "nosuch"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("nosuch"));
}

#[test]
fn failing_tolerance_exits_one() {
    let output = run(&[
        "verify",
        "--suite",
        "algebra",
        "--samples",
        "100",
        "--tol",
        "1e-300",
    ]);
    assert_eq!(output.status.code(), Some(1));
    let report = stdout_json(&output);
    assert_eq!(report["pass"], false);
    // Failing checks carry replayable counterexample payloads.
    assert!(report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["pass"] == false && c["counterexample"].is_object()));
}

#[test]
fn even_k_is_usage_error() {
    let output = run(&[
        "verify",
        "--suite",
        "quotient-welldef",
        "--samples",
        "50",
        "--k",
        "1,4",
    ]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn sample_csv_is_deterministic() {
    let path_a = temp_path("a.csv");
    let path_b = temp_path("b.csv");
    for path in [&path_a, &path_b] {
        let output = run(&[
            "sample",
            "--source",
            "exotic:3",
            "--n",
            "64",
            "--seed",
            "11",
            "--out",
            path.to_str().unwrap(),
            "--format",
            "csv",
        ]);
        assert!(output.status.success());
    }
    let a = std::fs::read(&path_a).unwrap();
    let b = std::fs::read(&path_b).unwrap();
    assert_eq!(a, b, "same seed must produce identical bytes");

    let text = String::from_utf8(a).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,y,z"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 64);
    for row in rows {
        let fields: Vec<f64> = row.split(',').map(|f| f.parse().unwrap()).collect();
        assert_eq!(fields.len(), 3);
    }
    std::fs::remove_file(&path_a).ok();
    std::fs::remove_file(&path_b).ok();
}

#[test]
fn sample_json_parses_and_respects_region() {
    let path = temp_path("cloud.json");
    let output = run(&[
        "sample",
        "--source",
        "round",
        "--n",
        "32",
        "--seed",
        "5",
        "--out",
        path.to_str().unwrap(),
        "--format",
        "json",
        "--algebra",
        "quaternion",
    ]);
    assert!(output.status.success());
    let cloud: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    let points = cloud.as_array().unwrap();
    assert_eq!(points.len(), 32);
    for p in points {
        let x = p["x"].as_f64().unwrap();
        let y = p["y"].as_f64().unwrap();
        assert!((0.0..=1.0).contains(&x));
        assert!(y.abs() <= x + 1e-12);
    }
    std::fs::remove_file(&path).ok();
}

#[test]
fn sample_rejects_bad_sources() {
    let path = temp_path("never.csv");
    let path_str = path.to_str().unwrap();
    let bad_source = run(&[
        "sample", "--source", "square", "--n", "4", "--out", path_str,
    ]);
    assert_eq!(bad_source.status.code(), Some(2));
    let even_k = run(&[
        "sample", "--source", "exotic:2", "--n", "4", "--out", path_str,
    ]);
    assert_eq!(even_k.status.code(), Some(2));
    let zero_n = run(&["sample", "--source", "round", "--n", "0", "--out", path_str]);
    assert_eq!(zero_n.status.code(), Some(2));
    assert!(!path.exists());
}

#[test]
fn classify_tabulates_parity() {
    let output = run(&["classify", "--h-range", "1..8"]);
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("h,k,odd_bp16"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 8);
    assert_eq!(rows[0], "1,1,false");
    assert_eq!(rows[1], "2,3,true");
    assert_eq!(rows[2], "3,5,true");
    assert_eq!(rows[3], "4,7,false");
    let odd = rows.iter().filter(|r| r.ends_with("true")).count();
    assert_eq!(odd, 4);

    assert_eq!(
        run(&["classify", "--h-range", "8..1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["classify", "--h-range", "eight"]).status.code(),
        Some(2)
    );
}

#[test]
fn seed_comes_from_env_unless_flag_given() {
    let from_env = equator(&["verify", "--suite", "z2-coincide", "--samples", "50"])
        .env("EQUATOR_SEED", "7")
        .output()
        .unwrap();
    assert!(from_env.status.success());
    assert_eq!(stdout_json(&from_env)["seed"], 7);

    let flag_wins = equator(&[
        "verify",
        "--suite",
        "z2-coincide",
        "--samples",
        "50",
        "--seed",
        "99",
    ])
    .env("EQUATOR_SEED", "7")
    .output()
    .unwrap();
    assert_eq!(stdout_json(&flag_wins)["seed"], 99);

    let bad_env = equator(&["verify", "--suite", "z2-coincide", "--samples", "50"])
        .env("EQUATOR_SEED", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(bad_env.status.code(), Some(2));
}
