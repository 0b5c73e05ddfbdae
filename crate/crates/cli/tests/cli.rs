use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cube-spectra"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).expect("stdout is json")
}

/// Report bytes with the wall-time line removed; everything else must be
/// identical across reruns.
fn strip_wall_time(bytes: &[u8]) -> Vec<u8> {
    let text = std::str::from_utf8(bytes).expect("utf-8 output");
    text.lines()
        .filter(|line| !line.contains("wall_time_ms"))
        .collect::<Vec<_>>()
        .join("\n")
        .into_bytes()
}

#[test]
fn bounds_reports_are_deterministic() {
    let args = [
        "bounds", "--n", "12", "--d", "4", "--ell", "2", "--trials", "10", "--seed", "7",
    ];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success(), "first run failed");
    assert!(second.status.success(), "second run failed");
    assert_eq!(
        strip_wall_time(&first.stdout),
        strip_wall_time(&second.stdout),
        "same argv and seed must reproduce the report byte for byte"
    );
}

#[test]
fn filter_worked_example() {
    let output = run(&["filter", "--d", "2", "--ell", "0", "--format", "json"]);
    assert!(output.status.success());
    let report = stdout_json(&output);
    let values: Vec<f64> = report["summary"]["values"]
        .as_array()
        .expect("values array")
        .iter()
        .map(|v| v.as_f64().expect("float"))
        .collect();
    let moments: Vec<f64> = report["summary"]["moments"]
        .as_array()
        .expect("moments array")
        .iter()
        .map(|v| v.as_f64().expect("float"))
        .collect();
    for (got, want) in values.iter().zip([0.0, 2.0, 0.0, 2.0]) {
        assert!((got - want).abs() <= 1e-9, "values {values:?}");
    }
    for (got, want) in moments.iter().zip([1.0, 0.0, 0.0, 0.0]) {
        assert!((got - want).abs() <= 1e-9, "moments {moments:?}");
    }
    assert_eq!(report["summary"]["pass"], Value::Bool(true));
}

#[test]
fn json_floats_round_trip() {
    let output = run(&[
        "bounds", "--n", "10", "--d", "3", "--ell", "1", "--trials", "3", "--seed", "11",
    ]);
    assert!(output.status.success());
    // 17 significant digits: parse, reprint, parse again, values unchanged
    let report = stdout_json(&output);
    let reprinted: Value =
        serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(report, reprinted);
    assert!(report["trials"][0]["sup_level"].as_f64().unwrap() > 0.0);
}

#[test]
fn usage_errors_exit_two() {
    let missing = run(&["filter", "--d", "2"]);
    assert_eq!(missing.status.code(), Some(2));

    let no_source = run(&["learn", "--d", "2", "--eps", "0.1", "--delta", "0.1"]);
    assert_eq!(no_source.status.code(), Some(2));
    assert!(!no_source.stderr.is_empty(), "errors explain themselves");

    let bad_cap = bin()
        .args(["selftest"])
        .env("CUBE_SPECTRA_NCAP", "banana")
        .output()
        .expect("binary runs");
    assert_eq!(bad_cap.status.code(), Some(2));
}

#[test]
fn dense_cap_env_is_honored() {
    let output = bin()
        .args([
            "bounds", "--n", "12", "--d", "4", "--ell", "2", "--trials", "2", "--seed", "7",
        ])
        .env("CUBE_SPECTRA_NCAP", "10")
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("capacity"), "stderr: {stderr}");
}

#[test]
fn selftest_passes() {
    let output = run(&["selftest"]);
    assert!(output.status.success());
    let report = stdout_json(&output);
    assert_eq!(report["summary"]["failures"], Value::from(0));
    assert_eq!(report["summary"]["pass"], Value::Bool(true));
}

#[test]
fn csv_and_human_formats() {
    let csv = run(&["filter", "--d", "2", "--ell", "0", "--format", "csv"]);
    assert!(csv.status.success());
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.contains("summary.moments.0,1.0000000000000000e0"), "{text}");
    assert!(text.lines().last().unwrap().starts_with("wall_time_ms,"));

    let human = run(&["filter", "--d", "2", "--ell", "0", "--format", "human"]);
    assert!(human.status.success());
    let text = String::from_utf8(human.stdout).unwrap();
    assert!(text.contains("summary.pass = true"), "{text}");
}

#[test]
fn learn_round_trip_from_files() {
    let dir = tempfile::tempdir().unwrap();

    // sparse spectrum input: 0.5 on {x0}, 0.25 on {x0, x1}
    let sparse = dir.path().join("sparse.txt");
    write!(std::fs::File::create(&sparse).unwrap(), "1 0.5\n3 0.25\n").unwrap();
    let output = run(&[
        "learn",
        "--fn",
        sparse.to_str().unwrap(),
        "--d",
        "2",
        "--eps",
        "0.5",
        "--delta",
        "0.25",
        "--samples",
        "4000",
        "--seed",
        "5",
    ]);
    assert!(output.status.success(), "{output:?}");
    let report = stdout_json(&output);
    assert!(report["summary"]["model_error"].as_f64().unwrap() <= 0.5);
    let model = report["summary"]["model"].as_array().unwrap();
    let single = model
        .iter()
        .find(|entry| entry["mask"] == Value::from("0x1"))
        .expect("the 0.5 coefficient is retained");
    assert!((single["estimate"].as_f64().unwrap() - 0.5).abs() < 0.1);

    // recorded samples of x -> sign of the first coordinate
    let recorded = dir.path().join("recorded.txt");
    write!(
        std::fs::File::create(&recorded).unwrap(),
        "0 1.0\n1 -1.0\n2 1.0\n3 -1.0\n"
    )
    .unwrap();
    let output = run(&[
        "learn",
        "--samples-file",
        recorded.to_str().unwrap(),
        "--d",
        "1",
        "--eps",
        "0.9",
        "--delta",
        "0.5",
    ]);
    assert!(output.status.success(), "{output:?}");
    let report = stdout_json(&output);
    assert!(report["summary"]["model_error"].is_null());
    assert_eq!(report["summary"]["retained"], Value::from(1));
    assert_eq!(report["summary"]["samples_used"], Value::from(4));
    let entry = &report["summary"]["model"][0];
    assert_eq!(entry["mask"], Value::from("0x1"));
    assert!((entry["estimate"].as_f64().unwrap() - 1.0).abs() <= 1e-12);
}

#[test]
fn property_violation_exits_one_with_report() {
    // deliberately undersampled: the error budget cannot be met
    let dir = tempfile::tempdir().unwrap();
    let sparse = dir.path().join("sparse.txt");
    write!(std::fs::File::create(&sparse).unwrap(), "1 0.5\n3 0.25\n").unwrap();
    let output = run(&[
        "learn",
        "--fn",
        sparse.to_str().unwrap(),
        "--d",
        "2",
        "--eps",
        "0.001",
        "--delta",
        "0.25",
        "--samples",
        "100",
        "--seed",
        "5",
    ]);
    assert_eq!(output.status.code(), Some(1));
    let report = stdout_json(&output);
    assert_eq!(report["summary"]["pass"], Value::Bool(false));
}
