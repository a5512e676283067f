//! Integration tests for the command-line contract: exit codes, report
//! shapes, flag handling, and error diagnostics.

use std::path::PathBuf;
use std::process::Command;

use remo::states::{serialize_state, werner};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_remo"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let output = bin().args(args).output().expect("binary runs");
    (
        output.status.code().unwrap_or(-1),
        String::from_utf8(output.stdout).expect("utf8 stdout"),
        String::from_utf8(output.stderr).expect("utf8 stderr"),
    )
}

fn temp_file(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("remo-cli-test-{}-{name}", std::process::id()))
}

fn write_state(name: &str, p: f64) -> PathBuf {
    let path = temp_file(name);
    std::fs::write(&path, serialize_state(&werner(p).unwrap())).unwrap();
    path
}

#[test]
fn analyze_entangled_state_exits_two() {
    let path = write_state("bell.json", 1.0);
    let (code, stdout, _) = run(&["analyze", path.to_str().unwrap(), "--no-timestamp"]);
    assert_eq!(code, 2);
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["entangled"], serde_json::Value::Bool(true));
    // thm1 margin at p = 1 is -1/2
    let verdicts = report["verdicts"].as_array().unwrap();
    let r_moment = verdicts
        .iter()
        .find(|v| v["criterion"] == "r-moment")
        .expect("r-moment verdict present");
    assert!((r_moment["margin"].as_f64().unwrap() + 0.5).abs() < 1e-10);
    assert_eq!(r_moment["verdict"], "entangled");
    assert!(report.get("timestamp").is_none());
}

#[test]
fn analyze_maximally_mixed_exits_zero() {
    let path = write_state("mixed.json", 0.0);
    let (code, stdout, _) = run(&["analyze", path.to_str().unwrap(), "--no-timestamp"]);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["entangled"], serde_json::Value::Bool(false));

    // byte-identical on repeat without the timestamp
    let (_, again, _) = run(&["analyze", path.to_str().unwrap(), "--no-timestamp"]);
    assert_eq!(stdout, again);
}

#[test]
fn analyze_timestamp_present_by_default() {
    let path = write_state("stamped.json", 0.2);
    let (code, stdout, _) = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let ts = report["timestamp"].as_str().expect("timestamp present");
    assert!(ts.ends_with('Z') && ts.len() == 20, "timestamp {ts}");
}

#[test]
fn analyze_truncated_file_exits_one_with_byte_offset() {
    let full = serialize_state(&werner(0.5).unwrap());
    let path = temp_file("truncated.json");
    std::fs::write(&path, &full[..full.len() / 3]).unwrap();
    let (code, _, stderr) = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(stderr.contains("byte"), "diagnostic: {stderr}");
}

#[test]
fn analyze_missing_file_exits_one() {
    let (code, _, stderr) = run(&["analyze", "/definitely/not/here.json"]);
    assert_eq!(code, 1);
    assert!(!stderr.is_empty());
}

#[test]
fn analyze_criteria_subset_filters_report_and_exit_code() {
    let path = write_state("subset.json", 1.0);
    let (code, stdout, _) = run(&[
        "analyze",
        path.to_str().unwrap(),
        "--criteria",
        "ccnr",
        "--no-timestamp",
    ]);
    assert_eq!(code, 2);
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let verdicts = report["verdicts"].as_array().unwrap();
    assert_eq!(verdicts.len(), 1);
    assert_eq!(verdicts[0]["criterion"], "ccnr");

    // The q-gram diagnostic never certifies entanglement, so the Bell state
    // analyzed under it alone exits 0.
    let (code, _, _) = run(&[
        "analyze",
        path.to_str().unwrap(),
        "--criteria",
        "q-gram",
        "--no-timestamp",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn analyze_rejects_unknown_criterion() {
    let path = write_state("crit.json", 0.3);
    let (code, _, stderr) = run(&["analyze", path.to_str().unwrap(), "--criteria", "bogus"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("unknown criterion"));
}

#[test]
fn sweep_endpoint_rows_have_closed_form_f() {
    let (code, csv, _) = run(&["sweep", "--steps", "11"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 12);
    let f_idx = lines[0].split(',').position(|c| c == "f").unwrap();
    let first: f64 = lines[1].split(',').nth(f_idx).unwrap().parse().unwrap();
    let last: f64 = lines[11].split(',').nth(f_idx).unwrap().parse().unwrap();
    assert!((first - 1.0 / 16.0).abs() < 1e-12);
    assert!((last + 0.5).abs() < 1e-12);
}

#[test]
fn sweep_rejects_invalid_specs() {
    let (code, _, _) = run(&["sweep", "--steps", "1"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["sweep", "--end", "1.5"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["sweep", "--family", "ghz"]);
    assert_eq!(code, 1);
}

#[test]
fn threshold_ccnr_is_one_third() {
    let (code, stdout, _) = run(&["threshold", "--criterion", "ccnr"]);
    assert_eq!(code, 0);
    let value: f64 = stdout.trim().parse().unwrap();
    assert!((value - 1.0 / 3.0).abs() < 1e-9);
}

#[test]
fn threshold_without_sign_change_exits_one() {
    let (code, _, stderr) = run(&["threshold", "--criterion", "q-gram"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("sign change"), "{stderr}");
}

#[test]
fn audit_small_run_is_clean_and_deterministic() {
    let args = ["audit", "--samples", "50", "--seed", "3"];
    let (code, out_a, _) = run(&args);
    assert_eq!(code, 0);
    assert!(out_a.starts_with("audit dims=2x2 samples=50 seed=3\n"));
    assert!(out_a.ends_with("ok\n"));
    let (_, out_b, _) = run(&args);
    assert_eq!(out_a, out_b);
}

#[test]
fn audit_rejects_malformed_dims() {
    let (code, _, stderr) = run(&["audit", "--dims", "2by2"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("dims"));
}

#[test]
fn plot_emits_deterministic_script() {
    let csv_path = temp_file("sweep-for-plot.csv");
    let (code, _, _) = run(&["sweep", "--steps", "21", "--out", csv_path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (code, script_a, _) = run(&["plot", csv_path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(script_a.contains("using \"param\":\"f\""));
    assert!(script_a.contains("set arrow 1"), "threshold marker missing");
    let (_, script_b, _) = run(&["plot", csv_path.to_str().unwrap()]);
    assert_eq!(script_a, script_b);
}

#[test]
fn plot_rejects_empty_or_malformed_csv() {
    let empty = temp_file("empty.csv");
    std::fs::write(&empty, "").unwrap();
    let (code, _, _) = run(&["plot", empty.to_str().unwrap()]);
    assert_eq!(code, 1);

    let header_only = temp_file("header-only.csv");
    std::fs::write(&header_only, "param,f\n").unwrap();
    let (code, _, _) = run(&["plot", header_only.to_str().unwrap()]);
    assert_eq!(code, 1);

    let ragged = temp_file("ragged.csv");
    std::fs::write(&ragged, "param,f\n0.0\n").unwrap();
    let (code, _, stderr) = run(&["plot", ragged.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(!stderr.is_empty());
}

#[test]
fn usage_errors_exit_one_and_help_exits_zero() {
    let (code, _, _) = run(&["no-such-command"]);
    assert_eq!(code, 1);
    let (code, stdout, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("analyze"));
    assert!(stdout.contains("threshold"));
}
