//! End-to-end tests of the `tspread` binary: the three golden reports,
//! determinism, table output, and the exit-code contract.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tspread"))
}

fn instance(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../instances")
        .join(name)
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(path).expect("golden file")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn golden_report_example_2_3() {
    let file = instance("example_2_3.json");
    let out = stdout_of(&["report", "--format", "json", file.to_str().unwrap()]);
    assert_eq!(out.trim_end(), golden("example_2_3.report.json").trim_end());
}

#[test]
fn golden_report_example_4_2() {
    let file = instance("example_4_2.json");
    let out = stdout_of(&["report", "--format", "json", file.to_str().unwrap()]);
    assert_eq!(out.trim_end(), golden("example_4_2.report.json").trim_end());
}

#[test]
fn golden_report_remark_4_8() {
    let file = instance("remark_4_8.json");
    let out = stdout_of(&["report", "--format", "json", file.to_str().unwrap()]);
    assert_eq!(out.trim_end(), golden("remark_4_8.report.json").trim_end());
}

#[test]
fn reports_are_deterministic() {
    let file = instance("example_4_2.json");
    let args = ["report", "--format", "json", file.to_str().unwrap()];
    assert_eq!(stdout_of(&args), stdout_of(&args));
}

#[test]
fn generators_table_lists_nine_lines() {
    let file = instance("example_2_3.json");
    let out = stdout_of(&["generators", file.to_str().unwrap()]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 9);
    assert_eq!(lines[0], "x1*x5*x8*x12");
}

#[test]
fn betti_json_matches_regression_values() {
    let file = instance("example_2_3.json");
    let out = stdout_of(&["betti", "--format", "json", file.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["beta"], serde_json::json!([9, 12, 4]));
    assert_eq!(v["depth"], 6);
}

#[test]
fn classify_reports_unmixed_not_cm() {
    let file = instance("remark_4_8.json");
    let out = stdout_of(&["classify", "--format", "json", file.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["unmixed"], true);
    assert_eq!(v["cohen_macaulay"], false);
    assert_eq!(v["konig"], true);
}

#[test]
fn primes_counts_fourteen_on_example_4_2() {
    let file = instance("example_4_2.json");
    let out = stdout_of(&["primes", "--format", "json", file.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["count"], 14);
    assert_eq!(v["height"], 2);
}

#[test]
fn fuzz_exits_clean() {
    let out = run(&["fuzz", "--count", "25", "--seed", "7", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["counterexample"], serde_json::Value::Null);
}

#[test]
fn missing_file_exits_2() {
    let out = run(&["generators", "/nonexistent/input.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_json_exits_2() {
    let path = std::env::temp_dir().join("tspread_bad_input.json");
    std::fs::write(&path, "{ not json").unwrap();
    let out = run(&["generators", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn degenerate_instance_exits_3() {
    // the spread gap 5 cannot be realised between these two parts
    let path = std::env::temp_dir().join("tspread_degenerate.json");
    std::fs::write(&path, r#"{"parts": [[1,1],[2,2]], "t": [5]}"#).unwrap();
    let out = run(&["generators", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn exceeded_budget_exits_4() {
    let file = instance("example_4_2.json");
    let out = run(&["betti", "--budget-gens", "5", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}
