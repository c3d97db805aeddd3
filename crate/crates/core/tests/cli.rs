use std::path::Path;
use std::process::{Command, Output};

use amphicheck::report::{OverallStatus, Report};

fn amphicheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_amphicheck"))
        .args(args)
        .env_remove("AMPHICHECK_MAX_R")
        .output()
        .expect("binary runs")
}

fn generate(dir: &Path, file: &str, args: &[&str]) -> String {
    let path = dir.join(file);
    let path_str = path.to_str().unwrap().to_string();
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", &path_str]);
    let out = amphicheck(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path_str
}

#[test]
fn whitehead_exits_one_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let file = generate(dir.path(), "w.json", &["caa", "1", "-1"]);
    let out = amphicheck(&["check", &file]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("OBSTRUCTED"));
    assert!(text.contains("surgery_sums"));
    assert!(text.contains("witness: I = {1}"));
    assert!(text.trim_end().ends_with("1 record"));
}

#[test]
fn borromean_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let file = generate(dir.path(), "b.json", &["borromean"]);
    let out = amphicheck(&["check", &file, "--format", "json", "--eps", "+,+,+"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.records.len(), 1);
    assert_eq!(report.records[0].overall_status, OverallStatus::Consistent);
    assert!(report.records[0].verdicts.iter().any(|v| v.test_id == "eps_symmetry[+,+,+]"));
    let again = serde_json::to_string(&report).unwrap();
    assert_eq!(serde_json::from_str::<Report>(&again).unwrap(), report);
}

#[test]
fn data_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"[{"name": "x", "components": 2, "linking_matrix": [[0,0],[0,0]], "alexander": "t1 + 3"}]"#,
    )
    .unwrap();
    let out = amphicheck(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("DATA_ERROR"));
    let out = amphicheck(&["check", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fixed_signs_and_test_selection() {
    let dir = tempfile::tempdir().unwrap();
    let file = generate(dir.path(), "b.json", &["milnor", "3"]);
    let out = amphicheck(&[
        "check",
        &file,
        "--sign-mode",
        "fixed:1,2=-/1,2,3=+",
        "--tests",
        "surgery_sums",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("surgery_sums"));
    assert!(!text.contains("duality"));
    let out = amphicheck(&["check", &file, "--sign-mode", "sometimes"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn search_limit_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let file = generate(dir.path(), "b.json", &["borromean"]);
    let out = Command::new(env!("CARGO_BIN_EXE_amphicheck"))
        .args(["check", &file, "--tests", "surgery_sums"])
        .env("AMPHICHECK_MAX_R", "2")
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("N.A."), "{text}");
}

#[test]
fn gen_prints_to_stdout_and_rejects_bad_parameters() {
    let out = amphicheck(&["gen", "fixture", "11n247"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"alexander\": \"0\""));
    assert!(!amphicheck(&["gen", "milnor", "2"]).status.success());
    assert!(!amphicheck(&["gen", "caa", "0", "1"]).status.success());
}
