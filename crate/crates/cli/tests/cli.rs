use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn scenario(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios")
        .join(format!("{name}.json"))
}

fn sconc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sconc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn machine(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--format", "machine"];
    full.extend_from_slice(args);
    let out = sconc(&full);
    let v = serde_json::from_slice(&out.stdout).expect("machine output is JSON");
    (v, out.status.code().expect("exit code"))
}

#[test]
fn decide_exit_codes() {
    for (name, code, outcome) in [
        ("b3s1-odd", 2, "obstructed-km"),
        ("b3s1-even", 0, "concordant"),
        ("s3s1", 0, "concordant"),
        ("z4-schar", 0, "concordant"),
        ("q8-typeII", 0, "concordant"),
    ] {
        let path = scenario(name);
        let (v, got) = machine(&["decide", path.to_str().unwrap()]);
        assert_eq!(got, code, "{name}");
        assert_eq!(v["outcome"], outcome, "{name}");
        assert!(v["final_hash"].is_string());
    }
}

#[test]
fn every_scenario_validates() {
    for name in ["b3s1-odd", "b3s1-even", "s3s1", "z4-schar", "q8-typeII"] {
        let path = scenario(name);
        let out = sconc(&["validate", path.to_str().unwrap()]);
        assert!(out.status.success(), "{name}");
    }
}

#[test]
fn sweep_is_deterministic() {
    let (a, ca) = machine(&["sweep", "--seed", "7", "--count", "40"]);
    let (b, cb) = machine(&["sweep", "--seed", "7", "--count", "40"]);
    assert_eq!((ca, cb), (0, 0));
    assert_eq!(a, b);
    assert_eq!(a["violations"].as_array().map(Vec::len), Some(0));
}

#[test]
fn apply_default_script_replays() {
    let path = scenario("s3s1");
    let (v, code) = machine(&["apply", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let trace = v["trace"].as_array().expect("trace");
    assert_eq!(trace.len(), 3);
    assert!(trace.iter().all(|r| r["pre_hash"].is_string() && r["post_hash"].is_string()));
}

#[test]
fn invalid_scenario_exits_one() {
    let dir = std::env::temp_dir().join(format!("sconc-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"schema": 1, "unexpected": true}"#).unwrap();
    let out = sconc(&["--format", "machine", "decide", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).expect("error JSON");
    assert!(v["error"].is_array());

    let out = sconc(&["validate", dir.join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn bound_reports_small_values() {
    let path = scenario("z4-schar");
    let (v, code) = machine(&["bound", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(v.is_object());
}
