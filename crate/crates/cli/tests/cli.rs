use std::process::{Command, Output};

use serde_json::Value;

fn dwork(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dwork")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn status_of<'a>(report: &'a Value, name: &str) -> &'a str {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"].as_str().unwrap().ends_with(name))
        .unwrap_or_else(|| panic!("no check {name}"))["status"]
        .as_str()
        .unwrap()
}

#[test]
fn report_schema() {
    let out = dwork(&["params", "--n", "3", "--N", "11"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["command"]["name"], "params");
    assert_eq!(r["command"]["seed"], 0);
    for key in ["pass", "fail", "skipped", "unverified"] {
        assert!(r["summary"][key].is_u64());
    }
    for c in r["checks"].as_array().unwrap() {
        assert!(c["name"].is_string());
        assert!(c.get("certificate").is_some());
        assert!(c["wall_time_ms"].is_number());
    }
}

#[test]
fn failing_check_exits_one() {
    let out = dwork(&["params", "--n", "2", "--N", "7", "--no-timing"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(status_of(&json(&out), "alpha-stability"), "fail");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["params", "--n", "2", "--N", "6"][..],
        &["find-lprime", "--N", "5", "--l", "3", "--n", "2"],
        &["monodromy", "--n", "2", "--N", "5", "--l", "5"],
        &["no-such-command"],
    ] {
        let out = dwork(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn unverified_does_not_fail() {
    let out = dwork(&["find-lprime", "--N", "5", "--l", "3", "--n", "2", "--curve", "0,0,1,-1,0"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert!(r["summary"]["unverified"].as_u64().unwrap() > 0);
    assert_eq!(r["summary"]["fail"], 0);
}

#[test]
fn no_timing_is_byte_stable() {
    let args = ["monodromy", "--n", "2", "--N", "5", "--l", "11", "--no-timing", "--seed", "7"];
    let a = dwork(&args);
    let b = dwork(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(!String::from_utf8_lossy(&a.stdout).contains("wall_time_ms"));
    assert_eq!(json(&a)["command"]["seed"], 7);
}

#[test]
fn text_format() {
    let out = dwork(&["hodge", "--n", "2", "--N", "5", "--twist", "1", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with("dwork hodge"));
    assert!(s.lines().last().unwrap().starts_with("pass "));
}

#[test]
fn find_n_example() {
    let out = dwork(&["find-n", "--l", "3", "--s", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("205"));
}
