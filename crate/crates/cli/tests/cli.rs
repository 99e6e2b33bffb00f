use std::io::Write;
use std::process::{Command, Output, Stdio};

use normlike_cli::{ActionsReport, GoldenReport, QuadReport, VerifyReport};

fn normlike(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_normlike"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json<T: serde::de::DeserializeOwned>(out: &Output) -> T {
    serde_json::from_slice(&out.stdout).expect("valid JSON report")
}

#[test]
fn feasible_pair_gets_a_witness() {
    let out = normlike(&["--format", "json", "feasible", "--group", "cyclic:3", "--class", "13", "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = json(&out);
    assert_eq!(v["status"], "feasible-witness");
    assert!(v["witness"].is_object());
}

#[test]
fn excluded_pair_exits_one() {
    let out = normlike(&["feasible", "--group", "cyclic:5", "--class", "7"]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(normlike(&["quad", "class", "-D", "5"]).status.code(), Some(2));
    assert_eq!(normlike(&["abelian", "0,x"]).status.code(), Some(2));
    assert_eq!(normlike(&["feasible", "--group", "nonsense:1", "--class", "2"]).status.code(), Some(2));
}

#[test]
fn localizing_at_two_halves_the_class_group() {
    let out = normlike(&["--format", "json", "quad", "localize", "-D", "-56", "--invert", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r: QuadReport = json(&out);
    assert_eq!(r.h, 4);
    assert_eq!(r.localized, Some(vec![2]));
    let again: QuadReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(again, r);
}

#[test]
fn chain_for_minus_56() {
    let out = normlike(&["--format", "json", "quad", "chain", "-D", "-56"]);
    let r: QuadReport = json(&out);
    let steps = r.steps.unwrap();
    assert_eq!(steps.len(), 2);
    assert_eq!(steps[1].element.to_string(), "2 + √-14");
    assert!(steps[1].class_group_after.is_empty());
}

#[test]
fn enumerated_actions_verify() {
    let out = normlike(&["--format", "json", "actions", "enumerate", "--group", "cyclic:3", "--class", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let r: ActionsReport = json(&out);
    assert_eq!(r.count, 2);
    for rec in &r.actions {
        let mut child = Command::new(env!("CARGO_BIN_EXE_normlike"))
            .args(["--format", "json", "actions", "verify", "-"])
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .spawn()
            .unwrap();
        child
            .stdin
            .take()
            .unwrap()
            .write_all(serde_json::to_string(rec).unwrap().as_bytes())
            .unwrap();
        let out = child.wait_with_output().unwrap();
        assert_eq!(out.status.code(), Some(0));
        let v: VerifyReport = json(&out);
        assert!(v.valid);
    }
}

#[test]
fn broken_action_is_rejected() {
    let rec = r#"{"group_spec":"cyclic:3","abelian_factors":[7],"assignment":[[[1]],[[3]],[[4]]]}"#;
    let path = std::env::temp_dir().join(format!("normlike-broken-{}.json", std::process::id()));
    std::fs::write(&path, rec).unwrap();
    let out = normlike(&["--format", "json", "actions", "verify", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(1));
    let v: VerifyReport = json(&out);
    assert_eq!(v.condition, Some(1));
}

#[test]
fn empty_search_exits_one() {
    let out = normlike(&["actions", "enumerate", "--group", "cyclic:3", "--class", "2", "--count"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn reference_battery_passes() {
    let out = normlike(&["--format", "json", "verify-paper"]);
    assert_eq!(out.status.code(), Some(0));
    let r: GoldenReport = json(&out);
    assert_eq!(r.failed, 0);
    assert!(r.passed >= 20);
}

#[test]
fn group_and_aut_commands() {
    let out = normlike(&["--format", "json", "group", "dihedral:4", "--homs-to", "cyclic:2"]);
    let v: serde_json::Value = json(&out);
    assert_eq!(v["order"], 8);
    assert_eq!(v["homs"]["count"], 4);
    let out = normlike(&["--format", "json", "aut", "count", "2,2,2"]);
    let v: serde_json::Value = json(&out);
    assert_eq!(v["count"], 168);
    let out = normlike(&["aut", "cycle-sums", "7", "3"]);
    assert_eq!(out.status.code(), Some(0));
}
