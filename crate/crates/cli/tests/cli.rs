use std::path::PathBuf;
use std::process::{Command, Output};

fn qdeform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdeform")).args(args).output().expect("spawn qdeform")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qdeform-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn relprime_false_exits_zero() {
    let o = qdeform(&["relprime", "--n", "3", "--ell", "3", "--y", "1", "--z", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "false");
    let o = qdeform(&["relprime", "--n", "2", "--ell", "2", "--y", "0", "--z", "1"]);
    assert_eq!(stdout(&o).trim(), "true");
}

/// `e1 f1 = f1 e1 + (w1 − wp1)/(r − s)` with `r − s = 1 − (−1) = 2`.
#[test]
fn nf_commutator() {
    let o = qdeform(&["nf", "--expr", "e1*f1", "--n", "2", "--ell", "2", "--y", "0", "--z", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "(-1/2)*wp1 + (1/2)*w1 + f1*e1");
    let o = qdeform(&["nf", "--expr", "f1*e1 + (1/2)*(w1 - wp1)", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["normal_form"], "(-1/2)*wp1 + (1/2)*w1 + f1*e1");
    assert_eq!(v["schema"], "qdeform/1");
    assert_eq!(v["status"], "pass");
}

#[test]
fn usage_errors_exit_two() {
    let o = qdeform(&["nf", "--expr", "e1", "--bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    let o = qdeform(&["nf", "--expr", "E(2,1)", "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("column 3"));
    let o = qdeform(&["build", "--y", "1", "--z", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_failure_exits_one() {
    let o = qdeform(&["deform", "--algebra", "qplane,star", "--checks", "assoc"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("associativity"));
}

#[test]
fn json_output_is_deterministic() {
    let args = ["verify", "--ell", "3", "--y", "1", "--z", "2", "--suite", "qybe,hexagon,xi", "--format", "json"];
    let a = qdeform(&args);
    let b = qdeform(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["result"]["checks"].as_array().unwrap().len(), 3);
}

#[test]
fn twist_file_round_trip() {
    let path = scratch("F.json");
    let p = path.to_str().unwrap();
    let o = qdeform(&["twist", "--ell", "3", "--y", "1", "--z", "2", "--format", "json", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    let spec = "tensor-trunc,p=3,star";
    let checks = "assoc,mu0,cocycle,unit";
    let from_file = qdeform(&["deform", "--ell", "3", "--y", "1", "--z", "2", "--algebra", spec, "--twist", p, "--checks", checks, "--format", "json"]);
    let builtin = qdeform(&["deform", "--ell", "3", "--y", "1", "--z", "2", "--algebra", spec, "--checks", checks, "--format", "json"]);
    assert_eq!(from_file.status.code(), Some(0));
    let a: serde_json::Value = serde_json::from_slice(&from_file.stdout).unwrap();
    let b: serde_json::Value = serde_json::from_slice(&builtin.stdout).unwrap();
    assert_eq!(a["result"]["product"]["table"], b["result"]["product"]["table"]);
    let o = qdeform(&["deform", "--algebra", spec, "--twist", p]);
    assert_eq!(o.status.code(), Some(2), "parameter mismatch must be rejected");
}

#[test]
fn config_file_with_flag_override() {
    let path = scratch("session.toml");
    std::fs::write(&path, "n = 2\nell = 3\ny = 1\nz = 2\nformat = \"json\"\n").unwrap();
    let c = path.to_str().unwrap();
    let o = qdeform(&["gram", "--zeta", "2", "--config", c]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["params"]["ell"], 3);
    assert_eq!(v["result"]["invertible"], true);
    let o = qdeform(&["gram", "--zeta", "1", "--config", c, "--ell", "2", "--y", "0", "--z", "1", "--format", "text"]);
    assert!(stdout(&o).starts_with("gram((1)) size 1"));
}

#[test]
fn pair_generators() {
    let o = qdeform(&["pair", "--left", "f1", "--right", "e1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).trim().is_empty());
    let o = qdeform(&["pair", "--left", "f1", "--right", "e1*e1"]);
    assert_eq!(stdout(&o).trim(), "0");
}
