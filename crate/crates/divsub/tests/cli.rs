//! End-to-end tests against the compiled binary, pinning the exit-code
//! contract: 0 found/valid, 1 absent/invalid, 2 input error, 3 budget.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_divsub"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn workdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("divsub-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn witness_formats() {
    let out = run(&["witness", "--kind", "all-ones", "--f", "3", "--q", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "3 2\n1 1\n1\n");

    // star with k defaulted to floor((q-1)/2) = 1: vertex 0 is the center
    let out = run(&["witness", "--kind", "star", "--f", "4", "--q", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "4 3\n1 1 1\n0 0\n0\n");
}

#[test]
fn find_verify_roundtrip() {
    let dir = workdir("roundtrip");
    let host = dir.join("host.w");
    let pattern = dir.join("p2.g");
    let cert = dir.join("cert.json");
    std::fs::write(&host, "3 2\n1 1\n1\n").unwrap();
    std::fs::write(&pattern, "2 1\n0 1\n").unwrap();

    let out = run(&[
        "find",
        "--host", host.to_str().unwrap(),
        "--pattern", pattern.to_str().unwrap(),
        "--json", cert.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = stdout_json(&out);
    assert_eq!(doc["manifest"]["command"], "find");
    assert!(doc["manifest"]["input_hashes"]["host"].is_string());
    assert_eq!(doc["result"]["f"], 3);

    // the emitted document's result is the certificate itself
    let full: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    let cert_only = dir.join("cert-only.json");
    std::fs::write(&cert_only, serde_json::to_string(&full["result"]).unwrap()).unwrap();
    let out = run(&[
        "verify",
        "--host", host.to_str().unwrap(),
        "--pattern", pattern.to_str().unwrap(),
        "--cert", cert_only.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    // tamper with a path so its weight is no longer divisible
    let mut bad = full["result"].clone();
    bad["paths"][0]["vertices"] = serde_json::json!([0, 1]);
    let bad_path = dir.join("bad.json");
    std::fs::write(&bad_path, serde_json::to_string(&bad).unwrap()).unwrap();
    let out = run(&[
        "verify",
        "--host", host.to_str().unwrap(),
        "--pattern", pattern.to_str().unwrap(),
        "--cert", bad_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("weight"));
}

#[test]
fn find_absent_and_budget() {
    let dir = workdir("absent");
    let host = dir.join("host.w");
    let pattern = dir.join("p2.g");
    std::fs::write(&pattern, "2 1\n0 1\n").unwrap();
    std::fs::write(&host, "3 3\n1 1\n1\n").unwrap();

    let out = run(&[
        "find",
        "--host", host.to_str().unwrap(),
        "--pattern", pattern.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&[
        "find",
        "--host", host.to_str().unwrap(),
        "--pattern", pattern.to_str().unwrap(),
        "--budget", "1",
    ]);
    assert_eq!(out.status.code(), Some(3));

    let out = run(&[
        "find",
        "--host", host.to_str().unwrap(),
        "--pattern", pattern.to_str().unwrap(),
        "--finder", "nonsense",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sq_command() {
    let dir = workdir("sq");
    let pattern = dir.join("p2.g");
    std::fs::write(&pattern, "2 1\n0 1\n").unwrap();
    let out = run(&["sq", "--pattern", pattern.to_str().unwrap(), "--q", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = stdout_json(&out);
    assert_eq!(doc["result"]["kind"], "exact");
    assert_eq!(doc["result"]["value"], 3);
    assert_eq!(doc["result"]["witness"], serde_json::json!([2, 1]));
    assert_eq!(doc["manifest"]["guard"], serde_json::json!(1u64 << 24));

    // shard count must not change the answer
    let sharded = run(&[
        "sq", "--pattern", pattern.to_str().unwrap(), "--q", "2", "--shards", "8",
    ]);
    let doc2 = stdout_json(&sharded);
    assert_eq!(doc2["result"]["value"], doc["result"]["value"]);
    assert_eq!(doc2["result"]["witness"], doc["result"]["witness"]);
}

#[test]
fn guard_env_var_is_honored() {
    let dir = workdir("guardenv");
    let pattern = dir.join("p2.g");
    std::fs::write(&pattern, "2 1\n0 1\n").unwrap();
    // a tiny guard makes even the first level unscannable
    let out = bin()
        .args(["sq", "--pattern", pattern.to_str().unwrap(), "--q", "2"])
        .env("DIVSUB_GUARD", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("guard"));
}

#[test]
fn ham_command() {
    let dir = workdir("ham");
    let k4 = dir.join("k4.w");
    // red path 0-1-2-3, everything else blue: the tight counterexample
    std::fs::write(&k4, "4 2\n1 0 0\n1 0\n1\n").unwrap();
    let out = run(&["ham", "--coloring", k4.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    let red6 = dir.join("red6.w");
    std::fs::write(&red6, "6 2\n1 1 1 1 1\n1 1 1 1\n1 1 1\n1 1\n1\n").unwrap();
    let out = run(&["ham", "--coloring", red6.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["result"]["split"]["kind"], "mono");

    let out = run(&["ham", "--exhaustive", "2"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["ham"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bounds_and_input_errors() {
    let out = run(&["bounds", "--n", "2", "--m", "1", "--q", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("lower   4"));
    assert!(text.contains("general 20"));
    assert!(text.contains("prime   4"));

    let out = run(&["bounds", "--n", "2", "--m", "1", "--q", "4"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("prime   n/a"));

    let out = run(&["find", "--host", "/no/such/file", "--pattern", "/none"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}
