use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hh1lab(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hh1lab"))
        .args(args)
        .env("HH1LAB_CACHE", cache)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn blocks_command() {
    let dir = tempfile::tempdir().unwrap();
    let out = hh1lab(dir.path(), &["blocks", "--group", "A4", "--prime", "2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["result"]["num_blocks"], 1);
    assert_eq!(v["result"]["blocks"][0]["defect"], 2);
}

#[test]
fn hh1_command_with_group_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("v4.grp");
    std::fs::write(&file, "degree 4\n2 1 4 3\n3 4 1 2\n").unwrap();
    let out = hh1lab(dir.path(), &["hh1", "--group", file.to_str().unwrap(), "--prime", "2", "--method", "both"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["result"]["total_hh1"], 8);
    assert_eq!(v["result"]["consistency"]["oracle_matches_solver"], true);
}

#[test]
fn happel_commands() {
    let dir = tempfile::tempdir().unwrap();
    let out = hh1lab(dir.path(), &["happel", "--group-as-category", "C2", "--prime", "2", "--degrees", "4"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["result"]["hh_dims"], serde_json::json!([2, 2, 2, 2, 2]));

    let out = hh1lab(dir.path(), &["happel", "--transporter", "C2", "--points", "3", "--prime", "2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["result"]["frobenius"]["certificate"]["symmetric"], true);
    assert!(v["result"]["restriction"].as_array().unwrap().iter().all(|d| d["injective"] == true));

    // the groupoid is equivalent to a point, so restriction from C3 is not injective at p=3
    let out = hh1lab(dir.path(), &["happel", "--transporter", "C3", "--natural", "--prime", "3"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["result"]["euler_invertible"], false);
    assert_eq!(v["result"]["hypotheses_hold"], false);
    assert_eq!(v["result"]["happel_consistent"], true);

    let cat = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/poset_a_to_b.cat");
    let out = hh1lab(dir.path(), &["happel", "--category", cat.to_str().unwrap(), "--prime", "2"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["result"]["frobenius"]["certificate"], Value::Null);
}

#[test]
fn tensor_command() {
    let dir = tempfile::tempdir().unwrap();
    let out = hh1lab(dir.path(), &["tensor", "--group", "C2", "--group", "C2", "--prime", "2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["result"]["kuenneth"], 8);
    assert_eq!(v["result"]["product_group_solver"], 8);
}

#[test]
fn report_reruns_are_identical_and_cached() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let first = hh1lab(&cache, &["report", "--primes", "2,3", "--jobs", "2", "--out", a.to_str().unwrap()]);
    assert!(first.status.success());
    assert!(String::from_utf8_lossy(&first.stderr).contains("0 hits, 22 misses"));
    let second = hh1lab(&cache, &["report", "--primes", "2,3", "--out", b.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&second.stderr).contains("22 hits, 0 misses"));
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn empty_manifest_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("manifest.toml");
    std::fs::write(&m, "# nothing\n").unwrap();
    let out = hh1lab(dir.path(), &["report", "--manifest", m.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(json(&out)["result"]["entries"], serde_json::json!([]));
}

#[test]
fn failures_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let out = hh1lab(dir.path(), &["blocks", "--group", "S3", "--prime", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!json(&out)["errors"].as_array().unwrap().is_empty());
    let out = hh1lab(dir.path(), &["hh1", "--group", "nosuchgroup", "--prime", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let out = hh1lab(dir.path(), &["tensor", "--group", "C2", "--prime", "2"]);
    assert_eq!(out.status.code(), Some(2));
    // S8 exceeds the default element cap
    let out = hh1lab(dir.path(), &["hh1", "--group", "S8", "--prime", "2", "--method", "oracle"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn allow_large_prints_estimate() {
    let dir = tempfile::tempdir().unwrap();
    let out = hh1lab(dir.path(), &["hh1", "--group", "S8", "--prime", "2", "--method", "oracle", "--allow-large"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("memory estimate"));
    assert!(out.status.success());
    assert!(json(&out)["result"]["oracle_hh1"].as_u64().unwrap() > 0);
}
