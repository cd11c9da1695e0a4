//! The `qhecke` binary: output, exit codes and suite runs.

use std::process::{Command, Output};

use serde_json::Value;

fn qhecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhecke")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn klr_mul_prints_normal_form() {
    let out = qhecke(&["klr", "mul", "s1 * 1(i,i)", "x1 * 1(i,i)"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["text"], "1(i,i) + x2 * s1 * 1(i,i)");
    assert_eq!(v["degree"], 0);
    let out = qhecke(&["--pretty", "klr", "mul", "s1*s1*1(i,j)"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "x2 * 1(i,j) + x1 * 1(i,j)");
}

#[test]
fn pairing_and_dimensions() {
    let v = json_of(&qhecke(&["uplus", "pair", "--u", "E(i)*E(j)", "--v", "E(j)*E(i)"]));
    assert_eq!(v["agree"], true);
    assert_eq!(v["pairing"]["den"], serde_json::json!([2, 2]));
    let v = json_of(&qhecke(&["--nu", "2i+2j", "uplus", "dim"]));
    assert_eq!((v["dim"].as_u64(), v["kostant"].as_u64()), (Some(3), Some(3)));
    let v = json_of(&qhecke(&["--graph", "A3", "uplus", "serre", "--i", "i", "--j", "j"]));
    assert_eq!((v["holds"].as_bool(), v["inner"].as_i64()), (Some(true), Some(-1)));
}

#[test]
fn isomorphisms_from_the_command_line() {
    let out = qhecke(&["--graph", "edgeless2", "klr", "iso", "--left", "ij", "--right", "ji"]);
    assert_eq!(out.status.code(), Some(0));
    let out = qhecke(&["klr", "iso", "--left", "iji:1,iji:-1", "--right", "iij,jii"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    // no isomorphism without the shifts
    let out = qhecke(&["klr", "iso", "--left", "iji,iji", "--right", "iij,jii"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn checks_report_through_exit_codes() {
    assert_eq!(qhecke(&["hecke", "verify", "-n", "4"]).status.code(), Some(0));
    assert_eq!(qhecke(&["nilhecke", "check", "-m", "2"]).status.code(), Some(0));
    assert_eq!(qhecke(&["--nu", "i+j", "--max-degree", "3", "klr", "verify-relations"]).status.code(), Some(0));
    let flipped = qhecke(&["--nu", "2i+j", "--max-degree", "3", "--r7-sign", "-1", "klr", "verify-relations"]);
    assert_eq!(flipped.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["klr", "mul", "x9*1(i)"][..],
        &["klr", "mul", "x1 +"],
        &["--graph", "nowhere.graph", "uplus", "dim"],
        &["uplus", "dim"],
        &["--r7-sign", "3", "klr", "mul", "1(i)"],
        &["hecke", "mul", "-n", "2", "T[2]"],
        &["frobnicate"],
    ] {
        let out = qhecke(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn odd_cycles_warn() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tri.graph");
    std::fs::write(&path, "vertices: a b c\nedges: a-b b-c c-a\n").unwrap();
    let out = qhecke(&["--graph", path.to_str().unwrap(), "--nu", "a+b", "uplus", "dim"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn small_suite_run() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("suite.toml");
    std::fs::write(&cfg, "graphs = [\"A2\", \"edgeless2\"]\nmax_strands = 3\nmax_degree = 4\nmax_weight = 3\ntriples = 30\nsamples = 10\ncriteria = [1, 2, 3, 7, 8, 9]\n").unwrap();
    let out = qhecke(&["suite", "run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json_of(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 6);
}

#[test]
fn flipped_sign_suite_fails() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("suite.toml");
    std::fs::write(&cfg, "graphs = [\"A2\"]\nmax_strands = 3\nmax_degree = 3\nsamples = 5\ncriteria = [1]\n\n[ledger]\nr7_sign = -1\n").unwrap();
    let out = qhecke(&["suite", "run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["criteria"][0]["passed"], false);
    assert!(v["criteria"][0]["failure_count"].as_u64().unwrap() > 0);
}

#[test]
fn bad_suite_config_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("suite.toml");
    std::fs::write(&cfg, "max_strands = \"four\"\n").unwrap();
    assert_eq!(qhecke(&["suite", "run", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(qhecke(&["suite", "run", "--config", dir.path().join("none.toml").to_str().unwrap()]).status.code(), Some(2));
}
