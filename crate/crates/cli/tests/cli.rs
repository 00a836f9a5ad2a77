use std::path::Path;
use std::process::{Command, Output};

fn qgca(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgca")).args(args).env_remove("QGCA_MAX_DEPTH").output().unwrap()
}

fn text(b: &[u8]) -> String {
    String::from_utf8_lossy(b).into_owned()
}

fn mat_seed(dir: &Path, k: usize, j: usize) -> String {
    let path = dir.join(format!("mat{}{}.json", k, j));
    let out = qgca(&["mat-seed", "--k", &k.to_string(), "--j", &j.to_string(), "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", text(&out.stderr));
    path.to_str().unwrap().to_string()
}

#[test]
fn mat_seed_reports_entries() {
    let out = qgca(&["mat-seed", "--k", "2", "--j", "2"]);
    assert!(out.status.success());
    assert!(text(&out.stderr).contains("4 entries, 1 mutable"));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 4);
    assert_eq!(v["realization"]["algebra"], "mat");
}

#[test]
fn size_guard_is_a_usage_error() {
    assert_eq!(qgca(&["mat-seed", "--k", "5", "--j", "5"]).status.code(), Some(2));
    assert_eq!(qgca(&["grassmannian", "--k", "3", "--n", "8"]).status.code(), Some(2));
}

#[test]
fn mutation_traces_and_reverses() {
    let dir = tempfile::tempdir().unwrap();
    let seed = mat_seed(dir.path(), 2, 2);
    let once = qgca(&["mutate", &seed, "--sequence", "(1,1)"]);
    assert!(once.status.success());
    assert!(text(&once.stderr).contains("realised: X11"));

    let twice = qgca(&["mutate", &seed, "--sequence", "(1,1), (1,1)"]);
    assert!(twice.status.success());
    assert_eq!(text(&twice.stdout), std::fs::read_to_string(&seed).unwrap());
}

#[test]
fn frozen_and_unknown_vertices_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let seed = mat_seed(dir.path(), 2, 2);
    let frozen = qgca(&["mutate", &seed, "--sequence", "(2,2)"]);
    assert_eq!(frozen.status.code(), Some(2));
    assert!(text(&frozen.stderr).contains("frozen"));
    assert_eq!(qgca(&["mutate", &seed, "--sequence", "(7,7)"]).status.code(), Some(2));
}

#[test]
fn enumerate_mat33() {
    let dir = tempfile::tempdir().unwrap();
    let seed = mat_seed(dir.path(), 3, 3);
    let out = qgca(&["enumerate", &seed]);
    assert!(out.status.success(), "{}", text(&out.stderr));
    let s = text(&out.stdout);
    assert!(s.contains("seeds: 50"));
    assert!(s.contains("variables: 16"));
    assert!(s.contains("closure: complete"));
    assert!(!s.contains("fail"));
}

#[test]
fn depth_cap_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let seed = mat_seed(dir.path(), 3, 3);
    let out = Command::new(env!("CARGO_BIN_EXE_qgca")).args(["enumerate", &seed]).env("QGCA_MAX_DEPTH", "1").output().unwrap();
    assert!(text(&out.stdout).contains("capped at depth 1"));
    let flag = Command::new(env!("CARGO_BIN_EXE_qgca"))
        .args(["enumerate", &seed, "--max-depth", "20"])
        .env("QGCA_MAX_DEPTH", "1")
        .output()
        .unwrap();
    assert!(text(&flag.stdout).contains("closure: complete"));
    let bad = Command::new(env!("CARGO_BIN_EXE_qgca")).args(["enumerate", &seed]).env("QGCA_MAX_DEPTH", "x").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn grassmannian_24() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gr24.json");
    let out = qgca(&["grassmannian", "--k", "2", "--n", "4", "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", text(&out.stdout));
    let s = text(&out.stdout);
    assert!(!s.contains("FAIL"));
    assert!(s.contains("Plücker coverage 6/6"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["realization"]["algebra"], "loc");
    assert!(v["realization"]["cluster"].as_array().unwrap().iter().all(|x| x["denominator"] == 0));
    let e = qgca(&["enumerate", path.to_str().unwrap()]);
    assert!(e.status.success());
    assert!(text(&e.stdout).contains("variables: 2"));
}

#[test]
fn files_round_trip_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let seed = mat_seed(dir.path(), 2, 3);
    let out = dir.path().join("m.json");
    let once = qgca(&["mutate", &seed, "--sequence", "(1,2),(1,1)", "--out", out.to_str().unwrap()]);
    assert!(once.status.success());
    let back = qgca(&["mutate", out.to_str().unwrap(), "--sequence", "(1,1),(1,2)"]);
    assert_eq!(text(&back.stdout), std::fs::read_to_string(&seed).unwrap());
}

#[test]
fn verify_passes() {
    let out = qgca(&["verify", "--cases", "50"]);
    assert!(out.status.success(), "{}", text(&out.stdout));
    assert_eq!(text(&out.stdout).lines().filter(|l| l.starts_with("PASS")).count(), 8);
}
