//! End-to-end tests of the binary: output shapes, exit codes, cache
//! behavior, and byte-level determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn symkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symkit"))
        .args(args)
        .env_remove("SYMKIT_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

#[test]
fn chartab_degree_one() {
    let out = symkit(&["chartab", "--n", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    assert_eq!(v["n"], 1);
    assert_eq!(v["values"], serde_json::json!([["1"]]));
}

#[test]
fn chartab_degree_five_csv() {
    let out = symkit(&["chartab", "--n", "5", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.trim_end().lines().collect();
    assert_eq!(lines.len(), 8); // header + P(5) = 7 rows
    assert!(lines[0].starts_with("\"lambda\\mu\""));
}

#[test]
fn chartab_over_limit_exits_2() {
    let out = symkit(&["chartab", "--n", "99"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn count_identity_class_sym() {
    let out = symkit(&[
        "count", "--n", "4", "--pi", "1,1,1,1", "--class", "1,1,1,1", "--mode", "sym",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    assert_eq!(v["exact"], "24");
    assert_eq!(v["class_size"], "1");
}

#[test]
fn count_with_oracle_agrees() {
    let out = symkit(&[
        "count", "--n", "5", "--pi", "3,1,1", "--class", "3,1,1", "--mode", "alt", "--oracle",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    assert_eq!(v["exact"], v["brute_force"]);
}

#[test]
fn count_splitting_class_exits_3() {
    let out = symkit(&[
        "count",
        "--n",
        "5",
        "--pi",
        "5",
        "--class",
        "1,1,1,1,1",
        "--mode",
        "alt",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn count_bad_type_exits_2() {
    let out = symkit(&[
        "count", "--n", "5", "--pi", "4,2", "--class", "5", "--mode", "sym",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = symkit(&[
        "count", "--n", "5", "--pi", "x", "--class", "5", "--mode", "sym",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn count_csv_rejected() {
    let out = symkit(&[
        "count", "--n", "4", "--pi", "2,2", "--class", "2,2", "--mode", "sym", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tsystems_degree_six_exits_4() {
    let out = symkit(&["tsystems", "--n", "6", "--group", "alt"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn pra_degree_three_census() {
    let out = symkit(&["pra", "--n", "3", "--k", "2", "--group", "alt"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    assert_eq!(v["total"], 8);
    assert_eq!(v["tau_or_kappa"], "kappa");
}

#[test]
fn tsystems_emits_both_summaries() {
    let out = symkit(&["tsystems", "--n", "4", "--group", "alt"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.trim_end().lines().collect();
    assert_eq!(lines.len(), 2);
    let tau: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
    let kappa: serde_json::Value = serde_json::from_str(lines[1]).unwrap();
    assert_eq!(tau["tau_or_kappa"], "tau");
    assert_eq!(kappa["tau_or_kappa"], "kappa");
    assert_eq!(tau["total"], kappa["total"]);
}

#[test]
fn verify_unknown_suite_exits_2() {
    let out = symkit(&["verify", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_hardy_ramanujan_reports() {
    let out = symkit(&["verify", "hardy-ramanujan"]);
    assert!(out.status.success());
    for line in stdout_of(&out).trim_end().lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["status"], "report");
        assert_eq!(v["suite"], "hardy-ramanujan");
    }
}

#[test]
fn identical_invocations_are_byte_identical() {
    let a = symkit(&["verify", "hardy-ramanujan"]);
    let b = symkit(&["verify", "hardy-ramanujan"]);
    assert_eq!(a.stdout, b.stdout);
    let a = symkit(&["tsystems", "--n", "4", "--group", "alt", "--threads", "1"]);
    let b = symkit(&["tsystems", "--n", "4", "--group", "alt", "--threads", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn table_cache_roundtrip_and_corruption() {
    let dir: PathBuf =
        std::env::temp_dir().join(format!("symkit-cache-test-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    let dir_arg = dir.to_str().unwrap();

    let first = symkit(&["chartab", "--n", "6", "--cache", dir_arg]);
    assert!(first.status.success());
    let cache_file = dir.join("chartab-v1-n6.bin");
    assert!(cache_file.exists());

    let second = symkit(&["chartab", "--n", "6", "--cache", dir_arg]);
    assert!(second.status.success());
    assert_eq!(first.stdout, second.stdout);

    // Corrupt the cache: the command warns, recomputes, and still succeeds.
    std::fs::write(&cache_file, b"garbage").unwrap();
    let third = symkit(&["chartab", "--n", "6", "--cache", dir_arg]);
    assert!(third.status.success());
    assert_eq!(first.stdout, third.stdout);
    let stderr = String::from_utf8(third.stderr.clone()).unwrap();
    assert!(stderr.contains("warning"), "stderr: {stderr}");

    // The environment variable provides the default cache directory.
    let envd = Command::new(env!("CARGO_BIN_EXE_symkit"))
        .args(["chartab", "--n", "4"])
        .env("SYMKIT_CACHE_DIR", dir_arg)
        .output()
        .unwrap();
    assert!(envd.status.success());
    assert!(dir.join("chartab-v1-n4.bin").exists());

    let _ = std::fs::remove_dir_all(&dir);
}
