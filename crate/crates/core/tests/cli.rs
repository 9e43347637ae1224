use std::process::Command;

use tempfile::tempdir;

fn protkern(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_protkern")).args(args).output().expect("binary runs")
}

#[test]
fn kernelize_writes_report_and_kernel() {
    let dir = tempdir().unwrap();
    let report = dir.path().join("report.json");
    let kernel = dir.path().join("kernel.txt");
    let cache = dir.path().join("cache.txt");
    let out = protkern(&[
        "kernelize", "--problem", "vc", "--k", "6", "--t", "1", "--family", "star-of-paths:3,12",
        "--cache", cache.to_str().unwrap(), "--report", report.to_str().unwrap(), "--out", kernel.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(doc["input"]["n"], 37);
    assert!(doc["output"]["n"].as_u64().unwrap() < 37);
    assert!(!doc["steps"].as_array().unwrap().is_empty());
    assert!(doc["wall_ms"].is_u64());
    assert!(std::fs::metadata(&cache).unwrap().len() > 0);
}

#[test]
fn gen_then_verify_round_trip() {
    let dir = tempdir().unwrap();
    let graph = dir.path().join("g.txt");
    let g = graph.to_str().unwrap();
    assert!(protkern(&["gen", "--family", "grid:2,3", "--out", g]).status.success());
    let ok = protkern(&["verify", "--problem", "vc", "--k", "3", "--input", g, "--kernel", g]);
    assert!(ok.status.success());
    let report: serde_json::Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(report["agree"], true);
    // A wrong kernel parameter flips the answer.
    let bad = protkern(&["verify", "--problem", "vc", "--k", "3", "--kernel-k", "2", "--input", g, "--kernel", g]);
    assert_eq!(bad.status.code(), Some(3));
}

#[test]
fn sweep_writes_csv() {
    let dir = tempdir().unwrap();
    let report = dir.path().join("sweep.csv");
    let out = protkern(&["sweep", "--problem", "ds", "--family", "star-of-paths:k,10", "--k-list", "2,4", "--report", report.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&report).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.starts_with("k,n_original"));
}

#[test]
fn exit_codes_for_bad_input() {
    let dir = tempdir().unwrap();
    let graph = dir.path().join("bad.txt");
    std::fs::write(&graph, "3 2\n0 1\n").unwrap();
    let out = protkern(&["kernelize", "--problem", "vc", "--k", "1", "--input", graph.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(protkern(&["kernelize", "--problem", "nope", "--k", "1", "--family", "grid:2,2"]).status.code(), Some(2));
    assert_eq!(protkern(&["gen", "--family", "grid:x", "--out", "/dev/null"]).status.code(), Some(2));
    assert_eq!(protkern(&["frobnicate"]).status.code(), Some(2));

    let big = dir.path().join("big.txt");
    assert!(protkern(&["gen", "--family", "path:30", "--out", big.to_str().unwrap()]).status.success());
    let b = big.to_str().unwrap();
    let out = protkern(&["verify", "--problem", "ds", "--k", "10", "--input", b, "--kernel", b]);
    assert_eq!(out.status.code(), Some(3));
}
