use std::process::Command;

use serde_json::Value;

fn mdim(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_mdim"))
        .args(args)
        .env_remove("MDIM_THREADS")
        .output()
        .expect("binary runs");
    let code = out.status.code().expect("exit code");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let record = if code == 2 {
        Value::Null
    } else {
        serde_json::from_str(stdout.trim()).expect("one JSON record on stdout")
    };
    (code, record)
}

#[test]
fn verify_resolving_set_exits_zero() {
    let (code, rec) = mdim(&["verify", "--n", "5", "--set", "01000,00100,00010,00001"]);
    assert_eq!(code, 0);
    assert_eq!(rec["schema_version"], "1");
    assert_eq!(rec["command"], "verify");
    assert_eq!(rec["result"]["resolving"], true);
    assert!(rec["elapsed_ms"].is_u64());
}

#[test]
fn verify_reports_witness_and_exits_one() {
    let (code, rec) = mdim(&["verify", "--n", "6", "--set", "000000,111000,000111"]);
    assert_eq!(code, 1);
    let w = &rec["result"]["witness"];
    assert_eq!(w["u"], "100000");
    assert_eq!(w["v"], "010000");
    assert_eq!(w["distance_vector"], serde_json::json!([1, 2, 4]));
}

#[test]
fn fast_flag_gives_same_verdict() {
    let set = "0000000000,1100000000,1010000000,1001000000";
    let (slow, a) = mdim(&["verify", "--n", "10", "--set", set]);
    let (fast, b) = mdim(&["verify", "--n", "10", "--set", set, "--fast"]);
    assert_eq!(slow, fast);
    assert_eq!(a["result"]["witness"], b["result"]["witness"]);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(mdim(&["verify", "--n", "40", "--set", "0"]).0, 2);
    assert_eq!(mdim(&["verify", "--n", "3", "--set", "0101"]).0, 2);
    assert_eq!(mdim(&["construct", "--name", "nope", "--n", "5"]).0, 2);
    assert_eq!(mdim(&["dimension", "--n", "9"]).0, 2);
    assert_eq!(mdim(&[]).0, 2);
}

#[test]
fn dimension_of_q5_is_four() {
    let (code, rec) = mdim(&["--threads", "1", "dimension", "--n", "5"]);
    assert_eq!(code, 0);
    assert_eq!(rec["result"]["min_size"], 4);
    assert_eq!(rec["result"]["exhaustive"], true);
}

#[test]
fn hypercube_edges_round_trip_through_graph_verify() {
    let out = Command::new(env!("CARGO_BIN_EXE_mdim"))
        .args(["hypercube-edges", "--n", "4"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q4.txt");
    std::fs::write(&path, &out.stdout).unwrap();
    let path = path.to_str().unwrap();
    // Indices 0, 1, 2, 4 are 0000, 1000, 0100, 0010.
    assert_eq!(mdim(&["graph-verify", "--graph", path, "--set", "0,1,2,4"]).0, 0);
    assert_eq!(mdim(&["graph-verify", "--graph", path, "--set", "0,15"]).0, 1);
}
