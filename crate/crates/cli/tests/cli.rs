//! End-to-end tests of the `squares` binary: exit codes, report schemas,
//! and byte-stable output for fixed seeds (timings masked).

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn squares(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_squares"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Parse a JSON report and zero every elapsed_ms so runs compare equal.
fn masked_json(text: &str) -> Value {
    fn mask(v: &mut Value) {
        match v {
            Value::Object(map) => {
                if let Some(e) = map.get_mut("elapsed_ms") {
                    *e = Value::from(0u64);
                }
                for v in map.values_mut() {
                    mask(v);
                }
            }
            Value::Array(items) => items.iter_mut().for_each(mask),
            _ => {}
        }
    }
    let mut v: Value = serde_json::from_str(text).expect("valid JSON");
    mask(&mut v);
    v
}

fn write_instance(dir: &Path, name: &str, args: &[&str]) {
    let out = squares(args);
    assert!(out.status.success(), "{args:?} failed: {out:?}");
    std::fs::write(dir.join(name), out.stdout).unwrap();
}

#[test]
fn generate_is_deterministic_and_round_trips() {
    let a = squares(&["generate", "wegner", "--s", "19"]);
    let b = squares(&["generate", "wegner", "--s", "19"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "same parameters, same bytes");
    let text = stdout(&a);
    let g = squares_core::generators::parse_rotation(&text).unwrap();
    assert_eq!(g.vertex_count(), 58);
    assert_eq!(squares_core::generators::serialize_rotation(&g), text);

    let r1 = squares(&["generate", "random", "--n", "30", "--seed", "9"]);
    let r2 = squares(&["generate", "random", "--n", "30", "--seed", "9"]);
    assert_eq!(r1.stdout, r2.stdout);
}

#[test]
fn generate_random_n4_is_k4() {
    let out = squares(&["generate", "random", "--n", "4", "--seed", "123"]);
    let g = squares_core::generators::parse_rotation(&stdout(&out)).unwrap();
    assert_eq!(g.vertex_count(), 4);
    assert_eq!(g.edge_count(), 6);
}

#[test]
fn solve_reports_wegner_clique_number() {
    let dir = tempfile::tempdir().unwrap();
    write_instance(dir.path(), "w19.rot", &["generate", "wegner", "--s", "19"]);
    let input = dir.path().join("w19.rot");
    let out = squares(&["solve", "--input", input.to_str().unwrap()]);
    assert!(out.status.success());
    let report = masked_json(&stdout(&out));
    assert_eq!(report["omega"], 58);
    assert_eq!(report["D"], 38);
    assert_eq!(report["threshold"], 58);
    assert_eq!(report["applicable"], true);
    assert_eq!(report["slack"], 0);
    assert_eq!(report["triple"].as_array().unwrap().len(), 3);
    assert_eq!(report["v"], 1);
    let sizes = report["partition_sizes"].as_object().unwrap();
    let total: u64 = ["T", "W", "X", "Y", "Z"]
        .iter()
        .map(|k| sizes[*k].as_u64().unwrap())
        .sum();
    assert_eq!(total, 58);

    // Deterministic output modulo timing.
    let again = squares(&["solve", "--input", input.to_str().unwrap()]);
    assert_eq!(report, masked_json(&stdout(&again)));

    // The exact oracle agrees.
    let exact = squares(&["solve", "--exact", "--input", input.to_str().unwrap()]);
    assert_eq!(masked_json(&stdout(&exact))["omega"], 58);
}

#[test]
fn solve_rejects_bad_degree_budget() {
    let dir = tempfile::tempdir().unwrap();
    write_instance(dir.path(), "w19.rot", &["generate", "wegner", "--s", "19"]);
    let input = dir.path().join("w19.rot");
    let out = squares(&["solve", "--input", input.to_str().unwrap(), "--d", "20"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_batch_counts_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    write_instance(
        dir.path(),
        "a_w20.rot",
        &["generate", "wegner", "--s", "20"],
    );
    write_instance(
        dir.path(),
        "b_tri.rot",
        &["generate", "random", "--n", "40", "--seed", "3"],
    );
    let out = squares(&[
        "verify",
        "--dir",
        dir.path().to_str().unwrap(),
        "--jobs",
        "2",
    ]);
    assert!(out.status.success(), "{out:?}");
    let report = masked_json(&stdout(&out));
    assert_eq!(report["summary"]["total"], 2);
    assert_eq!(report["summary"]["pass"], 1);
    assert_eq!(report["summary"]["not_applicable"], 1);
    assert_eq!(report["summary"]["fail"], 0);
    let records = report["records"].as_array().unwrap();
    assert_eq!(records[0]["instance"], "a_w20.rot");
    assert_eq!(records[0]["status"], "PASS");
    assert_eq!(records[1]["status"], "NOT-APPLICABLE");
    assert!(records[0]["degeneracy_k"].as_u64().unwrap() <= 5);

    // A corrupted file is recorded and flips the exit code to 2.
    std::fs::write(dir.path().join("c_bad.rot"), "0 1 2 not a rotation\n").unwrap();
    let out = squares(&["verify", "--dir", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let report = masked_json(&stdout(&out));
    assert_eq!(report["summary"]["parse_errors"], 1);
    assert_eq!(report["summary"]["total"], 3);
}

#[test]
fn verify_empty_directory_is_success() {
    let dir = tempfile::tempdir().unwrap();
    let out = squares(&["verify", "--dir", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    let report = masked_json(&stdout(&out));
    assert_eq!(report["summary"]["total"], 0);
}

#[test]
fn color_validates_both_methods() {
    let dir = tempfile::tempdir().unwrap();
    write_instance(dir.path(), "w10.rot", &["generate", "wegner", "--s", "10"]);
    let input = dir.path().join("w10.rot");
    let out = squares(&["color", "--input", input.to_str().unwrap()]);
    assert!(out.status.success());
    let report = masked_json(&stdout(&out));
    let records = report["records"].as_array().unwrap();
    assert_eq!(records.len(), 2);
    for r in records {
        assert_eq!(r["proper"], true);
        assert_eq!(r["within_bound"], true);
        assert!(r["count"].as_u64().unwrap() >= 31); // omega of the square
    }
}

#[test]
fn solve_edge_list_runs_exact_search_directly() {
    let dir = tempfile::tempdir().unwrap();
    // K5 plus an isolated vertex, in edge-list format.
    let mut text = String::from("6 10\n");
    for u in 0..5 {
        for v in u + 1..5 {
            text.push_str(&format!("{u} {v}\n"));
        }
    }
    let path = dir.path().join("k5.edges");
    std::fs::write(&path, text).unwrap();
    let out = squares(&["solve", "--edges", "--input", path.to_str().unwrap()]);
    assert!(out.status.success(), "{out:?}");
    let report = masked_json(&stdout(&out));
    assert_eq!(report["omega"], 5);
    assert_eq!(report["S"].as_array().unwrap().len(), 5);
}

#[test]
fn usage_errors_exit_2() {
    let out = squares(&["solve"]);
    assert_eq!(out.status.code(), Some(2));
    let out = squares(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}
