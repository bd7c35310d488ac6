//! Integration tests for the command-line contract: schemas, determinism,
//! exit codes, and round trips.

use std::process::Command;

use quiverlab::{projective, random_rep, DimVector, Quiver, Rep};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quiverlab"))
}

#[test]
fn sequences_values_and_determinism() {
    let run = || {
        bin()
            .args(["sequences", "--m", "6", "--count", "3"])
            .output()
            .unwrap()
    };
    let a = run();
    assert!(a.status.success());
    let text = String::from_utf8(a.stdout.clone()).unwrap();
    assert_eq!(
        text,
        "{\"I\":[[0,1],[1,6],[6,35]],\"P\":[[1,0],[6,1],[35,6]],\"count\":3,\"m\":6}\n"
    );
    let b = run();
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn roots_tsv_rows_sorted() {
    let out = bin()
        .args(["roots", "--m", "3", "--bound", "10", "--format", "tsv"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "0\t1\n1\t0\n1\t3\n3\t1\n3\t8\n8\t3\n");
}

#[test]
fn roots_from_quiver_file() {
    let dir = std::env::temp_dir().join("quiverlab-cli-test-roots");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("quiver.json");
    std::fs::write(&path, r#"{"vertices": 2, "arrows": [[1,2]]}"#).unwrap();
    let out = bin()
        .args(["roots", "--in", path.to_str().unwrap(), "--bound", "3", "--format", "tsv"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "0\t1\n1\t0\n1\t1\n");
}

#[test]
fn rigid_small_classification() {
    let out = bin()
        .args(["rigid", "--m", "2", "--bound", "5", "--seed", "0", "--format", "tsv"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(
        rows,
        vec![
            "0\t1", "1\t0", "1\t2", "2\t1", "2\t3", "3\t2", "3\t4", "4\t3", "4\t5", "5\t4"
        ]
    );
}

#[test]
fn hom_round_trip_through_dump() {
    let q = Quiver::kronecker(3);
    let x = projective(&q, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let y = random_rep(&q, &DimVector(vec![2, 2]), 7, &mut rng).unwrap();
    let dir = std::env::temp_dir().join("quiverlab-cli-test-hom");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pair.json");
    let payload = serde_json::json!({
        "x": serde_json::to_value(&x).unwrap(),
        "y": serde_json::to_value(&y).unwrap(),
    });
    std::fs::write(&path, serde_json::to_string(&payload).unwrap()).unwrap();

    let out = bin()
        .args(["hom", "--in", path.to_str().unwrap(), "--dump"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // Hom out of a projective is evaluation at its vertex.
    assert_eq!(v["hom"], 2);
    assert_eq!(v["ext"], 0);
    let x_back: Rep = serde_json::from_value(v["x"].clone()).unwrap();
    let y_back: Rep = serde_json::from_value(v["y"].clone()).unwrap();
    assert_eq!(x_back, x);
    assert_eq!(y_back, y);
}

#[test]
fn input_errors_exit_2_with_no_output() {
    let dir = std::env::temp_dir().join("quiverlab-cli-test-bad");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, "{not json").unwrap();
    let out = bin()
        .args(["hom", "--in", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());

    // cyclic quiver is rejected at construction
    let path = dir.join("cyclic.json");
    std::fs::write(&path, r#"{"vertices": 2, "arrows": [[1,2],[2,1]]}"#).unwrap();
    let out = bin()
        .args(["roots", "--in", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());

    let out = bin().args(["roots", "--m", "0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    // recurrence seeds need at least two terms
    let out = bin()
        .args(["sequences", "--m", "3", "--count", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());

    // flag ranges are part of the contract
    let out = bin()
        .args(["rigid", "--m", "3", "--bound", "0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_without_campaigns_is_empty() {
    let out = bin().args(["verify"]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "[]\n");
}

#[test]
fn cluster_and_mutate_are_deterministic() {
    let run = |args: &[&str]| bin().args(args).output().unwrap().stdout;
    let a = run(&["cluster", "--m", "3", "--window", "3"]);
    let b = run(&["cluster", "--m", "3", "--window", "3"]);
    assert_eq!(a, b);
    let a = run(&["mutate", "--m", "3", "--window", "3", "--format", "tsv"]);
    let b = run(&["mutate", "--m", "3", "--window", "3", "--format", "tsv"]);
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert!(text.ends_with("returned\ttrue\n"));
}
