//! End-to-end tests of the arrspec binary: output shapes, wire formats,
//! exit codes, and the file round trip.

use std::path::PathBuf;
use std::process::{Command, Output};

fn arrspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arrspec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn faces_boolean_3() {
    let out = arrspec(&["faces", "--gen", "boolean", "--dim", "3", "--format", "json"]);
    let v = stdout_json(&out);
    assert_eq!(v["faces"].as_array().unwrap().len(), 27);
    assert_eq!(v["chambers"].as_array().unwrap().len(), 8);
}

#[test]
fn stationary_matches_closed_form() {
    let out = arrspec(&[
        "stationary",
        "--gen",
        "point-on-line",
        "--weights",
        "1/2,1/4,1/4",
        "--format",
        "json",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["stationary"][0], "2/3");
    assert_eq!(v["stationary"][1], "1/3");
    // q = (w+ + w0 + w-) / (w0 w+ w- (w+ + w-)) * (w+, w-) = (64/3, 32/3).
    assert_eq!(v["q"][0], "64/3");
    assert_eq!(v["q"][1], "32/3");
}

#[test]
fn spectrum_three_lines_shape() {
    let out = arrspec(&[
        "spectrum", "--gen", "three-lines", "--weights", "random", "--seed", "7", "--format",
        "json",
    ]);
    let v = stdout_json(&out);
    let packages = v["packages"].as_array().unwrap();
    assert_eq!(packages.len(), 5);
    let mults: Vec<u64> = packages
        .iter()
        .map(|p| p["multiplicity"].as_u64().unwrap())
        .collect();
    assert_eq!(mults, vec![1, 1, 1, 1, 2]);
    let total_vectors: usize = packages
        .iter()
        .map(|p| p["eigenvectors"].as_array().unwrap().len())
        .sum();
    assert_eq!(total_vectors, 6);
}

#[test]
fn eigenvectors_single_flat() {
    let out = arrspec(&[
        "eigenvectors",
        "--gen",
        "three-lines",
        "--flat",
        "0",
        "--weights",
        "uniform",
        "--format",
        "json",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["flat"], serde_json::json!([0]));
    assert_eq!(v["multiplicity"], 1);
    // Uniform weights: lambda = (w000 + w0+- + w0-+) = 3/13.
    assert_eq!(v["lambda"], "3/13");
}

#[test]
fn spectrum_round_trips_through_arrangement_file() {
    let dir = std::env::temp_dir();
    let path: PathBuf = dir.join(format!("arrspec-test-{}.json", std::process::id()));
    let file = r#"{"dim": 2, "hyperplanes": [["1","0"],["0","1"],["1","-1"]]}"#;
    std::fs::write(&path, file).unwrap();
    let from_file = arrspec(&[
        "spectrum",
        "--input",
        path.to_str().unwrap(),
        "--weights",
        "uniform",
        "--format",
        "json",
    ]);
    let from_gen = arrspec(&[
        "spectrum", "--gen", "three-lines", "--weights", "uniform", "--format", "json",
    ]);
    std::fs::remove_file(&path).ok();
    assert_eq!(stdout_json(&from_file), stdout_json(&from_gen));
}

#[test]
fn weights_file_map_is_accepted() {
    let dir = std::env::temp_dir();
    let path: PathBuf = dir.join(format!("arrspec-weights-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"+":"1/2","0":"1/4","-":"1/4"}"#).unwrap();
    let out = arrspec(&[
        "stationary",
        "--gen",
        "point-on-line",
        "--weights",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    std::fs::remove_file(&path).ok();
    let v = stdout_json(&out);
    assert_eq!(v["stationary"][0], "2/3");
}

#[test]
fn simulate_is_seed_deterministic() {
    let run = |seed: &str| {
        stdout_json(&arrspec(&[
            "simulate",
            "--gen",
            "three-lines",
            "--steps",
            "20000",
            "--burn-in",
            "100",
            "--seed",
            seed,
            "--format",
            "json",
        ]))
    };
    let a = run("5");
    let b = run("5");
    assert_eq!(a, b);
    assert!(a["tv_distance_decimal"].as_f64().unwrap() < 0.05);
    assert!(a["spectral_gap"].as_f64().unwrap() > 0.0);
}

#[test]
fn env_seed_fallback() {
    let out = Command::new(env!("CARGO_BIN_EXE_arrspec"))
        .args(["spectrum", "--gen", "three-lines", "--weights", "random", "--format", "json"])
        .env("ARRSPEC_SEED", "7")
        .output()
        .expect("binary runs");
    let with_env = stdout_json(&out);
    let with_flag = stdout_json(&arrspec(&[
        "spectrum", "--gen", "three-lines", "--weights", "random", "--seed", "7", "--format",
        "json",
    ]));
    assert_eq!(with_env, with_flag);
}

#[test]
fn exit_codes() {
    // Usage error: unknown subcommand.
    let out = arrspec(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(1));
    // Usage error: unknown generator.
    let out = arrspec(&["faces", "--gen", "dodecahedron"]);
    assert_eq!(out.status.code(), Some(1));
    // Desk-scale limit.
    let out = arrspec(&["faces", "--gen", "braid", "--m", "7"]);
    assert_eq!(out.status.code(), Some(3));
    // Random weights without a seed.
    let out = Command::new(env!("CARGO_BIN_EXE_arrspec"))
        .args(["spectrum", "--gen", "three-lines", "--weights", "random"])
        .env_remove("ARRSPEC_SEED")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn simulate_writes_csv() {
    let dir = std::env::temp_dir();
    let path: PathBuf = dir.join(format!("arrspec-tv-{}.csv", std::process::id()));
    let out = arrspec(&[
        "simulate",
        "--gen",
        "boolean",
        "--dim",
        "2",
        "--steps",
        "20000",
        "--seed",
        "3",
        "--csv",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("steps,tv"));
    assert!(lines.clone().count() >= 2);
    for line in lines {
        let (steps, tv) = line.split_once(',').expect("two columns");
        steps.parse::<u64>().expect("step count");
        let tv: f64 = tv.parse().expect("tv value");
        assert!((0.0..=1.0).contains(&tv));
    }
}

#[test]
fn threads_flag_does_not_change_output() {
    let single = stdout_json(&arrspec(&[
        "spectrum", "--gen", "braid", "--m", "4", "--weights", "random", "--seed", "9",
        "--threads", "1", "--format", "json",
    ]));
    let multi = stdout_json(&arrspec(&[
        "spectrum", "--gen", "braid", "--m", "4", "--weights", "random", "--seed", "9",
        "--threads", "4", "--format", "json",
    ]));
    assert_eq!(single, multi);
}

#[test]
fn verify_quick_passes() {
    let out = arrspec(&["verify", "--quick", "--seed", "2024"]);
    assert!(
        out.status.success(),
        "verify failed:\n{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("[PASS]"));
    assert!(!text.contains("[FAIL]"));
}
