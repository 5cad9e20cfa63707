//! Binary-level behavior: exit codes, report determinism, file formats.

use std::path::PathBuf;
use std::process::Command;

fn qpca() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qpca"))
}

fn temp_path(tag: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("qpca-cli-test-{}-{tag}", std::process::id()));
    p
}

#[test]
fn analyze_synthetic_spectrum_reports_expected_values() {
    let out = temp_path("synth.json");
    let status = qpca()
        .args([
            "analyze",
            "--spectrum",
            "0.5,0.3,0.15,0.05",
            "--components",
            "2",
            "--eps",
            "0.01",
            "--seed",
            "11",
            "--out",
        ])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let comps = doc["report"]["components"].as_array().unwrap();
    assert_eq!(comps.len(), 2);
    let v0 = comps[0]["value"].as_f64().unwrap();
    let v1 = comps[1]["value"].as_f64().unwrap();
    assert!((v0 - 0.5).abs() <= 0.01, "top value {v0}");
    assert!((v1 - 0.3).abs() <= 0.01, "second value {v1}");
    assert_eq!(doc["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(doc["seed"], 11);
    std::fs::remove_file(out).ok();
}

#[test]
fn analyze_missing_file_exits_2_without_report() {
    let out = temp_path("missing.json");
    let status = qpca()
        .args([
            "analyze",
            "--data",
            "/nonexistent/definitely-not-here.csv",
            "--out",
        ])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
    assert!(!out.exists(), "no partial report on config errors");
}

#[test]
fn analyze_flat_spectrum_exits_3_with_partial_report() {
    let out = temp_path("flat.json");
    let status = qpca()
        .args([
            "analyze",
            "--spectrum",
            "0.25,0.25,0.25,0.25",
            "--eps",
            "0.01",
            "--out",
        ])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(3));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(doc["report"]["gap_too_small"].is_string());
    std::fs::remove_file(out).ok();
}

#[test]
fn reports_are_byte_identical_modulo_timestamp() {
    let run = |path: &PathBuf| {
        let status = qpca()
            .args([
                "analyze",
                "--spectrum",
                "0.6,0.4",
                "--eps",
                "0.02",
                "--seed",
                "5",
                "--out",
            ])
            .arg(path)
            .status()
            .unwrap();
        assert!(status.success());
        let text = std::fs::read_to_string(path).unwrap();
        text.lines()
            .filter(|l| !l.trim_start().starts_with("\"timestamp\""))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let (p1, p2) = (temp_path("det1.json"), temp_path("det2.json"));
    let a = run(&p1);
    let b = run(&p2);
    assert_eq!(a, b);
    std::fs::remove_file(p1).ok();
    std::fs::remove_file(p2).ok();
}

#[test]
fn seed_precedence_env_vs_flag() {
    let out = temp_path("envseed.json");
    let status = qpca()
        .env("QPCA_SEED", "1234")
        .args(["analyze", "--spectrum", "0.7,0.3", "--eps", "0.05", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["seed"], 1234);

    // Flag beats the environment.
    let status = qpca()
        .env("QPCA_SEED", "1234")
        .args([
            "analyze",
            "--spectrum",
            "0.7,0.3",
            "--eps",
            "0.05",
            "--seed",
            "9",
            "--out",
        ])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["seed"], 9);
    std::fs::remove_file(out).ok();
}

#[test]
fn analyze_dataset_matches_classical_pca() {
    let csv_path = temp_path("iris-like.csv");
    // Two dominant directions plus noise.
    let mut csv = String::new();
    let rows = [
        [5.1, 3.5, 1.4, 0.2],
        [4.9, 3.0, 1.4, 0.2],
        [6.3, 3.3, 6.0, 2.5],
        [5.8, 2.7, 5.1, 1.9],
        [7.1, 3.0, 5.9, 2.1],
        [4.6, 3.1, 1.5, 0.2],
        [5.0, 3.6, 1.4, 0.2],
        [6.5, 3.0, 5.8, 2.2],
    ];
    for row in rows {
        csv.push_str(&format!("{},{},{},{}\n", row[0], row[1], row[2], row[3]));
    }
    std::fs::write(&csv_path, csv).unwrap();

    let out = temp_path("iris.json");
    let status = qpca()
        .args(["analyze", "--data"])
        .arg(&csv_path)
        .args([
            "--route",
            "b",
            "--components",
            "1",
            "--eps",
            "0.01",
            "--out",
        ])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let overlap = doc["report"]["components"][0]["overlap_with_oracle"]
        .as_f64()
        .unwrap();
    assert!(overlap >= 0.99, "overlap {overlap}");
    assert!(doc["report"]["covariance"]["route"] == "B");
    std::fs::remove_file(csv_path).ok();
    std::fs::remove_file(out).ok();
}

#[test]
fn compare_produces_winner_flags_and_rejects_empty_grid() {
    let out = temp_path("table.csv");
    let status = qpca()
        .args([
            "compare",
            "--gamma",
            "0.5",
            "--r-max",
            "0.6",
            "--r-min",
            "1e-4",
            "--eps",
            "0.2",
            "--components",
            "1,2",
            "--out",
        ])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let table = std::fs::read_to_string(&out).unwrap();
    assert!(table.lines().count() > 4);
    assert!(table.contains("born"));
    assert!(table.contains("amplitude-squared"));
    assert!(table.contains("new"));
    std::fs::remove_file(out).ok();

    let status = qpca()
        .args(["compare", "--gamma", "", "--out", "/tmp/ignored.csv"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn bench_emits_table_and_slope() {
    let out = temp_path("bench.csv");
    let output = qpca()
        .args(["bench", "--dim", "4", "--steps", "8,32,128", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert!(output.status.success());
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("slope"), "stderr: {stderr}");
    let table = std::fs::read_to_string(&out).unwrap();
    assert_eq!(table.lines().count(), 4); // header + 3 rows
    std::fs::remove_file(out).ok();
}

#[test]
fn validate_filter_runs_single_criterion() {
    let output = qpca()
        .args(["validate", "--only", "baseline"])
        .output()
        .unwrap();
    assert!(output.status.success());
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert_eq!(stdout.lines().count(), 1);
    assert!(stdout.contains("baseline-sampler"));
    assert!(stdout.starts_with("PASS"));
}

#[test]
fn encoding_dump_contains_unitary_and_ledger() {
    let dump = temp_path("dump.json");
    let out = temp_path("dump-report.json");
    let status = qpca()
        .args([
            "analyze",
            "--spectrum",
            "0.8,0.2",
            "--eps",
            "0.05",
            "--dump-encoding",
        ])
        .arg(&dump)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&dump).unwrap()).unwrap();
    assert_eq!(doc["alpha"], 1.0);
    assert!(doc["unitary"]["entries"].is_array());
    assert!(doc["ledger"]["rho_copies"].as_u64().unwrap() > 0);
    std::fs::remove_file(dump).ok();
    std::fs::remove_file(out).ok();
}
