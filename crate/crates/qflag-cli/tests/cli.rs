use assert_cmd::Command;
use predicates::prelude::*;

fn qflag() -> Command {
    Command::cargo_bin("qflag").unwrap()
}

#[test]
fn weyl_coset_representatives() {
    let out = qflag()
        .args(["weyl", "--type", "A", "--rank", "2", "--S", "1"])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let rows: serde_json::Value = serde_json::from_slice(&out).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r["word"].is_array() && r["action"].is_array()));
}

#[test]
fn rep_matrix_band_diagonal() {
    let out = qflag()
        .args(["rep", "matrix", "--type", "A", "--rank", "1", "--w", "1", "--N", "4"])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
    let rows = v["rows"].as_array().unwrap();
    for (j, expect) in [1.0, 0.5, 0.25, 0.125].iter().enumerate() {
        let entry = rows[j][j].as_array().unwrap();
        assert!((entry[0].as_f64().unwrap() - expect).abs() < 1e-14);
        assert!(entry[1].as_f64().unwrap().abs() < 1e-14);
    }
}

#[test]
fn rep_matrix_binary_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.bin");
    qflag()
        .args(["rep", "matrix", "--type", "A", "--rank", "1", "--w", "1", "--N", "5"])
        .args(["--gen", "L--", "--format", "binary", "--out"])
        .arg(&path)
        .assert()
        .success();
    let bytes = std::fs::read(&path).unwrap();
    let n = u32::from_le_bytes(bytes[0..4].try_into().unwrap()) as usize;
    let l = u32::from_le_bytes(bytes[4..8].try_into().unwrap()) as usize;
    assert_eq!((n, l), (5, 1));
    assert_eq!(bytes.len(), 8 + 16 * n * n);
    // Shift-up band: entry (1, 0) = sqrt(1 - q^2) at q = 1/2.
    let idx = 8 + 16 * n;
    let re = f64::from_le_bytes(bytes[idx..idx + 8].try_into().unwrap());
    assert!((re - (1.0f64 - 0.25).sqrt()).abs() < 1e-14);
}

#[test]
fn flag_verification_exit_codes() {
    qflag()
        .args(["flag", "verify-algthm", "--type", "A", "--rank", "2"])
        .args(["--S", "1", "--Lambda", "0,1", "--degree", "2"])
        .assert()
        .success()
        .stdout(predicate::str::contains("\"pass\": true"));
}

#[test]
fn config_errors_exit_two() {
    qflag()
        .args(["roots", "--type", "Z", "--rank", "2"])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("configuration error"));
    qflag()
        .args(["module", "--type", "A", "--rank", "2", "--Lambda", "1"])
        .assert()
        .code(2);
    qflag()
        .args(["weyl", "--type", "A", "--rank", "2", "--q", "3/2"])
        .assert()
        .code(2);
}

#[test]
fn reports_are_deterministic() {
    let run = || {
        qflag()
            .args(["rep", "norms", "--type", "A", "--rank", "2", "--S", "1"])
            .args(["--N", "8", "--count", "2", "--seed", "7"])
            .assert()
            .success()
            .get_output()
            .stdout
            .clone()
    };
    assert_eq!(run(), run());
}

#[test]
fn csv_output_for_cells() {
    qflag()
        .args(["cells", "--type", "A", "--rank", "2", "--S", "1", "--format", "csv"])
        .assert()
        .success()
        .stdout(predicate::str::contains("word,length"));
    // CSV is rejected where no tabular form exists.
    qflag()
        .args(["roots", "--type", "A", "--rank", "2", "--format", "csv"])
        .assert()
        .code(2);
}

#[test]
fn module_report_dimensions() {
    let out = qflag()
        .args(["module", "--type", "B", "--rank", "2", "--Lambda", "1,0"])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(v["dim"], 5);
}
