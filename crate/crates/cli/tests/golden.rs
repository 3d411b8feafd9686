//! Regression corpus: every config under `corpus/` is solved and compared
//! byte for byte with `corpus/golden/<name>.json`.
//!
//! Set `BLOTTO_BLESS=1` to rewrite the golden files after an intended change.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn configs() -> Vec<PathBuf> {
    let mut paths: Vec<PathBuf> = fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
}

#[test]
fn corpus_matches_golden_outputs() {
    let bless = std::env::var_os("BLOTTO_BLESS").is_some();
    let paths = configs();
    assert!(paths.len() >= 6, "corpus has only {} configs", paths.len());
    let mut mismatches = Vec::new();
    for config in &paths {
        let output = Command::new(env!("CARGO_BIN_EXE_blotto"))
            .args(["solve", "--config"])
            .arg(config)
            .output()
            .unwrap();
        let stdout = String::from_utf8(output.stdout).unwrap();
        let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
        let expected_code = if doc["certified"].as_bool().unwrap() {
            0
        } else {
            3
        };
        assert_eq!(
            output.status.code(),
            Some(expected_code),
            "{}",
            config.display()
        );

        let golden = corpus_dir()
            .join("golden")
            .join(config.file_name().unwrap());
        if bless {
            fs::write(&golden, &stdout).unwrap();
            continue;
        }
        let want = fs::read_to_string(&golden)
            .unwrap_or_else(|_| panic!("missing {}; run with BLOTTO_BLESS=1", golden.display()));
        if want != stdout {
            mismatches.push(config.display().to_string());
        }
    }
    assert!(mismatches.is_empty(), "golden mismatch: {mismatches:?}");
}

#[test]
fn corpus_spans_degrees_one_to_six() {
    let mut degrees: Vec<usize> = configs()
        .iter()
        .map(|p| {
            let cfg: serde_json::Value =
                serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap();
            cfg["r_coeffs"].as_array().unwrap().len() - 1
        })
        .collect();
    degrees.sort();
    degrees.dedup();
    assert_eq!(degrees, vec![1, 2, 3, 4, 5, 6]);
}
