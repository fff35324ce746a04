use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use nagata_cli::input::parse;

fn examples() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples")
}

fn nagata(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nagata")).args(args).output().expect("binary runs")
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn passing_run_exits_zero() {
    let corpus = examples().join("corpus.wb");
    let out = nagata(&["verify", "--theorem", "corollary", corpus.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("corollary: 6/6 equivalences hold"), "{text}");
}

#[test]
fn failed_check_exits_one() {
    let file = examples().join("non_cm_plane.wb");
    let out = nagata(&["cm", "--json", "-", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let result = &report["items"][0]["result"];
    assert_eq!(result["outcome"], "not_cm");
    assert_eq!(result["witness"], serde_json::json!(["y"]));
}

#[test]
fn input_and_usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(&dir, "bad.wb", "ring r\n  vars x\n  ideal x^\nend\n");
    let out = nagata(&["dim", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    assert_eq!(nagata(&["dim", "/nonexistent/file.wb"]).status.code(), Some(2));
    assert_eq!(nagata(&["frobnicate", "x.wb"]).status.code(), Some(2));
    assert_eq!(nagata(&["--bounds", "0,3", "wpr", "x.wb"]).status.code(), Some(2));
}

#[test]
fn unsupported_ideal_class_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "quartic.wb", "ring r\n  vars x y\n  ideal x^4 + y^4\n  module R free 1\n  sequence a x\nend\n");
    let out = nagata(&["height", &f]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).to_lowercase().contains("unsupported"));
}

#[test]
fn zero_module_has_dimension_minus_infinity() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "zero.wb", "ring r\n  vars x\n  module Z zero\nend\n");
    let out = nagata(&["dim", "--json", "-", &f]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["items"][0]["result"]["dimension"], "-inf");
}

#[test]
fn json_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = examples().join("corpus.wb");
    let runs: Vec<Vec<u8>> = ["a.json", "b.json"]
        .iter()
        .map(|name| {
            let p = dir.path().join(name);
            let out = nagata(&["verify", "--theorem", "th", "--json", p.to_str().unwrap(), corpus.to_str().unwrap()]);
            assert_eq!(out.status.code(), Some(0));
            std::fs::read(p).unwrap()
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn corpus_prints_and_reparses() {
    for name in ["corpus.wb", "non_cm_plane.wb"] {
        let text = std::fs::read_to_string(examples().join(name)).unwrap();
        let once = parse(&text, None).unwrap();
        let again = parse(&once.to_string(), None).unwrap();
        assert_eq!(once, again, "{name}");
    }
}
