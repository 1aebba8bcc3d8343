//! End-to-end tests of the `thinsplit` binary: exit codes, file outputs and
//! byte-for-byte reproducibility.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn thinsplit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thinsplit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn assert_code(out: &Output, code: i32) {
    assert_eq!(
        out.status.code(),
        Some(code),
        "stdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn simulate_and_test_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_str().unwrap();

    let sim = thinsplit(&[
        "simulate",
        "--model",
        "poisson",
        "--intensity",
        "150",
        "--seed",
        "11",
        "--out",
        out_dir,
    ]);
    assert_code(&sim, 0);
    let pattern = dir.path().join("pattern.txt");
    assert!(pattern.exists());

    let test = thinsplit(&[
        "test-both",
        "--input",
        pattern.to_str().unwrap(),
        "--sims",
        "49",
        "--steps",
        "4",
        "--dmin",
        "0.025",
        "--dmax",
        "0.1",
        "--m",
        "300",
        "--seed",
        "5",
        "--out",
        out_dir,
    ]);
    assert_code(&test, 0);
    for name in [
        "k12_report.txt",
        "k12_table.tsv",
        "k12_envelope.svg",
        "t_report.txt",
        "t_table.tsv",
        "t_envelope.svg",
    ] {
        assert!(dir.path().join(name).exists(), "{name} missing");
    }
    let report = fs::read_to_string(dir.path().join("k12_report.txt")).unwrap();
    assert!(report.contains("seed = 5"));
    assert!(report.contains("verdict = "));
}

#[test]
fn reruns_are_byte_identical() {
    // Identical command lines (same paths, same seed) must reproduce every
    // output byte for byte.
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_path_buf();
    let run = || -> Vec<u8> {
        let sim = thinsplit(&[
            "simulate",
            "--model",
            "thomas",
            "--intensity",
            "25",
            "--offspring",
            "4",
            "--cluster-sd",
            "0.02",
            "--seed",
            "3",
            "--out",
            out_dir.to_str().unwrap(),
        ]);
        assert_code(&sim, 0);
        let test = thinsplit(&[
            "test-k12",
            "--input",
            out_dir.join("pattern.txt").to_str().unwrap(),
            "--sims",
            "49",
            "--steps",
            "3",
            "--dmax",
            "0.1",
            "--seed",
            "9",
            "--out",
            out_dir.to_str().unwrap(),
        ]);
        assert_code(&test, 0);
        let mut bytes = fs::read(out_dir.join("pattern.txt")).unwrap();
        bytes.extend(fs::read(out_dir.join("k12_report.txt")).unwrap());
        bytes.extend(fs::read(out_dir.join("k12_table.tsv")).unwrap());
        bytes.extend(fs::read(out_dir.join("k12_envelope.svg")).unwrap());
        bytes
    };
    assert_eq!(run(), run());
}

#[test]
fn parse_error_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "1 1 unit\n0.5 oops\n").unwrap();
    let out = thinsplit(&[
        "test-k12",
        "--input",
        bad.to_str().unwrap(),
        "--seed",
        "1",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_code(&out, 2);
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains(":2:"), "error should name line 2: {msg}");

    let outside = dir.path().join("outside.txt");
    fs::write(&outside, "1 1 unit\n0.5 1.2\n").unwrap();
    let out = thinsplit(&[
        "test-k12",
        "--input",
        outside.to_str().unwrap(),
        "--seed",
        "1",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_code(&out, 2);
}

#[test]
fn degenerate_split_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let single = dir.path().join("single.txt");
    fs::write(&single, "1 1 unit\n0.5 0.5\n").unwrap();
    let out = thinsplit(&[
        "test-k12",
        "--input",
        single.to_str().unwrap(),
        "--sims",
        "49",
        "--seed",
        "1",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_code(&out, 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("degenerate"));
}

#[test]
fn unknown_model_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = thinsplit(&[
        "simulate",
        "--model",
        "strauss",
        "--intensity",
        "10",
        "--seed",
        "1",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_code(&out, 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown model"));
}

#[test]
fn oracle_check_reports_pass() {
    let dir = tempfile::tempdir().unwrap();
    let out = thinsplit(&["oracle-check", "--out", dir.path().to_str().unwrap()]);
    assert_code(&out, 0);
    let report = fs::read_to_string(dir.path().join("oracle_report.txt")).unwrap();
    assert!(report.contains("all_pass = true"));
}

#[test]
fn missing_window_point_is_wrapped_not_rejected() {
    // Far-edge coordinates are identified with the near edge on the torus.
    let dir = tempfile::tempdir().unwrap();
    let edge = dir.path().join("edge.txt");
    fs::write(&edge, "23 23 m\n23 5\n1 2\n4 4\n9 9\n").unwrap();
    let out = thinsplit(&[
        "test-k12",
        "--input",
        edge.to_str().unwrap(),
        "--sims",
        "49",
        "--steps",
        "3",
        "--dmax",
        "5",
        "--seed",
        "4",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_code(&out, 0);
}

fn path_exists(p: impl AsRef<Path>) -> bool {
    p.as_ref().exists()
}

#[test]
fn simulate_writes_reloadable_hardcore_pattern() {
    let dir = tempfile::tempdir().unwrap();
    let out = thinsplit(&[
        "simulate",
        "--model",
        "hardcore",
        "--intensity",
        "200",
        "--hardcore-radius",
        "0.05",
        "--seed",
        "8",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_code(&out, 0);
    assert!(path_exists(dir.path().join("pattern.txt")));
    let text = fs::read_to_string(dir.path().join("pattern.txt")).unwrap();
    assert!(text.starts_with("# generated by thinsplit"));
    assert!(text.contains("hardcore"));
}
