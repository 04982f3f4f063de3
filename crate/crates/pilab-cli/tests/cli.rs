//! End-to-end tests of the `pilab` binary: output shapes, file formats,
//! determinism and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn pilab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pilab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmpfile(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("pilab-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn codim_metabelian_table() {
    let out = pilab(&[
        "codim",
        "--algebra",
        "metabelian",
        "--mode",
        "ordinary",
        "--n",
        "2..6",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    for (n, c) in [(2, 1), (3, 2), (4, 3), (5, 4), (6, 5)] {
        let row = text
            .lines()
            .find(|l| l.trim_start().starts_with(&format!("{n} ")))
            .unwrap_or_else(|| panic!("row for n = {n} in:\n{text}"));
        let cols: Vec<&str> = row.split_whitespace().collect();
        assert_eq!(cols[1], c.to_string(), "c_{n}");
    }
}

#[test]
fn codim_envelope_sl2_golden_values() {
    let out = pilab(&[
        "codim",
        "--algebra",
        "sl2-cartan",
        "--target",
        "envelope",
        "--n",
        "2..5",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    for (n, c) in [(2, 2u64), (3, 5), (4, 20), (5, 64)] {
        let row = text
            .lines()
            .find(|l| l.trim_start().starts_with(&format!("{n} ")))
            .unwrap_or_else(|| panic!("row for n = {n} in:\n{text}"));
        assert_eq!(row.split_whitespace().nth(1), Some(c.to_string().as_str()));
    }
}

#[test]
fn codim_abelian_zeros() {
    let out = pilab(&["codim", "--algebra", "abelian3", "--n", "2..4"]);
    assert!(out.status.success());
    for line in stdout(&out).lines().skip(2) {
        let cols: Vec<&str> = line.split_whitespace().collect();
        assert_eq!(cols[1], "0");
    }
}

#[test]
fn json_output_is_deterministic() {
    let a = tmpfile("det-a.json");
    let b = tmpfile("det-b.json");
    for path in [&a, &b] {
        let out = pilab(&[
            "codim",
            "--algebra",
            "sl2-cartan",
            "--target",
            "envelope",
            "--arith",
            "modular",
            "--seed",
            "5",
            "--n",
            "2..4",
            "--format",
            "json",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let first = std::fs::read(&a).unwrap();
    let second = std::fs::read(&b).unwrap();
    assert!(!first.is_empty());
    assert_eq!(first, second);
    let _ = std::fs::remove_file(a);
    let _ = std::fs::remove_file(b);
}

#[test]
fn csv_format() {
    let out = pilab(&[
        "codim",
        "--algebra",
        "metabelian",
        "--n",
        "2..3",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("n,c_n,c_n_gr,l_n,max_d_lambda,nth_root,ratio"));
    assert!(text.contains("2,1,,1,1,"));
}

#[test]
fn check_suites_pass_on_metabelian() {
    for suite in ["hooks", "duality", "bounds", "oracle"] {
        let out = pilab(&[
            "check",
            "--suite",
            suite,
            "--algebra",
            "metabelian",
            "--n",
            "2..4",
            "--samples",
            "50",
        ]);
        assert!(
            out.status.success(),
            "suite {suite}: {}\n{}",
            stdout(&out),
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(stdout(&out).contains(&format!("suite {suite}: pass")));
    }
    let out = pilab(&[
        "check", "--suite", "tilde", "--algebra", "metabelian", "--n", "2..5", "--samples", "60",
    ]);
    assert!(out.status.success());
}

#[test]
fn oracle_suite_flags_envelope_spanning_divergence() {
    // the left-normed and full bracketing ranks genuinely differ on this
    // target from degree 3 on; the suite must fail with exit code 2
    let out = pilab(&[
        "check",
        "--suite",
        "oracle",
        "--algebra",
        "sl2-cartan",
        "--target",
        "envelope",
        "--n",
        "3..3",
        "--samples",
        "20",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("spanning_equivalence(n=3)"));
    assert!(stdout(&out).contains("fail"));
}

#[test]
fn exponent_reference_lines() {
    let out = pilab(&["exponent", "--algebra", "metabelian", "--n", "2..5"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("reference exponent: 1"));

    let out = pilab(&[
        "exponent",
        "--algebra",
        "sl2-cartan",
        "--target",
        "envelope",
        "--n",
        "2..4",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("reference exponent: 3"));
}

#[test]
fn hook_trend_mode() {
    let out = pilab(&["exponent", "--hook", "1,1", "--n", "41"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let last = text.lines().last().unwrap();
    let cols: Vec<&str> = last.split_whitespace().collect();
    assert_eq!(cols[0], "20");
    assert_eq!(cols[1], "41");
    assert_eq!(cols[2], "137846528820");
    let root: f64 = cols[3].parse().unwrap();
    assert!((root - 2.0).abs() <= 0.2);
}

#[test]
fn exit_codes() {
    // usage: unknown flag value
    let out = pilab(&["check", "--suite", "bogus", "--algebra", "metabelian", "--n", "2..3"]);
    assert_eq!(out.status.code(), Some(1));
    // usage: unknown algebra
    let out = pilab(&["codim", "--algebra", "so99", "--n", "2..3"]);
    assert_eq!(out.status.code(), Some(1));
    // budget: degree past the default cap without --allow-large
    let out = pilab(&["codim", "--algebra", "metabelian", "--n", "2..12"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--allow-large"));
}

#[test]
fn loads_algebra_from_json_file() {
    let path = tmpfile("algebra.json");
    std::fs::write(
        &path,
        r#"{
  "dim": 2,
  "basis": ["e", "f"],
  "grading": [0, 1],
  "class": "lie",
  "table": [
    [["0", "0"], ["0", "1"]],
    [["0", "-1"], ["0", "0"]]
  ]
}"#,
    )
    .unwrap();
    let out = pilab(&["codim", "--algebra", path.to_str().unwrap(), "--n", "2..4"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let row = text
        .lines()
        .find(|l| l.trim_start().starts_with("4 "))
        .unwrap();
    assert_eq!(row.split_whitespace().nth(1), Some("3"));
    let _ = std::fs::remove_file(path);
}

#[test]
fn parse_error_reports_position() {
    let path = tmpfile("broken.json");
    std::fs::write(&path, "{\n  \"dim\": 2,\n").unwrap();
    let out = pilab(&["codim", "--algebra", path.to_str().unwrap(), "--n", "2..3"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line"), "{err}");
    let _ = std::fs::remove_file(path);
}

#[test]
fn graded_mode_table() {
    let out = pilab(&[
        "codim",
        "--algebra",
        "metabelian",
        "--mode",
        "graded",
        "--n",
        "1..4",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    // c_2^gr(metabelian) = 2
    let row = text
        .lines()
        .find(|l| l.trim_start().starts_with("2 "))
        .unwrap();
    assert_eq!(row.split_whitespace().nth(1), Some("2"));
}
