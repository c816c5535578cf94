// Copyright 2026 the Sessile Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn sessile(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sessile"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn value(text: &str, key: &str) -> f64 {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}=")))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
        .parse()
        .unwrap()
}

#[test]
fn analytic_prints_closed_form() {
    let o = sessile(&["analytic", "--beta", "0.5", "--area", "1"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!((value(&s, "R") - 1.275_999_342_094_267_2).abs() < 1e-12);
    assert!((value(&s, "p") - 1.105_047_845_465_865_8).abs() < 1e-12);
    assert!((value(&s, "angle_deg") - 60.0).abs() < 1e-12);
    assert!((value(&s, "J*") - 1.567_398_927_273_307).abs() < 1e-12);
}

#[test]
fn analytic_csv() {
    let o = sessile(&[
        "analytic", "--beta", "0.5", "--area", "1", "--format", "csv",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("quantity,value\nregime,GraphArc\n"));
}

#[test]
fn validation_errors_exit_two() {
    for args in [
        &["analytic", "--beta", "1.5", "--area", "1"][..],
        &["analytic", "--beta", "0.5", "--area", "-1"],
        &["analytic", "--beta", "0.5"],
        &["analytic", "--beta", "nan-ish", "--area", "1"],
        &[
            "analytic", "--beta", "0.5", "--area", "1", "--format", "svg",
        ],
        &["solve", "--beta", "-0.2", "--area", "1"],
        &["verify-inequality", "--betas", "0.5,1.2", "--samples", "10"],
        &["verify-inequality", "--samples", "0"],
        &["gradcheck", "--grid", "2"],
        &["compare", "--area", "0"],
        &["export", "--area", "1"],
        &["export", "--beta", "0.5", "--area", "1", "--format", "text"],
    ] {
        let o = sessile(args);
        assert_eq!(
            code(&o),
            2,
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn unknown_flag_and_command_exit_two() {
    assert_eq!(
        code(&sessile(&[
            "analytic", "--beta", "0.5", "--area", "1", "--bogus"
        ])),
        2
    );
    assert_eq!(code(&sessile(&["frobnicate"])), 2);
}

#[test]
fn solve_writes_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let o = sessile(&[
        "solve",
        "--beta",
        "0.5",
        "--area",
        "1",
        "--grid",
        "128",
        "--format",
        "svg",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let report = fs::read_to_string(out.join("report.txt")).unwrap();
    assert!(report.contains("converged=true"));
    assert!((value(&report, "p_star") - 1.105).abs() < 2e-3);
    let csv = fs::read_to_string(out.join("curve.csv")).unwrap();
    assert!(csv.starts_with("x,u\n"));
    assert_eq!(csv.lines().count(), 130);
    let svg = fs::read_to_string(out.join("curve.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("<path"));
}

#[test]
fn solve_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = sessile(&[
            "solve",
            "--beta",
            "0.3",
            "--area",
            "2",
            "--grid",
            "64",
            "--output",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0);
        (
            fs::read(out.join("curve.csv")).unwrap(),
            fs::read(out.join("report.txt")).unwrap(),
        )
    };
    assert_eq!(run("a"), run("b"));
}

#[test]
fn starved_solver_exits_four() {
    let o = sessile(&[
        "solve",
        "--beta",
        "0.5",
        "--area",
        "1",
        "--grid",
        "64",
        "--max-iterations",
        "2",
    ]);
    assert_eq!(code(&o), 4);
    assert!(stdout(&o).contains("converged=false"));
}

#[test]
fn verify_inequality_passes_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let o = sessile(&[
            "verify-inequality",
            "--betas",
            "0.1,0.5,0.9",
            "--samples",
            "2000",
            "--seed",
            "7",
            "--output",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).contains("failures=0"));
        fs::read(path).unwrap()
    };
    let first = run("a.csv");
    assert_eq!(first, run("b.csv"));
    let text = String::from_utf8(first).unwrap();
    assert_eq!(text.lines().count(), 4);
    for line in text.lines().skip(1) {
        let min_scaled: f64 = line.split(',').nth(3).unwrap().parse().unwrap();
        assert!(min_scaled >= -1e-12);
    }
}

#[test]
fn gradcheck_passes_then_fails_at_zero_tolerance() {
    let o = sessile(&["gradcheck", "--samples", "20"]);
    assert_eq!(code(&o), 0);
    assert!(value(&stdout(&o), "max_relative_error") <= 1e-6);
    let o = sessile(&["gradcheck", "--samples", "20", "--tolerance", "0"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn compare_ranks_vesica_first() {
    let o = sessile(&["compare", "--area", "2"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("kind,total_area,relative_energy,rank"));
    assert!(lines.next().unwrap().starts_with("VesicaPiscis,"));
    assert_eq!(s, stdout(&sessile(&["compare", "--area", "2"])));
}

#[test]
fn export_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("arc.csv");
    let o = sessile(&[
        "export",
        "--beta",
        "0.5",
        "--area",
        "1",
        "--grid",
        "32",
        "--output",
        first.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let second = dir.path().join("again.csv");
    let o = sessile(&[
        "export",
        "--input",
        first.to_str().unwrap(),
        "--output",
        second.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(fs::read(&first).unwrap(), fs::read(&second).unwrap());
    let o = sessile(&[
        "export",
        "--input",
        first.to_str().unwrap(),
        "--beta",
        "0.5",
        "--format",
        "svg",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("<path"));
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "x,u\n-1,0\n0,banana\n1,0\n").unwrap();
    assert_eq!(
        code(&sessile(&["export", "--input", bad.to_str().unwrap()])),
        2
    );
}

#[test]
fn io_failures_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.csv");
    assert_eq!(
        code(&sessile(&["export", "--input", missing.to_str().unwrap()])),
        1
    );

    let unwritable = dir.path().join("no/such/dir/out.csv");
    let o = sessile(&[
        "compare",
        "--area",
        "2",
        "--output",
        unwritable.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 1);
    assert!(!o.stderr.is_empty());

    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let o = sessile(&[
        "solve",
        "--beta",
        "0.5",
        "--area",
        "1",
        "--grid",
        "32",
        "--output",
        blocker.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 1);

    let absent = dir.path().join("absent.conf");
    assert_eq!(
        code(&sessile(&["compare", "--config", absent.to_str().unwrap()])),
        1
    );
}

fn write_config(dir: &Path, body: &str) -> String {
    let path = dir.join("run.conf");
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn config_file_merges_under_flags() {
    let dir = tempfile::tempdir().unwrap();
    let conf = write_config(dir.path(), "# defaults\nbeta = 0.5\narea=1\n");
    let o = sessile(&["analytic", "--config", &conf]);
    assert_eq!(code(&o), 0);
    assert!((value(&stdout(&o), "p") - 1.105_047_845_465_865_8).abs() < 1e-12);

    let o = sessile(&["analytic", "--config", &conf, "--area", "4"]);
    assert!((value(&stdout(&o), "p") - 2.210_095_690_931_731_7).abs() < 1e-12);
}

#[test]
fn bad_config_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    for body in ["colour=blue\n", "beta 0.5\n", "beta=half\narea=1\n"] {
        let conf = write_config(dir.path(), body);
        let o = sessile(&["analytic", "--config", &conf, "--area", "1"]);
        assert_eq!(code(&o), 2, "{body:?}");
    }
}
