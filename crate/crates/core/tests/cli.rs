use std::path::{Path, PathBuf};

use rrsk::cli::{run, CliOutcome, EXIT_INPUT, EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED};
use rrsk::rrsk::{ConvergenceClass, ConvergenceTag, EvalResult};
use rrsk::verify::IdentityReport;

const EXP_PARAMS: &str = r#"{"k": 1, "A": [[[1, 0]]], "B": [[[1, 0]]], "C": [[[1, 0]]]}"#;
const R2S1K2: &str = r#"{"k": 2, "A": [[[1, 0]]], "P": [[[[1.5, 0]]], [[[0.5, 0]]]], "Q": [[[[2.5, 0]]]], "B": [[[2, 0]]], "C": [[[1, 0]]]}"#;

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn cli(args: &[&str]) -> CliOutcome {
    run(std::iter::once("rrsk").chain(args.iter().copied()))
}

#[test]
fn eval_collapses_to_exp() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "ml.json", EXP_PARAMS);
    let out = cli(&["eval", "--params", p.to_str().unwrap(), "--z", "1+0i"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let r: EvalResult = serde_json::from_str(&out.stdout).unwrap();
    assert!((r.value[(0, 0)].re - std::f64::consts::E).abs() < 1e-12);
    assert_eq!(r.value[(0, 0)].im, 0.0);
    assert_eq!(r.convergence.tag, ConvergenceTag::EntireInZ);
}

#[test]
fn classify_reports_radius() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "r2s1k2.json", R2S1K2);
    let out = cli(&["classify", "--params", p.to_str().unwrap(), "--z", "0.3+0i"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let c: ConvergenceClass = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(c.tag, ConvergenceTag::InsideRadius);
    assert_eq!(c.radius, Some(0.5));
}

#[test]
fn verify_one_identity() {
    let out = cli(&["verify", "--identity", "2.3a", "--samples", "16", "--seed", "42"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let r: IdentityReport = serde_json::from_str(&out.stdout).unwrap();
    assert!(r.passed);
    assert_eq!(r.samples, 16);
    assert!(r.max_rel_residual <= 1e-9);
}

#[test]
fn eval_json_round_trips_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "r2.json", R2S1K2);
    let out = cli(&["eval", "--params", p.to_str().unwrap(), "--z", "0.31-0.17i", "--output", "json"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let r: EvalResult = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", out.stdout);
}

#[test]
fn identical_argv_gives_identical_bytes() {
    let args = ["verify", "--identity", "2.19", "--samples", "3", "--seed", "11", "--output", "csv"];
    assert_eq!(cli(&args), cli(&args));
}

#[test]
fn table_writes_csv_grid_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "ml.json", EXP_PARAMS);
    let out_path = dir.path().join("grid.csv");
    let out = cli(&[
        "table",
        "--params",
        p.to_str().unwrap(),
        "--z",
        "-1",
        "--z-to",
        "1",
        "--points",
        "5",
        "--output",
        "csv",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(out_path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "z_re,z_im,m00_re,m00_im");
    assert_eq!(lines.len(), 6);
    for line in &lines[1..] {
        let f: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
        assert!((f[2] - f[0].exp()).abs() < 1e-13 * f[0].exp());
    }
}

#[test]
fn k_override_changes_the_series() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "ml.json", EXP_PARAMS);
    let base = cli(&["eval", "--params", p.to_str().unwrap(), "--z", "0.5"]);
    let other = cli(&["eval", "--params", p.to_str().unwrap(), "--z", "0.5", "--k", "2"]);
    assert_eq!(other.code, EXIT_OK, "{}", other.stderr);
    assert_ne!(base.stdout, other.stdout);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "ml.json", EXP_PARAMS);
    let good = good.to_str().unwrap();
    let r2 = write(dir.path(), "r2.json", R2S1K2);
    let r2 = r2.to_str().unwrap();
    let missing_b = write(dir.path(), "bad.json", r#"{"k": 1, "A": [[[1, 0]]], "C": [[[1, 0]]]}"#);
    let ragged = write(dir.path(), "ragged.json", r#"{"k": 1, "A": [[[1, 0], [0, 0]]], "B": [[[1, 0]]], "C": [[[1, 0]]]}"#);

    let cases: &[(&[&str], i32)] = &[
        (&[], EXIT_USAGE),
        (&["frobnicate"], EXIT_USAGE),
        (&["eval", "--z", "1"], EXIT_USAGE),
        (&["eval", "--params", good, "--z", "one"], EXIT_USAGE),
        (&["verify"], EXIT_USAGE),
        (&["verify", "--all", "--identity", "2.3a"], EXIT_USAGE),
        (&["eval", "--params", good, "--z", "1", "--output", "xml"], EXIT_USAGE),
        (&["eval", "--params", "/nonexistent/p.json", "--z", "1"], EXIT_INPUT),
        (&["eval", "--params", missing_b.to_str().unwrap(), "--z", "1"], EXIT_INPUT),
        (&["eval", "--params", ragged.to_str().unwrap(), "--z", "1"], EXIT_INPUT),
        (&["eval", "--params", good, "--z", "1", "--k", "-1"], EXIT_INPUT),
        (&["eval", "--params", good, "--z", "1", "--tol", "0"], EXIT_INPUT),
        (&["eval", "--params", r2, "--z", "0.6"], EXIT_INPUT),
        (&["table", "--params", good, "--z", "0", "--z-to", "1", "--points", "1"], EXIT_INPUT),
        (&["verify", "--identity", "9.99"], EXIT_INPUT),
        (&["verify", "--identity", "2.3a", "--samples", "0"], EXIT_INPUT),
        (&["eval", "--params", good, "--z", "30", "--max-terms", "5"], EXIT_NUMERICAL),
        (&["verify", "--identity", "2.3a", "--samples", "4", "--tol", "1e-3"], EXIT_VERIFY_FAILED),
        (&["--help"], EXIT_OK),
    ];
    for (args, code) in cases {
        let out = cli(args);
        assert_eq!(out.code, *code, "{args:?}: {}", out.stderr);
        if *code >= EXIT_USAGE {
            assert!(!out.stderr.is_empty(), "{args:?} gave no diagnostic");
        }
    }
}

#[test]
fn failing_verification_names_the_sample() {
    let out = cli(&["verify", "--identity", "2.3a", "--samples", "4", "--tol", "1e-3", "--output", "pretty"]);
    assert_eq!(out.code, EXIT_VERIFY_FAILED);
    assert!(out.stdout.starts_with("2.3a  FAIL"), "{}", out.stdout);
    assert!(out.stdout.contains("seed"));
}
