use std::io::Write;
use std::path::{Path, PathBuf};

use levelnf::cli::{run, EXIT_INVALID, EXIT_OK, EXIT_USAGE};

fn systems() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("systems")
}

fn saddle_path() -> String {
    systems().join("saddle.nf").display().to_string()
}

fn exec(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["levelnf"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn section<'a>(report: &'a str, header: &str) -> Vec<&'a str> {
    report
        .lines()
        .skip_while(|l| *l != header)
        .skip(1)
        .take_while(|l| l.starts_with("mu "))
        .collect()
}

#[test]
fn normalize_saddle_orders() {
    let p = saddle_path();
    let (code, out, _) = exec(&["normalize", "--input", &p, "--level", "4", "--emit", "orders"]);
    assert_eq!(code, EXIT_OK);
    assert!(!out.contains("level "));
    assert_eq!(
        section(&out, "order 3"),
        vec![
            "mu 1 1 0 0 0 0 | L 1 1 | coeff -1 0",
            "mu 0 1 0 0 1 0 | L 1 1 | coeff 1 -1",
            "mu 0 0 0 0 1 1 | L 1 1 | coeff 0 1",
        ]
    );
    assert_eq!(
        section(&out, "order 5"),
        vec![
            "mu 1 0 0 1 1 0 | L 2 2 | coeff 0 1",
            "mu 0 0 0 1 2 0 | L 2 2 | coeff 0 2",
            "mu 1 2 0 0 1 0 | L 2 2 | coeff 1 0",
            "mu 1 1 0 0 1 1 | L 2 2 | coeff 1 -1",
            "mu 0 2 0 0 2 0 | L 2 2 | coeff -2 2",
            "mu 0 1 0 0 2 1 | L 2 2 | coeff 0 -1",
        ]
    );
    assert!(!out.contains("order 2") && !out.contains("order 4"));
}

#[test]
fn order_flag_matches_level_flag() {
    let p = saddle_path();
    for r in 2..=5 {
        let by_order = exec(&["normalize", "--input", &p, "--order", &r.to_string()]);
        let by_level = exec(&["normalize", "--input", &p, "--level", &(r - 1).to_string()]);
        assert_eq!(by_order, by_level, "order {r}");
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let p = saddle_path();
    let one = exec(&["normalize", "--input", &p, "--level", "4"]);
    let four = exec(&["normalize", "--input", &p, "--level", "4", "--threads", "4"]);
    assert_eq!(one.0, EXIT_OK);
    assert_eq!(one, four);
    let q = systems().join("quadratic.nf").display().to_string();
    let one = exec(&["normalize", "--input", &q, "--level", "3", "--emit", "levels"]);
    let four = exec(&["normalize", "--input", &q, "--level", "3", "--emit", "levels", "--threads", "4"]);
    assert_eq!(one, four);
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("nf.txt");
    let p = saddle_path();
    let t = target.display().to_string();
    let (code, out, _) = exec(&["normalize", "--input", &p, "--level", "2", "--output", &t]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let written = std::fs::read_to_string(&target).unwrap();
    assert!(written.starts_with("level 2\nmu 1 1 0 0 0 0 | L 1 1 | coeff -1 0\n"));
}

#[test]
fn linear_system_is_empty() {
    let p = systems().join("linear.nf").display().to_string();
    let (code, out, _) = exec(&["normalize", "--input", &p, "--level", "3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
}

#[test]
fn coeff_prints_vectors() {
    let p = saddle_path();
    let (code, out, _) = exec(&["coeff", "--input", &p, "--mu", "0,1,0,0,1,0"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "1 -1\n");
    let (code, out, _) = exec(&[
        "coeff", "--input", &p, "--mu", "0,0,0,1,2,0", "--mu", "1,1,0,0,0,0", "--threads", "2",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "0 2\n-1 0\n");
}

#[test]
fn coeff_validation() {
    let p = saddle_path();
    let (code, _, err) = exec(&["coeff", "--input", &p, "--mu", "1,0,0,0,0,0"]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("not resonant"), "{err}");
    let (code, _, err) = exec(&["coeff", "--input", &p, "--mu", "1,1"]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("expected 6 entries"), "{err}");
    let (code, _, _) = exec(&["coeff", "--input", &p, "--mu", "a,b"]);
    assert_eq!(code, EXIT_INVALID);
}

#[test]
fn verify_passes_on_samples() {
    for name in ["saddle.nf", "quadratic.nf", "linear.nf"] {
        let p = systems().join(name).display().to_string();
        let (code, out, err) = exec(&["verify", "--input", &p, "--level", "3", "--seed", "11", "--trials", "2"]);
        assert_eq!(code, EXIT_OK, "{name}: {out}{err}");
        assert!(out.ends_with("verify: pass\n"));
    }
}

#[test]
fn parse_errors_name_the_line() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "n 2\nlambda 1 -1\nparam a eq 1 exp 1 x").unwrap();
    let p = f.path().display().to_string();
    let (code, _, err) = exec(&["normalize", "--input", &p, "--level", "2"]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn usage_errors() {
    let p = saddle_path();
    assert_eq!(exec(&[]).0, EXIT_USAGE);
    assert_eq!(exec(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(exec(&["normalize", "--input", &p]).0, EXIT_USAGE);
    assert_eq!(exec(&["normalize", "--input", &p, "--level", "2", "--order", "3"]).0, EXIT_USAGE);
    assert_eq!(exec(&["normalize", "--input", &p, "--level", "0"]).0, EXIT_USAGE);
    assert_eq!(exec(&["normalize", "--input", &p, "--level", "2", "--emit", "all"]).0, EXIT_USAGE);
    assert_eq!(exec(&["coeff", "--input", &p]).0, EXIT_USAGE);
    let (code, out, _) = exec(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("normalize"));
}

#[test]
fn missing_file_is_invalid() {
    let (code, _, err) = exec(&["normalize", "--input", "/nonexistent/x.nf", "--level", "2"]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("/nonexistent/x.nf"));
}
