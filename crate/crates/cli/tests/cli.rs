use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn demo() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/demo.csv")
}

fn intercept(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_intercept"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = intercept(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn render_writes_svg_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.svg");
    ok(&[
        "render",
        "--input",
        demo().to_str().unwrap(),
        "--output",
        out.to_str().unwrap(),
        "--chart",
        "intercept",
    ]);
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\""));
    assert!(svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<g class=\"segment ").count(), 20);
    assert_eq!(svg.matches("<g").count(), svg.matches("</g>").count());
}

#[test]
fn render_format_follows_extension() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("layout.json");
    let demo = demo();
    ok(&[
        "render",
        "--input",
        demo.to_str().unwrap(),
        "--output",
        out.to_str().unwrap(),
        "--chart",
        "slope",
    ]);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["chart"], "slope");
    assert_eq!(doc["lines"].as_array().unwrap().len(), 20);
}

#[test]
fn metrics_at_full_radius_use_whole_segments() {
    let demo = demo();
    let text = ok(&[
        "metrics",
        "--input",
        demo.to_str().unwrap(),
        "--radius-ratio",
        "1.0",
        "--seed",
        "3",
    ]);
    let report: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(report["filtered_in"], 20);

    // Independent recomputation: with r = R every chord is the full segment,
    // 2 R sin(alpha / 2) with alpha = pi |d| / span.
    let csv = std::fs::read_to_string(&demo).unwrap();
    let rows: Vec<(f64, f64)> = csv
        .lines()
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[1].parse().unwrap(), f[2].parse().unwrap())
        })
        .collect();
    let lo = rows
        .iter()
        .flat_map(|r| [r.0, r.1])
        .fold(f64::INFINITY, f64::min);
    let hi = rows
        .iter()
        .flat_map(|r| [r.0, r.1])
        .fold(f64::NEG_INFINITY, f64::max);
    let big_r = 0.45 * 800.0;
    let length = |i: usize| {
        let alpha = std::f64::consts::PI * (rows[i].1 - rows[i].0).abs() / (hi - lo);
        2.0 * big_r * (alpha / 2.0).sin()
    };
    let pairs = report["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 10);
    let expected = pairs
        .iter()
        .map(|p| {
            let (a, b) = (
                length(p[0].as_u64().unwrap() as usize),
                length(p[1].as_u64().unwrap() as usize),
            );
            (a - b).abs() / a.max(b)
        })
        .sum::<f64>()
        / pairs.len() as f64;
    let got = report["intensity"]["intercept"].as_f64().unwrap();
    assert!((got - expected).abs() < 1e-9, "{got} vs {expected}");
}

#[test]
fn eval_reduced_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let csv = dir.path().join("table.csv");
    for out in [&a, &b] {
        ok(&[
            "eval",
            "--reduced",
            "--seed",
            "7",
            "--output",
            out.to_str().unwrap(),
            "--table-csv",
            csv.to_str().unwrap(),
        ]);
    }
    let first = std::fs::read(&a).unwrap();
    assert_eq!(first, std::fs::read(&b).unwrap());
    let report: Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(report["n_datasets"], 243);
    assert!(std::fs::read_to_string(&csv).unwrap().lines().count() > 3);
}

#[test]
fn gen_writes_manifest_and_files() {
    let dir = tempfile::tempdir().unwrap();
    ok(&[
        "gen",
        "--output",
        dir.path().to_str().unwrap(),
        "--seed",
        "11",
        "--reduced",
    ]);
    let manifest: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("manifest.json")).unwrap())
            .unwrap();
    let entries = manifest["datasets"].as_array().unwrap();
    assert_eq!(entries.len(), 243);
    let first = entries[0]["file"].as_str().unwrap();
    let body = std::fs::read_to_string(dir.path().join(first)).unwrap();
    assert_eq!(
        body.lines().count() as u64,
        entries[0]["n"].as_u64().unwrap()
    );
}

#[test]
fn errors_are_one_line_and_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.csv");
    let out = intercept(&["render", "--input", missing.to_str().unwrap()]);
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.trim_end().lines().count(), 1, "{err}");
    assert!(err.contains("missing.csv"));

    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "a,1,2\nb,oops,3\n").unwrap();
    let out = intercept(&["metrics", "--input", bad.to_str().unwrap()]);
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
    assert_eq!(err.trim_end().lines().count(), 1);
}

#[test]
fn invalid_flags_are_rejected() {
    let demo = demo();
    let demo = demo.to_str().unwrap();
    for args in [
        vec!["render", "--input", demo, "--radius-ratio", "1.5"],
        vec!["render", "--input", demo, "--radius-ratio", "0"],
        vec!["render", "--input", demo, "--chart", "pie"],
        vec!["render", "--input", demo, "--range", "10"],
        vec!["serve", "--port", "80"],
        vec!["serve", "--port", "70000"],
    ] {
        assert!(!intercept(&args).status.success(), "{args:?} accepted");
    }
    // data below the fixed range
    let out = intercept(&["render", "--input", demo, "--range", "10,40"]);
    assert!(!out.status.success());
}
