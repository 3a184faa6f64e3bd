use std::process::{Command, Output};

use num_complex::Complex64;
use serde_json::Value;

use polyspec::gridfile::GridFile;
use polyspec::spectral_ops::{expand_sampled, synthesize_on_grid, QuadGrid};
use polyspec::spectrum::{Polydisc, QTuple};
use polyspec::zeros::ZeroCache;

fn polyspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyspec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = polyspec(args);
    assert!(
        out.status.success(),
        "{args:?} exited {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

fn validate(instance: &Value) {
    let schema: Value = serde_json::from_str(include_str!("../schema/output.schema.json")).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(instance).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "schema errors: {errors:?}");
}

#[test]
fn first_zero_of_j0() {
    let v = json(&["zeros", "--order", "0", "--count", "1"]);
    let z = num(&v["zeros"][0]);
    assert!((z - 2.404825557695773).abs() < 1e-14);
    validate(&v);
}

#[test]
fn zeros_ignore_order_sign() {
    assert_eq!(
        json(&["zeros", "--order", "-2", "--count", "1"])["zeros"],
        json(&["zeros", "--order", "2", "--count", "1"])["zeros"]
    );
}

#[test]
fn zeros_csv_rows_ascend() {
    let text = ok(&["zeros", "--order", "0", "--count", "3", "--format", "csv"]);
    let rows: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn spectrum_on_equal_bidisc_starts_with_infinite_point() {
    let v = json(&["spectrum", "--radii", "1,1", "--q", "1", "--max", "1.5"]);
    let points = v["points"].as_array().unwrap();
    assert_eq!(points.len(), 1);
    assert_eq!(points[0]["infinite"], Value::Bool(true));
    let expected = 2.404825557695773f64.powi(2) / 4.0;
    assert!((num(&points[0]["value"]) - expected).abs() < 1e-12 * expected);
    validate(&v);
}

#[test]
fn spectrum_below_bottom_is_empty() {
    let v = json(&["spectrum", "--radii", "1,2", "--q", "1", "--max", "0.3"]);
    assert_eq!(v["points"], Value::Array(vec![]));
    validate(&v);
}

#[test]
fn degree_out_of_range_exits_3() {
    let out = polyspec(&["spectrum", "--radii", "1,1", "--q", "2", "--max", "1"]);
    assert_eq!(out.status.code(), Some(3));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("1 <= q <= 1"), "{msg}");
    assert!(out.stdout.is_empty());
}

#[test]
fn bad_flags_exit_2() {
    assert_eq!(polyspec(&["zeros", "--count", "1"]).status.code(), Some(2));
    assert_eq!(polyspec(&["zeros", "--order", "x"]).status.code(), Some(2));
    assert_eq!(polyspec(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn spectrum_csv_columns() {
    let text = ok(&["spectrum", "--radii", "1,1", "--q", "1", "--max", "6", "--format", "csv"]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("value,finite_multiplicity,infinite,family"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert!(rows.len() > 1);
    assert!(rows.iter().all(|r| r.len() == 4));
}

#[test]
fn bottom_of_unequal_bidisc() {
    let v = json(&["bottom", "--radii", "1,2", "--q", "1"]);
    assert!((num(&v["value"]) - 0.361449122684174).abs() < 1e-13);
    assert_eq!(v["tuple"], serde_json::json!([2]));
    validate(&v);
}

#[test]
fn verify_zeros_suite_passes() {
    let v = json(&["verify", "--suite", "zeros"]);
    assert_eq!(v["passed"], Value::Bool(true));
    assert!(!v["checks"].as_array().unwrap().is_empty());
    validate(&v);
}

#[test]
fn fd_oracle_zero_and_first_robin_eigenvalue() {
    let v = json(&[
        "oracle", "fd", "--order", "0", "--bc", "dbar-neumann", "--grid", "2000", "--count", "2",
    ]);
    let e = v["eigenvalues"].as_array().unwrap();
    assert!(num(&e[0]).abs() < 1e-6);
    assert!((num(&e[1]) - 14.681970642124).abs() < 1e-3 * 14.68);
    assert_eq!(num(&v["closed_form"][0]), 0.0);
    validate(&v);
}

#[test]
fn identical_flags_give_identical_bytes() {
    let args = ["spectrum", "--radii", "1,1.3,0.8", "--q", "2", "--max", "9"];
    assert_eq!(polyspec(&args).stdout, polyspec(&args).stdout);
}

#[test]
fn json_values_round_trip() {
    let text = ok(&["spectrum", "--radii", "1,1.3", "--q", "1", "--max", "8"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    validate(&v);
    let ours = polyspec::spectrum::assemble_spectrum(
        &Polydisc::new(vec![1.0, 1.3]).unwrap(),
        1,
        8.0,
        &Default::default(),
        &ZeroCache::new(),
    )
    .unwrap();
    let points = v["points"].as_array().unwrap();
    assert_eq!(points.len(), ours.len());
    for (p, q) in points.iter().zip(&ours) {
        assert_eq!(num(&p["value"]).to_bits(), q.value.to_bits());
    }
}

#[test]
fn inverse_of_grid_file() {
    let p = Polydisc::new(vec![1.0, 1.3]).unwrap();
    let tuple = QTuple::from_one_based(&[2], 2).unwrap();
    let cache = ZeroCache::new();
    let grid = QuadGrid::new(&p, 64, 14).unwrap();
    let (trunc, p_max) = (8.0, 4);

    // a known combination of basis modes
    let zero = vec![Complex64::new(0.0, 0.0); grid.len()];
    let basis = expand_sampled(&p, &tuple, trunc, p_max, &grid, &zero, &cache).unwrap();
    let n = basis.terms.len();
    assert!(n >= 3);
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
    coeffs[0] = Complex64::new(2.0, 0.0);
    coeffs[n - 1] = Complex64::new(0.0, -1.5);
    let f = basis.with_coefficients(&coeffs).unwrap();
    let samples = synthesize_on_grid(&f, &grid).unwrap();

    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("f.pspc");
    let output = dir.path().join("u.json");
    GridFile {
        n: 2,
        q: 1,
        axes: vec![(64, 14), (64, 14)],
        samples,
    }
    .write_to(std::fs::File::create(&input).unwrap())
    .unwrap();

    let stdout = ok(&[
        "inverse",
        "--radii",
        "1,1.3",
        "--tuple",
        "2",
        "--input",
        input.to_str().unwrap(),
        "--max",
        "8",
        "--p-max",
        "4",
        "--output",
        output.to_str().unwrap(),
    ]);
    assert!(stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    validate(&v);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), n);
    for (k, t) in terms.iter().enumerate() {
        let value = num(&t["mode"]["value"]);
        let c = Complex64::new(num(&t["coefficient"][0]), num(&t["coefficient"][1]));
        let expected = coeffs[k] / value;
        assert!((c - expected).norm() < 1e-10, "term {k}: {c} vs {expected}");
    }
}

#[test]
fn inverse_rejects_mismatched_grid_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("f.pspc");
    GridFile {
        n: 2,
        q: 1,
        axes: vec![(64, 4); 2],
        samples: vec![Complex64::new(0.0, 0.0); 256 * 256],
    }
    .write_to(std::fs::File::create(&input).unwrap())
    .unwrap();
    let out = polyspec(&[
        "inverse", "--radii", "1,1,1", "--tuple", "1", "--input", input.to_str().unwrap(), "--max", "4",
    ]);
    assert_eq!(out.status.code(), Some(3));

    let missing = dir.path().join("absent.pspc");
    let out = polyspec(&[
        "inverse", "--radii", "1,1", "--tuple", "1", "--input", missing.to_str().unwrap(), "--max", "4",
    ]);
    assert_eq!(out.status.code(), Some(1));
}
