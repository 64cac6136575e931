//! Command-level behavior: file I/O, exit codes, and output shapes.

use std::path::Path;
use std::process::{Command, Output};

use num_complex::Complex;
use vanrad::{radix2_bound, ErrorModel, WeightSign};

type C = Complex<f64>;

fn vanrad_cmd() -> Command {
    Command::new(env!("CARGO_BIN_EXE_vanrad"))
}

fn run(args: &[&str]) -> Output {
    vanrad_cmd().args(args).output().expect("spawn vanrad")
}

fn stdout_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "vanrad {args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn write_csv(path: &Path, values: &[C], header: bool) {
    let mut s = String::new();
    if header {
        s.push_str("re,im\n");
    }
    for c in values {
        s.push_str(&format!("{},{}\n", c.re, c.im));
    }
    std::fs::write(path, s).unwrap();
}

fn parse_csv(text: &str) -> Vec<C> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let (re, im) = l.split_once(',').unwrap();
            C::new(re.trim().parse().unwrap(), im.trim().parse().unwrap())
        })
        .collect()
}

#[test]
fn transform_dft_of_constant() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("z.csv");
    write_csv(&input, &[C::new(1.0, 0.0); 4], false);
    let out = stdout_ok(&[
        "transform", "--kind", "vanc", "--n", "4", "--input", input.to_str().unwrap(),
    ]);
    let y = parse_csv(&out);
    assert!((y[0] - C::new(4.0, 0.0)).norm() < 1e-12);
    for c in &y[1..] {
        assert!(c.norm() < 1e-12);
    }
}

#[test]
fn transform_accepts_header_and_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("z.csv");
    let output = dir.path().join("y.csv");
    write_csv(&input, &[C::new(0.5, -0.25), C::new(-1.5, 2.0)], true);
    let out = run(&[
        "transform", "--kind", "vancc", "--n", "2", "--theta", "0.3",
        "--input", input.to_str().unwrap(),
        "--output", output.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(parse_csv(&std::fs::read_to_string(output).unwrap()).len(), 2);
}

#[test]
fn transform_fast_agrees_with_direct_flag() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("z.csv");
    let z: Vec<C> = (0..8).map(|i| C::new(0.3 * i as f64 - 1.0, 0.1 * i as f64)).collect();
    write_csv(&input, &z, false);
    let base = [
        "transform", "--kind", "vanc", "--n", "8", "--theta", "0.7",
        "--input", input.to_str().unwrap(),
    ];
    let fast = parse_csv(&stdout_ok(&base));
    let mut with_direct = base.to_vec();
    with_direct.push("--direct");
    let direct = parse_csv(&stdout_ok(&with_direct));
    let num: f64 = fast.iter().zip(&direct).map(|(a, b)| (a - b).norm_sqr()).sum();
    let den: f64 = direct.iter().map(|c| c.norm_sqr()).sum();
    assert!((num / den).sqrt() < 1e-12);
}

#[test]
fn transform_wrong_direction_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("z.csv");
    write_csv(&input, &[C::new(1.0, 0.0); 4], false);
    // The delay parametrization pins the spec clockwise.
    let out = run(&[
        "transform", "--kind", "vancc", "--n", "4", "--freq", "1.0", "--tau", "0.05",
        "--input", input.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn transform_malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("z.csv");
    std::fs::write(&input, "re,im\n1.0,2.0\nnot-a-number,0\n").unwrap();
    let out = run(&[
        "transform", "--kind", "vanc", "--n", "2", "--input", input.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["transform", "--kind", "vanc", "--n", "6", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "non-power-of-two size is a usage error");
}

#[test]
fn tables_named_rows() {
    let t1 = stdout_ok(&["tables", "--table", "1"]);
    assert!(t1.lines().any(|l| l == "128,16256,896,769,832"), "{t1}");

    let t2 = stdout_ok(&["tables", "--table", "2"]);
    assert!(t2.lines().any(|l| l == "1024,2096128,10240,2095104,17922"), "{t2}");

    let t3 = stdout_ok(&["tables", "--table", "3"]);
    assert!(t3.lines().any(|l| l == "8,120,24,112,37"), "{t3}");
}

#[test]
fn errors_table_columns() {
    let out = stdout_ok(&["errors", "--n", "16", "--trials", "5", "--u", "1e-15", "--mu", "1e-15"]);
    let mut lines = out.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,radix2_bound,fft_bound,direct_bound,measured_max,measured_mean"
    );
    let machine = ErrorModel::machine();
    let mut saw_16 = false;
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        let n: usize = cells[0].parse().unwrap();
        let radix2: f64 = cells[1].parse().unwrap();
        let fft: f64 = cells[2].parse().unwrap();
        let measured_max: f64 = cells[4].parse().unwrap();
        let measured_mean: f64 = cells[5].parse().unwrap();
        if n == 16 {
            saw_16 = true;
            assert!((radix2 / 1.3e-13 - 1.0).abs() < 0.05, "radix2 at 16: {radix2:e}");
            assert!((fft / 8e-14 - 1.0).abs() < 0.05, "fft at 16: {fft:e}");
        }
        // The measured columns run at machine precision and must sit far
        // under the machine-roundoff bound.
        let bound = radix2_bound(n, &machine, WeightSign::Minus).unwrap();
        assert!(measured_max <= bound);
        assert!(measured_mean <= measured_max);
    }
    assert!(saw_16);
}

#[test]
fn errors_zero_trials_exits_2() {
    let out = run(&["errors", "--n", "16", "--trials", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn beams_coherent_sum_and_peak() {
    // f·τ = 0 puts every phase at zero: beam 0 at ω_x = 0 sums to N. A grid
    // of 9 points over [-π, π] contains ω_x = 0 exactly.
    let out = stdout_ok(&["beams", "--n", "4", "--freq", "0", "--tau", "0", "--grid", "9"]);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "k,omega_x,magnitude_db");
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 4 * 9);
    let at_zero = rows
        .iter()
        .find(|r| r[0] == 0.0 && r[1] == 0.0)
        .expect("beam 0 at omega_x = 0");
    let magnitude = 10f64.powf(at_zero[2] / 20.0);
    assert!((magnitude - 4.0).abs() < 1e-9);
}

#[test]
fn beams_invalid_grid_exits_2() {
    let out = run(&["beams", "--n", "4", "--freq", "0.1", "--tau", "0.2", "--grid", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["beams", "--n", "4", "--freq", "-0.1", "--tau", "0.2", "--grid", "8"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_reports_each_size() {
    let out = stdout_ok(&["bench", "--n", "8", "--trials", "3"]);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "n,fast_median_ns,direct_median_ns");
    let sizes: Vec<usize> = lines
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(sizes, vec![2, 4, 8]);

    let out = run(&["bench", "--n", "12"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sfg_dot_and_json_outputs() {
    let dot = stdout_ok(&["sfg", "--kind", "vanc", "--n", "8"]);
    // The θ=0 8-point graph carries the (√2/2)(1-j) rotation.
    assert!(dot.contains("0.707107-0.707107j"), "{dot}");
    assert!(dot.contains("style=dashed"));

    let json = stdout_ok(&["sfg", "--kind", "vanc", "--n", "8", "--format", "json"]);
    assert!(json.contains("\"nodes\""));
    assert!(json.contains("\"stages\""));

    let out = run(&["sfg", "--kind", "vancc", "--n", "8"]);
    assert_eq!(out.status.code(), Some(3));

    // Byte-identical on repeat.
    assert_eq!(dot, stdout_ok(&["sfg", "--kind", "vanc", "--n", "8"]));
}
