//! End-to-end behaviour of the `zetaphase` binary and the catalog I/O.

use std::process::{Command, Output};

use zetaphase_cli::catalog::{complex_table, eta_table, read_complex, read_eta, read_trivial, read_xi, trivial_table, xi_table};
use zetaphase_cli::output::round_real;
use zetaphase_cli::verify::{FIRST_XI, FIRST_ZETA_PRIME};
use zetaphase_cli::{CliError, EXIT_SEARCH, EXIT_USAGE, EXIT_VERIFY_FAILED};
use zetaphase::{find_complex_zeros, find_eta, find_trivial_zeros, find_xis, KappaEngine, ZetaPrimeZero};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zetaphase"))
        .args(args)
        .env_remove("ZETAPHASE_T_MAX")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Rows of a CSV string as maps from header to cell.
fn rows(csv_text: &str) -> Vec<Vec<(String, String)>> {
    let mut r = csv::Reader::from_reader(csv_text.as_bytes());
    let h: Vec<String> = r.headers().unwrap().iter().map(str::to_owned).collect();
    r.records()
        .map(|rec| h.iter().cloned().zip(rec.unwrap().iter().map(str::to_owned)).collect())
        .collect()
}

fn get(row: &[(String, String)], key: &str) -> f64 {
    row.iter().find(|(k, _)| k == key).unwrap().1.parse().unwrap()
}

#[test]
fn eval_at_origin_and_at_a_theta() {
    let o = run(&["eval", "--t", "0"]);
    assert!(o.status.success());
    let r = &rows(&stdout(&o))[0];
    assert_eq!(get(r, "kappa"), -0.5);
    assert!((get(r, "E") - std::f64::consts::TAU).abs() < 1e-10);

    let o = run(&["eval", "--t", "6.289835988", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["kappa"].as_f64().unwrap().abs() < 1e-8);
    assert!(v["N"].is_null());

    let o = run(&["eval", "--t", "50.5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["N"], 10);
    assert_eq!(v["RH"], 0);
}

#[test]
fn exit_codes() {
    let o = run(&["eval", "--t", "1.0e9"]);
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
    assert!(String::from_utf8_lossy(&o.stderr).contains("t exceeds supported range"));

    assert_eq!(run(&["scan", "8990", "9006", "0.01", "kappa"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(run(&["scan", "5", "1", "0.1", "z"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(run(&["scan", "0", "1", "0", "z"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(run(&["zeros", "xi"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(run(&["zeros", "zprime-complex", "--height", "200"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(run(&["--digits", "30", "eval", "--t", "1"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(run(&["verify", "constants"]).status.code(), Some(0));

    let search = CliError::from(zetaphase::Error::Search("no bracket".into()));
    assert_eq!(search.exit_code(), EXIT_SEARCH);
    assert_eq!(CliError::VerifyFailed { failed: 1, total: 2 }.exit_code(), EXIT_VERIFY_FAILED);
}

#[test]
fn t_max_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_zetaphase"))
        .args(["eval", "--t", "150"])
        .env("ZETAPHASE_T_MAX", "200")
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(run(&["eval", "--t", "150"]).status.code(), Some(EXIT_USAGE));
}

#[test]
fn scan_output_is_deterministic() {
    let args = ["--threads", "1", "scan", "0", "50", "0.05", "kappa", "kappa1", "e", "s"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("t,kappa,kappa1,e,s\n"));
    assert!(!text.contains('\r'));
    // Row order does not depend on the worker count.
    let c = run(&["--threads", "4", "scan", "0", "50", "0.05", "kappa", "kappa1", "e", "s"]);
    assert_eq!(a.stdout, c.stdout);

    let a = run(&["--threads", "1", "zeros", "eta", "--count", "12"]);
    let b = run(&["--threads", "1", "zeros", "eta", "--count", "12"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn kappa_scan_shape() {
    let o = run(&["scan", "0", "50", "0.05", "kappa", "kappa1"]);
    let rows = rows(&stdout(&o));
    assert_eq!(rows.len(), 1001);
    let pts: Vec<(f64, f64, f64)> = rows.iter().map(|r| (get(r, "t"), get(r, "kappa"), get(r, "kappa1"))).collect();
    // κ crosses each integer n once, next to the n-th zero ordinate.
    for (n, xi) in FIRST_XI.iter().enumerate() {
        let level = (n + 1) as f64;
        let cross: Vec<f64> = pts.windows(2).filter(|w| w[0].1 < level && w[1].1 >= level).map(|w| w[1].0).collect();
        assert_eq!(cross.len(), 1, "level {level}");
        assert!((cross[0] - xi).abs() <= 0.05 + 1e-9, "level {level} at {}", cross[0]);
    }
    // κ′ dips below zero near the origin and changes sign once, near 0.78.
    assert!(pts[1].2 < 0.0);
    let turns: Vec<f64> = pts.windows(2).filter(|w| w[0].2 < 0.0 && w[1].2 >= 0.0).map(|w| w[1].0).collect();
    assert_eq!(turns, vec![0.8]);
}

#[test]
fn catalog_examples() {
    let o = run(&["--digits", "14", "zeros", "xi", "--count", "7"]);
    let xs = read_xi(o.stdout.as_slice()).unwrap();
    assert_eq!(xs.len(), 7);
    for (z, r) in xs.iter().zip(FIRST_XI) {
        assert!((z.ordinate - r).abs() < 1e-8);
    }

    let o = run(&["--digits", "14", "zeros", "zprime-complex", "--height", "60"]);
    let zs = read_complex(o.stdout.as_slice()).unwrap();
    assert_eq!(zs.len(), 7);
    for (z, (b, g)) in zs.iter().zip(FIRST_ZETA_PRIME) {
        assert!((z.beta - b).abs() < 1e-7 && (z.gamma - g).abs() < 1e-7);
    }

    let o = run(&["zeros", "zprime-trivial", "--count", "3"]);
    let rs = rows(&stdout(&o));
    let brackets: Vec<(f64, f64)> = rs.iter().map(|r| (get(r, "bracket_lo"), get(r, "bracket_hi"))).collect();
    assert_eq!(brackets, [(-4.0, -2.0), (-6.0, -4.0), (-8.0, -6.0)]);
    for r in &rs {
        let a = get(r, "a");
        assert!(a > get(r, "bracket_lo") && a < get(r, "bracket_hi"));
    }
}

#[test]
fn catalogs_round_trip() {
    let digits = 9;
    let e = KappaEngine::new();
    let xis = find_xis(&e, 10).unwrap();
    let etas: Vec<_> = (-1..5).map(|n| find_eta(&e, n).unwrap()).collect();
    let complex = find_complex_zeros(45.0).unwrap().zeros;
    let trivial = find_trivial_zeros(20).unwrap();
    let r = |x: f64| round_real(x, digits);

    let mut buf = Vec::new();
    xi_table(&xis).write_csv(&mut buf, digits).unwrap();
    let back = read_xi(buf.as_slice()).unwrap();
    assert_eq!(back.len(), xis.len());
    for (a, b) in xis.iter().zip(&back) {
        assert_eq!((a.index, a.multiplicity), (b.index, b.multiplicity));
        assert_eq!(
            (r(a.ordinate), r(a.kappa_residual), r(a.z_residual)),
            (b.ordinate, b.kappa_residual, b.z_residual)
        );
    }

    let mut buf = Vec::new();
    eta_table(&etas).write_csv(&mut buf, digits).unwrap();
    let back = read_eta(buf.as_slice()).unwrap();
    for (a, b) in etas.iter().zip(&back) {
        assert_eq!(a.index, b.index);
        assert_eq!(
            (r(a.ordinate), r(a.half_value), r(a.zprime_residual), r(a.kappa_residual)),
            (b.ordinate, b.half_value, b.zprime_residual, b.kappa_residual)
        );
    }

    let mut buf = Vec::new();
    complex_table(&complex).write_csv(&mut buf, digits).unwrap();
    same_zeros(&complex, &read_complex(buf.as_slice()).unwrap(), digits);

    let mut buf = Vec::new();
    trivial_table(&trivial).write_csv(&mut buf, digits).unwrap();
    same_zeros(&trivial, &read_trivial(buf.as_slice()).unwrap(), digits);
}

fn same_zeros(orig: &[ZetaPrimeZero], back: &[ZetaPrimeZero], digits: usize) {
    let r = |x: f64| round_real(x, digits);
    assert_eq!(orig.len(), back.len());
    for (a, b) in orig.iter().zip(back) {
        assert_eq!((a.kind, a.index), (b.kind, b.index));
        assert_eq!((r(a.beta), r(a.gamma), r(a.residual)), (b.beta, b.gamma, b.residual));
    }
}
