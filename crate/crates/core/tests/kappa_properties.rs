//! Structural properties of κ: symmetry, where it takes integer and
//! half-integer values, monotonicity between zeros and agreement of its
//! two derivative formulas.

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use zetaphase::{
    find_a_theta, find_eta, find_xis, kappa_d1, kappa_d1_detail, z_triple, CriticalZero, KappaEngine,
};

fn zeros_to_100(e: &KappaEngine) -> Vec<CriticalZero> {
    find_xis(e, 30).unwrap()
}

#[test]
fn shifted_odd_symmetry() {
    let e = KappaEngine::new();
    for i in 1..=50 {
        let t = 1.97 * i as f64 - 0.3;
        let s = e.kappa_of(t).unwrap().kappa + e.kappa_of(-t).unwrap().kappa;
        assert!((s + 1.0).abs() < 1e-9, "t={t}: {s}");
    }
}

#[test]
fn integer_values_only_at_zeros() {
    let e = KappaEngine::new();
    let xs = zeros_to_100(&e);
    let a = find_a_theta().value;
    let mut specials: Vec<f64> = xs.iter().map(|z| z.ordinate).collect();
    specials.push(a);
    let mut runner = TestRunner::new(Config::with_cases(500));
    runner
        .run(&(0.0f64..100.0), |t| {
            prop_assume!(specials.iter().all(|&x| (x - t).abs() > 0.05));
            let k = e.kappa_of(t).unwrap();
            let frac = k.kappa - k.kappa.floor();
            prop_assert!(frac > 1e-6 && frac < 1.0 - 1e-6, "t={} kappa={}", t, k.kappa);
            prop_assert!(k.circle_residual < 1e-8, "t={} residual={}", t, k.circle_residual);
            Ok(())
        })
        .unwrap();
}

#[test]
fn sandwich_between_zeros() {
    let e = KappaEngine::new();
    let xs = find_xis(&e, 31).unwrap();
    let mut runner = TestRunner::new(Config::with_cases(10));
    for n in 0..30 {
        let (lo, hi) = (xs[n].ordinate, xs[n + 1].ordinate);
        runner
            .run(&(0.0f64..1.0), |u| {
                let t = lo + (hi - lo) * (0.001 + 0.998 * u);
                let k = e.kappa_of(t).unwrap().kappa;
                let m = (n + 1) as f64;
                prop_assert!(k > m && k < m + 1.0, "t={} kappa={}", t, k);
                Ok(())
            })
            .unwrap();
    }
}

#[test]
fn half_integers_at_derivative_zeros() {
    let e = KappaEngine::new();
    let xs = zeros_to_100(&e);
    let mut etas = Vec::new();
    for n in 0..30 {
        let p = find_eta(&e, n).unwrap();
        let z = z_triple(p.ordinate).unwrap();
        assert!(z.z.abs() > 1e-3);
        assert!(p.zprime_residual < 1e-7 && p.kappa_residual < 1e-8);
        etas.push(p.ordinate);
    }
    // Strict interleaving η₂ < ξ₁ < η₃ < ξ₂ < …
    for n in 1..30 {
        assert!(xs[n - 1].ordinate < etas[n] && etas[n] < xs[n].ordinate);
    }
    assert!(etas[0] < xs[0].ordinate);
    // Exactly one sign change of Z′ between consecutive zeros, and
    // conversely each one is a half-integer point of κ.
    for n in 0..29 {
        let (lo, hi) = (xs[n].ordinate, xs[n + 1].ordinate);
        let steps = ((hi - lo) / 0.01).ceil() as usize;
        let mut prev = z_triple(lo).unwrap().d1;
        let mut changes = 0;
        for i in 1..=steps {
            let t = (lo + 0.01 * i as f64).min(hi);
            let v = z_triple(t).unwrap().d1;
            if prev * v < 0.0 {
                changes += 1;
            }
            prev = v;
        }
        assert_eq!(changes, 1, "between xi_{} and xi_{}", n + 1, n + 2);
    }
}

#[test]
fn derivative_routes_agree() {
    let e = KappaEngine::new();
    let xs = zeros_to_100(&e);
    let mut checked = 0;
    for i in 0..500 {
        let t = 0.1 + 99.8 * i as f64 / 499.0;
        if xs.iter().any(|z| (z.ordinate - t).abs() < 0.05) {
            continue;
        }
        let d = kappa_d1_detail(t).unwrap();
        let (a, b) = (d.z_form.unwrap(), d.zeta_form.unwrap());
        assert!((a - b).abs() < 1e-8, "t={t}: {a} vs {b}");
        checked += 1;
    }
    assert!(checked > 400);
}

#[test]
fn derivative_by_differences() {
    let e = KappaEngine::new();
    for t in [3.3, 17.0, 30.0, 64.2] {
        let h = 1e-4;
        let fd = (e.kappa_of(t + h).unwrap().kappa - e.kappa_of(t - h).unwrap().kappa) / (2.0 * h);
        let d = kappa_d1(t).unwrap();
        assert!(((fd - d) / d).abs() < 1e-6, "t={t}: {fd} vs {d}");
    }
}

#[test]
fn unit_mass_between_zeros() {
    let e = KappaEngine::new();
    let xs = find_xis(&e, 20).unwrap();
    for w in xs.windows(2) {
        let m = e.integral(w[0].ordinate, w[1].ordinate).unwrap();
        assert!((m - 1.0).abs() < 1e-7, "{m}");
    }
}

#[test]
fn inverse_values() {
    let e = KappaEngine::new();
    let a = find_a_theta().value;
    assert!((e.gamma_inverse(0.0).unwrap() - a).abs() < 1e-9);
    assert!((e.gamma_inverse(0.5).unwrap() - 10.212_074_845_235_79).abs() < 1e-9);
    assert!((e.gamma_inverse(1.0).unwrap() - 14.134_725_141_734_69).abs() < 1e-9);
    assert!(e.checkpoints().violations.is_empty());
}
