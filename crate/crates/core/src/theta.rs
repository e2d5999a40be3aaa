//! The Riemann–Siegel phase ϑ(t) and its first two derivatives.
//!
//! Two routes are provided. The series route sums the arctangent
//! expansion of ϑ directly up to an index K with (4K+1) ≥ 8|t| and
//! replaces the remaining tail by its power expansion in (2t/(4k+1)),
//! each power summed in closed form through a Hurwitz zeta value. The
//! asymptotic route goes through log Γ(1/4 + it/2).

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun::{self, BERNOULLI_EVEN, EULER_GAMMA, LN_PI, PI};

pub const THETA_T_MAX: f64 = 1.0e4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThetaTriple {
    pub t: f64,
    pub theta: f64,
    pub d1: f64,
    pub d2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AbscissaATheta {
    pub value: f64,
    pub residual: f64,
}

/// Linear coefficient −(γ + log π + 3 log 2 + π/2)/2 of the series.
const LINEAR: f64 = -0.5 * (EULER_GAMMA + LN_PI + 3.0 * std::f64::consts::LN_2 + PI / 2.0);

/// a^m ζ(m, a) for m ≥ 3 and a ≥ 16, by Euler–Maclaurin at a.
fn hurwitz_scaled(m: u32, a: f64) -> f64 {
    let mf = m as f64;
    let mut acc = a / (mf - 1.0) + 0.5;
    // B_{2i}/(2i)! (m)_{2i-1} a^{1-2i}
    let mut rising = mf; // (m)_1
    let mut fact = 2.0; // (2i)!
    let mut apow = 1.0 / a;
    for (i, &b) in BERNOULLI_EVEN.iter().enumerate().take(10) {
        let i = i as f64 + 1.0;
        let term = b / fact * rising * apow;
        acc += term;
        if term.abs() < 1e-18 * acc.abs() {
            break;
        }
        rising *= (mf + 2.0 * i - 1.0) * (mf + 2.0 * i);
        fact *= (2.0 * i + 1.0) * (2.0 * i + 2.0);
        apow /= a * a;
    }
    acc
}

fn series_nonneg(t: f64) -> ThetaTriple {
    if t == 0.0 {
        return ThetaTriple {
            t,
            theta: 0.0,
            d1: LINEAR,
            d2: 0.0,
        };
    }
    let c = 2.0 * t;
    let c2 = c * c;
    let k_split = (16.0f64).max(c.ceil()) as u64;

    let mut theta = 0.0;
    let mut d1 = 0.0;
    let mut d2 = 0.0;
    // Sum from the small terms up for better rounding.
    for k in (0..k_split).rev() {
        let u = 4.0 * k as f64 + 1.0;
        let x = c / u;
        let den = u * u + c2;
        theta += x - x.atan();
        d1 += 2.0 * c2 / (u * den);
        d2 += 8.0 * c * u / (den * den);
    }

    // Tail k ≥ K: x = c/u ≤ 1/4, expand in powers of x.
    let a = k_split as f64 + 0.25;
    let r = c / (4.0 * a);
    let r2 = r * r;
    let mut t_theta = 0.0;
    let mut t_d1 = 0.0;
    let mut t_d2 = 0.0;
    let mut rpow = r * r2; // r^{2j+1}, j = 1
    let mut sign = 1.0;
    for j in 1..=40u32 {
        let m = 2 * j + 1;
        // Σ_{k≥K} u^{-m} = 4^{-m} a^{-m} (a^m ζ(m, a)).
        let hz = hurwitz_scaled(m, a);
        let base = rpow * hz; // c^m Σ u^{-m}
        let jf = j as f64;
        let dt = sign * base / m as f64;
        let dd1 = sign * 2.0 * base / c;
        let dd2 = sign * 8.0 * jf * base / c2;
        t_theta += dt;
        t_d1 += dd1;
        t_d2 += dd2;
        if dt.abs() < 1e-19 * (1.0 + t_theta.abs()) && dd2.abs() < 1e-19 * (1.0 + t_d2.abs()) {
            break;
        }
        rpow *= r2;
        sign = -sign;
    }

    ThetaTriple {
        t,
        theta: LINEAR * t + theta + t_theta,
        d1: LINEAR + d1 + t_d1,
        d2: d2 + t_d2,
    }
}

fn check_range(t: f64) -> Result<()> {
    if !t.is_finite() || t.abs() > THETA_T_MAX {
        return Err(Error::OutOfRange {
            what: "t",
            value: t,
            limit: THETA_T_MAX,
        });
    }
    Ok(())
}

/// ϑ, ϑ′, ϑ″ from the convergent arctangent series. Odd in t by
/// construction: the series is evaluated at |t| and the sign applied.
pub fn theta_series(t: f64) -> Result<ThetaTriple> {
    check_range(t)?;
    let v = series_nonneg(t.abs());
    if t < 0.0 {
        Ok(ThetaTriple {
            t,
            theta: -v.theta,
            d1: v.d1,
            d2: -v.d2,
        })
    } else {
        Ok(v)
    }
}

/// ϑ(t) = Im log Γ(1/4 + it/2) − (t/2) log π, with derivatives from the
/// digamma and trigamma functions. Requires |t| ≥ 1.
pub fn theta_asymptotic(t: f64) -> Result<ThetaTriple> {
    check_range(t)?;
    if t.abs() < 1.0 {
        return Err(Error::OutOfRange {
            what: "|t| below asymptotic route minimum",
            value: t,
            limit: 1.0,
        });
    }
    let z = Complex64::new(0.25, 0.5 * t);
    let lg = specfun::log_gamma(z)?;
    let psi = specfun::digamma(z)?;
    let psi1 = specfun::trigamma(z)?;
    Ok(ThetaTriple {
        t,
        theta: lg.im - 0.5 * t * LN_PI,
        d1: 0.5 * psi.re - 0.5 * LN_PI,
        d2: -0.25 * psi1.im,
    })
}

/// The default evaluator used by the rest of the crate.
#[inline]
pub fn theta(t: f64) -> Result<ThetaTriple> {
    theta_series(t)
}

/// The unique positive critical point of ϑ.
pub fn find_a_theta() -> AbscissaATheta {
    let d1 = |t: f64| series_nonneg(t).d1;
    let (mut lo, mut hi) = (6.0, 7.0);
    debug_assert!(d1(lo) < 0.0 && d1(hi) > 0.0);
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        if d1(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..8 {
        let v = series_nonneg(x);
        let step = v.d1 / v.d2;
        x -= step;
        if step.abs() < 1e-16 * x {
            break;
        }
    }
    AbscissaATheta {
        value: x,
        residual: d1(x).abs(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A_THETA: f64 = 6.289_835_988_836_902_78;

    #[test]
    fn theta_zero() {
        let v = theta_series(0.0).unwrap();
        assert_eq!(v.theta, 0.0);
        // ϑ′(0) = −(γ + log π)/2 − 2 + (4 − 3 log 2 − π/2)/2 ... equals the linear coefficient.
        assert!((v.d1 + 2.686_091_709_612_832_8).abs() < 1e-14);
    }

    #[test]
    fn theta_reference_values() {
        // 40-digit reference values at t = 20.
        let v = theta_series(20.0).unwrap();
        assert!((v.theta - 1.186_894_808_444_484).abs() < 1e-13);
        assert!((v.d1 - 0.578_875_497_422_416_8).abs() < 1e-14);
        assert!((v.d2 - 0.025_005_212_899_667_436).abs() < 1e-15);
        let v = theta_series(10.0).unwrap();
        assert!((v.theta + 3.067_074_396_289_895).abs() < 1e-13);
    }

    #[test]
    fn a_theta_digits() {
        let a = find_a_theta();
        assert!((a.value - A_THETA).abs() < 1e-14, "{}", a.value);
        assert!(a.residual < 1e-13);
        assert!(a.value > 6.25 && a.value < 6.35);
        assert!(theta_series(a.value - 0.1).unwrap().d1 < 0.0);
        assert!(theta_series(a.value + 0.1).unwrap().d1 > 0.0);
        let asy = theta_asymptotic(A_THETA).unwrap();
        assert!(asy.d1.abs() < 1e-11);
    }

    #[test]
    fn a_theta_second_derivative_vs_difference() {
        let a = find_a_theta().value;
        let h = 1e-4;
        let fd = (theta_series(a + h).unwrap().d1 - theta_series(a - h).unwrap().d1) / (2.0 * h);
        let d2 = theta_series(a).unwrap().d2;
        assert!(((fd - d2) / d2).abs() < 1e-6);
        assert!((d2 - 0.079_662_298_247_611_33).abs() < 1e-14);
    }

    #[test]
    fn route_agreement() {
        let mut t = 1.0;
        while t <= 100.0 {
            let s = theta_series(t).unwrap();
            let a = theta_asymptotic(t).unwrap();
            assert!((s.theta - a.theta).abs() < 1e-11, "t={t}");
            assert!((s.d1 - a.d1).abs() < 1e-11, "t={t}");
            assert!((s.d2 - a.d2).abs() < 1e-11, "t={t}");
            t += 0.37;
        }
        for &t in &[250.0, 999.0, 3000.0, 9999.0] {
            let s = theta_series(t).unwrap();
            let a = theta_asymptotic(t).unwrap();
            assert!((s.theta - a.theta).abs() < 1e-11 * t.max(1.0), "t={t}");
            assert!((s.d1 - a.d1).abs() < 1e-12, "t={t}");
        }
    }

    #[test]
    fn ranges() {
        assert!(theta_series(1.0e4 + 1.0).is_err());
        assert!(theta_asymptotic(0.5).is_err());
        assert!(theta_asymptotic(100.0).unwrap().d2 > 0.0);
    }

    #[test]
    fn oddness_exact() {
        for i in 0..100 {
            let t = 0.173 * i as f64 + 0.01;
            let p = theta_series(t).unwrap();
            let m = theta_series(-t).unwrap();
            assert_eq!(p.theta, -m.theta);
            assert_eq!(p.d1, m.d1);
        }
    }
}
