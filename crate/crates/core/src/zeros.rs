//! Zeros ξₙ of Z(t) located through κ(ξₙ) = n, the points ηₙ where κ is
//! a half-integer, the special abscissae a_ϑ, a_κ, a_γ, and a brute-force
//! sign-change scan of Z used as an independent count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kappa::KappaEngine;
use crate::theta;
use crate::zeta::{self, ZTriple};

/// Largest index accepted by [`find_xi`]; ξ₃₀₀₀ is still inside |t| ≤ 10³.
pub const MAX_XI_INDEX: u32 = 3000;

/// Relative tolerance for deciding that a derivative of Z is nonzero.
const MULTIPLICITY_TOL: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalZero {
    pub index: u32,
    pub ordinate: f64,
    pub multiplicity: u32,
    /// |κ(ξₙ) − n| before the anchor is snapped.
    pub kappa_residual: f64,
    pub z_residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EtaPoint {
    /// Label k of ηₖ; the point with κ = n + ½ is η_{n+2}.
    pub index: i64,
    pub ordinate: f64,
    pub half_value: f64,
    pub zprime_residual: f64,
    /// |κ(η) − (n + ½)|
    pub kappa_residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpecialAbscissae {
    pub a_theta: f64,
    pub a_kappa: f64,
    pub a_gamma: f64,
}

/// Newton iteration t ← t − g/g′ confined to (lo, hi).
fn polish<F>(mut t: f64, lo: f64, hi: f64, eval: F) -> Result<f64>
where
    F: Fn(&ZTriple) -> (f64, f64),
{
    for _ in 0..30 {
        let z = zeta::z_triple(t)?;
        let (g, dg) = eval(&z);
        if g == 0.0 {
            break;
        }
        let step = g / dg;
        let next = t - step;
        if !(next > lo && next < hi) || !next.is_finite() {
            return Err(Error::BracketViolation {
                lo,
                hi,
                detail: format!("Newton step from {t} left the bracket"),
            });
        }
        t = next;
        if step.abs() < 4.0 * f64::EPSILON * t.abs() {
            break;
        }
    }
    Ok(t)
}

/// Multiplicity of a zero of Z from the jet (Z, Z′, Z″) at `xi`, with
/// the scale of Z taken from its size at xi ± 0.05.
pub fn multiplicity_of(xi: f64) -> Result<u32> {
    let delta = 0.05;
    let z = zeta::z_triple(xi)?;
    let lo = zeta::z_triple(xi - delta)?.z.abs();
    let hi = zeta::z_triple(xi + delta)?.z.abs();
    let scale = lo.max(hi) / delta;
    if scale == 0.0 || z.z.abs() > 1e-6 * scale * delta {
        return Err(Error::Domain(format!("{xi} is not a zero of Z (|Z| = {:e})", z.z.abs())));
    }
    if z.d1.abs() > MULTIPLICITY_TOL * scale {
        Ok(1)
    } else if z.d2.abs() > MULTIPLICITY_TOL * scale / delta {
        Ok(2)
    } else {
        Err(Error::IndeterminateMultiplicity { xi })
    }
}

/// ξₙ, the n-th positive zero ordinate of Z, as the solution of κ(t) = n
/// polished by Newton on Z. Registers the ordinate as a κ anchor.
pub fn find_xi(engine: &KappaEngine, n: u32) -> Result<CriticalZero> {
    if n == 0 || n > MAX_XI_INDEX {
        return Err(Error::Domain(format!("zero index {n} outside 1..={MAX_XI_INDEX}")));
    }
    let seed = match engine.zero_anchor(n) {
        Some((xi, _)) => xi,
        None => engine.gamma_inverse(n as f64)?,
    };
    let xi = polish(seed, seed - 0.5, seed + 0.5, |z| (z.z, z.d1))?;
    if (xi - seed).abs() > 1e-6 {
        return Err(Error::CrossCheckMismatch {
            what: "zero from kappa inversion vs Newton on Z",
            lhs: seed,
            rhs: xi,
        });
    }
    let z_residual = zeta::z_triple(xi)?.z.abs();
    let multiplicity = multiplicity_of(xi)?;
    let deviation = engine.insert_zero_anchor(n, xi)?;
    Ok(CriticalZero {
        index: n,
        ordinate: xi,
        multiplicity,
        kappa_residual: deviation.abs(),
        z_residual,
    })
}

/// ξ₁ … ξ_count, located in parallel.
pub fn find_xis(engine: &KappaEngine, count: u32) -> Result<Vec<CriticalZero>> {
    let out: Vec<CriticalZero> = (1..=count)
        .into_par_iter()
        .map(|n| find_xi(engine, n))
        .collect::<Result<_>>()?;
    for w in out.windows(2) {
        if w[1].ordinate <= w[0].ordinate {
            return Err(Error::MonotonicityViolation {
                t: w[1].ordinate,
                detail: format!("xi_{} = {} not above xi_{} = {}", w[1].index, w[1].ordinate, w[0].index, w[0].ordinate),
            });
        }
    }
    Ok(out)
}

/// The point where κ = n + ½ (n ≥ −1), i.e. η_{n+2}, as a zero of Z′.
/// For n = −1 the positive point in (a_κ, a_ϑ) is returned.
pub fn find_eta(engine: &KappaEngine, n: i64) -> Result<EtaPoint> {
    if n < -1 || n >= MAX_XI_INDEX as i64 {
        return Err(Error::Domain(format!("eta level {n} outside -1..{MAX_XI_INDEX}")));
    }
    let a_theta = theta::find_a_theta().value;
    let (lo, hi) = match n {
        -1 => (0.0, a_theta),
        0 => (a_theta, find_xi(engine, 1)?.ordinate),
        _ => (
            find_xi(engine, n as u32)?.ordinate,
            find_xi(engine, n as u32 + 1)?.ordinate,
        ),
    };
    let level = n as f64 + 0.5;
    let seed = engine.gamma_inverse(level)?;
    if !(seed > lo && seed < hi) {
        return Err(Error::BracketViolation {
            lo,
            hi,
            detail: format!("kappa = {level} reached at {seed}"),
        });
    }
    let eta = polish(seed, lo, hi, |z| (z.d1, z.d2))?;
    let z = zeta::z_triple(eta)?;
    let k = engine.kappa_of(eta)?.kappa;
    Ok(EtaPoint {
        index: n + 2,
        ordinate: eta,
        half_value: level,
        zprime_residual: z.d1.abs(),
        kappa_residual: (k - level).abs(),
    })
}

pub fn find_a_kappa_gamma(engine: &KappaEngine) -> Result<SpecialAbscissae> {
    let a_kappa = engine.a_kappa();
    Ok(SpecialAbscissae {
        a_theta: theta::find_a_theta().value,
        a_kappa,
        a_gamma: engine.kappa_of(a_kappa)?.kappa,
    })
}

/// N₀₀(t) = ⌊κ(t)⌋, the number of distinct zero ordinates in (0, t].
pub fn count_n00(engine: &KappaEngine, t: f64) -> Result<i64> {
    let a_theta = theta::find_a_theta().value;
    if t <= a_theta {
        return Err(Error::Domain(format!("count needs t > {a_theta}, got {t}")));
    }
    let k = engine.kappa_of(t)?.kappa;
    let frac = k - k.floor();
    if !(1e-6..=1.0 - 1e-6).contains(&frac) {
        log::warn!("t = {t} is next to a zero ordinate (kappa = {k})");
    }
    Ok(k.floor() as i64)
}

/// Brackets [a, a + step] on which Z changes sign, scanning [t_lo, t_hi].
pub fn scan_sign_changes(t_lo: f64, t_hi: f64, step: f64) -> Result<Vec<(f64, f64)>> {
    if !(t_lo >= 0.0 && t_lo < t_hi && t_hi <= zeta::IM_MAX) {
        return Err(Error::Domain(format!("bad scan range [{t_lo}, {t_hi}]")));
    }
    if !(step > 0.0 && step <= 0.05) {
        return Err(Error::Domain(format!("scan step {step} must be in (0, 0.05]")));
    }
    let n = ((t_hi - t_lo) / step).ceil() as usize;
    let grid: Vec<f64> = (0..=n).map(|i| (t_lo + i as f64 * step).min(t_hi)).collect();
    let values: Vec<f64> = grid
        .par_iter()
        .map(|&t| zeta::z_triple(t).map(|z| z.z))
        .collect::<Result<_>>()?;
    Ok(grid
        .windows(2)
        .zip(values.windows(2))
        .filter(|(_, v)| v[0] * v[1] < 0.0)
        .map(|(g, _)| (g[0], g[1]))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_zero() {
        let e = KappaEngine::new();
        let z = find_xi(&e, 1).unwrap();
        assert!((z.ordinate - 14.134_725_141_734_694).abs() < 1e-10);
        assert_eq!(z.multiplicity, 1);
        assert!(z.kappa_residual < 1e-8);
        assert!(z.z_residual < 1e-12);
    }

    #[test]
    fn not_a_zero_is_rejected() {
        assert!(multiplicity_of(20.0).is_err());
    }

    #[test]
    fn empty_scan_below_first_zero() {
        assert!(scan_sign_changes(0.0, 10.0, 0.01).unwrap().is_empty());
        assert!(scan_sign_changes(0.0, 10.0, 0.1).is_err());
    }
}
