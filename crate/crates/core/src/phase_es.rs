//! E(t) = 3π/2 + ϑ(t) − πκ(t), the real-analytic companion of S(t), and
//! S(t) = (1/π) arg ζ(½ + it) by continuous variation from 2 to 2 + it to
//! ½ + it.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kappa::{self, KappaEngine};
use crate::quad;
use crate::specfun::PI;
use crate::theta;
use crate::zeta;

/// Ordinates closer than this to a zero are rejected by [`s_of`].
pub const ORDINATE_EXCLUSION: f64 = 1e-6;
/// Terms in the sawtooth series check.
pub const FOURIER_TERMS: u32 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EDerivative {
    pub t: f64,
    /// ϑ′ − πκ′
    pub value: f64,
    /// Z(Zϑ′³ − Z′ϑ″ + Z″ϑ′)/(Z′² + (Zϑ′)²)
    pub z_form: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseReport {
    pub t: f64,
    pub kappa: f64,
    #[serde(rename = "E")]
    pub e: f64,
    #[serde(rename = "S")]
    pub s: f64,
    #[serde(rename = "N")]
    pub n: i64,
    #[serde(rename = "N00")]
    pub n00: i64,
    #[serde(rename = "RH")]
    pub rh: i64,
    /// S + E/π
    pub band: f64,
    /// |band − (RH − (κ − ⌊κ⌋ − ½))|
    pub band_identity_residual: f64,
}

/// E(t) = 3π/2 + ϑ(t) − πκ(t).
pub fn e_of(engine: &KappaEngine, t: f64) -> Result<f64> {
    let k = engine.kappa_of(t)?.kappa;
    Ok(1.5 * PI + theta::theta(t)?.theta - PI * k)
}

/// E′(t) in both forms.
pub fn e_d1(t: f64) -> Result<EDerivative> {
    let j = zeta::line_jet(t)?;
    let k1 = kappa::kappa_d1_from(&j)?.value;
    let (z, z1, z2) = (j.z.z, j.z.d1, j.z.d2);
    let (th1, th2) = (j.theta.d1, j.theta.d2);
    let den = z1 * z1 + (z * th1) * (z * th1);
    if den < 1e-20 {
        return Err(Error::Degenerate { t });
    }
    Ok(EDerivative {
        t,
        value: th1 - PI * k1,
        z_form: z * (z * th1 * th1 * th1 - z1 * th2 + z2 * th1) / den,
    })
}

/// Distance estimate |Z/Z′| from t to the nearest zero of Z.
fn zero_distance(t: f64) -> Result<f64> {
    let z = zeta::z_triple(t)?;
    Ok(if z.d1 == 0.0 {
        f64::INFINITY
    } else {
        (z.z / z.d1).abs()
    })
}

/// S(t) = (1/π) arg ζ(½ + it), the argument followed continuously along
/// 2 → 2 + it → ½ + it.
///
/// On Re s = 2 we have |ζ(s) − 1| ≤ ζ(2) − 1 < 1, so the argument along
/// the vertical segment is the principal value at 2 + it. The horizontal
/// segment adds ∫ Im ζ′/ζ(σ + it) dσ from σ = 2 down to ½.
pub fn s_of(t: f64) -> Result<f64> {
    if !t.is_finite() || t.abs() > zeta::IM_MAX {
        return Err(Error::OutOfRange {
            what: "t",
            value: t,
            limit: zeta::IM_MAX,
        });
    }
    if t == 0.0 {
        return Err(Error::Domain("the path from 2 to 1/2 crosses the pole at s = 1 when t = 0".into()));
    }
    let dist = zero_distance(t)?;
    if dist < ORDINATE_EXCLUSION {
        return Err(Error::NearZeroOrdinate { t, dist });
    }
    let vertical = zeta::zeta(Complex64::new(2.0, t))?.arg();
    let horizontal = quad::integrate(
        |sigma| {
            let j = zeta::zeta_jet(Complex64::new(sigma, t))?;
            Ok((j.d1 / j.f).im)
        },
        2.0,
        0.5,
        1e-11,
    )?;
    Ok((vertical + horizontal) / PI)
}

/// N(t) = 1 + ϑ(t)/π + S(t), which must be an integer.
pub fn n_of(t: f64, s: f64) -> Result<i64> {
    let raw = 1.0 + theta::theta(t)?.theta / PI + s;
    let n = raw.round();
    if (raw - n).abs() > 1e-6 {
        return Err(Error::CrossCheckMismatch {
            what: "1 + theta/pi + S against the nearest integer",
            lhs: raw,
            rhs: n,
        });
    }
    Ok(n as i64)
}

pub fn phase_report(engine: &KappaEngine, t: f64) -> Result<PhaseReport> {
    let a_theta = theta::find_a_theta().value;
    if t <= a_theta {
        return Err(Error::Domain(format!("phase report needs t > {a_theta}, got {t}")));
    }
    let kappa = engine.kappa_of(t)?.kappa;
    let e = 1.5 * PI + theta::theta(t)?.theta - PI * kappa;
    let s = s_of(t)?;
    let n = n_of(t, s)?;
    let n00 = kappa.floor() as i64;
    let rh = n - n00;
    let band = s + e / PI;
    let rhs = rh as f64 - (kappa - kappa.floor() - 0.5);
    Ok(PhaseReport {
        t,
        kappa,
        e,
        s,
        n,
        n00,
        rh,
        band,
        band_identity_residual: (band - rhs).abs(),
    })
}

/// Σ_{n ≤ terms} sin(2πnκ)/(πn), the sawtooth series for ½ − frac(κ).
pub fn sawtooth_series(kappa: f64, terms: u32) -> f64 {
    let x = 2.0 * PI * (kappa - kappa.floor());
    (1..=terms).rev().map(|n| (n as f64 * x).sin() / (PI * n as f64)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e_at_origin() {
        let e = KappaEngine::new();
        assert!((e_of(&e, 0.0).unwrap() - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn sawtooth_midpoints() {
        assert!(sawtooth_series(3.5, 200).abs() < 1e-12);
        assert!((sawtooth_series(0.25, 20000) - 0.25).abs() < 1e-4);
    }

    #[test]
    fn s_rejects_origin() {
        assert!(s_of(0.0).is_err());
    }
}
