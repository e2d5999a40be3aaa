//! ζ(s), ζ′(s), ζ″(s) by Euler–Maclaurin summation, and Hardy's Z(t)
//! with its first two derivatives on the critical line.
//!
//! For Re s < −1/2 the functional equation ζ(s) = χ(s) ζ(1 − s) is used.
//! The factors of χ are carried in log-scaled form so that the large
//! Γ and sine factors at big |Im s| never overflow separately.

use std::ops::{Add, Mul};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun::{self, ComplexValue, BERNOULLI_EVEN, LN_PI, LOG_2PI, PI};
use crate::theta::{self, ThetaTriple};

pub const RE_MIN: f64 = -50.0;
pub const RE_MAX: f64 = 3.5;
pub const IM_MAX: f64 = 1.0e3;

const REFLECTION_BELOW: f64 = -0.5;
const EM_CORRECTIONS: usize = 12;

/// Value and first two derivatives of an analytic function at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Jet {
    pub f: Complex64,
    pub d1: Complex64,
    pub d2: Complex64,
}

impl Jet {
    pub(crate) fn new(f: Complex64, d1: Complex64, d2: Complex64) -> Self {
        Jet { f, d1, d2 }
    }


    /// The jet of s ↦ s + c.
    fn linear(s: Complex64) -> Self {
        Jet::new(s, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
    }

    fn scale(self, k: Complex64) -> Self {
        Jet::new(self.f * k, self.d1 * k, self.d2 * k)
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet::new(self.f + o.f, self.d1 + o.d1, self.d2 + o.d2)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        Jet::new(
            self.f * o.f,
            self.f * o.d1 + self.d1 * o.f,
            self.f * o.d2 + 2.0 * self.d1 * o.d1 + self.d2 * o.f,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZetaJet {
    pub s: ComplexValue,
    pub f: ComplexValue,
    pub d1: ComplexValue,
    pub d2: ComplexValue,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZTriple {
    pub t: f64,
    pub z: f64,
    pub d1: f64,
    pub d2: f64,
    /// |Im(e^{iϑ} ζ(1/2 + it))|
    pub identity_residual: f64,
    /// |Re(e^{iϑ} ζ′(1/2 + it)) + ϑ′ Z|
    pub derivative_residual: f64,
}

/// Number of leading Dirichlet terms before the Euler–Maclaurin tail.
fn leading_terms(s: Complex64) -> usize {
    20usize.max((2.0 * s.im.abs()).ceil() as usize)
}

/// Jet of n^{-s} = e^{-s log n}.
#[inline]
fn power_jet(log_n: f64, s: Complex64) -> Jet {
    let v = (-s * log_n).exp();
    Jet::new(v, v * (-log_n), v * (log_n * log_n))
}

pub(crate) fn euler_maclaurin(s: Complex64) -> Jet {
    let n = leading_terms(s);
    let mut f = Complex64::new(0.0, 0.0);
    let mut d1 = Complex64::new(0.0, 0.0);
    let mut d2 = Complex64::new(0.0, 0.0);
    // Tail first, so the larger leading terms are added last.
    for k in (2..n).rev() {
        let l = (k as f64).ln();
        let v = (-s * l).exp();
        f += v;
        d1 -= v * l;
        d2 += v * (l * l);
    }
    f += 1.0;
    let mut acc = Jet::new(f, d1, d2);

    let nf = n as f64;
    let log_n = nf.ln();
    let n_pow = power_jet(log_n, s); // N^{-s}

    // N^{1-s}/(s-1)
    let h = (s - 1.0).inv();
    let recip = Jet::new(h, -h * h, 2.0 * h * h * h);
    acc = acc + n_pow.scale(Complex64::new(nf, 0.0)) * recip;
    // N^{-s}/2
    acc = acc + n_pow.scale(Complex64::new(0.5, 0.0));

    // Σ B_{2k}/(2k)! s(s+1)…(s+2k−2) N^{−s−2k+1}
    let mut poly = Jet::linear(s);
    let mut fact = 2.0;
    let mut npow = 1.0 / nf;
    for k in 1..=EM_CORRECTIONS {
        let b = BERNOULLI_EVEN[k - 1];
        let coef = Complex64::new(b / fact * npow, 0.0);
        acc = acc + (poly * n_pow).scale(coef);
        let kf = k as f64;
        poly = poly * Jet::linear(s + (2.0 * kf - 1.0)) * Jet::linear(s + 2.0 * kf);
        fact *= (2.0 * kf + 1.0) * (2.0 * kf + 2.0);
        npow /= nf * nf;
    }
    acc
}

/// ζ(s) = χ(s) ζ(1 − s) for Re s < −1/2. Returns the jet divided by
/// e^{log_scale} together with the real log scale, so that callers on
/// the far negative axis can work without overflow.
pub(crate) fn reflection_scaled(s: Complex64) -> Result<(Jet, f64)> {
    let w = Complex64::new(1.0, 0.0) - s;
    let lg = specfun::log_gamma(w)?;
    let psi = specfun::digamma(w)?;
    let psi1 = specfun::trigamma(w)?;

    let q = PI * s.im.abs() / 2.0;
    let i = Complex64::new(0.0, 1.0);
    let e1 = (i * s * (PI / 2.0) - q).exp();
    let e2 = (-i * s * (PI / 2.0) - q).exp();
    let sin_s = (e1 - e2) / (2.0 * i);
    let cos_s = (e1 + e2) / 2.0;
    let sine = Jet::new(sin_s, cos_s * (PI / 2.0), sin_s * (-PI * PI / 4.0));

    let gamma = Jet::new(Complex64::new(1.0, 0.0), -psi, psi * psi + psi1);
    let power = Jet::new(
        Complex64::new(1.0, 0.0),
        Complex64::new(LOG_2PI, 0.0),
        Complex64::new(LOG_2PI * LOG_2PI, 0.0),
    );

    let log_scale = s * LOG_2PI - LN_PI + lg + q;
    let phase = Complex64::from_polar(1.0, log_scale.im);

    let inner = euler_maclaurin(w);
    // d/ds ζ(1−s) = −ζ′(1−s)
    let mirrored = Jet::new(inner.f, -inner.d1, inner.d2);
    let jet = (power * sine * gamma * mirrored).scale(phase);
    Ok((jet, log_scale.re))
}

fn check_box(s: Complex64) -> Result<()> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::Domain(format!("non-finite argument {s}")));
    }
    if s.im.abs() > IM_MAX {
        return Err(Error::OutOfRange {
            what: "|Im s|",
            value: s.im,
            limit: IM_MAX,
        });
    }
    if s.re < RE_MIN || s.re > RE_MAX {
        return Err(Error::OutOfRange {
            what: "Re s",
            value: s.re,
            limit: if s.re < RE_MIN { RE_MIN } else { RE_MAX },
        });
    }
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole { re: 1.0, im: 0.0 });
    }
    Ok(())
}

pub(crate) fn zeta_jet_raw(s: Complex64) -> Result<Jet> {
    check_box(s)?;
    if s.re >= REFLECTION_BELOW {
        return Ok(euler_maclaurin(s));
    }
    let (jet, log_scale) = reflection_scaled(s)?;
    let k = log_scale.exp();
    let out = jet.scale(Complex64::new(k, 0.0));
    if !(out.f.norm().is_finite() && out.d1.norm().is_finite() && out.d2.norm().is_finite()) {
        return Err(Error::OutOfRange {
            what: "|zeta(s)| (overflow)",
            value: log_scale,
            limit: f64::MAX.ln(),
        });
    }
    Ok(out)
}

/// ζ, ζ′ and ζ″ at s, for −50 ≤ Re s ≤ 3 and |Im s| ≤ 1000.
pub fn zeta_jet(s: ComplexValue) -> Result<ZetaJet> {
    let j = zeta_jet_raw(s)?;
    Ok(ZetaJet {
        s,
        f: j.f,
        d1: j.d1,
        d2: j.d2,
    })
}

/// ζ(s) alone.
pub fn zeta(s: ComplexValue) -> Result<ComplexValue> {
    Ok(zeta_jet_raw(s)?.f)
}

/// Z, Z′ and Z″ from the ζ jet on the critical line and the ϑ triple.
pub fn z_triple_with(t: f64, th: &ThetaTriple) -> Result<ZTriple> {
    if t.abs() > IM_MAX {
        return Err(Error::OutOfRange {
            what: "t",
            value: t,
            limit: IM_MAX,
        });
    }
    let j = zeta_jet_raw(Complex64::new(0.5, t))?;
    let rot = Complex64::from_polar(1.0, th.theta);
    let f = rot * j.f;
    let f1 = rot * j.d1;
    let f2 = rot * j.d2;
    let z = f.re;
    // e^{iϑ} ζ′ = −ϑ′ Z − i Z′
    let d1 = -f1.im;
    // Differentiating once more: Z″ = −ϑ′ Re(e^{iϑ}ζ′) − Re(e^{iϑ}ζ″)
    let d2 = -th.d1 * f1.re - f2.re;
    Ok(ZTriple {
        t,
        z,
        d1,
        d2,
        identity_residual: f.im.abs(),
        derivative_residual: (f1.re + th.d1 * z).abs(),
    })
}

pub fn z_triple(t: f64) -> Result<ZTriple> {
    if t.abs() > IM_MAX {
        return Err(Error::OutOfRange {
            what: "t",
            value: t,
            limit: IM_MAX,
        });
    }
    let th = theta::theta(t)?;
    z_triple_with(t, &th)
}

/// Bundle of the critical-line quantities most callers need together.
#[derive(Debug, Clone, Copy)]
pub struct LineJet {
    pub theta: ThetaTriple,
    pub z: ZTriple,
    pub zeta: ZetaJet,
}

pub fn line_jet(t: f64) -> Result<LineJet> {
    if t.abs() > IM_MAX {
        return Err(Error::OutOfRange {
            what: "t",
            value: t,
            limit: IM_MAX,
        });
    }
    let th = theta::theta(t)?;
    let s = Complex64::new(0.5, t);
    let j = zeta_jet_raw(s)?;
    let rot = Complex64::from_polar(1.0, th.theta);
    let (f, f1, f2) = (rot * j.f, rot * j.d1, rot * j.d2);
    let z = ZTriple {
        t,
        z: f.re,
        d1: -f1.im,
        d2: -th.d1 * f1.re - f2.re,
        identity_residual: f.im.abs(),
        derivative_residual: (f1.re + th.d1 * f.re).abs(),
    };
    Ok(LineJet {
        theta: th,
        z,
        zeta: ZetaJet {
            s,
            f: j.f,
            d1: j.d1,
            d2: j.d2,
        },
    })
}
