//! Complex log-gamma, digamma and trigamma, plus the constant table.
//!
//! Log-gamma uses a Lanczos sum for moderate arguments and the Stirling
//! series elsewhere. Arguments with small real part are moved right by the
//! recurrence and the product is unwound as a sum of principal logarithms,
//! so the imaginary part is continuous along any path that avoids the poles.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

pub type ComplexValue = Complex64;

pub const PI: f64 = std::f64::consts::PI;
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
pub const STIELTJES_1: f64 = -0.072_815_845_483_676_725;
pub const LOG_2PI: f64 = 1.837_877_066_409_345_5;
pub const LN_PI: f64 = 1.144_729_885_849_400_2;

pub const EULER_GAMMA_DIGITS: &str = "0.5772156649015328606065120900824024310422";
pub const STIELTJES_1_DIGITS: &str = "-0.07281584548367672486058637587490131913774";
pub const LOG_2PI_DIGITS: &str = "1.8378770664093454835606594728112352797228";
pub const PI_DIGITS: &str = "3.1415926535897932384626433832795028841972";

/// Named constants. The `*_DIGITS` literals carry 40 significant digits;
/// the fields hold the nearest doubles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NamedConstants {
    pub euler_gamma: f64,
    pub stieltjes1: f64,
    pub log_2pi: f64,
    pub pi: f64,
}

pub fn constants() -> NamedConstants {
    NamedConstants {
        euler_gamma: EULER_GAMMA,
        stieltjes1: STIELTJES_1,
        log_2pi: LOG_2PI,
        pi: PI,
    }
}

/// B_2, B_4, ..., B_26.
pub(crate) const BERNOULLI_EVEN: [f64; 13] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
];

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const STIRLING_MIN_ABS: f64 = 10.0;
const LANCZOS_IM_CROSSOVER: f64 = 10.0;
const LANCZOS_RE_MAX: f64 = 20.0;

fn check_pole(s: Complex64) -> Result<()> {
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::Domain(format!("non-finite argument {s}")));
    }
    if s.im == 0.0 && s.re <= 0.0 && s.re == s.re.round() {
        return Err(Error::Pole { re: s.re, im: s.im });
    }
    Ok(())
}

fn lanczos_ln_gamma(z: Complex64) -> Complex64 {
    // Valid for Re z >= 1/2.
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * LOG_2PI + (z + 0.5) * t.ln() - t + x.ln()
}

fn stirling_ln_gamma(z: Complex64) -> Complex64 {
    let mut acc = (z - 0.5) * z.ln() - z + 0.5 * LOG_2PI;
    let zinv = z.inv();
    let zinv2 = zinv * zinv;
    let mut zpow = zinv;
    for (k, &b) in BERNOULLI_EVEN.iter().enumerate().take(12) {
        let n = 2.0 * (k as f64 + 1.0);
        acc += b / (n * (n - 1.0)) * zpow;
        zpow *= zinv2;
    }
    acc
}

/// Principal-branch-continuous log Γ(s).
pub fn log_gamma(s: ComplexValue) -> Result<ComplexValue> {
    check_pole(s)?;
    let use_lanczos = s.im.abs() < LANCZOS_IM_CROSSOVER && s.re < LANCZOS_RE_MAX;
    let mut z = s;
    let mut unwind = Complex64::new(0.0, 0.0);
    if use_lanczos {
        while z.re < 0.5 {
            unwind += z.ln();
            z += 1.0;
        }
        Ok(lanczos_ln_gamma(z) - unwind)
    } else {
        while z.re < 1.0 || z.norm() < STIRLING_MIN_ABS {
            unwind += z.ln();
            z += 1.0;
        }
        Ok(stirling_ln_gamma(z) - unwind)
    }
}

/// Γ′/Γ(s).
pub fn digamma(s: ComplexValue) -> Result<ComplexValue> {
    check_pole(s)?;
    let mut z = s;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.re < 1.0 || z.norm() < 15.0 {
        shift += z.inv();
        z += 1.0;
    }
    let zinv = z.inv();
    let zinv2 = zinv * zinv;
    let mut acc = z.ln() - 0.5 * zinv;
    let mut zpow = zinv2;
    for (k, &b) in BERNOULLI_EVEN.iter().enumerate().take(11) {
        let n = 2.0 * (k as f64 + 1.0);
        acc -= b / n * zpow;
        zpow *= zinv2;
    }
    Ok(acc - shift)
}

/// ψ′(s), the derivative of the digamma function.
pub fn trigamma(s: ComplexValue) -> Result<ComplexValue> {
    check_pole(s)?;
    let mut z = s;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.re < 1.0 || z.norm() < 15.0 {
        shift += (z * z).inv();
        z += 1.0;
    }
    let zinv = z.inv();
    let zinv2 = zinv * zinv;
    let mut acc = zinv + 0.5 * zinv2;
    let mut zpow = zinv2 * zinv;
    for &b in BERNOULLI_EVEN.iter().take(11) {
        acc += b * zpow;
        zpow *= zinv2;
    }
    Ok(acc + shift)
}

/// Real digamma for x > 0, used on the negative real axis of ζ.
pub(crate) fn digamma_real(x: f64) -> f64 {
    let mut z = x;
    let mut shift = 0.0;
    while z < 15.0 {
        shift += 1.0 / z;
        z += 1.0;
    }
    let zinv2 = 1.0 / (z * z);
    let mut acc = z.ln() - 0.5 / z;
    let mut zpow = zinv2;
    for (k, &b) in BERNOULLI_EVEN.iter().enumerate().take(11) {
        let n = 2.0 * (k as f64 + 1.0);
        acc -= b / n * zpow;
        zpow *= zinv2;
    }
    acc - shift
}
