//! Zeros of ζ′(s): the real zeros aₙ ∈ (−2n−2, −2n) and the complex zeros
//! ρ′ = β′ + iγ′, together with the partial-fraction representation of
//! κ′ they induce and several counting diagnostics.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kappa::KappaEngine;
use crate::specfun::{self, EULER_GAMMA, LOG_2PI, PI, STIELTJES_1};
use crate::zeros::CriticalZero;
use crate::zeta;

/// The constant ½ log 2 in the expansion of πκ′ over zeros of ζ′.
pub const A_CONST: f64 = 0.5 * std::f64::consts::LN_2;

pub const MAX_TRIVIAL: u32 = 500;
pub const MAX_SEARCH_HEIGHT: f64 = 500.0;

/// Search strip for complex zeros of ζ′.
pub const SIGMA_LO: f64 = 0.01;
pub const SIGMA_HI: f64 = 3.5;
/// Trapezoid nodes per rectangle side.
const SIDE_NODES: usize = 200;
/// Rectangles start at Im s = −1 so that the double pole of ζ′ at s = 1
/// lies strictly inside the first one.
const FIRST_BOTTOM: f64 = -1.0;
const ROW_HEIGHT: f64 = 2.0;
/// Safety factor on the zero density used in tail budgets.
const DENSITY_SAFETY: f64 = 3.0;
/// Upper bound for β′ − ½ on the searched strip.
const MAX_OFFSET: f64 = SIGMA_HI - 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZeroKind {
    Complex,
    Trivial,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaPrimeZero {
    pub kind: ZeroKind,
    /// β′ for complex zeros, aₙ for trivial ones.
    pub beta: f64,
    /// γ′ for complex zeros, 0 for trivial ones.
    pub gamma: f64,
    pub index: u32,
    /// |ζ′(ρ′)| for complex zeros; |ζ′/ζ(aₙ)| for trivial ones, since
    /// |ζ(aₙ)| grows factorially with n.
    pub residual: f64,
}

impl ZetaPrimeZero {
    pub fn point(&self) -> Complex64 {
        Complex64::new(self.beta, self.gamma)
    }
}

/// Complex zeros of ζ′ with 0 < γ′ ≤ height; complete up to `height`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZetaPrimeCatalog {
    pub height: f64,
    pub zeros: Vec<ZetaPrimeZero>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MLConstants {
    /// −2 + ζ″(0)/ζ′(0).
    pub a: f64,
    /// The same constant from γ, γ₁ and log 2π.
    pub a_closed_form: f64,
    #[serde(rename = "A")]
    pub big_a: f64,
    /// |ζ′(0) + ½ log 2π|
    pub b_check: f64,
}

// ---------------------------------------------------------------------
// Trivial zeros
// ---------------------------------------------------------------------

/// ζ′/ζ(x) for real x ≤ −2 from the functional equation, without forming
/// ζ(x) itself (which overflows far down the axis).
pub fn log_derivative_real(x: f64) -> Result<f64> {
    if !(x <= -2.0 && x.is_finite()) {
        return Err(Error::Domain(format!("real log-derivative needs x <= -2, got {x}")));
    }
    let w = 1.0 - x;
    let j = zeta::euler_maclaurin(Complex64::new(w, 0.0));
    let half = PI * x / 2.0;
    Ok(LOG_2PI + (PI / 2.0) / half.tan() - specfun::digamma_real(w) - j.d1.re / j.f.re)
}

fn trivial_zero(n: u32) -> Result<ZetaPrimeZero> {
    let nf = n as f64;
    let (mut lo, mut hi) = (-2.0 * nf - 2.0, -2.0 * nf);
    // ζ′/ζ runs from +∞ at the left end to −∞ at the right end.
    let eps = 1e-12;
    if log_derivative_real(lo + eps)? <= 0.0 || log_derivative_real(hi - eps)? >= 0.0 {
        return Err(Error::BracketViolation {
            lo,
            hi,
            detail: format!("no sign change of zeta'/zeta for trivial zero {n}"),
        });
    }
    while hi - lo > 4.0 * f64::EPSILON * hi.abs() {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if log_derivative_real(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x = 0.5 * (lo + hi);
    Ok(ZetaPrimeZero {
        kind: ZeroKind::Trivial,
        beta: x,
        gamma: 0.0,
        index: n,
        residual: log_derivative_real(x)?.abs(),
    })
}

/// a₁, …, a_count.
pub fn find_trivial_zeros(count: u32) -> Result<Vec<ZetaPrimeZero>> {
    if count > MAX_TRIVIAL {
        return Err(Error::OutOfRange {
            what: "trivial zero count",
            value: count as f64,
            limit: MAX_TRIVIAL as f64,
        });
    }
    (1..=count).into_par_iter().map(trivial_zero).collect()
}

// ---------------------------------------------------------------------
// Complex zeros by the argument principle
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Copy)]
struct Rect {
    s0: f64,
    s1: f64,
    t0: f64,
    t1: f64,
}

impl Rect {
    fn contains(&self, z: Complex64, margin: f64) -> bool {
        z.re > self.s0 - margin && z.re < self.s1 + margin && z.im > self.t0 - margin && z.im < self.t1 + margin
    }

    fn has_pole(&self) -> bool {
        self.s0 < 1.0 && self.s1 > 1.0 && self.t0 < 0.0 && self.t1 > 0.0
    }
}

struct Winding {
    count: i64,
    /// Σ of the zeros inside, from the first moment of ζ″/ζ′.
    moment: Complex64,
}

fn log_derivative_prime(s: Complex64) -> Result<Complex64> {
    let j = zeta::zeta_jet_raw(s)?;
    Ok(j.d2 / j.d1)
}

/// (1/2πi)∮ ζ″/ζ′ ds by the trapezoid rule with `n` nodes per side,
/// returned at n and at n/2 nodes, plus the first moment at n nodes.
fn contour(r: &Rect, n: usize) -> Result<(Complex64, Complex64, Complex64)> {
    let corners = [
        Complex64::new(r.s0, r.t0),
        Complex64::new(r.s1, r.t0),
        Complex64::new(r.s1, r.t1),
        Complex64::new(r.s0, r.t1),
    ];
    let mut pts = Vec::with_capacity(4 * n + 1);
    for k in 0..4 {
        let (a, b) = (corners[k], corners[(k + 1) % 4]);
        for j in 0..n {
            pts.push(a + (b - a) * (j as f64 / n as f64));
        }
    }
    pts.push(corners[0]);
    let vals: Vec<Complex64> = pts.par_iter().map(|&s| log_derivative_prime(s)).collect::<Result<_>>()?;

    let mut fine = Complex64::new(0.0, 0.0);
    let mut moment = Complex64::new(0.0, 0.0);
    for i in 0..pts.len() - 1 {
        let ds = pts[i + 1] - pts[i];
        fine += ds * (vals[i] + vals[i + 1]) * 0.5;
        moment += ds * (pts[i] * vals[i] + pts[i + 1] * vals[i + 1]) * 0.5;
    }
    let mut coarse = Complex64::new(0.0, 0.0);
    let mut i = 0;
    while i + 2 < pts.len() {
        let ds = pts[i + 2] - pts[i];
        coarse += ds * (vals[i] + vals[i + 2]) * 0.5;
        i += 2;
    }
    let scale = Complex64::new(0.0, 2.0 * PI);
    Ok((fine / scale, coarse / scale, moment / scale))
}

fn winding(r: &Rect) -> Result<Winding> {
    let (fine, coarse, moment) = contour(r, 2 * SIDE_NODES)?;
    let w = fine.re;
    let rounded = w.round();
    if (w - rounded).abs() > 0.1 || fine.im.abs() > 0.1 || (coarse.re - w).abs() > 0.05 {
        return Err(Error::WindingNonInteger {
            value: w,
            sigma_lo: r.s0,
            sigma_hi: r.s1,
            t_lo: r.t0,
            t_hi: r.t1,
        });
    }
    // The double pole of ζ′ at s = 1 contributes −2 to the count and
    // −2·1 to the moment.
    let (count, moment) = if r.has_pole() {
        (rounded as i64 + 2, moment + 2.0)
    } else {
        (rounded as i64, moment)
    };
    Ok(Winding { count, moment })
}

/// Number of zeros of ζ′ in [σ₀, σ₁] × [t₀, t₁] by the argument principle.
pub fn count_in_rectangle(sigma_lo: f64, sigma_hi: f64, t_lo: f64, t_hi: f64) -> Result<i64> {
    let r = Rect {
        s0: sigma_lo,
        s1: sigma_hi,
        t0: t_lo,
        t1: t_hi,
    };
    Ok(winding(&r)?.count)
}

fn newton_prime(mut s: Complex64) -> Result<Complex64> {
    for _ in 0..60 {
        let j = zeta::zeta_jet_raw(s)?;
        let step = j.d1 / j.d2;
        s -= step;
        if step.norm() < 1e-15 * s.norm() {
            break;
        }
    }
    Ok(s)
}

const SPLITS: [f64; 5] = [0.5, 0.457, 0.543, 0.411, 0.589];

fn locate(r: Rect, w: Winding, depth: u32) -> Result<Vec<Complex64>> {
    if w.count <= 0 {
        return Ok(Vec::new());
    }
    if w.count == 1 {
        let z = newton_prime(w.moment)?;
        let size = (r.s1 - r.s0).max(r.t1 - r.t0);
        if r.contains(z, 1e-9 * size.max(1.0)) {
            return Ok(vec![z]);
        }
    }
    if depth > 50 {
        return Err(Error::Search(format!(
            "could not isolate {} zeros of zeta' in [{}, {}] x [{}, {}]",
            w.count, r.s0, r.s1, r.t0, r.t1
        )));
    }
    let horizontal = r.s1 - r.s0 >= r.t1 - r.t0;
    let mut last_err = None;
    for frac in SPLITS {
        let (a, b) = if horizontal {
            let m = r.s0 + frac * (r.s1 - r.s0);
            (Rect { s1: m, ..r }, Rect { s0: m, ..r })
        } else {
            let m = r.t0 + frac * (r.t1 - r.t0);
            (Rect { t1: m, ..r }, Rect { t0: m, ..r })
        };
        match (winding(&a), winding(&b)) {
            (Ok(wa), Ok(wb)) if wa.count + wb.count == w.count => {
                let mut out = locate(a, wa, depth + 1)?;
                out.extend(locate(b, wb, depth + 1)?);
                return Ok(out);
            }
            (Err(e), _) | (_, Err(e)) => last_err = Some(e),
            _ => {}
        }
    }
    Err(last_err.unwrap_or_else(|| Error::Search("inconsistent zero counts after subdivision".into())))
}

/// All complex zeros of ζ′ with 0 < γ′ ≤ t_max, sorted by γ′.
pub fn find_complex_zeros(t_max: f64) -> Result<ZetaPrimeCatalog> {
    if !(t_max > 0.0 && t_max <= MAX_SEARCH_HEIGHT) {
        return Err(Error::OutOfRange {
            what: "search height",
            value: t_max,
            limit: MAX_SEARCH_HEIGHT,
        });
    }
    let mut found: Vec<Complex64> = Vec::new();
    let mut bottom = FIRST_BOTTOM;
    while bottom < t_max {
        let mut row = None;
        let mut last_err = None;
        for nudge in [0.0, 0.13, -0.13, 0.29, -0.29, 0.41] {
            let r = Rect {
                s0: SIGMA_LO,
                s1: SIGMA_HI,
                t0: bottom,
                t1: bottom + ROW_HEIGHT + nudge,
            };
            match winding(&r) {
                Ok(w) => {
                    row = Some((r, w));
                    break;
                }
                Err(e) => last_err = Some(e),
            }
        }
        let (r, w) = match row {
            Some(x) => x,
            None => return Err(last_err.expect("at least one attempt")),
        };
        found.extend(locate(r, w, 0)?);
        bottom = r.t1;
    }

    found.retain(|z| z.im > 0.0 && z.im <= t_max);
    found.sort_by(|a, b| a.im.total_cmp(&b.im).then(a.re.total_cmp(&b.re)));
    found.dedup_by(|a, b| (a.re - b.re).abs() < 1e-9 && (a.im - b.im).abs() < 1e-9);

    let zeros = found
        .iter()
        .enumerate()
        .map(|(i, &z)| {
            let residual = zeta::zeta_jet_raw(z)?.d1.norm();
            Ok(ZetaPrimeZero {
                kind: ZeroKind::Complex,
                beta: z.re,
                gamma: z.im,
                index: i as u32 + 1,
                residual,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    for z in &zeros {
        if (z.beta - 0.5).abs() < 1e-6 {
            log::warn!("zero of zeta' at {} + {}i lies on the critical line", z.beta, z.gamma);
        }
    }
    Ok(ZetaPrimeCatalog { height: t_max, zeros })
}

// ---------------------------------------------------------------------
// Constants
// ---------------------------------------------------------------------

/// The constant a = ζ″(0)/ζ′(0) − 2 of the partial-fraction expansion of
/// ζ″/ζ′, checked against its closed form in γ, γ₁ and log 2π.
pub fn ml_constant_a() -> Result<MLConstants> {
    let j = zeta::zeta_jet(Complex64::new(0.0, 0.0))?;
    let a = (j.d2 / j.d1).re - 2.0;
    let l = LOG_2PI;
    let closed = PI * PI / (12.0 * l) - (EULER_GAMMA * EULER_GAMMA + 2.0 * STIELTJES_1) / l + l - 2.0;
    if (a - closed).abs() > 1e-5 {
        return Err(Error::CrossCheckMismatch {
            what: "constant a",
            lhs: a,
            rhs: closed,
        });
    }
    Ok(MLConstants {
        a,
        a_closed_form: closed,
        big_a: A_CONST,
        b_check: (j.d1.re + 0.5 * l).abs(),
    })
}

// ---------------------------------------------------------------------
// f(t) and the reconstruction of κ′
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FValue {
    pub t: f64,
    pub terms: u32,
    /// Partial sum through `terms` trivial zeros; a lower bound for f.
    pub partial: f64,
    /// Upper bound for the omitted (nonnegative) remainder.
    pub tail: f64,
    /// partial + tail/2, within tail/2 of f.
    pub value: f64,
}

fn g(x: f64, t: f64) -> f64 {
    x / (x * x + t * t)
}

/// The bounded correction f(t) built from the trivial zeros of ζ′.
///
/// Term n equals g(2n + ½) − g(½ − aₙ) with g(x) = x/(x² + t²) and
/// ½ − aₙ ∈ (2n + ½, 2n + 5/2). Where g decreases (x > |t|) every term is
/// positive and the remainder after k terms telescopes below g(2k + 5/2).
pub fn f_of(t: f64, k_terms: u32, trivial: &[ZetaPrimeZero]) -> Result<FValue> {
    if k_terms < 100 {
        return Err(Error::InsufficientTerms(format!("{k_terms} terms requested, need at least 100")));
    }
    if trivial.len() < k_terms as usize {
        return Err(Error::InsufficientTerms(format!(
            "{k_terms} terms requested, {} trivial zeros supplied",
            trivial.len()
        )));
    }
    let x_tail = 2.0 * k_terms as f64 + 2.5;
    if x_tail <= t.abs() {
        return Err(Error::InsufficientTerms(format!(
            "{k_terms} terms do not reach the monotone region for t = {t}"
        )));
    }
    let mut partial = 0.0;
    for (i, z) in trivial.iter().take(k_terms as usize).enumerate().rev() {
        let n = (i + 1) as f64;
        if z.index as f64 != n {
            return Err(Error::Domain(format!("trivial zeros out of order at position {i}")));
        }
        partial += g(2.0 * n + 0.5, t) - g(0.5 - z.beta, t);
    }
    partial -= 2.0 / (1.0 + 4.0 * t * t);
    let tail = g(x_tail, t);
    let value = partial + 0.5 * tail;
    if t.abs() > 1.0 {
        let bound = 2.0 / (1.0 + 4.0 * t * t) + 1.0 / t.abs() + tail;
        if value.abs() > bound {
            return Err(Error::CrossCheckMismatch {
                what: "|f(t)| against its bound",
                lhs: value.abs(),
                rhs: bound,
            });
        }
    }
    Ok(FValue {
        t,
        terms: k_terms,
        partial,
        tail,
        value,
    })
}

/// (β′ − ½)/((½ − β′)² + (t − γ′)²) summed over ρ′ and its conjugate.
fn pair_term(t: f64, z: &ZetaPrimeZero) -> f64 {
    let d = z.beta - 0.5;
    d / (d * d + (t - z.gamma).powi(2)) + d / (d * d + (t + z.gamma).powi(2))
}

/// Bound for Σ |β′ − ½|/((β′ − ½)² + (t ∓ γ′)²) over zeros above `h`.
fn omitted_zero_budget(t: f64, h: f64) -> f64 {
    let t = t.abs().max(1e-9);
    let l = (h / (4.0 * PI)).ln().max(0.0);
    let upper = l / (h - t) + (h / (h - t)).ln() / t;
    let lower = l / (h + t) + ((h + t) / h).ln() / t;
    DENSITY_SAFETY * MAX_OFFSET / (2.0 * PI) * (upper + lower)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Reconstruction {
    pub t: f64,
    /// κ′(t) from the zeros of ζ′.
    pub value: f64,
    /// Bound on |value − κ′(t)| from the truncations.
    pub budget: f64,
    pub f: FValue,
    pub zero_sum: f64,
}

/// κ′(t) = (A + f(t) + Σ_ρ′ (β′−½)/((½−β′)² + (t−γ′)²))/π, with ρ′ running
/// over the supplied zeros and their conjugates.
pub fn kappa_d1_reconstructed(
    t: f64,
    catalog: &ZetaPrimeCatalog,
    trivial: &[ZetaPrimeZero],
    k_terms: u32,
) -> Result<Reconstruction> {
    let need = t.abs() + 50.0;
    if catalog.height < need {
        return Err(Error::InsufficientHeight {
            have: catalog.height,
            need,
        });
    }
    let f = f_of(t, k_terms, trivial)?;
    let zero_sum: f64 = catalog.zeros.iter().map(|z| pair_term(t, z)).sum();
    let budget = (0.5 * f.tail + omitted_zero_budget(t, catalog.height)) / PI;
    Ok(Reconstruction {
        t,
        value: (A_CONST + f.value + zero_sum) / PI,
        budget,
        f,
        zero_sum,
    })
}

// ---------------------------------------------------------------------
// Diagnostics
// ---------------------------------------------------------------------

/// φ(t, ρ′) = arctan((t−γ′)/(β′−½)) + arctan((t+γ′)/(β′−½)), 0 if β′ = ½.
pub fn phi_angle(t: f64, zero: &ZetaPrimeZero) -> Result<f64> {
    if zero.kind != ZeroKind::Complex {
        return Err(Error::Domain("angle is defined for complex zeros only".into()));
    }
    let d = zero.beta - 0.5;
    if d == 0.0 {
        return Ok(0.0);
    }
    Ok(((t - zero.gamma) / d).atan() + ((t + zero.gamma) / d).atan())
}

/// Arg((s̄ − ρ′)/(s − ρ′)) at s = ½ + it, the angle at ρ′ subtended by the
/// segment from ½ − it to ½ + it.
pub fn phi_angle_arg(t: f64, zero: &ZetaPrimeZero) -> f64 {
    let s = Complex64::new(0.5, t);
    let rho = zero.point();
    ((s.conj() - rho) / (s - rho)).arg()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseDiagnostic {
    pub t: f64,
    /// πκ(t)
    pub lhs: f64,
    /// A·t + Σ φₙ(t) over the catalog
    pub rhs: f64,
    pub gap: f64,
}

pub fn kappa_phase_diagnostic(engine: &KappaEngine, t: f64, catalog: &ZetaPrimeCatalog) -> Result<PhaseDiagnostic> {
    let need = t.abs() + 50.0;
    if catalog.height < need {
        return Err(Error::InsufficientHeight {
            have: catalog.height,
            need,
        });
    }
    let lhs = PI * engine.kappa_of(t)?.kappa;
    let mut rhs = A_CONST * t;
    for z in &catalog.zeros {
        rhs += phi_angle(t, z)?;
    }
    Ok(PhaseDiagnostic {
        t,
        lhs,
        rhs,
        gap: lhs - rhs,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GyCheck {
    pub gamma_prime: f64,
    pub gamma_c: f64,
    pub dist: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Distance from γ′ to the nearest zero ordinate against 1.9·√(β′ − ½).
pub fn gy_distance_check(zero: &ZetaPrimeZero, xis: &[CriticalZero]) -> Result<GyCheck> {
    if zero.kind != ZeroKind::Complex {
        return Err(Error::Domain("distance check is defined for complex zeros only".into()));
    }
    let lo = zero.gamma - 10.0;
    let hi = zero.gamma + 10.0;
    let contiguous = xis.iter().enumerate().all(|(i, z)| z.index as usize == i + 1);
    let top = xis.last().map(|z| z.ordinate).unwrap_or(f64::NEG_INFINITY);
    if !contiguous || top < hi {
        return Err(Error::Coverage { lo, hi });
    }
    let nearest = xis
        .iter()
        .min_by(|a, b| (a.ordinate - zero.gamma).abs().total_cmp(&(b.ordinate - zero.gamma).abs()))
        .expect("nonempty by coverage");
    let dist = (nearest.ordinate - zero.gamma).abs();
    let bound = 1.9 * (zero.beta - 0.5).max(0.0).sqrt();
    Ok(GyCheck {
        gamma_prime: zero.gamma,
        gamma_c: nearest.ordinate,
        dist,
        bound,
        pass: dist <= bound,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrimeSplits {
    pub t_max: f64,
    pub n_total: u32,
    pub n_left: u32,
    pub n_mid: u32,
    pub n_right: u32,
    /// n_total against T/2π·log(T/4π) − T/2π + 2.
    pub berndt_ratio: f64,
}

pub fn count_prime_splits(catalog: &ZetaPrimeCatalog, t_max: f64) -> Result<PrimeSplits> {
    if catalog.height < t_max {
        return Err(Error::InsufficientHeight {
            have: catalog.height,
            need: t_max,
        });
    }
    let mut s = PrimeSplits {
        t_max,
        n_total: 0,
        n_left: 0,
        n_mid: 0,
        n_right: 0,
        berndt_ratio: 0.0,
    };
    for z in catalog.zeros.iter().filter(|z| z.gamma <= t_max) {
        s.n_total += 1;
        let d = z.beta - 0.5;
        if d.abs() <= 1e-9 {
            s.n_mid += 1;
        } else if d < 0.0 {
            s.n_left += 1;
        } else {
            s.n_right += 1;
        }
    }
    let x = t_max / (2.0 * PI);
    let expected = x * (t_max / (4.0 * PI)).ln() - x + 2.0;
    s.berndt_ratio = s.n_total as f64 / expected;
    Ok(s)
}

/// ⌊κ(t)⌋ − (A/π)t − N′₊(t) + N′₋(t).
pub fn count_split_residual(n00: i64, splits: &PrimeSplits) -> f64 {
    n00 as f64 - A_CONST / PI * splits.t_max - splits.n_right as f64 + splits.n_left as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpansionResidual {
    pub s: Complex64,
    pub residual: f64,
    pub budget: f64,
}

/// ζ″/ζ′(s) against a − 2/(s−1) + Σₙ (1/(s−aₙ) + 1/aₙ) + Σ_ρ′ (1/(s−ρ′) + 1/ρ′)
/// truncated to the supplied zeros (ρ′ and conjugates), for Re s > 0.
pub fn expansion_residual(
    s: Complex64,
    catalog: &ZetaPrimeCatalog,
    trivial: &[ZetaPrimeZero],
) -> Result<ExpansionResidual> {
    if s.re <= 0.0 {
        return Err(Error::Domain("expansion check needs Re s > 0".into()));
    }
    if s.im.abs() + 50.0 > catalog.height {
        return Err(Error::InsufficientHeight {
            have: catalog.height,
            need: s.im.abs() + 50.0,
        });
    }
    let a = ml_constant_a()?.a;
    let mut rhs = Complex64::new(a, 0.0) - 2.0 / (s - 1.0);
    for z in trivial.iter().rev() {
        rhs += 1.0 / (s - z.beta) + 1.0 / z.beta;
    }
    for z in catalog.zeros.iter().rev() {
        for rho in [z.point(), z.point().conj()] {
            rhs += 1.0 / (s - rho) + 1.0 / rho;
        }
    }
    let j = zeta::zeta_jet(s)?;
    let lhs = j.d2 / j.d1;

    // |s/(aₙ(s − aₙ))| ≤ |s|/aₙ² and aₙ < −2n, so the trivial tail is
    // below |s|/(4K). For a conjugate pair above height H each term is
    // below |s|/(γ(γ − |t|)); integrating the density log(γ/4π)/2π gives
    // (log(H/4π) + 1)/(H − |t|) per unit of |s|.
    let k = trivial.len().max(1) as f64;
    let h = catalog.height;
    let t = s.im.abs();
    let trivial_tail = s.norm() / (4.0 * k);
    let complex_tail = DENSITY_SAFETY / (2.0 * PI) * 2.0 * s.norm() * ((h / (4.0 * PI)).ln() + 1.0) / (h - t);
    Ok(ExpansionResidual {
        s,
        residual: (lhs - rhs).norm(),
        budget: trivial_tail + complex_tail,
    })
}
