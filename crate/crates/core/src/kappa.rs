//! The phase function κ(t), defined by e^{2πiκ} = 1 + 2ϑ′ ζ/ζ′ (½ + it)
//! with κ(0) = −½, and its derivative κ′.
//!
//! κ is obtained by integrating κ′ from checkpoints. The table holds κ at
//! every integer grid point already visited (both signs, each side
//! integrated independently from the seed κ(0) = −½) and exact integer
//! anchors at confirmed zeros ξₙ, where κ(ξₙ) = n.

use std::collections::BTreeMap;
use std::sync::{OnceLock, RwLock};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quad;
use crate::specfun::PI;
use crate::theta;
use crate::zeta::{self, LineJet};

pub const KAPPA_T_MAX: f64 = 1.0e3;

/// Per-unit-interval absolute tolerance for the κ′ quadrature.
const UNIT_TOL: f64 = 1e-12;
/// Largest accepted drift between the integrated κ and n at ξₙ.
pub const SNAP_LIMIT: f64 = 1e-7;
/// Below this the rational form of κ′ is considered singular.
const DEGENERATE_DEN: f64 = 1e-20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KappaRoute {
    Integrated,
    PhaseFormula,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KappaSample {
    pub t: f64,
    pub kappa: f64,
    pub d1: f64,
    pub route: KappaRoute,
    /// |e^{2πiκ} − (1 + 2ϑ′ζ/ζ′)| at ½ + it.
    pub circle_residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum D1Route {
    /// Rational expression in Z, Z′, Z″, ϑ′, ϑ″.
    ZForm,
    /// −(ϑ′ + Re ζ″/ζ′)/π.
    ZetaForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KappaD1 {
    pub t: f64,
    pub value: f64,
    pub route: D1Route,
    pub z_form: Option<f64>,
    pub zeta_form: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AnchorKind {
    Seed,
    Grid,
    Zero { n: u32, deviation: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Anchor {
    pub t: f64,
    pub kappa: f64,
    pub kind: AnchorKind,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KappaCheckpointTable {
    pub anchors: Vec<Anchor>,
    pub violations: Vec<MonotonicityReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotonicityReport {
    pub t: f64,
    pub detail: String,
}

fn z_form(j: &LineJet) -> Option<f64> {
    let (z, z1, z2) = (j.z.z, j.z.d1, j.z.d2);
    let (th1, th2) = (j.theta.d1, j.theta.d2);
    let den = z1 * z1 + (z * th1) * (z * th1);
    if den < DEGENERATE_DEN {
        return None;
    }
    Some((z * z1 * th2 + z1 * z1 * th1 - z * z2 * th1) / (PI * den))
}

fn zeta_form(j: &LineJet) -> Option<f64> {
    if j.zeta.d1.norm_sqr() < DEGENERATE_DEN {
        return None;
    }
    Some(-(j.theta.d1 + (j.zeta.d2 / j.zeta.d1).re) / PI)
}

fn check_t(t: f64) -> Result<()> {
    if !t.is_finite() || t.abs() > KAPPA_T_MAX {
        return Err(Error::OutOfRange {
            what: "t",
            value: t,
            limit: KAPPA_T_MAX,
        });
    }
    Ok(())
}

/// κ′ from an already evaluated line jet.
pub fn kappa_d1_from(j: &LineJet) -> Result<KappaD1> {
    let zf = z_form(j);
    let cf = zeta_form(j);
    let (value, route) = match (zf, cf) {
        (Some(v), _) => (v, D1Route::ZForm),
        (None, Some(v)) => (v, D1Route::ZetaForm),
        (None, None) => return Err(Error::Degenerate { t: j.z.t }),
    };
    Ok(KappaD1 {
        t: j.z.t,
        value,
        route,
        z_form: zf,
        zeta_form: cf,
    })
}

/// κ′(t) with both routes reported.
pub fn kappa_d1_detail(t: f64) -> Result<KappaD1> {
    check_t(t)?;
    kappa_d1_from(&zeta::line_jet(t)?)
}

/// κ′(t).
pub fn kappa_d1(t: f64) -> Result<f64> {
    Ok(kappa_d1_detail(t)?.value)
}

/// The value κ′ takes at a zero ordinate of multiplicity ω: ϑ′(ξ)/(πω).
pub fn kappa_d1_of_xi(xi: f64, omega: u32) -> Result<f64> {
    if omega == 0 {
        return Err(Error::Domain("multiplicity must be at least 1".into()));
    }
    Ok(theta::theta(xi)?.d1 / (PI * omega as f64))
}

/// 1 + 2ϑ′ ζ/ζ′ at ½ + it.
fn circle_point(j: &LineJet) -> Complex64 {
    1.0 + 2.0 * j.theta.d1 * j.zeta.f / j.zeta.d1
}

fn circle_residual(kappa: f64, j: &LineJet) -> f64 {
    (Complex64::from_polar(1.0, 2.0 * PI * kappa) - circle_point(j)).norm()
}

/// −(1/π) arg(Z′ − iZϑ′), which determines κ modulo 1.
pub fn kappa_phase_mod1(t: f64) -> Result<f64> {
    check_t(t)?;
    let j = zeta::line_jet(t)?;
    Ok(phase_value(&j))
}

fn phase_value(j: &LineJet) -> f64 {
    -Complex64::new(j.z.d1, -j.z.z * j.theta.d1).arg() / PI
}

fn integrate_d1(a: f64, b: f64, tol: f64) -> Result<f64> {
    quad::integrate(kappa_d1, a, b, tol)
}

#[derive(Debug, Default)]
struct Table {
    /// κ(k) for k = 0, 1, 2, …
    pos: Vec<f64>,
    /// κ(−k) for k = 0, 1, 2, …
    neg: Vec<f64>,
    /// n → (ξₙ, pre-snap deviation)
    zeros: BTreeMap<u32, (f64, f64)>,
    violations: Vec<MonotonicityReport>,
}

/// Accumulator for κ: concurrent readers, a single writer for new
/// checkpoints.
#[derive(Debug)]
pub struct KappaEngine {
    table: RwLock<Table>,
    a_kappa: OnceLock<f64>,
}

impl Default for KappaEngine {
    fn default() -> Self {
        Self::new()
    }
}

impl KappaEngine {
    pub fn new() -> Self {
        KappaEngine {
            table: RwLock::new(Table {
                pos: vec![-0.5],
                neg: vec![-0.5],
                ..Default::default()
            }),
            a_kappa: OnceLock::new(),
        }
    }

    /// Make sure the grid anchors reach |t| = k on the side of `sign`.
    fn ensure_grid(&self, k: usize, negative: bool) -> Result<()> {
        let have = {
            let tab = self.table.read().unwrap();
            if negative {
                tab.neg.len()
            } else {
                tab.pos.len()
            }
        };
        if have > k {
            return Ok(());
        }
        let s = if negative { -1.0 } else { 1.0 };
        let pieces: Vec<f64> = (have..=k)
            .into_par_iter()
            .map(|i| integrate_d1(s * (i as f64 - 1.0), s * i as f64, UNIT_TOL))
            .collect::<Result<_>>()?;

        let mut tab = self.table.write().unwrap();
        let Table {
            pos,
            neg,
            violations,
            ..
        } = &mut *tab;
        let side = if negative { neg } else { pos };
        for (off, piece) in pieces.into_iter().enumerate() {
            let i = have + off;
            if i < side.len() {
                continue;
            }
            let prev = side[i - 1];
            let next = prev + piece;
            // Past a_κ (< 1) κ should increase on every unit step.
            if i >= 2 && !negative && piece <= 0.0 {
                violations.push(MonotonicityReport {
                    t: i as f64,
                    detail: format!("kappa({}) - kappa({}) = {piece:e}", i, i - 1),
                });
                log::warn!("kappa not increasing on [{}, {}]", i - 1, i);
            }
            side.push(next);
        }
        Ok(())
    }

    fn grid_value(&self, k: usize, negative: bool) -> Result<f64> {
        self.ensure_grid(k, negative)?;
        let tab = self.table.read().unwrap();
        Ok(if negative { tab.neg[k] } else { tab.pos[k] })
    }

    /// Nearest anchor on the same side of the origin as t.
    fn anchor_for(&self, t: f64) -> Result<(f64, f64)> {
        let negative = t < 0.0;
        let k = t.abs().round() as usize;
        let mut best = (t.signum() * k as f64, self.grid_value(k, negative)?);
        if t > 0.0 {
            let tab = self.table.read().unwrap();
            for (&n, &(xi, _)) in tab.zeros.iter() {
                if (xi - t).abs() < (best.0 - t).abs() {
                    best = (xi, n as f64);
                }
            }
        }
        Ok(best)
    }

    /// ∫_a^b κ′ with per-unit-length tolerance.
    pub fn integral(&self, a: f64, b: f64) -> Result<f64> {
        check_t(a)?;
        check_t(b)?;
        let tol = UNIT_TOL * (b - a).abs().max(1.0);
        integrate_d1(a, b, tol)
    }

    fn integrated_value(&self, t: f64) -> Result<f64> {
        if t == 0.0 {
            return Ok(-0.5);
        }
        let (t0, k0) = self.anchor_for(t)?;
        Ok(k0 + integrate_d1(t0, t, UNIT_TOL)?)
    }

    /// κ(t) by integration of κ′ from the nearest checkpoint.
    pub fn kappa_of(&self, t: f64) -> Result<KappaSample> {
        check_t(t)?;
        let kappa = self.integrated_value(t)?;
        let j = zeta::line_jet(t)?;
        let d1 = kappa_d1_from(&j)?.value;
        Ok(KappaSample {
            t,
            kappa,
            d1,
            route: KappaRoute::Integrated,
            circle_residual: circle_residual(kappa, &j),
        })
    }

    /// κ(t) from the argument of Z′ − iZϑ′. This fixes κ modulo 1; the
    /// branch is the one nearest the integrated value.
    pub fn kappa_phase_formula(&self, t: f64) -> Result<KappaSample> {
        check_t(t)?;
        let integrated = self.integrated_value(t)?;
        let j = zeta::line_jet(t)?;
        let p = phase_value(&j);
        let kappa = p + (integrated - p).round();
        Ok(KappaSample {
            t,
            kappa,
            d1: kappa_d1_from(&j)?.value,
            route: KappaRoute::PhaseFormula,
            circle_residual: circle_residual(kappa, &j),
        })
    }

    /// Register ξₙ as an exact anchor κ(ξₙ) = n. Returns the deviation of
    /// the integrated value from n before snapping.
    pub fn insert_zero_anchor(&self, n: u32, xi: f64) -> Result<f64> {
        check_t(xi)?;
        if xi <= 0.0 || n == 0 {
            return Err(Error::Domain(format!("zero anchor needs n >= 1 and xi > 0, got n={n}, xi={xi}")));
        }
        {
            let tab = self.table.read().unwrap();
            if let Some(&(_, dev)) = tab.zeros.get(&n) {
                return Ok(dev);
            }
        }
        let k = xi.round() as usize;
        let base = self.grid_value(k, false)?;
        let value = base + integrate_d1(k as f64, xi, UNIT_TOL)?;
        let deviation = value - n as f64;
        if deviation.abs() > SNAP_LIMIT {
            return Err(Error::KappaDrift {
                n,
                deviation,
                limit: SNAP_LIMIT,
            });
        }
        self.table.write().unwrap().zeros.insert(n, (xi, deviation));
        Ok(deviation)
    }

    /// The anchored ordinate ξₙ, if it has been registered.
    pub fn zero_anchor(&self, n: u32) -> Option<(f64, f64)> {
        self.table.read().unwrap().zeros.get(&n).copied()
    }

    pub fn checkpoints(&self) -> KappaCheckpointTable {
        let tab = self.table.read().unwrap();
        let mut anchors = Vec::with_capacity(tab.pos.len() + tab.neg.len() + tab.zeros.len());
        for (k, &v) in tab.neg.iter().enumerate().skip(1).rev() {
            anchors.push(Anchor {
                t: -(k as f64),
                kappa: v,
                kind: AnchorKind::Grid,
            });
        }
        for (k, &v) in tab.pos.iter().enumerate() {
            anchors.push(Anchor {
                t: k as f64,
                kappa: v,
                kind: if k == 0 { AnchorKind::Seed } else { AnchorKind::Grid },
            });
        }
        for (&n, &(xi, deviation)) in tab.zeros.iter() {
            anchors.push(Anchor {
                t: xi,
                kappa: n as f64,
                kind: AnchorKind::Zero { n, deviation },
            });
        }
        anchors.sort_by(|a, b| a.t.total_cmp(&b.t));
        KappaCheckpointTable {
            anchors,
            violations: tab.violations.clone(),
        }
    }

    /// The positive point a_κ where κ′ vanishes (κ′ < 0 on [0, a_κ)).
    pub fn a_kappa(&self) -> f64 {
        *self.a_kappa.get_or_init(find_a_kappa)
    }

    /// The unique t > a_κ with κ(t) = u, for u > a_γ = κ(a_κ).
    pub fn gamma_inverse(&self, u: f64) -> Result<f64> {
        if !u.is_finite() {
            return Err(Error::Domain(format!("non-finite level {u}")));
        }
        let ak = self.a_kappa();
        let a_gamma = self.integrated_value(ak)?;
        if u <= a_gamma {
            return Err(Error::Domain(format!(
                "level {u} is not above the minimum {a_gamma} of kappa"
            )));
        }
        // Smallest grid point with κ(k) ≥ u.
        let mut k = 1usize;
        while self.grid_value(k, false)? < u {
            k += 1;
            if k as f64 > KAPPA_T_MAX {
                return Err(Error::OutOfRange {
                    what: "inverse level (t)",
                    value: u,
                    limit: KAPPA_T_MAX,
                });
            }
        }
        let mut lo = if k == 1 { ak } else { k as f64 - 1.0 };
        let mut hi = k as f64;
        let f_lo = self.integrated_value(lo)? - u;
        if f_lo > 0.0 {
            return Err(Error::MonotonicityViolation {
                t: lo,
                detail: format!("kappa({lo}) - {u} = {f_lo:e} > 0 below the bracket"),
            });
        }

        let mut x = 0.5 * (lo + hi);
        for _ in 0..100 {
            let fx = self.integrated_value(x)? - u;
            if fx == 0.0 {
                return Ok(x);
            }
            if fx < 0.0 {
                lo = x;
            } else {
                hi = x;
            }
            let d = kappa_d1(x)?;
            if d < 0.0 && x > ak {
                return Err(Error::MonotonicityViolation {
                    t: x,
                    detail: format!("kappa'({x}) = {d:e} < 0"),
                });
            }
            let mut next = x - fx / d;
            if !(next > lo && next < hi) || d <= 0.0 {
                next = 0.5 * (lo + hi);
            }
            let step = (next - x).abs();
            x = next;
            if step < 1e-14 * x.max(1.0) || hi - lo < 1e-14 * x.max(1.0) {
                break;
            }
        }
        Ok(x)
    }
}

fn find_a_kappa() -> f64 {
    let d1 = |t: f64| kappa_d1(t).expect("kappa' is finite on [0.5, 1]");
    let (mut lo, mut hi) = (0.5, 1.0);
    while hi - lo > 1e-5 {
        let mid = 0.5 * (lo + hi);
        if d1(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    let h = 1e-5;
    for _ in 0..20 {
        let second = (d1(x + h) - d1(x - h)) / (2.0 * h);
        let step = d1(x) / second;
        x -= step;
        if step.abs() < 1e-15 {
            break;
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_at_origin() {
        let d = kappa_d1_detail(0.0).unwrap();
        assert!((d.value + 0.444_016_192_448_187_3).abs() < 1e-12);
        assert_eq!(d.route, D1Route::ZForm);
    }

    #[test]
    fn kappa_at_origin_and_a_theta() {
        let e = KappaEngine::new();
        assert_eq!(e.kappa_of(0.0).unwrap().kappa, -0.5);
        let a = theta::find_a_theta().value;
        assert!(e.kappa_of(a).unwrap().kappa.abs() < 1e-10);
    }

    #[test]
    fn a_kappa_digits() {
        let e = KappaEngine::new();
        let a = e.a_kappa();
        assert!((a - 0.779_853_575_338_836_0).abs() < 1e-12, "{a}");
        assert!(kappa_d1(a).unwrap().abs() < 1e-12);
    }

    #[test]
    fn phase_formula_agrees() {
        let e = KappaEngine::new();
        for &t in &[0.3, 3.0, 17.2, 44.4, 88.8, -12.5] {
            let a = e.kappa_of(t).unwrap();
            let b = e.kappa_phase_formula(t).unwrap();
            assert!((a.kappa - b.kappa).abs() < 1e-9, "t={t}: {} vs {}", a.kappa, b.kappa);
        }
    }

    #[test]
    fn drift_is_rejected() {
        let e = KappaEngine::new();
        assert!(matches!(e.insert_zero_anchor(2, 14.134_725_141_734_694), Err(Error::KappaDrift { .. })));
        let dev = e.insert_zero_anchor(1, 14.134_725_141_734_694).unwrap();
        assert!(dev.abs() < 1e-9);
    }

    #[test]
    fn inverse_rejects_low_levels() {
        let e = KappaEngine::new();
        assert!(e.gamma_inverse(-0.7).unwrap_err().is_domain());
    }
}
