use std::io::Write;

use rayon::prelude::*;
use zetaphase::{
    e_of, find_a_theta, find_complex_zeros, find_eta, find_trivial_zeros, find_xis, kappa_d1, phase_report, s_of,
    theta_series, z_triple, KappaEngine, MAX_XI_INDEX,
};

use crate::catalog;
use crate::config::RunConfig;
use crate::output::{Field, Table};
use crate::{CliError, CliResult};

/// Largest number of grid points a single scan may produce.
pub const MAX_SCAN_ROWS: usize = 1_000_000;

const THREE_HALVES_PI: f64 = 1.5 * std::f64::consts::PI;

fn route_name<T: serde::Serialize>(route: &T) -> String {
    serde_json::to_value(route)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

/// Maps "t is on or next to an ordinate" style failures to a missing value.
fn optional(r: zetaphase::Result<f64>) -> CliResult<Field> {
    match r {
        Ok(v) => Ok(Field::Real(v)),
        Err(e) if e.is_domain() => Ok(Field::Missing),
        Err(e) => Err(e.into()),
    }
}

/// Everything known at one ordinate. Quantities that are undefined at t
/// (S on an ordinate, the counts below a_ϑ) are left empty.
pub fn eval_table(t: f64, cfg: &RunConfig) -> CliResult<Table> {
    cfg.check_t(t)?;
    let engine = KappaEngine::new();
    let th = theta_series(t)?;
    let z = z_triple(t)?;
    let k = engine.kappa_of(t)?;
    let e = THREE_HALVES_PI + th.theta - std::f64::consts::PI * k.kappa;
    let s = optional(s_of(t))?;
    let report = if t > find_a_theta().value && s != Field::Missing {
        Some(phase_report(&engine, t)?)
    } else {
        None
    };
    let count = |f: fn(&zetaphase::PhaseReport) -> i64| report.as_ref().map_or(Field::Missing, |r| Field::Int(f(r)));
    let real = |f: fn(&zetaphase::PhaseReport) -> f64| report.as_ref().map_or(Field::Missing, |r| Field::Real(f(r)));

    let mut table = Table::new([
        "t",
        "theta",
        "theta_d1",
        "theta_d2",
        "z",
        "z_d1",
        "z_d2",
        "z_identity_residual",
        "z_derivative_residual",
        "kappa",
        "kappa_d1",
        "kappa_route",
        "circle_residual",
        "E",
        "S",
        "N",
        "N00",
        "RH",
        "band",
        "band_identity_residual",
    ]);
    table.push(vec![
        Field::Real(t),
        Field::Real(th.theta),
        Field::Real(th.d1),
        Field::Real(th.d2),
        Field::Real(z.z),
        Field::Real(z.d1),
        Field::Real(z.d2),
        Field::Real(z.identity_residual),
        Field::Real(z.derivative_residual),
        Field::Real(k.kappa),
        Field::Real(k.d1),
        Field::Text(route_name(&k.route)),
        Field::Real(k.circle_residual),
        Field::Real(e),
        s,
        count(|r| r.n),
        count(|r| r.n00),
        count(|r| r.rh),
        real(|r| r.band),
        real(|r| r.band_identity_residual),
    ]);
    Ok(table)
}

pub fn cmd_eval<W: Write>(t: f64, cfg: &RunConfig, out: W) -> CliResult<()> {
    eval_table(t, cfg)?.write_single(out, cfg)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ScanColumn {
    Theta,
    Z,
    Kappa,
    Kappa1,
    E,
    S,
}

impl ScanColumn {
    pub fn name(self) -> &'static str {
        match self {
            ScanColumn::Theta => "theta",
            ScanColumn::Z => "z",
            ScanColumn::Kappa => "kappa",
            ScanColumn::Kappa1 => "kappa1",
            ScanColumn::E => "e",
            ScanColumn::S => "s",
        }
    }

    fn eval(self, engine: &KappaEngine, t: f64) -> CliResult<Field> {
        Ok(match self {
            ScanColumn::Theta => Field::Real(theta_series(t)?.theta),
            ScanColumn::Z => Field::Real(z_triple(t)?.z),
            ScanColumn::Kappa => Field::Real(engine.kappa_of(t)?.kappa),
            ScanColumn::Kappa1 => Field::Real(kappa_d1(t)?),
            ScanColumn::E => Field::Real(e_of(engine, t)?),
            ScanColumn::S => optional(s_of(t))?,
        })
    }
}

/// Grid t_lo, t_lo + step, … ≤ t_hi.
pub fn scan_grid(t_lo: f64, t_hi: f64, step: f64, cfg: &RunConfig) -> CliResult<Vec<f64>> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(CliError::Usage(format!("step must be positive, got {step}")));
    }
    cfg.check_t(t_lo)?;
    cfg.check_t(t_hi)?;
    if t_lo > t_hi {
        return Err(CliError::Usage(format!("empty range [{t_lo}, {t_hi}]")));
    }
    let n = ((t_hi - t_lo) / step * (1.0 + 1e-12)).floor() as usize;
    if n >= MAX_SCAN_ROWS {
        return Err(CliError::Usage(format!("scan would produce {} rows (limit {MAX_SCAN_ROWS})", n + 1)));
    }
    Ok((0..=n).map(|i| t_lo + i as f64 * step).collect())
}

pub fn scan_table(t_lo: f64, t_hi: f64, step: f64, what: &[ScanColumn], cfg: &RunConfig) -> CliResult<Table> {
    let grid = scan_grid(t_lo, t_hi, step, cfg)?;
    let mut cols: Vec<ScanColumn> = Vec::new();
    for &c in what {
        if !cols.contains(&c) {
            cols.push(c);
        }
    }
    if cols.is_empty() {
        return Err(CliError::Usage("nothing to scan".into()));
    }
    let engine = KappaEngine::new();
    if cols.iter().any(|c| matches!(c, ScanColumn::Kappa | ScanColumn::E)) {
        engine.kappa_of(t_lo)?;
        engine.kappa_of(t_hi)?;
    }
    let rows: Vec<Vec<Field>> = grid
        .par_iter()
        .map(|&t| {
            let mut row = vec![Field::Real(t)];
            for c in &cols {
                row.push(c.eval(&engine, t)?);
            }
            Ok(row)
        })
        .collect::<CliResult<_>>()?;
    let mut table = Table::new(std::iter::once("t").chain(cols.iter().map(|c| c.name())));
    table.rows = rows;
    Ok(table)
}

pub fn cmd_scan<W: Write>(t_lo: f64, t_hi: f64, step: f64, what: &[ScanColumn], cfg: &RunConfig, out: W) -> CliResult<()> {
    scan_table(t_lo, t_hi, step, what, cfg)?.write(out, cfg)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ZeroKindArg {
    Xi,
    Eta,
    ZprimeComplex,
    ZprimeTrivial,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZerosRequest {
    pub kind: ZeroKindArg,
    pub count: Option<u32>,
    pub height: Option<f64>,
}

impl ZerosRequest {
    fn count(&self) -> CliResult<u32> {
        match self.count {
            Some(n) if n > 0 => Ok(n),
            Some(_) => Err(CliError::Usage("--count must be positive".into())),
            None => Err(CliError::Usage(format!("{:?} catalogs need --count", self.kind))),
        }
    }
}

pub fn zeros_table(req: &ZerosRequest, cfg: &RunConfig) -> CliResult<Table> {
    match req.kind {
        ZeroKindArg::Xi => {
            let engine = KappaEngine::new();
            Ok(catalog::xi_table(&find_xis(&engine, req.count()?)?))
        }
        ZeroKindArg::Eta => {
            let count = req.count()?;
            if count > MAX_XI_INDEX {
                return Err(CliError::Usage(format!("--count above {MAX_XI_INDEX}")));
            }
            let engine = KappaEngine::new();
            // Registers the zero anchors the η brackets are built from.
            find_xis(&engine, count.saturating_sub(1).max(1))?;
            let points = (-1..count as i64 - 1)
                .into_par_iter()
                .map(|n| find_eta(&engine, n))
                .collect::<zetaphase::Result<Vec<_>>>()?;
            Ok(catalog::eta_table(&points))
        }
        ZeroKindArg::ZprimeComplex => {
            let h = req
                .height
                .ok_or_else(|| CliError::Usage("zprime-complex catalogs need --height".into()))?;
            if !(h > 0.0 && h <= cfg.t_max) {
                return Err(CliError::Domain(zetaphase::Error::OutOfRange {
                    what: "height",
                    value: h,
                    limit: cfg.t_max,
                }));
            }
            Ok(catalog::complex_table(&find_complex_zeros(h)?.zeros))
        }
        ZeroKindArg::ZprimeTrivial => Ok(catalog::trivial_table(&find_trivial_zeros(req.count()?)?)),
    }
}

pub fn cmd_zeros<W: Write>(req: &ZerosRequest, cfg: &RunConfig, out: W) -> CliResult<()> {
    zeros_table(req, cfg)?.write(out, cfg)
}
