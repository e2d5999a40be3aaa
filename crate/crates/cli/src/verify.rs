//! Verification suites: each check reports a measured residual against a
//! tolerance.

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use serde::Serialize;
use zetaphase::{
    constants, count_n00, count_prime_splits, count_split_residual, e_d1, e_of, expansion_residual, find_a_kappa_gamma,
    find_complex_zeros, find_eta, find_trivial_zeros, find_xis, gy_distance_check, kappa_d1, kappa_d1_detail,
    kappa_d1_reconstructed, kappa_phase_diagnostic, log_gamma, ml_constant_a, n_of, phase_report, s_of,
    sawtooth_series, scan_sign_changes, theta_asymptotic, theta_series, z_triple, zeta, CriticalZero, Error,
    KappaEngine, A_CONST,
};

use crate::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Identities,
    Constants,
    Zeros,
    Reconstruction,
    Band,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Constants => "constants",
            Suite::Zeros => "zeros",
            Suite::Reconstruction => "reconstruction",
            Suite::Band => "band",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// NaN (serialized as null) when the computation itself failed.
    pub measured: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    /// Passes when `measured ≤ tolerance`.
    pub fn at_most(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            measured,
            tolerance,
            pass: measured <= tolerance,
        }
    }

    fn failed(name: String) -> Self {
        Check {
            name,
            measured: f64::NAN,
            tolerance: 0.0,
            pass: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
    pub pass: bool,
}

/// Largest element, NaN if any element is NaN.
fn worst(xs: impl IntoIterator<Item = f64>) -> f64 {
    xs.into_iter()
        .fold(0.0, |a: f64, b| if a.is_nan() || b.is_nan() { f64::NAN } else { a.max(b) })
}

fn try_worst<I: IntoIterator<Item = zetaphase::Result<f64>>>(xs: I) -> zetaphase::Result<f64> {
    let v: Vec<f64> = xs.into_iter().collect::<zetaphase::Result<_>>()?;
    Ok(worst(v))
}

/// First seven zero ordinates of Z to 13 digits.
pub const FIRST_XI: [f64; 7] = [
    14.134_725_141_734_7,
    21.022_039_638_771_6,
    25.010_857_580_145_7,
    30.424_876_125_859_5,
    32.935_061_587_739_2,
    37.586_178_158_825_7,
    40.918_719_012_147_5,
];

/// First seven complex zeros (β′, γ′) of ζ′ to 15 digits.
pub const FIRST_ZETA_PRIME: [(f64, f64); 7] = [
    (2.463_161_869_454_32, 23.298_320_492_762_9),
    (1.286_496_822_269_05, 31.708_250_083_115_9),
    (2.307_570_063_722_63, 38.489_983_173_078_9),
    (1.382_763_605_711_67, 42.290_964_554_596_7),
    (0.964_685_622_705_686, 48.847_159_905_068_5),
    (2.101_699_900_948_77, 52.432_161_245_149_8),
    (1.895_959_762_471_24, 57.134_753_199_019_5),
];

/// Ordinates used for pointwise identities: an irrational step keeps
/// them away from the zeros of Z.
fn identity_grid() -> Vec<f64> {
    (0..137).map(|k| 0.5 + 0.731 * k as f64).collect()
}

fn identities(engine: &KappaEngine) -> zetaphase::Result<Vec<Check>> {
    let grid = identity_grid();
    let mut out = Vec::new();

    let th = try_worst(grid.iter().filter(|&&t| t >= 1.0).map(|&t| {
        let (a, b) = (theta_series(t)?, theta_asymptotic(t)?);
        Ok(worst([(a.theta - b.theta).abs(), (a.d1 - b.d1).abs(), (a.d2 - b.d2).abs()]))
    }))?;
    out.push(Check::at_most("theta series against the log-gamma form", th, 1e-9));

    let zs: Vec<_> = grid.iter().map(|&t| z_triple(t)).collect::<zetaphase::Result<_>>()?;
    out.push(Check::at_most(
        "e^{i theta} zeta(1/2+it) is real",
        worst(zs.iter().map(|z| z.identity_residual)),
        1e-10,
    ));
    out.push(Check::at_most(
        "Re e^{i theta} zeta'(1/2+it) = -theta' Z",
        worst(zs.iter().map(|z| z.derivative_residual)),
        1e-9,
    ));

    let ks: Vec<_> = grid.iter().map(|&t| engine.kappa_of(t)).collect::<zetaphase::Result<_>>()?;
    out.push(Check::at_most(
        "e^{2 pi i kappa} = 1 + 2 theta' zeta/zeta'",
        worst(ks.iter().map(|k| k.circle_residual)),
        1e-8,
    ));
    out.push(Check::at_most("kappa(0) = -1/2", (engine.kappa_of(0.0)?.kappa + 0.5).abs(), 1e-15));
    out.push(Check::at_most(
        "kappa from the phase of Z' - i Z theta'",
        try_worst(grid.iter().zip(&ks).map(|(&t, k)| Ok((engine.kappa_phase_formula(t)?.kappa - k.kappa).abs())))?,
        1e-8,
    ));
    out.push(Check::at_most(
        "kappa' from Z and from zeta''/zeta' agree",
        try_worst(grid.iter().map(|&t| {
            let d = kappa_d1_detail(t)?;
            Ok(match (d.z_form, d.zeta_form) {
                (Some(a), Some(b)) => (a - b).abs(),
                _ => f64::NAN,
            })
        }))?,
        1e-8,
    ));
    out.push(Check::at_most(
        "E' = theta' - pi kappa' against its Z form",
        try_worst(grid.iter().map(|&t| {
            let d = e_d1(t)?;
            Ok((d.value - d.z_form).abs())
        }))?,
        1e-8,
    ));
    out.push(Check::at_most(
        "1 + theta/pi + S is an integer",
        try_worst(grid.iter().map(|&t| {
            let s = s_of(t)?;
            n_of(t, s)?;
            let raw = 1.0 + theta_series(t)?.theta / PI + s;
            Ok((raw - raw.round()).abs())
        }))?,
        1e-6,
    ));

    let sym = &grid[..60];
    out.push(Check::at_most(
        "Z is even",
        try_worst(sym.iter().map(|&t| {
            let (a, b) = (z_triple(t)?, z_triple(-t)?);
            Ok((a.z - b.z).abs() / a.z.abs().max(1.0))
        }))?,
        1e-12,
    ));
    out.push(Check::at_most(
        "kappa(t) + kappa(-t) = -1",
        try_worst(sym.iter().map(|&t| Ok((engine.kappa_of(t)?.kappa + engine.kappa_of(-t)?.kappa + 1.0).abs())))?,
        1e-9,
    ));
    out.push(Check::at_most(
        "E - 2 pi is odd",
        try_worst(sym.iter().map(|&t| Ok((e_of(engine, t)? + e_of(engine, -t)? - 4.0 * PI).abs())))?,
        1e-9,
    ));

    let points = [
        Complex64::new(0.25, 3.0),
        Complex64::new(0.7, 12.5),
        Complex64::new(-1.5, 20.0),
        Complex64::new(2.5, 33.0),
        Complex64::new(0.5, 77.7),
    ];
    out.push(Check::at_most(
        "zeta(conj s) = conj zeta(s)",
        try_worst(points.iter().map(|&s| {
            let (a, b) = (zeta(s)?, zeta(s.conj())?);
            Ok((a - b.conj()).norm() / a.norm())
        }))?,
        1e-12,
    ));
    out.push(Check::at_most(
        "zeta(1-s) = 2 (2 pi)^-s cos(pi s/2) Gamma(s) zeta(s)",
        try_worst(points.iter().map(|&s| {
            let lhs = zeta(1.0 - s)?;
            let rhs = 2.0 * (-s * (2.0 * PI).ln() + log_gamma(s)?).exp() * (PI * s / 2.0).cos() * zeta(s)?;
            Ok((lhs - rhs).norm() / lhs.norm())
        }))?,
        1e-9,
    ));

    let h = 1e-5;
    let fd_points = [3.3, 17.7, 33.3, 61.1, 88.8];
    out.push(Check::at_most(
        "theta', theta'' against central differences",
        try_worst(fd_points.iter().map(|&t| {
            let (m, c, p) = (theta_series(t - h)?, theta_series(t)?, theta_series(t + h)?);
            let e1 = ((p.theta - m.theta) / (2.0 * h) - c.d1).abs() / c.d1.abs().max(1.0);
            let e2 = ((p.d1 - m.d1) / (2.0 * h) - c.d2).abs() / c.d2.abs().max(1e-2);
            Ok(e1.max(e2))
        }))?,
        1e-6,
    ));
    out.push(Check::at_most(
        "Z', Z'' against central differences",
        try_worst(fd_points.iter().map(|&t| {
            let (m, c, p) = (z_triple(t - h)?, z_triple(t)?, z_triple(t + h)?);
            let scale = c.z.abs().max(c.d1.abs()).max(c.d2.abs()).max(1.0);
            Ok((((p.z - m.z) / (2.0 * h) - c.d1).abs() + ((p.d1 - m.d1) / (2.0 * h) - c.d2).abs()) / scale)
        }))?,
        1e-6,
    ));
    out.push(Check::at_most(
        "kappa' against central differences of kappa",
        try_worst(fd_points.iter().map(|&t| {
            let fd = (engine.kappa_of(t + h)?.kappa - engine.kappa_of(t - h)?.kappa) / (2.0 * h);
            let d = kappa_d1(t)?;
            Ok((fd - d).abs() / d.abs().max(1e-2))
        }))?,
        1e-6,
    ));
    out.push(Check::at_most(
        "E' against central differences of E",
        try_worst(fd_points.iter().map(|&t| {
            let fd = (e_of(engine, t + h)? - e_of(engine, t - h)?) / (2.0 * h);
            let d = e_d1(t)?.value;
            Ok((fd - d).abs() / d.abs().max(1e-2))
        }))?,
        1e-6,
    ));
    Ok(out)
}

fn constants_suite(engine: &KappaEngine) -> zetaphase::Result<Vec<Check>> {
    let s = find_a_kappa_gamma(engine)?;
    let ml = ml_constant_a()?;
    let c = constants();
    let named = [
        (c.euler_gamma, zetaphase::specfun::EULER_GAMMA_DIGITS),
        (c.stieltjes1, zetaphase::specfun::STIELTJES_1_DIGITS),
        (c.log_2pi, zetaphase::specfun::LOG_2PI_DIGITS),
        (c.pi, zetaphase::specfun::PI_DIGITS),
    ];
    let named_err = worst(named.iter().map(|(v, d)| (v - d.parse::<f64>().unwrap_or(f64::NAN)).abs()));
    Ok(vec![
        Check::at_most("a_theta = 6.289835988836902", (s.a_theta - 6.289_835_988_836_902_78).abs(), 5e-12),
        Check::at_most("a_kappa = 0.779853575338836", (s.a_kappa - 0.779_853_575_338_836).abs(), 5e-11),
        Check::at_most("a_gamma = -0.670259798768599", (s.a_gamma + 0.670_259_798_768_599_5).abs(), 5e-11),
        Check::at_most("kappa'(0) = -0.444016", (kappa_d1(0.0)? + 0.444_016).abs(), 1e-5),
        Check::at_most("a = -2 + zeta''(0)/zeta'(0) = 0.18334", (ml.a - 0.183_34).abs(), 1e-4),
        Check::at_most("a against its closed form", (ml.a - ml.a_closed_form).abs(), 1e-6),
        Check::at_most("zeta'(0) = -log(2 pi)/2", ml.b_check, 1e-10),
        Check::at_most("A = log(2)/2", (ml.big_a - A_CONST).abs() + (A_CONST - 0.346_573_590_279_972_65).abs(), 1e-15),
        Check::at_most("named constants match their digit strings", named_err, 0.0),
    ])
}

fn count_changes(f: impl Fn(f64) -> zetaphase::Result<f64>, lo: f64, hi: f64, step: f64) -> zetaphase::Result<usize> {
    let n = ((hi - lo) / step).ceil() as usize;
    let mut prev = f(lo + 1e-9)?;
    let mut changes = 0;
    for i in 1..=n {
        let t = if i == n { hi - 1e-9 } else { lo + i as f64 * step };
        let v = f(t)?;
        if v * prev < 0.0 {
            changes += 1;
        }
        prev = v;
    }
    Ok(changes)
}

fn zeros_suite(engine: &KappaEngine) -> zetaphase::Result<Vec<Check>> {
    let mut out = Vec::new();
    let xis = find_xis(engine, 50)?;
    out.push(Check::at_most(
        "first seven zero ordinates against reference values",
        worst(xis.iter().zip(FIRST_XI).map(|(z, r)| (z.ordinate - r).abs())),
        1e-8,
    ));
    out.push(Check::at_most(
        "kappa(xi_n) = n for n <= 50",
        worst(xis.iter().map(|z| z.kappa_residual)),
        1e-8,
    ));
    let fresh = KappaEngine::new();
    out.push(Check::at_most(
        "kappa inverse at n against Newton on Z, n <= 50",
        try_worst(xis.iter().map(|z| Ok((fresh.gamma_inverse(z.index as f64)? - z.ordinate).abs())))?,
        1e-8,
    ));
    out.push(Check::at_most(
        "zeros are simple",
        worst(xis.iter().map(|z| (z.multiplicity - 1) as f64)),
        0.0,
    ));
    out.push(Check::at_most(
        "floor(kappa) against sign changes of Z at t = 30, 50, 77, 100",
        try_worst([30.0, 50.0, 77.0, 100.0].iter().map(|&t| {
            let scan = scan_sign_changes(0.0, t, 0.01)?.len() as i64;
            Ok((count_n00(engine, t)? - scan).abs() as f64)
        }))?,
        0.0,
    ));

    let etas: Vec<_> = (-1..30).map(|n| find_eta(engine, n)).collect::<zetaphase::Result<_>>()?;
    let a_theta = zetaphase::find_a_theta().value;
    let inner = &etas[1..];
    out.push(Check::at_most(
        "|Z'(eta)| for the 30 points between zeros",
        worst(inner.iter().map(|p| p.zprime_residual)),
        1e-7,
    ));
    out.push(Check::at_most(
        "kappa(eta) - half-integer for the 30 points between zeros",
        worst(inner.iter().map(|p| p.kappa_residual)),
        1e-8,
    ));
    let bounds = |n: usize| -> (f64, f64) {
        let lo = if n == 0 { a_theta } else { xis[n - 1].ordinate };
        (lo, xis[n].ordinate)
    };
    out.push(Check::at_most(
        "one sign change of Z' between consecutive zeros",
        try_worst((0..30).map(|n| {
            let (lo, hi) = bounds(n);
            let c = count_changes(|t| Ok(z_triple(t)?.d1), lo, hi, 0.005)?;
            Ok((c as f64 - 1.0).abs())
        }))?,
        0.0,
    ));
    out.push(Check::at_most(
        "eta points lie between consecutive zeros",
        worst(inner.iter().enumerate().map(|(n, p)| {
            let (lo, hi) = bounds(n);
            if p.ordinate > lo && p.ordinate < hi { 0.0 } else { 1.0 }
        })),
        0.0,
    ));
    out.push(Check::at_most("eta_1 = 2.47572", (etas[0].ordinate - 2.475_72).abs(), 1e-4));
    out.push(Check::at_most("eta_2 = 10.21207", (etas[1].ordinate - 10.212_07).abs(), 1e-4));

    let first20 = &xis[..20];
    out.push(Check::at_most(
        "kappa'(xi_n) = theta'(xi_n)/pi, n <= 20",
        try_worst(first20.iter().map(|z| Ok((kappa_d1(z.ordinate)? - theta_series(z.ordinate)?.d1 / PI).abs())))?,
        1e-6,
    ));
    out.push(Check::at_most(
        "integral of kappa' between consecutive zeros is 1, n <= 20",
        try_worst(first20.windows(2).map(|w| Ok((engine.integral(w[0].ordinate, w[1].ordinate)? - 1.0).abs())))?,
        1e-7,
    ));

    let c = find_complex_zeros(60.0)?;
    out.push(Check::at_most(
        "seven zeros of zeta' up to height 60",
        (c.zeros.len() as f64 - 7.0).abs(),
        0.0,
    ));
    out.push(Check::at_most(
        "zeros of zeta' against reference values",
        worst(
            c.zeros
                .iter()
                .zip(FIRST_ZETA_PRIME)
                .map(|(z, (b, g))| (z.beta - b).abs().max((z.gamma - g).abs())),
        ),
        1e-7,
    ));

    let trivial = find_trivial_zeros(300)?;
    out.push(Check::at_most(
        "trivial zeros of zeta' lie in (-2n-2, -2n)",
        worst(trivial.iter().map(|z| {
            let n = z.index as f64;
            if z.beta > -2.0 * n - 2.0 && z.beta < -2.0 * n { 0.0 } else { 1.0 }
        })),
        0.0,
    ));
    let refs = [
        (50, -101.673_439_203_254_642_62),
        (100, -201.729_491_142_326_748_89),
        (300, -601.788_929_113_755_968_85),
    ];
    out.push(Check::at_most(
        "trivial zeros a_50, a_100, a_300 against reference values (relative)",
        worst(refs.iter().map(|&(n, a)| (trivial[n - 1].beta - a).abs() / a.abs())),
        1e-11,
    ));
    Ok(out)
}

fn reconstruction_suite(engine: &KappaEngine) -> zetaphase::Result<Vec<Check>> {
    let mut out = Vec::new();
    let catalog = find_complex_zeros(500.0)?;
    let trivial = find_trivial_zeros(500)?;

    let recs: Vec<_> = (0..50)
        .map(|i| kappa_d1_reconstructed(10.0 + 80.0 * (i as f64 + 0.5) / 50.0, &catalog, &trivial, 500))
        .collect::<zetaphase::Result<_>>()?;
    out.push(Check::at_most(
        "kappa' from zeta' zeros within budget at 50 points in [10, 90] (error/budget)",
        try_worst(recs.iter().map(|r| Ok((r.value - kappa_d1(r.t)?).abs() / r.budget)))?,
        1.0,
    ));
    out.push(Check::at_most(
        "reconstruction budget with zeros to height 500",
        worst(recs.iter().map(|r| r.budget)),
        0.05,
    ));
    out.push(Check::at_most(
        "zeta''/zeta' against its zero expansion (residual/budget)",
        try_worst(
            [
                Complex64::new(0.5, 14.0),
                Complex64::new(1.5, 40.0),
                Complex64::new(3.0, 75.0),
                Complex64::new(0.8, 120.0),
            ]
            .iter()
            .map(|&s| {
                let e = expansion_residual(s, &catalog, &trivial)?;
                Ok(e.residual / e.budget)
            }),
        )?,
        1.0,
    ));
    out.push(Check::at_most(
        "|pi kappa - A t - sum of angles| for t <= 100",
        try_worst((1..=20).map(|i| Ok(kappa_phase_diagnostic(engine, 5.0 * i as f64, &catalog)?.gap.abs())))?,
        25.0,
    ));
    let splits = count_prime_splits(&catalog, 100.0)?;
    out.push(Check::at_most(
        "zero count split by side of the critical line at t = 100",
        count_split_residual(count_n00(engine, 100.0)?, &splits).abs(),
        25.0,
    ));
    out.push(Check::at_most(
        "zeros of zeta' left of the critical line up to height 500",
        count_prime_splits(&catalog, 500.0)?.n_left as f64,
        0.0,
    ));
    out.push(Check::at_most(
        "zero count of zeta' to height 500 against the asymptotic count (|ratio - 1|)",
        (count_prime_splits(&catalog, 500.0)?.berndt_ratio - 1.0).abs(),
        0.05,
    ));

    let xis: Vec<CriticalZero> = find_xis(engine, 30)?;
    let first7 = &catalog.zeros[..7];
    out.push(Check::at_most(
        "|gamma_c - gamma'| / (1.9 sqrt(beta' - 1/2)) for the first seven zeros of zeta'",
        try_worst(first7.iter().map(|z| {
            let g = gy_distance_check(z, &xis)?;
            Ok(g.dist / g.bound)
        }))?,
        1.0,
    ));
    let g = gy_distance_check(&first7[0], &xis)?;
    out.push(Check::at_most("first zero of zeta': distance 1.7125", (g.dist - 1.7125).abs(), 1e-4));
    out.push(Check::at_most("first zero of zeta': bound 2.6622", (g.bound - 2.6622).abs(), 1e-4));
    Ok(out)
}

fn band_suite(engine: &KappaEngine) -> zetaphase::Result<Vec<Check>> {
    let a_theta = zetaphase::find_a_theta().value;
    let mut reports = Vec::with_capacity(300);
    for i in 0..300 {
        let mut t = a_theta + (100.0 - a_theta) * (i as f64 + 0.5) / 300.0;
        let r = loop {
            match phase_report(engine, t) {
                Err(Error::NearZeroOrdinate { .. }) => t += 1e-3,
                r => break r?,
            }
        };
        reports.push(r);
    }
    let mut out = vec![
        Check::at_most(
            "N - floor(kappa) = 0 at 300 points",
            worst(reports.iter().map(|r| r.rh.abs() as f64)),
            0.0,
        ),
        Check::at_most(
            "S + E/pi outside (-1/2, 1/2]",
            worst(reports.iter().map(|r| (r.band - 0.5).max(-0.5 - r.band).max(0.0))),
            1e-8,
        ),
        Check::at_most(
            "S + E/pi = N + 1/2 - kappa",
            worst(reports.iter().map(|r| r.band_identity_residual)),
            1e-7,
        ),
    ];
    // Levels with fractional part in [0.25, 0.7], away from the jumps of
    // the sawtooth.
    out.push(Check::at_most(
        "S + E/pi against 200 terms of its sawtooth series at 10 points",
        try_worst((1..=10).map(|n| {
            let u = n as f64 + 0.25 + 0.05 * (n - 1) as f64;
            let r = phase_report(engine, engine.gamma_inverse(u)?)?;
            Ok((sawtooth_series(r.kappa, 200) - r.band).abs())
        }))?,
        2e-3,
    ));
    Ok(out)
}

fn run_suite(suite: Suite, engine: &KappaEngine) -> Vec<Check> {
    let result = match suite {
        Suite::Identities => identities(engine),
        Suite::Constants => constants_suite(engine),
        Suite::Zeros => zeros_suite(engine),
        Suite::Reconstruction => reconstruction_suite(engine),
        Suite::Band => band_suite(engine),
        Suite::All => {
            return [Suite::Constants, Suite::Identities, Suite::Zeros, Suite::Reconstruction, Suite::Band]
                .into_iter()
                .flat_map(|s| run_suite(s, engine))
                .collect()
        }
    };
    match result {
        Ok(checks) => checks
            .into_iter()
            .map(|c| Check {
                name: format!("{}: {}", suite.name(), c.name),
                ..c
            })
            .collect(),
        Err(e) => vec![Check::failed(format!("{}: aborted: {e}", suite.name()))],
    }
}

pub fn verify(suite: Suite) -> VerifyReport {
    let engine = KappaEngine::new();
    let checks = run_suite(suite, &engine);
    for c in checks.iter().filter(|c| !c.pass) {
        log::warn!("failed: {} (measured {:e}, tolerance {:e})", c.name, c.measured, c.tolerance);
    }
    VerifyReport {
        suite,
        pass: checks.iter().all(|c| c.pass),
        checks,
    }
}

/// Runs `suite`, writes the JSON report, and fails with exit code 1 if any
/// check failed.
pub fn cmd_verify<W: Write>(suite: Suite, mut out: W) -> CliResult<VerifyReport> {
    let report = verify(suite);
    serde_json::to_writer_pretty(&mut out, &report)?;
    writeln!(out)?;
    if !report.pass {
        return Err(CliError::VerifyFailed {
            failed: report.checks.iter().filter(|c| !c.pass).count(),
            total: report.checks.len(),
        });
    }
    Ok(report)
}
