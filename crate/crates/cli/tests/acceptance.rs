//! Acceptance criteria 1–10, one PASS/FAIL line each. Runs without the
//! libtest harness so the lines are always printed; exits nonzero if any
//! criterion fails.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use zetaphase::{
    count_n00, find_a_kappa_gamma, find_a_theta, find_complex_zeros, find_eta, find_trivial_zeros, find_xis,
    gy_distance_check, kappa_d1, kappa_d1_reconstructed, ml_constant_a, phase_report, sawtooth_series,
    scan_sign_changes, theta_series, z_triple, CriticalZero, Error, KappaEngine,
};

const XI: [f64; 7] = [
    14.134_725_141_734_7,
    21.022_039_638_771_6,
    25.010_857_580_145_7,
    30.424_876_125_859_5,
    32.935_061_587_739_2,
    37.586_178_158_825_7,
    40.918_719_012_147_5,
];

const ZETA_PRIME: [(f64, f64); 7] = [
    (2.463_161_869_454_32, 23.298_320_492_762_9),
    (1.286_496_822_269_05, 31.708_250_083_115_9),
    (2.307_570_063_722_63, 38.489_983_173_078_9),
    (1.382_763_605_711_67, 42.290_964_554_596_7),
    (0.964_685_622_705_686, 48.847_159_905_068_5),
    (2.101_699_900_948_77, 52.432_161_245_149_8),
    (1.895_959_762_471_24, 57.134_753_199_019_5),
];

struct Measure {
    label: &'static str,
    value: f64,
    tol: f64,
}

impl Measure {
    fn ok(&self) -> bool {
        self.value <= self.tol
    }
}

fn m(label: &'static str, value: f64, tol: f64) -> Measure {
    Measure { label, value, tol }
}

fn worst(xs: impl IntoIterator<Item = f64>) -> f64 {
    xs.into_iter()
        .fold(0.0, |a: f64, b| if a.is_nan() || b.is_nan() { f64::NAN } else { a.max(b) })
}

type Outcome = zetaphase::Result<Vec<Measure>>;

fn constants(e: &KappaEngine) -> Outcome {
    let s = find_a_kappa_gamma(e)?;
    let ml = ml_constant_a()?;
    Ok(vec![
        m("a_theta", (s.a_theta - 6.289_835_988_836_903).abs(), 5e-12),
        m("a_kappa", (s.a_kappa - 0.779_853_575_338_836).abs(), 5e-11),
        m("a_gamma", (s.a_gamma + 0.670_259_798_768_599_5).abs(), 5e-11),
        m("kappa'(0)", (kappa_d1(0.0)? + 0.444_016).abs(), 1e-5),
        m("a", (ml.a - 0.183_34).abs(), 1e-4),
        m("a closed form", (ml.a - ml.a_closed_form).abs(), 1e-6),
        m("zeta'(0)", ml.b_check, 1e-10),
    ])
}

fn first_zeros(e: &KappaEngine) -> Outcome {
    let xis = find_xis(e, 7)?;
    let c = find_complex_zeros(60.0)?;
    Ok(vec![
        m("xi_1..7", worst(xis.iter().zip(XI).map(|(z, r)| (z.ordinate - r).abs())), 1e-8),
        m("zeta' zero count below 60", (c.zeros.len() as f64 - 7.0).abs(), 0.0),
        m(
            "rho'_1..7",
            worst(c.zeros.iter().zip(ZETA_PRIME).map(|(z, (b, g))| (z.beta - b).abs().max((z.gamma - g).abs()))),
            1e-7,
        ),
    ])
}

fn kappa_at_zeros(e: &KappaEngine, xis: &[CriticalZero]) -> Outcome {
    let fresh = KappaEngine::new();
    let inverse = xis
        .iter()
        .map(|z| Ok((fresh.gamma_inverse(z.index as f64)? - z.ordinate).abs()))
        .collect::<zetaphase::Result<Vec<_>>>()?;
    let kappa = xis
        .iter()
        .map(|z| Ok((e.kappa_of(z.ordinate)?.kappa - z.index as f64).abs()))
        .collect::<zetaphase::Result<Vec<_>>>()?;
    Ok(vec![
        m("|kappa(xi_n) - n| before snapping", worst(xis.iter().map(|z| z.kappa_residual)), 1e-8),
        m("|kappa(xi_n) - n| after snapping", worst(kappa), 1e-8),
        m("|gamma_inverse(n) - xi_n|", worst(inverse), 1e-8),
    ])
}

fn counting(e: &KappaEngine) -> Outcome {
    let mut d = Vec::new();
    for t in [30.0, 50.0, 77.0, 100.0] {
        let scan = scan_sign_changes(0.0, t, 0.01)?.len() as i64;
        d.push((count_n00(e, t)? - scan).abs() as f64);
    }
    Ok(vec![m("|floor(kappa) - sign changes|", worst(d), 0.0)])
}

fn z_prime_changes(lo: f64, hi: f64) -> zetaphase::Result<usize> {
    let step = 0.005;
    let n = ((hi - lo) / step).ceil() as usize;
    let mut prev = z_triple(lo + 1e-9)?.d1;
    let mut changes = 0;
    for i in 1..=n {
        let t = if i == n { hi - 1e-9 } else { lo + i as f64 * step };
        let v = z_triple(t)?.d1;
        if v * prev < 0.0 {
            changes += 1;
        }
        prev = v;
    }
    Ok(changes)
}

fn half_points(e: &KappaEngine, xis: &[CriticalZero]) -> Outcome {
    let a_theta = find_a_theta().value;
    let (mut uniq, mut inside, mut zp, mut half) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for n in 0..30usize {
        let lo = if n == 0 { a_theta } else { xis[n - 1].ordinate };
        let hi = xis[n].ordinate;
        let p = find_eta(e, n as i64)?;
        uniq = uniq.max((z_prime_changes(lo, hi)? as f64 - 1.0).abs());
        inside = inside.max(if p.ordinate > lo && p.ordinate < hi { 0.0 } else { 1.0 });
        zp = zp.max(p.zprime_residual);
        let k = e.kappa_of(p.ordinate)?.kappa;
        half = half.max((k - k.floor() - 0.5).abs());
    }
    Ok(vec![
        m("Z' sign changes per gap - 1", uniq, 0.0),
        m("eta outside its gap", inside, 0.0),
        m("|Z'(eta)|", zp, 1e-7),
        m("|frac(kappa(eta)) - 1/2|", half, 1e-8),
        m("eta_1", (find_eta(e, -1)?.ordinate - 2.475_72).abs(), 1e-4),
        m("eta_2", (find_eta(e, 0)?.ordinate - 10.212_07).abs(), 1e-4),
    ])
}

fn derivative_at_zeros(e: &KappaEngine, xis: &[CriticalZero]) -> Outcome {
    let first = &xis[..20];
    let d = first
        .iter()
        .map(|z| Ok((kappa_d1(z.ordinate)? - theta_series(z.ordinate)?.d1 / PI).abs()))
        .collect::<zetaphase::Result<Vec<_>>>()?;
    let mass = first
        .windows(2)
        .map(|w| Ok((e.integral(w[0].ordinate, w[1].ordinate)? - 1.0).abs()))
        .collect::<zetaphase::Result<Vec<_>>>()?;
    Ok(vec![
        m("|kappa'(xi_n) - theta'(xi_n)/pi|", worst(d), 1e-6),
        m("|integral of kappa' over (xi_{n-1}, xi_n) - 1|", worst(mass), 1e-7),
    ])
}

fn reconstruction() -> Outcome {
    let catalog = find_complex_zeros(500.0)?;
    let trivial = find_trivial_zeros(500)?;
    let (mut ratio, mut budget) = (0.0f64, 0.0f64);
    for i in 0..50 {
        let t = 10.0 + 80.0 * (i as f64 + 0.5) / 50.0;
        let r = kappa_d1_reconstructed(t, &catalog, &trivial, 500)?;
        ratio = ratio.max((r.value - kappa_d1(t)?).abs() / r.budget);
        budget = budget.max(r.budget);
    }
    Ok(vec![m("max error/budget", ratio, 1.0), m("max budget", budget, 0.05)])
}

fn band(e: &KappaEngine) -> Outcome {
    let a_theta = find_a_theta().value;
    let (mut rh, mut outside, mut resid) = (0.0f64, 0.0f64, 0.0f64);
    for i in 0..300 {
        let mut t = a_theta + (100.0 - a_theta) * (i as f64 + 0.5) / 300.0;
        let r = loop {
            match phase_report(e, t) {
                Err(Error::NearZeroOrdinate { .. }) => t += 1e-3,
                r => break r?,
            }
        };
        rh = rh.max(r.rh.abs() as f64);
        outside = outside.max((r.band - 0.5).max(-0.5 - r.band));
        resid = resid.max(r.band_identity_residual);
    }
    let mut series = 0.0f64;
    for n in 1..=10 {
        let u = n as f64 + 0.25 + 0.05 * (n - 1) as f64;
        let r = phase_report(e, e.gamma_inverse(u)?)?;
        series = series.max((sawtooth_series(r.kappa, 200) - r.band).abs());
    }
    Ok(vec![
        m("max |RH|", rh, 0.0),
        m("S + E/pi beyond (-1/2, 1/2]", outside.max(0.0), 1e-8),
        m("band identity residual", resid, 1e-7),
        m("200-term sawtooth at 10 points", series, 2e-3),
    ])
}

fn distances(xis: &[CriticalZero]) -> Outcome {
    let c = find_complex_zeros(60.0)?;
    let mut ratio = 0.0f64;
    for z in &c.zeros {
        let g = gy_distance_check(z, xis)?;
        ratio = ratio.max(g.dist / g.bound);
    }
    let g = gy_distance_check(&c.zeros[0], xis)?;
    Ok(vec![
        m("max dist/(1.9 sqrt(beta' - 1/2))", ratio, 1.0),
        m("rho'_1 dist - 1.7125", (g.dist - 1.7125).abs(), 1e-4),
        m("rho'_1 bound - 2.6622", (g.bound - 2.6622).abs(), 1e-4),
        m("rho'_1 dist - bound", (g.dist - g.bound).max(0.0), 0.0),
    ])
}

fn verify_all() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_zetaphase"))
        .args(["verify", "all", "--threads", "1"])
        .output()
        .map_err(|e| Error::Search(format!("could not run the binary: {e}")))?;
    let failed = match serde_json::from_slice::<serde_json::Value>(&out.stdout) {
        Ok(v) => v["checks"].as_array().map_or(f64::NAN, |cs| {
            cs.iter().filter(|c| c["pass"] != serde_json::Value::Bool(true)).count() as f64
        }),
        Err(_) => f64::NAN,
    };
    Ok(vec![
        m("exit code", out.status.code().map_or(f64::NAN, |c| c as f64), 0.0),
        m("failed checks", failed, 0.0),
    ])
}

fn report(n: u32, title: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = f();
    let elapsed = start.elapsed();
    let (ok, detail) = match outcome {
        Ok(ms) => {
            let ok = ms.iter().all(Measure::ok) && elapsed <= limit;
            let detail = ms
                .iter()
                .map(|x| format!("{} {:.3e} (tol {:.0e}){}", x.label, x.value, x.tol, if x.ok() { "" } else { " FAILED" }))
                .collect::<Vec<_>>()
                .join("; ");
            (ok, detail)
        }
        Err(e) => (false, format!("error: {e}")),
    };
    println!(
        "criterion {n:>2} {}: {title} [{:.1}s, limit {}s] {detail}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    ok
}

fn main() -> ExitCode {
    // libtest-style flags (e.g. --nocapture) are accepted and ignored.
    let e = KappaEngine::new();
    let secs = Duration::from_secs;
    let mut xis: Vec<CriticalZero> = Vec::new();
    let mut results = vec![report(1, "constants", secs(30), || constants(&e))];
    results.push(report(2, "first seven zeros of Z and of zeta'", secs(60), || first_zeros(&e)));
    results.push(report(3, "kappa(xi_n) = n for n <= 50", secs(120), || {
        xis = find_xis(&e, 50)?;
        kappa_at_zeros(&e, &xis)
    }));
    if xis.len() < 50 {
        xis = find_xis(&e, 50).unwrap_or_default();
    }
    results.push(report(4, "floor(kappa) against a sign-change count", secs(120), || counting(&e)));
    results.push(report(5, "half-integer points between zeros", secs(120), || {
        xis.get(..30).map_or_else(|| Err(Error::Search("zero list missing".into())), |x| half_points(&e, x))
    }));
    results.push(report(6, "kappa' at zeros and unit mass between zeros", secs(120), || {
        xis.get(..20).map_or_else(|| Err(Error::Search("zero list missing".into())), |x| derivative_at_zeros(&e, x))
    }));
    results.push(report(7, "kappa' from the zeros of zeta'", secs(300), reconstruction));
    results.push(report(8, "band law for S + E/pi", secs(300), || band(&e)));
    results.push(report(9, "distance from gamma' to the nearest zero ordinate", secs(60), || distances(&xis)));
    results.push(report(10, "verify all, single-threaded", secs(600), verify_all));

    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
