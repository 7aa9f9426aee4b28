//! Property suites over the built-in fixtures, one group of checks per
//! acceptance criterion. Shared by `oddzeta verify` and the acceptance test.

use std::f64::consts::{PI, TAU};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::complexcut::{branch_log, complex_power, SpectralCut};
use crate::fixtures::{
    angle_pair_fixtures, commuting_pairs, mirror, principal_angle, random_odd_symbol, random_symbol,
    random_symmetric, rng, symmetric_dirac,
};
use crate::regdet::{
    check_angle_dependence, check_det_square, log_det, log_det_sym, multiplicativity_check,
    sign_symmetric, DetConfig,
};
use crate::spectralmodel::{EigenFamily, SpectralOperator};
use crate::symbolcalc::{
    anomaly_integrand, check_asodd, compose, log_symbol, odd_class_deviation, odd_pair_deviation,
    resolvent_symbols, residue_coboundary, wodzicki_res, AnomalyCuts, ClassicalSymbol, Periodic,
    HomogComponent, Side, Symbol, DEFAULT_BANDWIDTH, DEFAULT_DEPTH, EPS_SYM,
};
use crate::zetacontinuation::tr_sym;
use crate::{Cplx, Error, Real, Result};

/// Slack added to the factor-2 doubling rule, as a fraction of the check's
/// tolerance. Deviations of exact identities sit at round-off level (about
/// 2e-11 where finite-difference logs enter), and a factor 2 between two
/// round-off samples carries no information.
pub const DOUBLING_FLOOR: Real = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub det: DetConfig,
    /// Symbol expansion depth `J`.
    pub depth: usize,
    /// Fourier bandwidth `N`.
    pub bandwidth: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            det: DetConfig::default(),
            depth: DEFAULT_DEPTH,
            bandwidth: DEFAULT_BANDWIDTH,
            seed: crate::fixtures::DEFAULT_SEED,
        }
    }
}

impl SuiteConfig {
    /// Doubles `K`, `N_tail`, `J` and `N`; fixtures stay the same.
    pub fn doubled(self) -> Self {
        Self {
            det: DetConfig {
                continuation: self.det.continuation.doubled(),
                ..self.det
            },
            depth: 2 * self.depth,
            bandwidth: 2 * self.bandwidth,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Trace,
    Det,
    Sign,
    Mult,
    Symbols,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Trace, Suite::Det, Suite::Sign, Suite::Mult, Suite::Symbols];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Trace => "trace",
            Suite::Det => "det",
            Suite::Sign => "sign",
            Suite::Mult => "mult",
            Suite::Symbols => "symbols",
        }
    }

    pub fn criteria(self) -> &'static [u8] {
        match self {
            Suite::Trace => &[1, 3, 6],
            Suite::Det => &[2, 4, 10],
            Suite::Sign => &[5],
            Suite::Mult => &[9],
            Suite::Symbols => &[7, 8],
        }
    }
}

/// One measured deviation against its tolerance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub criterion: u8,
    pub fixture: String,
    pub quantity: String,
    pub deviation: Real,
    pub tolerance: Real,
    pub pass: bool,
    /// Free-form `key=value` details, or the error that aborted the check.
    pub note: String,
}

impl Check {
    fn new(criterion: u8, fixture: impl Into<String>, quantity: &str, deviation: Real, tolerance: Real) -> Self {
        Self {
            criterion,
            fixture: fixture.into(),
            quantity: quantity.into(),
            deviation,
            tolerance,
            pass: deviation < tolerance,
            note: String::new(),
        }
    }

    fn note(mut self, note: String) -> Self {
        self.note = note;
        self
    }

    fn failed(criterion: u8, fixture: impl Into<String>, quantity: &str, tolerance: Real, err: &Error) -> Self {
        Self {
            criterion,
            fixture: fixture.into(),
            quantity: quantity.into(),
            deviation: Real::NAN,
            tolerance,
            pass: false,
            note: format!("error: {err}"),
        }
    }
}

/// Runs `f`, turning an error into a failed check.
fn guarded(
    criterion: u8,
    fixture: &str,
    quantity: &str,
    tolerance: Real,
    f: impl FnOnce() -> Result<Check>,
) -> Check {
    f().unwrap_or_else(|e| Check::failed(criterion, fixture, quantity, tolerance, &e))
}

fn e14(x: Real) -> String {
    format!("{x:.14e}")
}

fn c14(z: Cplx) -> String {
    format!("{:.14e}{:+.14e}i", z.re, z.im)
}

/// Per-criterion RNG stream, so that criteria do not shift each other's draws.
fn criterion_rng(seed: u64, criterion: u8) -> rand_chacha::ChaCha8Rng {
    rng(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ criterion as u64)
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Vec<Check> {
    suite.criteria().iter().flat_map(|&c| run_criterion(c, cfg)).collect()
}

pub fn run_criterion(criterion: u8, cfg: &SuiteConfig) -> Vec<Check> {
    match criterion {
        1 => branch_calculus(cfg),
        2 => classical_determinant(cfg),
        3 => zeta_at_zero(cfg),
        4 => det_square(cfg),
        5 => sign_law(cfg),
        6 => q_independence(cfg),
        7 => coboundary(cfg),
        8 => symbol_identities(cfg),
        9 => multiplicative_anomaly(cfg),
        10 => angle_dependence(cfg),
        _ => vec![Check::failed(criterion, "-", "-", 0.0, &Error::InvalidInput(format!("no criterion {criterion}")))],
    }
}

/// Pairs `base` and `doubled` row by row and checks `dev2 ≤ 2·dev + floor·tol`.
pub fn doubling_stability(base: &[Check], doubled: &[Check]) -> Vec<Check> {
    base.iter()
        .zip(doubled)
        .map(|(b, d)| {
            let bound = 2.0 * b.deviation + DOUBLING_FLOOR * b.tolerance;
            let mut c = Check::new(b.criterion, b.fixture.clone(), &format!("{} doubled", b.quantity), d.deviation, bound);
            c.pass = d.pass && d.deviation <= bound;
            c.note(format!("base={} doubled={}", e14(b.deviation), e14(d.deviation)))
        })
        .collect()
}

const BRANCH_SAMPLES: usize = 10_000;

fn branch_calculus(cfg: &SuiteConfig) -> Vec<Check> {
    let mut r = criterion_rng(cfg.seed, 1);
    let (mut dev_log, mut dev_group, mut dev_shift) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..BRANCH_SAMPLES {
        let lambda = Cplx::from_polar(10f64.powf(r.gen_range(-3.0..3.0)), r.gen_range(-PI..PI));
        let theta = r.gen_range(-4.0 * PI..4.0 * PI);
        let k = r.gen_range(-3i32..=3);
        let s1 = Cplx::new(r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0));
        let s2 = Cplx::new(r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0));
        let cut = SpectralCut::new(theta);
        let shifted = SpectralCut::new(theta + TAU * k as Real);
        let sample = || -> Result<(Real, Real, Real)> {
            let l0 = branch_log(lambda, cut)?;
            let lk = branch_log(lambda, shifted)?;
            let d_log = (lk - l0 - Cplx::new(0.0, TAU * k as Real)).norm();
            let p12 = complex_power(lambda, s1 + s2, cut)?;
            let prod = complex_power(lambda, s1, cut)? * complex_power(lambda, s2, cut)?;
            let d_group = (p12 - prod).norm() / prod.norm().max(1.0);
            let pk = complex_power(lambda, s1, shifted)?;
            let expect = (Cplx::new(0.0, TAU * k as Real) * s1).exp() * complex_power(lambda, s1, cut)?;
            let d_shift = (pk - expect).norm() / expect.norm().max(1.0);
            Ok((d_log, d_group, d_shift))
        };
        match sample() {
            Ok((a, b, c)) => {
                dev_log = dev_log.max(a);
                dev_group = dev_group.max(b);
                dev_shift = dev_shift.max(c);
            }
            Err(e) => return vec![Check::failed(1, "random triples", "branch laws", 1e-12, &e)],
        }
    }
    let note = format!("samples={BRANCH_SAMPLES}");
    vec![
        Check::new(1, "random triples", "log shift 2k pi i", dev_log, 1e-12).note(note.clone()),
        Check::new(1, "random triples", "power group law", dev_group, 1e-12).note(note.clone()),
        Check::new(1, "random triples", "power shift e^(2 pi i k s)", dev_shift, 1e-12).note(note),
    ]
}

const LAPLACE_SHIFTS: [Real; 3] = [0.5, 1.0, 2.0];

fn laplace(a: Real) -> Result<SpectralOperator> {
    SpectralOperator::laplace_type(Cplx::new(a * a, 0.0))
}

/// `Det(Δ + a²) = 4 sinh²(πa)` on the circle, from the product formula for sinh.
fn sinh_oracle(a: Real) -> Real {
    4.0 * (PI * a).sinh().powi(2)
}

fn classical_determinant(cfg: &SuiteConfig) -> Vec<Check> {
    let mut out = Vec::new();
    for a in LAPLACE_SHIFTS {
        let name = format!("n^2+{}", a * a);
        let exact = sinh_oracle(a);
        out.push(guarded(2, &name, "Det vs 4sinh^2", 1e-6, || {
            let d = log_det(&laplace(a)?, SpectralCut::new(PI), &cfg.det)?;
            Ok(Check::new(2, name.clone(), "Det vs 4sinh^2", (d.value - exact).norm() / exact, 1e-6)
                .note(format!("det={} oracle={}", c14(d.value), e14(exact))))
        }));
        out.push(guarded(2, &name, "Det^sym vs 4sinh^2", 1e-6, || {
            let d = log_det_sym(&laplace(a)?, PI, &cfg.det)?;
            Ok(Check::new(2, name.clone(), "Det^sym vs 4sinh^2", (d.value - exact).norm() / exact, 1e-6)
                .note(format!("det_sym={} oracle={}", c14(d.value), e14(exact))))
        }));
    }
    out
}

fn zeta_at_zero(cfg: &SuiteConfig) -> Vec<Check> {
    LAPLACE_SHIFTS
        .iter()
        .map(|&a| {
            let name = format!("n^2+{}", a * a);
            guarded(3, &name, "|zeta(0)|", 1e-7, || {
                let d = log_det(&laplace(a)?, SpectralCut::new(PI), &cfg.det)?;
                let z0 = d.fits[0].finite_part;
                Ok(Check::new(3, name.clone(), "|zeta(0)|", z0.norm(), 1e-7).note(format!("zeta0={}", c14(z0))))
            })
        })
        .collect()
}

fn det_square(cfg: &SuiteConfig) -> Vec<Check> {
    let mut fixtures: Vec<(String, Result<SpectralOperator>)> = [0.2, 1.0 / 3.0, 0.4]
        .iter()
        .map(|&c| (format!("D_{c:.4}"), SpectralOperator::shifted_dirac(Cplx::new(c, 0.0))))
        .collect();
    for pairs in [vec![(1, -2, 0.7)], vec![(0, 3, 1.5), (-4, 2, 0.35)]] {
        let f = symmetric_dirac(1.0 / 3.0, &pairs);
        let name = f.as_ref().map(|f| f.name.clone()).unwrap_or_default();
        fixtures.push((name, f.map(|f| f.op)));
    }
    fixtures
        .into_iter()
        .map(|(name, op)| {
            guarded(4, &name, "Det^sym(A^2) vs (Det^sym A)^2", 1e-6, || {
                let r = check_det_square(&op?, 0.75 * PI, &cfg.det)?;
                Ok(Check::new(4, name.clone(), "Det^sym(A^2) vs (Det^sym A)^2", r.relative_deviation, 1e-6)
                    .note(format!("lhs={} rhs={}", c14(r.lhs), c14(r.rhs))))
            })
        })
        .collect()
}

pub const SIGN_FIXTURES: usize = 12;

fn sign_law(cfg: &SuiteConfig) -> Vec<Check> {
    let theta = 0.75 * PI;
    let fixtures = match random_symmetric(&mut criterion_rng(cfg.seed, 5), SIGN_FIXTURES) {
        Ok(f) => f,
        Err(e) => return vec![Check::failed(5, "random symmetric", "sign", 1e-6, &e)],
    };
    fixtures
        .iter()
        .map(|f| {
            guarded(5, &f.name, "sign and Im residual", 1e-6, || {
                let rep = sign_symmetric(&f.op, theta, &cfg.det)?;
                let oracle = f.oracle_log_det_sym(theta)?;
                let oracle_dev = (rep.log_det_sym - oracle).norm();
                let mut c = Check::new(5, f.name.clone(), "sign and Im residual", rep.imaginary_residual.max(oracle_dev), 1e-6);
                c.pass &= rep.measured == rep.predicted;
                Ok(c.note(format!(
                    "m_plus={} predicted={} measured={} residual={} oracle_dev={}",
                    rep.m_plus,
                    rep.predicted,
                    rep.measured,
                    e14(rep.imaginary_residual),
                    e14(oracle_dev)
                )))
            })
        })
        .collect()
}

fn q_independence(cfg: &SuiteConfig) -> Vec<Check> {
    let name = "sym log D_1/3 (3pi/4)";
    vec![guarded(6, name, "tr_sym Q order 1 vs order 2", 1e-6, || {
        let d = SpectralOperator::shifted_dirac(Cplx::new(1.0 / 3.0, 0.0))?;
        let weight = EigenFamily::symmetrized_log(&d, 0.75 * PI)?;
        let p = cfg.det.continuation;
        let t1 = tr_sym(&weight, &d, 0.75 * PI, p)?;
        let t2 = tr_sym(&weight, &laplace(1.0)?, PI, p)?;
        Ok(Check::new(6, name, "tr_sym Q order 1 vs order 2", (t1 - t2).norm(), 1e-6)
            .note(format!("q1={} q2={}", c14(t1), c14(t2))))
    })]
}

pub const COBOUNDARY_TRIPLES: usize = 24;

fn coboundary(cfg: &SuiteConfig) -> Vec<Check> {
    let mut r = criterion_rng(cfg.seed, 7);
    let (n, j) = (cfg.bandwidth, cfg.depth);
    (0..COBOUNDARY_TRIPLES)
        .map(|i| {
            let mq = r.gen_range(1..=2i64);
            let (ma, mb) = (r.gen_range(0..=2i64), r.gen_range(0..=2i64));
            let band = r.gen_range(1..=8usize);
            let q = fit(random_odd_symbol(&mut r, mq, n, band, FIXTURE_DEPTH, true), cfg);
            let a = fit(random_odd_symbol(&mut r, ma, n, band, FIXTURE_DEPTH, false), cfg);
            let b = fit(random_odd_symbol(&mut r, mb, n, band, FIXTURE_DEPTH, false), cfg);
            let name = format!("triple#{i}: m_Q={mq} m_A={ma} m_B={mb} band={band}");
            guarded(7, &name, "symmetrized coboundary", 1e-8, || {
                let theta = principal_angle(mq);
                let r1 = residue_coboundary(&q, SpectralCut::new(theta), &a, &b, j)?;
                let r2 = residue_coboundary(&q, SpectralCut::new(theta - mq as Real * PI), &a, &b, j)?;
                let sym = 0.5 * (r1 + r2);
                Ok(Check::new(7, name.clone(), "symmetrized coboundary", sym.norm(), 1e-8)
                    .note(format!("one_sided={}", c14(r1))))
            })
        })
        .collect()
}

/// Depth at which random symbol fixtures are drawn. Drawing at a fixed depth
/// keeps the fixtures identical when `J` is doubled.
pub const FIXTURE_DEPTH: usize = DEFAULT_DEPTH;

/// Brings a fixture to the configured depth (zero padding or truncation) and bandwidth.
fn fit(sym: ClassicalSymbol, cfg: &SuiteConfig) -> ClassicalSymbol {
    let n = cfg.bandwidth;
    let mut comps: Vec<HomogComponent> = sym.components().iter().take(cfg.depth + 1).cloned().collect();
    for j in comps.len()..=cfg.depth {
        comps.push(HomogComponent::zero(sym.order() - j as Real, n));
    }
    ClassicalSymbol::new(sym.order(), comps)
        .expect("degrees follow the order")
        .with_bandwidth(n)
}

/// Values of `λ` away from the principal symbols `≈ ±1` of the fixtures.
const RESOLVENT_SAMPLES: [(Real, Real); 3] = [(0.4, 1.1), (-1.5, -0.8), (0.0, 2.5)];

/// Identities are compared on components `j ≤ min(J, FIXTURE_DEPTH)`, so that a
/// doubled run recomputes the same numbers with finer settings.
fn symbol_identities(cfg: &SuiteConfig) -> Vec<Check> {
    let mut r = criterion_rng(cfg.seed, 8);
    let (n, j) = (cfg.bandwidth, cfg.depth);
    let jc = j.min(FIXTURE_DEPTH);
    let cut_log = |l: crate::symbolcalc::LogSymbol| -> Result<Symbol> {
        Ok(Symbol::Log(crate::symbolcalc::LogSymbol::new(l.gamma, l.body.truncated(jc)?)?))
    };
    let tol = 1e-8;
    let mut out = Vec::new();
    for i in 0..4 {
        let m = 1 + (i % 2) as i64;
        let band = [0, 2, 5, 8][i];
        let a = fit(random_odd_symbol(&mut r, m, n, band, FIXTURE_DEPTH, true), cfg);
        let theta = principal_angle(m);
        let partner = theta - m as Real * PI;
        let name = format!("A#{i}: m={m} band={band}");

        for s in [Cplx::new(0.5, 0.0), Cplx::new(-0.7, 1.3)] {
            out.push(guarded(8, &name, "power parity", tol, || {
                let d = check_asodd(&a.truncated(jc)?, SpectralCut::new(theta), s, jc)?;
                Ok(Check::new(8, name.clone(), "power parity", d, tol).note(format!("s={}", c14(s))))
            }));
        }
        let logs = || -> Result<_> {
            Ok((
                log_symbol(&a, SpectralCut::new(theta), j)?,
                log_symbol(&a, SpectralCut::new(partner), j)?,
            ))
        };
        out.push(guarded(8, &name, "log odd pair", tol, || {
            let (l1, l2) = logs()?;
            let shifted = l2.plus_constant(Cplx::new(0.0, m as Real * PI))?;
            let d = odd_pair_deviation(&cut_log(l1)?, &cut_log(shifted)?)?;
            Ok(Check::new(8, name.clone(), "log odd pair", d, tol))
        }));
        out.push(guarded(8, &name, "log sum odd class", tol, || {
            let (l1, l2) = logs()?;
            let sum = l1.add(&l2)?;
            let d = odd_class_deviation(&cut_log(sum.clone())?)?;
            Ok(Check::new(8, name.clone(), "log sum odd class", d, tol).note(format!("gamma={}", c14(sum.gamma))))
        }));
        out.push(guarded(8, &name, "resolvent parity", tol, || {
            let fam = resolvent_symbols(&a, j)?;
            let flip = if m % 2 == 0 { 1.0 } else { -1.0 };
            let mut d: Real = 0.0;
            for (re, im) in RESOLVENT_SAMPLES {
                let lambda = Cplx::new(re, im);
                for k in 0..=jc {
                    let sign = if (m + k as i64) % 2 == 0 { 1.0 } else { -1.0 };
                    let lhs = fam.eval(k, Side::Minus, lambda * flip)?;
                    let rhs = fam.eval(k, Side::Plus, lambda)?.scale(Cplx::new(sign, 0.0));
                    d = d.max((&lhs - &rhs).fourier_norm());
                }
            }
            Ok(Check::new(8, name.clone(), "resolvent parity", d, tol))
        }));
        out.push(guarded(8, &name, "odd-class residue", tol, || {
            let d = wodzicki_res(&a)?.norm();
            Ok(Check::new(8, name.clone(), "odd-class residue", d, tol))
        }));
    }

    for i in 0..4 {
        let band = if i < 2 { 0 } else { r.gen_range(1..=8usize) };
        let (o1, o2) = (r.gen_range(-1..=2i64), r.gen_range(-1..=2i64));
        let a1 = fit(random_symbol(&mut r, o1, n, band, FIXTURE_DEPTH), cfg);
        let a2 = fit(random_symbol(&mut r, o2, n, band, FIXTURE_DEPTH), cfg);
        let name = format!("pair#{i}: orders ({o1}, {o2}) band={band}");
        out.push(guarded(8, &name, "product odd pair", tol, || {
            let p = compose(&a1, &a2, j)?.truncated(jc)?;
            let q = compose(&mirror(&a1), &mirror(&a2), j)?.truncated(jc)?;
            let d = odd_pair_deviation(&Symbol::Classical(p), &Symbol::Classical(q))?;
            Ok(Check::new(8, name.clone(), "product odd pair", d, tol))
        }));
    }

    for i in 0..4 {
        let (m1, m2) = (r.gen_range(1..=2i64), r.gen_range(1..=2i64));
        let band = r.gen_range(1..=8usize);
        let a1 = fit(random_odd_symbol(&mut r, m1, n, band, FIXTURE_DEPTH, true), cfg);
        let a2 = fit(random_odd_symbol(&mut r, m2, n, band, FIXTURE_DEPTH, true), cfg);
        let t1 = sample_agmon(&mut r, m1);
        let t2 = sample_agmon(&mut r, m2);
        let name = format!("logs#{i}: m=({m1}, {m2}) theta=({t1:.6}, {t2:.6})");
        out.push(guarded(8, &name, "residue of log difference", tol, || {
            let l1 = log_symbol(&a1, SpectralCut::new(t1), j)?.scale(Cplx::new(1.0 / m1 as Real, 0.0));
            let l2 = log_symbol(&a2, SpectralCut::new(t2), j)?.scale(Cplx::new(1.0 / m2 as Real, 0.0));
            let d = wodzicki_res(&l1.sub(&l2)?.into_classical(EPS_SYM)?)?.norm();
            Ok(Check::new(8, name.clone(), "residue of log difference", d, tol))
        }));
    }
    out
}

/// An angle at least 0.4 away from the principal symbol values `≈ 1`
/// (and `≈ −1` for odd order) of the elliptic fixtures.
fn sample_agmon(r: &mut impl Rng, order: i64) -> Real {
    if order % 2 == 0 {
        r.gen_range(0.4..TAU - 0.4)
    } else {
        r.gen_range(0.4..PI - 0.4) - if r.gen_bool(0.5) { PI } else { 0.0 }
    }
}

pub const ANOMALY_TIMES: [Real; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

fn multiplicative_anomaly(cfg: &SuiteConfig) -> Vec<Check> {
    let mut r = criterion_rng(cfg.seed, 9);
    let (n, j) = (cfg.bandwidth, cfg.depth);
    let tol = 1e-8;
    let (theta_a, theta_b) = (0.75 * PI, PI / 8.0);
    let one = Periodic::constant(n, Cplx::new(1.0, 0.0));
    let mut pairs = Vec::new();
    if let (Ok(a), Ok(b)) = (
        ClassicalSymbol::polynomial(&[Periodic::constant(n, Cplx::new(0.25, 0.0)), one.clone()], j),
        ClassicalSymbol::polynomial(&[Periodic::constant(n, Cplx::new(0.5, 0.0)), Periodic::zero(n), one], j),
    ) {
        pairs.push(("xi+1/4, xi^2+1/2".to_string(), a, b));
    }
    for i in 0..3 {
        let a = fit(random_odd_symbol(&mut r, 1, n, 2, FIXTURE_DEPTH, true), cfg);
        let b = fit(random_odd_symbol(&mut r, 2, n, 2, FIXTURE_DEPTH, true), cfg);
        pairs.push((format!("random pair#{i}"), a, b));
    }
    let mut out = Vec::new();
    for (name, a, b) in &pairs {
        out.push(guarded(9, name, "anomaly integrand", tol, || {
            let mut d: Real = 0.0;
            for t in ANOMALY_TIMES {
                let cuts = AnomalyCuts::commuting_path(theta_a, theta_b, 1.0, 2.0, t)?;
                d = d.max(anomaly_integrand(a, b, cuts, t, j)?.norm());
            }
            Ok(Check::new(9, name.clone(), "anomaly integrand", d, tol)
                .note(format!("theta_A={} theta_B={}", e14(theta_a), e14(theta_b))))
        }));
    }
    let tol = cfg.det.eps_mult;
    match commuting_pairs() {
        Ok(ps) => {
            for (name, a, b, ta, tb) in ps {
                out.push(guarded(9, &name, "multiplicativity", tol, || {
                    let m = multiplicativity_check(&a, &b, ta, tb, None, &cfg.det)?;
                    let d = (m.ratio.norm() - 1.0).abs().max(m.deviation);
                    Ok(Check::new(9, name.clone(), "multiplicativity", d, tol).note(format!(
                        "sign={} ratio={} theta_AB={}",
                        m.sign,
                        c14(m.ratio),
                        e14(m.theta_ab)
                    )))
                }));
            }
        }
        Err(e) => out.push(Check::failed(9, "commuting pairs", "multiplicativity", tol, &e)),
    }
    out
}

fn angle_dependence(cfg: &SuiteConfig) -> Vec<Check> {
    match angle_pair_fixtures() {
        Ok(fs) => fs
            .into_iter()
            .map(|(name, op, t1, t2)| {
                guarded(10, &name, "i pi Z residual", 1e-6, || {
                    let d = check_angle_dependence(&op, t1, t2, &cfg.det)?;
                    Ok(Check::new(10, name.clone(), "i pi Z residual", d.residual, 1e-6).note(format!(
                        "difference={} k={} hypothesis={:?}",
                        c14(d.difference),
                        d.nearest_multiple,
                        d.hypothesis
                    )))
                })
            })
            .collect(),
        Err(e) => vec![Check::failed(10, "angle pairs", "i pi Z residual", 1e-6, &e)],
    }
}
