use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use oddzeta::complexcut::SpectralCut;
use oddzeta::regdet::{check_angle_dependence, log_det, log_det_sym, DetConfig};
use oddzeta::schema::{classical_to_json, parse_classical, parse_operator, parse_symbol};
use oddzeta::suites::{doubling_stability, run_suite, Check, Suite, SuiteConfig};
use oddzeta::symbolcalc::{
    anomaly_integrand, compose, log_symbol, power_symbol, residue_coboundary, wodzicki_res, AnomalyCuts,
    ClassicalSymbol, Symbol,
};
use oddzeta::zetacontinuation::{weighted_trace_laurent, ContinuationParams, LaurentAt0, ZetaFunction};
use oddzeta::{Cplx, EigenFamily, Error, Real, SpectralOperator};
use serde_json::{json, Value};

use crate::report::{cplx, Cell, Report};
use crate::{CliError, Settings, SuiteArg, SymbolOp, Weight};

type Out = Result<Report, CliError>;

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn operator(path: &Path) -> Result<SpectralOperator, CliError> {
    Ok(parse_operator(&read(path)?)?)
}

fn classical(path: &Path, s: &Settings) -> Result<ClassicalSymbol, CliError> {
    Ok(parse_classical(&read(path)?)?.with_bandwidth(s.bandwidth))
}

fn need(v: Option<Real>, flag: &str) -> Result<Real, CliError> {
    v.ok_or_else(|| Error::InvalidInput(format!("{flag} is required here")).into())
}

fn paths(p: &[PathBuf]) -> Value {
    json!(p.iter().map(|p| p.display().to_string()).collect::<Vec<_>>())
}

fn pair(z: Cplx) -> Value {
    json!([z.re, z.im])
}

pub fn det(s: &Settings, op: &Path, theta: Real, theta2: Option<Real>, sym: bool) -> Out {
    let a = operator(op)?;
    let cfg = s.det_config();
    let config = s.config("det", json!({"op": paths(&[op.into()]), "theta": theta, "theta2": theta2, "sym": sym}));
    let mut r = Report::new(
        "det",
        config,
        &[
            "kind", "theta", "partner_theta", "log_det_re", "log_det_im", "det_re", "det_im", "zeta0_re",
            "zeta0_im", "fit_discrepancy", "multiple_of_i_pi", "residual",
        ],
    );
    let row = |kind: &str, d: &oddzeta::DetResult| {
        let n = d.fits.len() as Real;
        let zeta0 = d.fits.iter().map(|f| f.finite_part).sum::<Cplx>() / n;
        let disc = d.fits.iter().map(|f| f.discrepancy).fold(0.0, Real::max);
        let [l0, l1] = cplx(d.log_det);
        let [v0, v1] = cplx(d.value);
        let [z0, z1] = cplx(zeta0);
        vec![
            kind.into(), d.angle_used.into(), d.partner_angle.into(), l0, l1, v0, v1, z0, z1, disc.into(),
            Cell::Empty, Cell::Empty,
        ]
    };
    r.push(row("log_det", &log_det(&a, SpectralCut::new(theta), &cfg)?));
    if sym {
        r.push(row("log_det_sym", &log_det_sym(&a, theta, &cfg)?));
    }
    if let Some(t2) = theta2 {
        let d = check_angle_dependence(&a, theta, t2, &cfg)?;
        let [l0, l1] = cplx(d.difference);
        r.push(vec![
            "sym_difference".into(), theta.into(), t2.into(), l0, l1, Cell::Empty, Cell::Empty, Cell::Empty,
            Cell::Empty, Cell::Empty, d.nearest_multiple.into(), d.residual.into(),
        ]);
    }
    Ok(r)
}

pub fn zeta(s: &Settings, op: &Path, theta: Real, points: &[Cplx]) -> Out {
    let a = operator(op)?;
    let z = ZetaFunction::new(&a, SpectralCut::new(theta))?.with_params(s.continuation())?;
    let config = s.config(
        "zeta",
        json!({"op": paths(&[op.into()]), "theta": theta, "s": points.iter().map(|p| pair(*p)).collect::<Vec<_>>()}),
    );
    let mut r = Report::new(
        "zeta",
        config,
        &["kind", "s_re", "s_im", "value_re", "value_im", "pole_re", "pole_im", "derivative_re", "derivative_im", "fit_discrepancy"],
    );
    let l = z.laurent_at_0()?;
    r.push(
        [vec!["laurent_at_0".into(), 0.0.into(), 0.0.into()], cplx(l.finite_part).to_vec(), cplx(l.pole_coefficient).to_vec(),
            cplx(l.derivative_at_0).to_vec(), vec![l.discrepancy.into()]]
        .concat(),
    );
    for &p in points {
        let v = z.continue_at(p)?;
        r.push(
            [vec!["value".into()], cplx(p).to_vec(), cplx(v).to_vec(), vec![Cell::Empty; 4], vec![Cell::Empty]].concat(),
        );
    }
    Ok(r)
}

pub struct TraceArgs<'a> {
    pub op: &'a Path,
    pub theta: Real,
    pub weight: Weight,
    pub weight_op: Option<&'a Path>,
    pub weight_theta: Option<Real>,
    pub sym: bool,
}

pub fn trace(s: &Settings, t: TraceArgs) -> Out {
    let q = operator(t.op)?;
    let wop = match t.weight_op {
        Some(p) => operator(p)?,
        None => q.clone(),
    };
    let wtheta = t.weight_theta.unwrap_or(t.theta);
    let family = match t.weight {
        Weight::One => EigenFamily::identity(),
        Weight::Log => wop.log_op(SpectralCut::new(wtheta))?,
        Weight::Symlog => EigenFamily::symmetrized_log(&wop, wtheta)?,
    };
    let config = s.config(
        "trace",
        json!({
            "op": paths(&[t.op.into()]), "theta": t.theta, "weight": t.weight,
            "weight_op": t.weight_op.map(|p| p.display().to_string()), "weight_theta": wtheta, "sym": t.sym,
        }),
    );
    let mut r = Report::new(
        "trace",
        config,
        &["kind", "theta", "trace_re", "trace_im", "pole_re", "pole_im", "fit_discrepancy"],
    );
    let row = |kind: &str, theta: Real, l: &LaurentAt0| {
        [vec![kind.into(), theta.into()], cplx(l.finite_part).to_vec(), cplx(l.pole_coefficient).to_vec(), vec![l.discrepancy.into()]]
            .concat()
    };
    let p = s.continuation();
    let l1 = weighted_trace_laurent(&family, &q, SpectralCut::new(t.theta), p)?;
    r.push(row("weighted_trace", t.theta, &l1));
    if t.sym {
        let partner = t.theta - q.order() as Real * PI;
        let l2 = weighted_trace_laurent(&family, &q, SpectralCut::new(partner), p)?;
        r.push(row("weighted_trace", partner, &l2));
        let avg = 0.5 * (l1.finite_part + l2.finite_part);
        r.push([vec!["tr_sym".into(), t.theta.into()], cplx(avg).to_vec(), vec![Cell::Empty; 3]].concat());
    }
    Ok(r)
}

const RESIDUE_COLUMNS: [&str; 7] = ["kind", "t", "theta", "value_re", "value_im", "abs", "pass"];

fn residue_row(kind: &str, t: Option<Real>, theta: Option<Real>, v: Cplx, tol: Real) -> Vec<Cell> {
    [vec![kind.into(), t.into(), theta.into()], cplx(v).to_vec(), vec![v.norm().into(), (v.norm() < tol).into()]].concat()
}

pub fn residue_single(s: &Settings, file: &Path) -> Out {
    let sym = parse_symbol(&read(file)?)?;
    let body = sym.body().with_bandwidth(s.bandwidth);
    let config = s.config("residue", json!({"symbolfile": paths(&[file.into()])}));
    let mut r = Report::new("residue", config, &RESIDUE_COLUMNS);
    let kind = match sym {
        Symbol::Classical(_) => "residue",
        Symbol::Log(_) => "residue_log_body",
    };
    r.push(residue_row(kind, None, None, wodzicki_res(&body)?, s.tol));
    Ok(r)
}

pub fn residue_coboundary_cmd(s: &Settings, files: &[PathBuf], theta: Real, symmetrized: bool) -> Out {
    let [q, a, b] = [0, 1, 2].map(|i| classical(&files[i], s));
    let (q, a, b) = (q?, a?, b?);
    let config = s.config(
        "residue",
        json!({"coboundary": paths(files), "theta": theta, "symmetrized": symmetrized}),
    );
    let mut r = Report::new("residue", config, &RESIDUE_COLUMNS);
    let v1 = residue_coboundary(&q, SpectralCut::new(theta), &a, &b, s.depth)?;
    r.push(residue_row("coboundary", None, Some(theta), v1, Real::INFINITY));
    if symmetrized {
        let partner = theta - q.order().re * PI;
        let v2 = residue_coboundary(&q, SpectralCut::new(partner), &a, &b, s.depth)?;
        r.push(residue_row("coboundary", None, Some(partner), v2, Real::INFINITY));
        r.push(residue_row("coboundary_sym", None, Some(theta), 0.5 * (v1 + v2), s.tol));
    }
    Ok(r)
}

/// Composite Simpson weights on `intervals + 1` equispaced nodes of `[0, 1]`.
fn simpson(intervals: usize) -> Result<Vec<(Real, Real)>, CliError> {
    if intervals == 0 || intervals % 2 != 0 {
        return Err(Error::InvalidInput(format!("--quad must be a positive even number, got {intervals}")).into());
    }
    let h = 1.0 / intervals as Real;
    Ok((0..=intervals)
        .map(|i| {
            let w = if i == 0 || i == intervals { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
            (i as Real * h, w * h / 3.0)
        })
        .collect())
}

pub fn residue_anomaly(s: &Settings, files: &[PathBuf], theta_a: Real, theta_b: Real, quad: usize) -> Out {
    let a = classical(&files[0], s)?;
    let b = classical(&files[1], s)?;
    let nodes = simpson(quad)?;
    let config = s.config(
        "residue",
        json!({"anomaly": paths(files), "theta": theta_a, "theta2": theta_b, "quad": quad, "quadrature": "composite Simpson"}),
    );
    let mut r = Report::new("residue", config, &RESIDUE_COLUMNS);
    let (ma, mb) = (a.order().re, b.order().re);
    let mut integral = Cplx::new(0.0, 0.0);
    let mut max: Real = 0.0;
    for (t, w) in nodes {
        let cuts = AnomalyCuts::commuting_path(theta_a, theta_b, ma, mb, t)?;
        let v = anomaly_integrand(&a, &b, cuts, t, s.depth)?;
        integral += w * v;
        max = max.max(v.norm());
        r.push(residue_row("anomaly_integrand", Some(t), Some(cuts.alpha), v, s.tol));
    }
    r.push(residue_row("anomaly_integral", None, None, integral, s.tol));
    r.push(residue_row("anomaly_max", None, None, Cplx::new(max, 0.0), s.tol));
    Ok(r)
}

pub struct SymbolArgs<'a> {
    pub op: SymbolOp,
    pub files: &'a [PathBuf],
    pub theta: Option<Real>,
    pub s: Option<Cplx>,
    pub emit: Option<&'a Path>,
}

pub fn symbol(st: &Settings, x: SymbolArgs) -> Out {
    let need_files = if x.op == SymbolOp::Compose { 2 } else { 1 };
    if x.files.len() != need_files {
        return Err(Error::InvalidInput(format!(
            "{:?} takes {need_files} --symbolfile argument(s), got {}",
            x.op,
            x.files.len()
        ))
        .into());
    }
    let a = classical(&x.files[0], st)?;
    let result: Symbol = match x.op {
        SymbolOp::Compose => compose(&a, &classical(&x.files[1], st)?, st.depth)?.into(),
        SymbolOp::Power => {
            let s = x.s.ok_or_else(|| Error::InvalidInput("--s is required for power".into()))?;
            power_symbol(&a, s, SpectralCut::new(need(x.theta, "--theta")?), st.depth)?.into()
        }
        SymbolOp::Log => log_symbol(&a, SpectralCut::new(need(x.theta, "--theta")?), st.depth)?.into(),
    };
    if let Some(path) = x.emit {
        let text = match &result {
            Symbol::Classical(c) => classical_to_json(c),
            l => oddzeta::schema::symbol_to_json(l),
        };
        std::fs::write(path, format!("{text}\n")).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    let config = st.config(
        "symbol",
        json!({
            "op": x.op, "symbolfile": paths(x.files), "theta": x.theta, "s": x.s.map(pair),
            "emit": x.emit.map(|p| p.display().to_string()),
        }),
    );
    let mut r = Report::new("symbol", config, &["j", "degree_re", "degree_im", "side", "k", "re", "im"]);
    if let Symbol::Log(l) = &result {
        r.push([vec![Cell::Empty], vec![Cell::Empty; 2], vec!["gamma".into(), Cell::Empty], cplx(l.gamma).to_vec()].concat());
    }
    for (j, c) in result.body().components().iter().enumerate() {
        for (side, p) in [("plus", &c.plus), ("minus", &c.minus)] {
            let n = p.bandwidth() as i64;
            for k in -n..=n {
                r.push(
                    [vec![(j as i64).into()], cplx(c.degree).to_vec(), vec![side.into(), k.into()], cplx(p.coeff(k)).to_vec()]
                        .concat(),
                );
            }
        }
    }
    Ok(r)
}

fn check_row(suite: &str, c: &Check) -> Vec<Cell> {
    vec![
        suite.into(),
        (c.criterion as i64).into(),
        c.fixture.clone().into(),
        c.quantity.clone().into(),
        c.deviation.into(),
        c.tolerance.into(),
        c.pass.into(),
        c.note.clone().into(),
    ]
}

/// Returns the report and whether every check passed.
pub fn verify(s: &Settings, suite: SuiteArg, double: bool, seed: u64) -> Result<(Report, bool), CliError> {
    let cfg = SuiteConfig { det: s.det_config(), depth: s.depth, bandwidth: s.bandwidth, seed };
    let suites: Vec<Suite> = match suite.suite() {
        Some(one) => vec![one],
        None => Suite::ALL.to_vec(),
    };
    let config = s.config(
        "verify",
        json!({"suite": suite, "double": double, "seed": seed, "suite_config": cfg, "doubled_config": double.then(|| cfg.doubled())}),
    );
    let mut r = Report::new(
        "verify",
        config,
        &["suite", "criterion", "fixture", "quantity", "deviation", "tolerance", "pass", "note"],
    );
    let mut all = true;
    for su in suites {
        let base = run_suite(su, &cfg);
        let mut rows = base.clone();
        if double {
            rows.extend(doubling_stability(&base, &run_suite(su, &cfg.doubled())));
        }
        for c in &rows {
            all &= c.pass;
            r.push(check_row(su.name(), c));
        }
    }
    Ok((r, all))
}

impl Settings {
    pub fn continuation(&self) -> ContinuationParams {
        ContinuationParams {
            k_expand: self.k_expand,
            n_tail: self.n_tail,
            r_fit: self.fit_radius,
            ..ContinuationParams::default()
        }
    }

    pub fn det_config(&self) -> DetConfig {
        DetConfig {
            continuation: self.continuation(),
            ..DetConfig::default()
        }
    }

    /// The full resolved configuration echoed into every report.
    pub fn config(&self, command: &str, args: Value) -> Value {
        json!({
            "command": command,
            "args": args,
            "format": self.format,
            "continuation": self.continuation(),
            "det": self.det_config(),
            "depth": self.depth,
            "bandwidth": self.bandwidth,
            "tol": self.tol,
            "angles": "radians",
        })
    }
}
