//! One pass/fail line per acceptance criterion, with pinned tolerances and
//! runtime limits. Lines go straight to stderr, so they show without `--nocapture`.

use std::io::Write;
use std::time::{Duration, Instant};

use oddzeta::suites::{doubling_stability, run_criterion, Check, SuiteConfig};

const CRITERIA: [(u8, &str, u64); 10] = [
    (1, "branch calculus", 1),
    (2, "classical determinant 4sinh^2", 10),
    (3, "zeta(0) vanishing", 10),
    (4, "Det^sym of A^2", 30),
    (5, "sign law for symmetric spectra", 60),
    (6, "Q-independence of tr_sym", 10),
    (7, "symmetrized residue coboundary", 60),
    (8, "symbol identities with doubling", 120),
    (9, "anomaly integrand and multiplicativity", 120),
    (10, "angle dependence in i pi Z", 30),
];

fn worst(rows: &[Check]) -> f64 {
    rows.iter()
        .map(|c| if c.deviation.is_nan() { f64::INFINITY } else { c.deviation / c.tolerance })
        .fold(0.0, f64::max)
}

#[test]
fn acceptance() {
    let cfg = SuiteConfig::default();
    let mut failed = Vec::new();
    let _ = writeln!(std::io::stderr());
    for (id, name, limit) in CRITERIA {
        let start = Instant::now();
        let mut rows = run_criterion(id, &cfg);
        if id == 8 {
            let doubled = run_criterion(id, &cfg.doubled());
            let stability = doubling_stability(&rows, &doubled);
            rows.extend(stability);
        }
        let elapsed = start.elapsed();
        let in_time = elapsed < Duration::from_secs(limit);
        let pass = !rows.is_empty() && rows.iter().all(|c| c.pass) && in_time;
        let mut err = std::io::stderr().lock();
        let _ = writeln!(
            err,
            "criterion {id:>2} {:<4} {name}: {} checks, worst deviation/tolerance {:.3e}, {:.2}s (limit {limit}s)",
            if pass { "PASS" } else { "FAIL" },
            rows.len(),
            worst(&rows),
            elapsed.as_secs_f64(),
        );
        for c in rows.iter().filter(|c| !c.pass) {
            let _ = writeln!(
                err,
                "    failed: {} / {}: deviation {:.3e} tolerance {:.1e} {}",
                c.fixture, c.quantity, c.deviation, c.tolerance, c.note
            );
        }
        if !pass {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
