//! Seeded fixture families shared by tests, acceptance checks and `verify`.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complexcut::{branch_log, SpectralCut};
use crate::spectralmodel::{LawTerm, SpectralLaw, SpectralOperator};
use crate::symbolcalc::{ClassicalSymbol, HomogComponent, Periodic};
use crate::{Cplx, Real, Result};

pub const DEFAULT_SEED: u64 = 0x0dd5_eed5;

/// Seed from `ODDZETA_SEED`, else [`DEFAULT_SEED`].
pub fn seed_from_env() -> u64 {
    std::env::var("ODDZETA_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `D_c` with conjugate exception pairs moved onto the imaginary axis.
#[derive(Debug, Clone)]
pub struct SymmetricFixture {
    pub name: String,
    pub op: SpectralOperator,
    pub c: Real,
    /// `(n, new eigenvalue)` for every moved eigenvalue.
    pub moves: Vec<(i64, Cplx)>,
    pub m_plus: u64,
}

impl SymmetricFixture {
    /// Exact bookkeeping: `ln(2 sin πc)` plus the averaged branch-log change
    /// of every moved eigenvalue at `θ` and `θ − π`.
    pub fn oracle_log_det_sym(&self, theta: Real) -> Result<Cplx> {
        let mut total = Cplx::new((2.0 * (PI * self.c).sin()).ln(), 0.0);
        for &(n, new) in &self.moves {
            let old = Cplx::new(n as Real + self.c, 0.0);
            for th in [theta, theta - PI] {
                let cut = SpectralCut::new(th);
                total += 0.5 * (branch_log(new, cut)? - branch_log(old, cut)?);
            }
        }
        Ok(total)
    }
}

/// `D_c` plus `pairs` exception pairs `{n ↦ ir, n′ ↦ −ir}` on distinct indices.
pub fn symmetric_dirac(c: Real, pairs: &[(i64, i64, Real)]) -> Result<SymmetricFixture> {
    let mut op = SpectralOperator::shifted_dirac(Cplx::new(c, 0.0))?;
    let mut moves = Vec::new();
    for &(n, n2, r) in pairs {
        op = op.with_exception(n, Cplx::new(0.0, r), 1)?;
        op = op.with_exception(n2, Cplx::new(0.0, -r), 1)?;
        moves.push((n, Cplx::new(0.0, r)));
        moves.push((n2, Cplx::new(0.0, -r)));
    }
    let name = format!("D_{c:.4}+{}pairs", pairs.len());
    Ok(SymmetricFixture {
        name,
        op,
        c,
        moves,
        m_plus: pairs.len() as u64,
    })
}

/// Random symmetric fixtures with 0 to 3 pairs on distinct indices in `−6..=6`.
pub fn random_symmetric(rng: &mut impl Rng, count: usize) -> Result<Vec<SymmetricFixture>> {
    (0..count)
        .map(|i| {
            let c = rng.gen_range(0.05..0.95);
            let k = i % 4;
            let mut idx: Vec<i64> = (-6..=6).collect();
            let mut pairs = Vec::new();
            for _ in 0..k {
                let a = idx.swap_remove(rng.gen_range(0..idx.len()));
                let b = idx.swap_remove(rng.gen_range(0..idx.len()));
                pairs.push((a, b, rng.gen_range(0.2..5.0)));
            }
            let mut f = symmetric_dirac(c, &pairs)?;
            f.name = format!("sym#{i}:{}", f.name);
            Ok(f)
        })
        .collect()
}

/// Named angle pairs on which the iπℤ law for `log Det^sym` applies.
pub fn angle_pair_fixtures() -> Result<Vec<(String, SpectralOperator, Real, Real)>> {
    let third = SpectralOperator::shifted_dirac(Cplx::new(1.0 / 3.0, 0.0))?;
    let rotated = SpectralOperator::shifted_dirac(Cplx::new(0.3, 0.0))?
        .with_exception(2, Cplx::from_polar(2.3, 0.7 * PI), 1)?
        .with_exception(-3, Cplx::from_polar(1.1, 1.65 * PI), 1)?;
    let cubic = SpectralOperator::from_law(
        SpectralLaw::new(
            3,
            vec![
                LawTerm::new(Cplx::new(1.0, 0.0), 1, 3),
                LawTerm::new(Cplx::new(0.5, 0.0), 1, 1),
                LawTerm::new(Cplx::new(0.25, 0.0), 0, 0),
            ],
        )?,
        crate::spectralmodel::IndexSet::Z,
    )?;
    let tilted = SpectralOperator::shifted_dirac(Cplx::new(0.3, 0.2))?;
    Ok(vec![
        ("D_1/3 (3pi/5, 4pi/5)".into(), third.clone(), 0.6 * PI, 0.8 * PI),
        ("D_1/3 (3pi/4, 5pi/4)".into(), third, 0.75 * PI, 1.25 * PI),
        ("D_0.3 rotated (0.55pi, 0.95pi)".into(), rotated, 0.55 * PI, 0.95 * PI),
        ("cubic (3pi/5, 4pi/5)".into(), cubic.clone(), 0.6 * PI, 0.8 * PI),
        ("cubic (pi/3, 7pi/6)".into(), cubic, PI / 3.0, 7.0 * PI / 6.0),
        ("D_0.3+0.2i (0.6pi, 0.8pi)".into(), tilted, 0.6 * PI, 0.8 * PI),
    ])
}

/// `(name, A, B, θ_A, θ_B)` for commuting multiplicativity checks.
pub fn commuting_pairs() -> Result<Vec<(String, SpectralOperator, SpectralOperator, Real, Real)>> {
    let d = |c: Real| SpectralOperator::shifted_dirac(Cplx::new(c, 0.0));
    let lap = SpectralOperator::laplace_type(Cplx::new(1.0, 0.0))?;
    Ok(vec![
        ("D_1/3 * D_1/3".into(), d(1.0 / 3.0)?, d(1.0 / 3.0)?, 0.75 * PI, 0.75 * PI),
        ("D_1/3 * (n^2+1)".into(), d(1.0 / 3.0)?, lap.clone(), 0.75 * PI, 0.5 * PI),
        ("D_1/5 * D_2/5".into(), d(0.2)?, d(0.4)?, 0.75 * PI, 0.75 * PI),
        ("(n^2+1) * D_1/3".into(), lap, d(1.0 / 3.0)?, 0.5 * PI, 0.75 * PI),
    ])
}

/// Fourier coefficients on modes `|k| ≤ band`, amplitude `amp·2^{−|k|}`.
pub fn random_periodic(rng: &mut impl Rng, n: usize, band: usize, amp: Real) -> Periodic {
    let band = band.min(n) as i64;
    let modes: Vec<(i64, Cplx)> = (-band..=band)
        .map(|k| {
            let s = amp * 0.5f64.powi(k.abs() as i32);
            (k, Cplx::new(rng.gen_range(-s..s), rng.gen_range(-s..s)))
        })
        .collect();
    Periodic::from_modes(n, &modes)
}

/// Random odd-class symbol. When `elliptic`, the principal part at `ξ = 1`
/// is `1 + p(x)` with `p` small, so its values stay close to `1` (and to
/// `±1` at `ξ = −1`), well away from the imaginary axis.
pub fn random_odd_symbol(
    rng: &mut impl Rng,
    order: i64,
    n: usize,
    band: usize,
    depth: usize,
    elliptic: bool,
) -> ClassicalSymbol {
    let comps = (0..=depth)
        .map(|j| {
            let h = order - j as i64;
            let mut plus = random_periodic(rng, n, band, if j == 0 && elliptic { 0.05 } else { 0.4 });
            if j == 0 && elliptic {
                plus = &plus + &Periodic::constant(n, Cplx::new(1.0, 0.0));
            }
            let sign = if h % 2 == 0 { 1.0 } else { -1.0 };
            let minus = plus.scale(Cplx::new(sign, 0.0));
            HomogComponent::new(Cplx::new(h as Real, 0.0), plus, minus)
        })
        .collect();
    ClassicalSymbol::new(Cplx::new(order as Real, 0.0), comps).expect("degrees are consistent")
}

/// Random symbol with independent sides (generally not odd class).
pub fn random_symbol(rng: &mut impl Rng, order: i64, n: usize, band: usize, depth: usize) -> ClassicalSymbol {
    let comps = (0..=depth)
        .map(|j| {
            let h = Cplx::new((order - j as i64) as Real, 0.0);
            HomogComponent::new(
                h,
                random_periodic(rng, n, band, 0.4),
                random_periodic(rng, n, band, 0.4),
            )
        })
        .collect();
    ClassicalSymbol::new(Cplx::new(order as Real, 0.0), comps).expect("degrees are consistent")
}

/// The partner `B` with `σ_B(x, ξ) = (−1)^h σ_A(x, −ξ)`, so that `(A, B)` is an odd pair.
pub fn mirror(a: &ClassicalSymbol) -> ClassicalSymbol {
    let comps = a
        .components()
        .iter()
        .map(|c| {
            let h = c.degree.re.round() as i64;
            let s = Cplx::new(if h % 2 == 0 { 1.0 } else { -1.0 }, 0.0);
            HomogComponent::new(c.degree, c.minus.scale(s), c.plus.scale(s))
        })
        .collect();
    ClassicalSymbol::new(a.order(), comps).expect("same degrees")
}

/// A principal angle for the elliptic odd-class fixtures above: `π/2` for odd
/// order, `π` for even order.
pub fn principal_angle(order: i64) -> Real {
    if order % 2 == 0 {
        PI
    } else {
        PI / 2.0
    }
}
