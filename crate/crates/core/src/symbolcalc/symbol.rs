//! Homogeneous components, classical and logarithmic symbols, composition.

use serde::Serialize;

use super::periodic::Periodic;
use crate::{Cplx, Error, Real, Result};

/// Tolerance for treating a complex degree as an integer.
const INT_TOL: Real = 1e-12;

/// The two points `ξ = ±1` of the cosphere of the circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Plus, Side::Minus];

    /// `ξ` at this side.
    pub fn xi(self) -> Real {
        match self {
            Side::Plus => 1.0,
            Side::Minus => -1.0,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Side::Plus => 0,
            Side::Minus => 1,
        }
    }
}

/// `(−1)^h` for an integer-valued degree.
pub(crate) fn parity(h: Cplx) -> Result<Real> {
    let r = h.re.round();
    if (h - Cplx::new(r, 0.0)).norm() > INT_TOL {
        return Err(Error::DegreeMismatch(format!("degree {h} is not an integer")));
    }
    Ok(if (r as i64) % 2 == 0 { 1.0 } else { -1.0 })
}

/// Falling factorial `h(h−1)…(h−k+1)`.
pub(crate) fn falling(h: Cplx, k: usize) -> Cplx {
    (0..k).fold(Cplx::new(1.0, 0.0), |acc, i| acc * (h - i as Real))
}

/// `σ_h(x, ξ) = plus(x)·ξ^h` for `ξ > 0` and `minus(x)·|ξ|^h` for `ξ < 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HomogComponent {
    pub degree: Cplx,
    pub plus: Periodic,
    pub minus: Periodic,
}

impl HomogComponent {
    pub fn new(degree: Cplx, plus: Periodic, minus: Periodic) -> Self {
        let n = plus.bandwidth().max(minus.bandwidth());
        Self {
            degree,
            plus: plus.resized(n),
            minus: minus.resized(n),
        }
    }

    pub fn zero(degree: Cplx, n: usize) -> Self {
        Self::new(degree, Periodic::zero(n), Periodic::zero(n))
    }

    pub fn side(&self, side: Side) -> &Periodic {
        match side {
            Side::Plus => &self.plus,
            Side::Minus => &self.minus,
        }
    }

    pub fn bandwidth(&self) -> usize {
        self.plus.bandwidth().max(self.minus.bandwidth())
    }

    /// Value at `(x, ξ)`, `ξ ≠ 0`.
    pub fn eval(&self, x: Real, xi: Real) -> Cplx {
        let v = if xi > 0.0 { self.plus.eval(x) } else { self.minus.eval(x) };
        v * Cplx::new(xi.abs(), 0.0).powc(self.degree)
    }

    /// `∂_ξ^k`: degree `h − k`, sides scaled by `(±1)^k h(h−1)…(h−k+1)`.
    pub fn d_xi(&self, k: usize) -> Self {
        let f = falling(self.degree, k);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        Self {
            degree: self.degree - k as Real,
            plus: self.plus.scale(f),
            minus: self.minus.scale(f * sign),
        }
    }

    pub fn dx(&self) -> Self {
        Self {
            degree: self.degree,
            plus: self.plus.dx(),
            minus: self.minus.dx(),
        }
    }

    pub fn scale(&self, c: Cplx) -> Self {
        Self {
            degree: self.degree,
            plus: self.plus.scale(c),
            minus: self.minus.scale(c),
        }
    }

    /// Sum of two components of the same degree.
    pub fn add(&self, other: &Self) -> Self {
        Self {
            degree: self.degree,
            plus: &self.plus + &other.plus,
            minus: &self.minus + &other.minus,
        }
    }

    /// Pointwise product; degrees add.
    pub fn mul(&self, other: &Self) -> Self {
        Self {
            degree: self.degree + other.degree,
            plus: &self.plus * &other.plus,
            minus: &self.minus * &other.minus,
        }
    }

    /// `max(‖plus‖, ‖minus‖)` in the Fourier norm.
    pub fn norm(&self) -> Real {
        self.plus.fourier_norm().max(self.minus.fourier_norm())
    }
}

/// `σ ~ Σ_{j=0}^{J} σ_{m−j}`, known up to depth `J`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassicalSymbol {
    order: Cplx,
    comps: Vec<HomogComponent>,
}

impl ClassicalSymbol {
    pub fn new(order: Cplx, comps: Vec<HomogComponent>) -> Result<Self> {
        if comps.is_empty() {
            return Err(Error::InvalidInput("symbol needs a leading component".into()));
        }
        for (j, c) in comps.iter().enumerate() {
            if (c.degree - (order - j as Real)).norm() > INT_TOL {
                return Err(Error::DegreeMismatch(format!(
                    "component {j} has degree {}, expected {}",
                    c.degree,
                    order - j as Real
                )));
            }
        }
        let n = comps.iter().map(HomogComponent::bandwidth).max().unwrap_or(0);
        let comps = comps
            .into_iter()
            .map(|c| HomogComponent::new(c.degree, c.plus, c.minus).resized(n))
            .collect();
        Ok(Self { order, comps })
    }

    /// `Σ_k a_k(x) ξ^k` (a differential operator), padded with zeros to `depth`.
    pub fn polynomial(coeffs: &[Periodic], depth: usize) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("polynomial symbol needs coefficients".into()));
        }
        let m = coeffs.len() - 1;
        let n = coeffs.iter().map(Periodic::bandwidth).max().unwrap_or(0);
        let comps = (0..=depth.max(m))
            .map(|j| {
                let h = m as i64 - j as i64;
                if h < 0 {
                    return HomogComponent::zero(Cplx::new(h as Real, 0.0), n);
                }
                let a = &coeffs[h as usize];
                let sign = if h % 2 == 0 { 1.0 } else { -1.0 };
                HomogComponent::new(Cplx::new(h as Real, 0.0), a.clone(), a.scale(sign.into()))
            })
            .collect();
        Self::new(Cplx::new(m as Real, 0.0), comps)
    }

    pub fn identity(n: usize, depth: usize) -> Self {
        let one = Periodic::constant(n, Cplx::new(1.0, 0.0));
        Self::polynomial(&[one], depth).expect("nonempty")
    }

    pub fn order(&self) -> Cplx {
        self.order
    }

    /// `J`: the last known component index.
    pub fn depth(&self) -> usize {
        self.comps.len() - 1
    }

    pub fn components(&self) -> &[HomogComponent] {
        &self.comps
    }

    pub fn component(&self, j: usize) -> Option<&HomogComponent> {
        self.comps.get(j)
    }

    pub fn principal(&self) -> &HomogComponent {
        &self.comps[0]
    }

    pub fn bandwidth(&self) -> usize {
        self.comps[0].bandwidth()
    }

    /// Nonvanishing principal symbol at every grid point on both sides.
    pub fn is_elliptic(&self) -> bool {
        let p = self.principal();
        Side::BOTH.iter().all(|&s| {
            let vals = p.side(s).grid_values();
            let scale = vals.iter().map(|v| v.norm()).fold(0.0, Real::max);
            scale > 0.0 && vals.iter().all(|v| v.norm() > 1e-12 * scale)
        })
    }

    /// Keeps components `0..=depth`.
    pub fn truncated(&self, depth: usize) -> Result<Self> {
        if depth > self.depth() {
            return Err(Error::DepthInsufficient {
                needed: depth,
                available: self.depth(),
            });
        }
        Ok(Self {
            order: self.order,
            comps: self.comps[..=depth].to_vec(),
        })
    }

    pub fn with_bandwidth(&self, n: usize) -> Self {
        Self {
            order: self.order,
            comps: self.comps.iter().map(|c| c.resized(n)).collect(),
        }
    }

    pub fn scale(&self, c: Cplx) -> Self {
        Self {
            order: self.order,
            comps: self.comps.iter().map(|v| v.scale(c)).collect(),
        }
    }

    /// Sum of symbols of equal order, to the smaller depth.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.order - other.order).norm() > INT_TOL {
            return Err(Error::DegreeMismatch(format!(
                "cannot add orders {} and {}",
                self.order, other.order
            )));
        }
        Ok(Self {
            order: self.order,
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Cplx::new(-1.0, 0.0)))
    }

    /// Adds `c` times the identity (only meaningful for order 0).
    pub fn plus_constant(&self, c: Cplx) -> Result<Self> {
        let idx = self.integer_index_of_degree(0)?;
        let mut out = self.clone();
        if let Some(comp) = out.comps.get_mut(idx) {
            let n = comp.bandwidth();
            let k = Periodic::constant(n, c);
            comp.plus = &comp.plus + &k;
            comp.minus = &comp.minus + &k;
            Ok(out)
        } else {
            Err(Error::DepthInsufficient {
                needed: idx,
                available: self.depth(),
            })
        }
    }

    /// Index `j` with `order − j = h`, if the order is an integer `≥ h`.
    pub(crate) fn integer_index_of_degree(&self, h: i64) -> Result<usize> {
        parity(self.order)?;
        let j = self.order.re.round() as i64 - h;
        if j < 0 {
            return Err(Error::DegreeMismatch(format!(
                "order {} is below degree {h}",
                self.order
            )));
        }
        Ok(j as usize)
    }

    /// Full truncated value at `(x, ξ)`.
    pub fn eval(&self, x: Real, xi: Real) -> Cplx {
        self.comps.iter().map(|c| c.eval(x, xi)).sum()
    }
}

impl HomogComponent {
    pub(crate) fn resized(&self, n: usize) -> Self {
        Self {
            degree: self.degree,
            plus: self.plus.resized(n),
            minus: self.minus.resized(n),
        }
    }
}

/// `γ·log|ξ| + body`, with `body` classical of order 0.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LogSymbol {
    pub gamma: Cplx,
    pub body: ClassicalSymbol,
}

impl LogSymbol {
    pub fn new(gamma: Cplx, body: ClassicalSymbol) -> Result<Self> {
        if body.order.norm() > INT_TOL {
            return Err(Error::DegreeMismatch(format!(
                "log symbol body must have order 0, got {}",
                body.order
            )));
        }
        Ok(Self { gamma, body })
    }

    pub fn scale(&self, c: Cplx) -> Self {
        Self {
            gamma: self.gamma * c,
            body: self.body.scale(c),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            gamma: self.gamma + other.gamma,
            body: self.body.add(&other.body)?,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Cplx::new(-1.0, 0.0)))
    }

    pub fn plus_constant(&self, c: Cplx) -> Result<Self> {
        Ok(Self {
            gamma: self.gamma,
            body: self.body.plus_constant(c)?,
        })
    }

    /// The body, once the `log|ξ|` part has cancelled.
    pub fn into_classical(self, eps: Real) -> Result<ClassicalSymbol> {
        if self.gamma.norm() > eps {
            return Err(Error::InvalidInput(format!(
                "log coefficient {} does not vanish",
                self.gamma
            )));
        }
        Ok(self.body)
    }
}

/// Either kind of symbol, for operations that accept both.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Symbol {
    Classical(ClassicalSymbol),
    Log(LogSymbol),
}

impl Symbol {
    pub fn body(&self) -> &ClassicalSymbol {
        match self {
            Symbol::Classical(c) => c,
            Symbol::Log(l) => &l.body,
        }
    }

    pub fn gamma(&self) -> Cplx {
        match self {
            Symbol::Classical(_) => Cplx::new(0.0, 0.0),
            Symbol::Log(l) => l.gamma,
        }
    }
}

impl From<ClassicalSymbol> for Symbol {
    fn from(c: ClassicalSymbol) -> Self {
        Symbol::Classical(c)
    }
}

impl From<LogSymbol> for Symbol {
    fn from(l: LogSymbol) -> Self {
        Symbol::Log(l)
    }
}

fn need_depth(sym: &ClassicalSymbol, j: usize) -> Result<()> {
    if sym.depth() < j {
        return Err(Error::DepthInsufficient {
            needed: j,
            available: sym.depth(),
        });
    }
    Ok(())
}

/// `D_x^k B_l` for `k + l ≤ j_out`, indexed `[l][k]`.
fn dx_table(b: &ClassicalSymbol, j_out: usize) -> Vec<Vec<HomogComponent>> {
    (0..=j_out)
        .map(|l| {
            let mut row = vec![b.comps[l].clone()];
            for _ in 1..=(j_out - l) {
                let next = row.last().expect("nonempty").dx();
                row.push(next);
            }
            row
        })
        .collect()
}

fn factorial(k: usize) -> Real {
    (1..=k).map(|i| i as Real).product()
}

/// `σ(A∘B) ~ Σ_k (1/k!) ∂_ξ^k σ(A) · D_x^k σ(B)`, components `0..=j_out`.
pub fn compose(a: &ClassicalSymbol, b: &ClassicalSymbol, j_out: usize) -> Result<ClassicalSymbol> {
    need_depth(a, j_out)?;
    need_depth(b, j_out)?;
    let n = a.bandwidth().max(b.bandwidth());
    let order = a.order + b.order;
    let dxb = dx_table(b, j_out);
    let mut comps: Vec<HomogComponent> = (0..=j_out)
        .map(|j| HomogComponent::zero(order - j as Real, n))
        .collect();
    for i in 0..=j_out {
        for k in 0..=(j_out - i) {
            let da = a.comps[i].d_xi(k).scale(Cplx::new(1.0 / factorial(k), 0.0));
            if da.norm() == 0.0 {
                continue;
            }
            for l in 0..=(j_out - i - k) {
                let term = da.mul(&dxb[l][k]);
                let slot = &mut comps[i + k + l];
                *slot = HomogComponent {
                    degree: slot.degree,
                    plus: &slot.plus + &term.plus,
                    minus: &slot.minus + &term.minus,
                };
            }
        }
    }
    ClassicalSymbol::new(order, comps)
}

/// `∂_ξ^k log|ξ|` for `k ≥ 1`, a constant-coefficient component of degree `−k`.
fn d_xi_log(k: usize, n: usize) -> HomogComponent {
    let one = Periodic::constant(n, Cplx::new(1.0, 0.0));
    HomogComponent::new(Cplx::new(-1.0, 0.0), one.clone(), -&one).d_xi(k - 1)
}

/// `Σ_{k≥1} (γ/k!) ∂_ξ^k log|ξ| · D_x^k B`, placed at index `k + l`.
fn log_cross_terms(gamma: Cplx, b: &ClassicalSymbol, j_out: usize, into: &mut [HomogComponent]) {
    if gamma == Cplx::new(0.0, 0.0) {
        return;
    }
    let n = into[0].bandwidth().max(b.bandwidth());
    let dxb = dx_table(b, j_out);
    for k in 1..=j_out {
        let dl = d_xi_log(k, n).scale(gamma / factorial(k));
        for l in 0..=(j_out - k) {
            let term = dl.mul(&dxb[l][k]);
            let slot = &mut into[k + l];
            slot.plus = &slot.plus + &term.plus;
            slot.minus = &slot.minus + &term.minus;
        }
    }
}

/// `[A, B] = A∘B − B∘A`; the `log|ξ|` parts of logarithmic inputs cancel.
pub fn commutator_symbol(a: &Symbol, b: &Symbol, j_out: usize) -> Result<ClassicalSymbol> {
    let (ba, bb) = (a.body(), b.body());
    let ab = compose(ba, bb, j_out)?;
    let ba_ = compose(bb, ba, j_out)?;
    let mut comps: Vec<HomogComponent> = ab
        .comps
        .iter()
        .zip(&ba_.comps)
        .map(|(x, y)| HomogComponent {
            degree: x.degree,
            plus: &x.plus - &y.plus,
            minus: &x.minus - &y.minus,
        })
        .collect();
    log_cross_terms(a.gamma(), bb, j_out, &mut comps);
    log_cross_terms(-b.gamma(), ba, j_out, &mut comps);
    ClassicalSymbol::new(ab.order, comps)
}

/// `max_j ‖minus_j − (−1)^{m−j} plus_j‖` (body rule at degree 0 for log symbols).
pub fn odd_class_deviation(sym: &Symbol) -> Result<Real> {
    let mut dev: Real = 0.0;
    for c in &sym.body().comps {
        let s = parity(c.degree)?;
        dev = dev.max((&c.minus - &c.plus.scale(s.into())).fourier_norm());
    }
    Ok(dev)
}

/// Odd class within `eps`; false for non-integer orders.
pub fn is_odd_class(sym: &Symbol, eps: Real) -> bool {
    odd_class_deviation(sym).map(|d| d < eps).unwrap_or(false)
}

/// Deviation from `σ_A(x, −ξ) = (−1)^{m−j} σ_B(x, ξ)` on every component,
/// checked at both `ξ = ±1`, plus `|γ_A − γ_B|`.
pub fn odd_pair_deviation(a: &Symbol, b: &Symbol) -> Result<Real> {
    let (ba, bb) = (a.body(), b.body());
    if (ba.order - bb.order).norm() > INT_TOL {
        return Err(Error::DegreeMismatch(format!(
            "odd pair needs equal orders, got {} and {}",
            ba.order, bb.order
        )));
    }
    let mut dev = (a.gamma() - b.gamma()).norm();
    for (ca, cb) in ba.comps.iter().zip(&bb.comps) {
        let s: Cplx = parity(ca.degree)?.into();
        dev = dev
            .max((&ca.minus - &cb.plus.scale(s)).fourier_norm())
            .max((&ca.plus - &cb.minus.scale(s)).fourier_norm());
    }
    Ok(dev)
}

pub fn is_odd_pair(a: &Symbol, b: &Symbol, eps: Real) -> Result<bool> {
    Ok(odd_pair_deviation(a, b)? < eps)
}

/// `Res σ = (1/2π)∫[σ_{−1}(x, 1) + σ_{−1}(x, −1)] dx`.
///
/// Zero when the order is not an integer `≥ −1`; an error when the degree
/// −1 component exists but lies beyond the known depth.
pub fn wodzicki_res(sym: &ClassicalSymbol) -> Result<Cplx> {
    let j = match sym.integer_index_of_degree(-1) {
        Ok(j) => j,
        Err(_) => return Ok(Cplx::new(0.0, 0.0)),
    };
    need_depth(sym, j)?;
    let c = &sym.comps[j];
    Ok(c.plus.mean() + c.minus.mean())
}
