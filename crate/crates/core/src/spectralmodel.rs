//! Eigenvalue-model operators on the circle.
//!
//! An operator is a bilateral power law `λ_n = Σ c_j sgn(n)^{e_j} |n|^{p_j}`
//! over ℤ or ℤ∖{0}, with finitely many exceptional eigenvalues carrying
//! their own multiplicities. Everything the determinant engine needs about
//! infinitely many eigenvalues is read off the two asymptotic branches
//! `n → +∞` and `n → −∞`; the remaining finitely many are enumerated.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::complexcut::{angular_distance, on_ray, SolidAngle, SpectralCut};
use crate::{Cplx, Error, Real, Result};

const SCAN_LIMIT: u64 = 1 << 40;

/// Index set of the lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IndexSet {
    #[serde(rename = "Z")]
    Z,
    #[serde(rename = "Z_nonzero")]
    ZNonzero,
}

impl IndexSet {
    pub fn contains(self, n: i64) -> bool {
        n != 0 || self == IndexSet::Z
    }
}

/// One of the two asymptotic branches of the lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Branch {
    Positive,
    Negative,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::Positive, Branch::Negative];

    pub fn sign(self) -> i64 {
        match self {
            Branch::Positive => 1,
            Branch::Negative => -1,
        }
    }

    pub fn index(self, k: u64) -> i64 {
        self.sign() * k as i64
    }
}

/// A term `c · sgn(n)^sgn · |n|^pow`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LawTerm {
    pub coeff: Cplx,
    pub sgn: u8,
    pub pow: i32,
}

impl LawTerm {
    pub fn new(coeff: Cplx, sgn: u8, pow: i32) -> Self {
        Self { coeff, sgn, pow }
    }

    fn eval(&self, n: i64) -> Cplx {
        let s = n.signum();
        let sign_factor = match (self.sgn, s) {
            (0, _) => 1.0,
            (_, 0) => 0.0,
            (_, s) => s as Real,
        };
        if sign_factor == 0.0 {
            return Cplx::new(0.0, 0.0);
        }
        let abs = n.unsigned_abs() as Real;
        let mag = if self.pow == 0 {
            1.0
        } else {
            abs.powi(self.pow)
        };
        self.coeff * (sign_factor * mag)
    }
}

/// Bilateral power law of order `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralLaw {
    order: u32,
    terms: Vec<LawTerm>,
}

impl SpectralLaw {
    /// Validates and normalizes the term list (like terms are merged).
    pub fn new(order: u32, terms: Vec<LawTerm>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidInput("law order must be positive".into()));
        }
        for t in &terms {
            if t.sgn > 1 {
                return Err(Error::InvalidInput(format!(
                    "sign exponent must be 0 or 1, got {}",
                    t.sgn
                )));
            }
            if t.pow > order as i32 {
                return Err(Error::InvalidInput(format!(
                    "power {} exceeds order {order}",
                    t.pow
                )));
            }
        }
        let law = Self {
            order,
            terms: merge_terms(terms),
        };
        for b in Branch::BOTH {
            if law.leading(b) == Cplx::new(0.0, 0.0) {
                return Err(Error::InvalidInput(
                    "leading coefficient vanishes on a branch (not elliptic)".into(),
                ));
            }
        }
        Ok(law)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> &[LawTerm] {
        &self.terms
    }

    pub fn value(&self, n: i64) -> Cplx {
        self.terms.iter().map(|t| t.eval(n)).sum()
    }

    /// Coefficient of `|n|^m` on a branch.
    pub fn leading(&self, branch: Branch) -> Cplx {
        self.branch_coeffs(branch)[0]
    }

    /// `b_q` with `λ_{σk} = Σ_q b_q k^{m−q}` on the branch.
    pub fn branch_coeffs(&self, branch: Branch) -> Vec<Cplx> {
        let min_pow = self.terms.iter().map(|t| t.pow).min().unwrap_or(0).min(0);
        let len = (self.order as i32 - min_pow) as usize + 1;
        let mut b = vec![Cplx::new(0.0, 0.0); len];
        let sign = branch.sign() as Real;
        for t in &self.terms {
            let q = (self.order as i32 - t.pow) as usize;
            let f = if t.sgn == 1 { sign } else { 1.0 };
            b[q] += t.coeff * f;
        }
        b
    }

    /// `U(k) = Σ_{q≥1} |b_q / b_0| k^{−q}`, the size of the relative correction.
    pub fn correction_bound(&self, branch: Branch, k: Real) -> Real {
        let b = self.branch_coeffs(branch);
        let lead = b[0].norm();
        b.iter()
            .enumerate()
            .skip(1)
            .map(|(q, c)| c.norm() / lead * k.powi(-(q as i32)))
            .sum()
    }

    /// Smallest `k ≥ 1` with `U(k) < bound`.
    pub fn threshold(&self, branch: Branch, bound: Real) -> Result<u64> {
        if !(bound > 0.0) {
            return Err(Error::InvalidInput("threshold bound must be positive".into()));
        }
        let u = |k: u64| self.correction_bound(branch, k as Real);
        if u(1) < bound {
            return Ok(1);
        }
        let mut hi = 2u64;
        while u(hi) >= bound {
            hi *= 2;
            if hi > SCAN_LIMIT {
                return Err(Error::InvalidInput(
                    "law corrections decay too slowly to classify eigenvalues".into(),
                ));
            }
        }
        let mut lo = hi / 2;
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if u(mid) < bound {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(hi)
    }

    /// Symbolic product; sign exponents add mod 2.
    ///
    /// Exact for `n ≠ 0`. At `n = 0`, `sgn(0)² = 0 ≠ sgn(0)⁰`, so callers that
    /// include the index 0 must pin its value separately.
    pub fn mul(&self, other: &SpectralLaw) -> SpectralLaw {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(LawTerm::new(
                    a.coeff * b.coeff,
                    (a.sgn + b.sgn) % 2,
                    a.pow + b.pow,
                ));
            }
        }
        SpectralLaw {
            order: self.order + other.order,
            terms: merge_terms(terms),
        }
    }

    pub fn square(&self) -> SpectralLaw {
        self.mul(self)
    }

    fn is_real(&self) -> bool {
        self.terms.iter().all(|t| t.coeff.im == 0.0)
    }

    /// `conj λ_n = λ_{−n}` for every `n`.
    fn is_reflection_conjugate(&self) -> bool {
        self.terms.iter().all(|t| {
            let f = if t.sgn == 1 { -1.0 } else { 1.0 };
            t.coeff.conj() == t.coeff * f
        })
    }
}

fn merge_terms(terms: Vec<LawTerm>) -> Vec<LawTerm> {
    let mut map: BTreeMap<(i32, u8), Cplx> = BTreeMap::new();
    for t in terms {
        *map.entry((t.pow, t.sgn)).or_insert(Cplx::new(0.0, 0.0)) += t.coeff;
    }
    map.into_iter()
        .rev()
        .filter(|(_, c)| *c != Cplx::new(0.0, 0.0))
        .map(|((pow, sgn), coeff)| LawTerm { coeff, sgn, pow })
        .collect()
}

/// An exceptional eigenvalue with algebraic multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exception {
    pub value: Cplx,
    pub mult: u32,
}

/// Eigenvalue-model operator.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralOperator {
    law: SpectralLaw,
    index_set: IndexSet,
    exceptions: BTreeMap<i64, Exception>,
}

/// Which eigenvalues lie in a solid angle.
///
/// The range is `{n ≥ 1 if positive_branch} ∪ {n ≤ −1 if negative_branch}`,
/// plus `added`, minus `removed`. Lists carry multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionDescriptor {
    pub positive_branch: bool,
    pub negative_branch: bool,
    pub added: Vec<(i64, u32)>,
    pub removed: Vec<(i64, u32)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectionKind {
    Finite,
    Cofinite,
    /// One asymptotic branch inside, the other outside.
    HalfLattice,
}

impl ProjectionDescriptor {
    pub fn kind(&self) -> ProjectionKind {
        match (self.positive_branch, self.negative_branch) {
            (false, false) => ProjectionKind::Finite,
            (true, true) => ProjectionKind::Cofinite,
            _ => ProjectionKind::HalfLattice,
        }
    }

    /// Rank of a finite projection, counted with multiplicity.
    pub fn rank(&self) -> Option<u64> {
        (self.kind() == ProjectionKind::Finite)
            .then(|| self.added.iter().map(|&(_, m)| m as u64).sum())
    }

    /// Number of eigenvalues (with multiplicity) outside the range, when finite.
    pub fn corank(&self) -> Option<u64> {
        (self.kind() == ProjectionKind::Cofinite)
            .then(|| self.removed.iter().map(|&(_, m)| m as u64).sum())
    }

    pub fn contains_index(&self, n: i64) -> bool {
        if self.added.iter().any(|&(k, _)| k == n) {
            return true;
        }
        if self.removed.iter().any(|&(k, _)| k == n) {
            return false;
        }
        (n > 0 && self.positive_branch) || (n < 0 && self.negative_branch)
    }
}

impl SpectralOperator {
    pub fn new(
        law: SpectralLaw,
        index_set: IndexSet,
        exceptions: BTreeMap<i64, Exception>,
    ) -> Result<Self> {
        for (&n, e) in &exceptions {
            if !index_set.contains(n) {
                return Err(Error::IndexOutOfSet(n));
            }
            if e.mult == 0 {
                return Err(Error::InvalidInput(format!("zero multiplicity at {n}")));
            }
            if e.value == Cplx::new(0.0, 0.0) || !e.value.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "exception at {n} must be finite and nonzero"
                )));
            }
        }
        let op = Self {
            law,
            index_set,
            exceptions,
        };
        op.check_invertible()?;
        Ok(op)
    }

    /// Operator with no exceptions.
    pub fn from_law(law: SpectralLaw, index_set: IndexSet) -> Result<Self> {
        Self::new(law, index_set, BTreeMap::new())
    }

    /// Default index set: ℤ∖{0} for odd order, ℤ for even order.
    pub fn default_index_set(order: u32) -> IndexSet {
        if order % 2 == 1 {
            IndexSet::ZNonzero
        } else {
            IndexSet::Z
        }
    }

    /// `D_c`: eigenvalues `n + c` over ℤ.
    pub fn shifted_dirac(c: Cplx) -> Result<Self> {
        let law = SpectralLaw::new(
            1,
            vec![LawTerm::new(Cplx::new(1.0, 0.0), 1, 1), LawTerm::new(c, 0, 0)],
        )?;
        Self::from_law(law, IndexSet::Z)
    }

    /// Laplace type `|n|² + a²` over ℤ.
    pub fn laplace_type(a_squared: Cplx) -> Result<Self> {
        let law = SpectralLaw::new(
            2,
            vec![
                LawTerm::new(Cplx::new(1.0, 0.0), 0, 2),
                LawTerm::new(a_squared, 0, 0),
            ],
        )?;
        Self::from_law(law, IndexSet::Z)
    }

    /// Copy with the eigenvalue at `n` replaced.
    pub fn with_exception(&self, n: i64, value: Cplx, mult: u32) -> Result<Self> {
        let mut exceptions = self.exceptions.clone();
        exceptions.insert(n, Exception { value, mult });
        Self::new(self.law.clone(), self.index_set, exceptions)
    }

    pub fn law(&self) -> &SpectralLaw {
        &self.law
    }

    pub fn order(&self) -> u32 {
        self.law.order
    }

    pub fn index_set(&self) -> IndexSet {
        self.index_set
    }

    pub fn exceptions(&self) -> &BTreeMap<i64, Exception> {
        &self.exceptions
    }

    pub fn contains(&self, n: i64) -> bool {
        self.index_set.contains(n)
    }

    /// Eigenvalue and multiplicity at `n`.
    pub fn eigenvalue(&self, n: i64) -> Result<(Cplx, u32)> {
        if !self.contains(n) {
            return Err(Error::IndexOutOfSet(n));
        }
        Ok(match self.exceptions.get(&n) {
            Some(e) => (e.value, e.mult),
            None => (self.law.value(n), 1),
        })
    }

    /// Multiplicity at `n` (1 unless overridden by an exception).
    pub fn multiplicity(&self, n: i64) -> u32 {
        self.exceptions.get(&n).map_or(1, |e| e.mult)
    }

    /// Arguments of the two asymptotic directions.
    pub fn leading_args(&self) -> [Real; 2] {
        [
            self.law.leading(Branch::Positive).arg(),
            self.law.leading(Branch::Negative).arg(),
        ]
    }

    /// Smallest `k` beyond which law eigenvalues on the branch stay within
    /// half of `clearance` of the leading direction (and cannot vanish).
    fn branch_scan(&self, branch: Branch, clearance: Real) -> Result<u64> {
        let half = (0.5 * clearance).min(PI / 2.0);
        self.law.threshold(branch, 0.5 * half.sin().min(1.0))
    }

    /// Finitely many indices that must be inspected individually, given the
    /// critical directions; every other index follows its branch direction.
    fn finite_indices(&self, critical: &[Real]) -> Result<Vec<i64>> {
        let mut out: Vec<i64> = Vec::new();
        if self.contains(0) {
            out.push(0);
        }
        for b in Branch::BOTH {
            let dir = self.law.leading(b).arg();
            let clearance = critical
                .iter()
                .map(|&c| angular_distance(dir, c))
                .fold(PI, Real::min);
            let kmax = self.branch_scan(b, clearance)?;
            for k in 1..kmax {
                out.push(b.index(k));
            }
        }
        out.extend(self.exceptions.keys().copied());
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    fn check_invertible(&self) -> Result<()> {
        for n in self.finite_indices(&[])? {
            let (v, _) = self.eigenvalue(n)?;
            if v == Cplx::new(0.0, 0.0) || !v.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "eigenvalue at index {n} is zero or not finite (add an exception)"
                )));
            }
        }
        Ok(())
    }

    /// Arguments of the finitely many eigenvalues that are not already
    /// within tolerance of a leading direction, together with both leading
    /// directions. Suitable input for [`crate::complexcut::nudge_agmon`].
    pub fn eigen_args_near(&self, critical: &[Real]) -> Result<Vec<Real>> {
        let mut args: Vec<Real> = self.leading_args().to_vec();
        for n in self.finite_indices(critical)? {
            args.push(self.eigenvalue(n)?.0.arg());
        }
        Ok(args)
    }

    /// Errors unless no eigenvalue lies on the ray and the leading
    /// directions stay off it.
    pub fn agmon_check(&self, cut: SpectralCut) -> Result<()> {
        for dir in self.leading_args() {
            if on_ray(dir, cut.theta) {
                return Err(Error::NotAgmon { theta: cut.theta });
            }
        }
        for n in self.finite_indices(&[cut.theta])? {
            let (v, _) = self.eigenvalue(n)?;
            if on_ray(v.arg(), cut.theta) {
                return Err(Error::NotAgmon { theta: cut.theta });
            }
        }
        Ok(())
    }

    pub fn is_agmon(&self, cut: SpectralCut) -> bool {
        self.agmon_check(cut).is_ok()
    }

    /// Eigenvalue-wise `λ_n^s` at the cut.
    pub fn power_op(&self, s: Cplx, cut: SpectralCut) -> Result<EigenFamily> {
        self.agmon_check(cut)?;
        Ok(EigenFamily::Power {
            op: self.clone(),
            s,
            cut,
        })
    }

    /// Eigenvalue-wise `log_(θ) λ_n`.
    pub fn log_op(&self, cut: SpectralCut) -> Result<EigenFamily> {
        self.agmon_check(cut)?;
        Ok(EigenFamily::Log {
            op: self.clone(),
            cut,
        })
    }

    /// Eigenvalues squared; the law is squared symbolically.
    pub fn square_op(&self) -> SpectralOperator {
        self.multiply_commuting(self)
            .expect("an operator shares its own index set")
    }

    /// Eigenvalue-wise product of simultaneously diagonal operators.
    pub fn multiply_commuting(&self, other: &SpectralOperator) -> Result<SpectralOperator> {
        if self.index_set != other.index_set {
            return Err(Error::IndexSetMismatch);
        }
        let law = self.law.mul(&other.law);
        let mut exceptions = BTreeMap::new();
        let idx: std::collections::BTreeSet<i64> = self
            .exceptions
            .keys()
            .chain(other.exceptions.keys())
            .copied()
            .collect();
        for n in idx {
            let mult = match (self.exceptions.get(&n), other.exceptions.get(&n)) {
                (Some(a), Some(b)) if a.mult != b.mult => return Err(Error::IndexSetMismatch),
                (Some(a), _) => a.mult,
                (None, Some(b)) => b.mult,
                (None, None) => unreachable!(),
            };
            let value = self.eigenvalue(n)?.0 * other.eigenvalue(n)?.0;
            exceptions.insert(n, Exception { value, mult });
        }
        if self.contains(0) && !exceptions.contains_key(&0) {
            let value = self.law.value(0) * other.law.value(0);
            if law.value(0) != value {
                exceptions.insert(0, Exception { value, mult: 1 });
            }
        }
        SpectralOperator::new(law, self.index_set, exceptions)
    }

    /// Spectral projection onto the eigenvalues in an open solid angle.
    pub fn spectral_projection(&self, angle: SolidAngle) -> Result<ProjectionDescriptor> {
        if angle.width() >= 2.0 * PI {
            return Ok(ProjectionDescriptor {
                positive_branch: true,
                negative_branch: true,
                added: self.zero_index_entry(),
                removed: Vec::new(),
            });
        }
        let mut flags = [false; 2];
        for (i, b) in Branch::BOTH.into_iter().enumerate() {
            let dir = self.law.leading(b).arg();
            if angle.on_boundary(dir) {
                return Err(Error::InfiniteBothSides);
            }
            flags[i] = angle.contains_arg(dir);
        }
        let mut added = Vec::new();
        let mut removed = Vec::new();
        for n in self.finite_indices(&[angle.theta1, angle.theta2])? {
            let (v, mult) = self.eigenvalue(n)?;
            if angle.on_boundary(v.arg()) {
                return Err(Error::BoundaryEigenvalue(n));
            }
            let inside = angle.contains_arg(v.arg());
            let default = match n.signum() {
                1 => flags[0],
                -1 => flags[1],
                _ => false,
            };
            if inside && !default {
                added.push((n, mult));
            } else if !inside && default {
                removed.push((n, mult));
            }
        }
        Ok(ProjectionDescriptor {
            positive_branch: flags[0],
            negative_branch: flags[1],
            added,
            removed,
        })
    }

    fn zero_index_entry(&self) -> Vec<(i64, u32)> {
        if self.contains(0) {
            vec![(0, self.multiplicity(0))]
        } else {
            Vec::new()
        }
    }

    /// Numbers of eigenvalues, with multiplicity, on the positive and
    /// negative imaginary half-axes.
    pub fn count_imaginary_axis(&self) -> Result<(u64, u64)> {
        let axes = [PI / 2.0, -PI / 2.0];
        for dir in self.leading_args() {
            if axes.iter().any(|&a| on_ray(dir, a)) {
                return Err(Error::InfiniteOnAxis);
            }
        }
        let (mut plus, mut minus) = (0u64, 0u64);
        for n in self.finite_indices(&axes)? {
            let (v, mult) = self.eigenvalue(n)?;
            let on_axis = if self.exceptions.contains_key(&n) {
                v.re == 0.0
            } else {
                on_ray(v.arg(), PI / 2.0) || on_ray(v.arg(), -PI / 2.0)
            };
            if on_axis {
                if v.im > 0.0 {
                    plus += mult as u64;
                } else {
                    minus += mult as u64;
                }
            }
        }
        Ok((plus, minus))
    }

    /// True iff the eigenvalue multiset is invariant under conjugation.
    pub fn is_symmetric_spectrum(&self) -> bool {
        let reflect = if self.law.is_real() {
            false
        } else if self.law.is_reflection_conjugate() {
            true
        } else {
            return false;
        };
        let mut idx: Vec<i64> = self.exceptions.keys().copied().collect();
        if reflect {
            idx.extend(self.exceptions.keys().map(|n| -n));
        }
        idx.sort_unstable();
        idx.dedup();
        let mut values: Vec<(Real, Real, u32)> = Vec::new();
        for n in idx {
            if let Ok((v, m)) = self.eigenvalue(n) {
                values.push((v.re, v.im, m));
            }
        }
        let mut conj: Vec<(Real, Real, u32)> =
            values.iter().map(|&(re, im, m)| (re, -im, m)).collect();
        let key = |a: &(Real, Real, u32), b: &(Real, Real, u32)| {
            a.0.total_cmp(&b.0)
                .then(a.1.total_cmp(&b.1))
                .then(a.2.cmp(&b.2))
        };
        values.sort_by(key);
        conj.sort_by(key);
        values == conj
    }

    /// Leading coefficients are real on both branches.
    pub fn has_real_leading(&self) -> bool {
        Branch::BOTH
            .iter()
            .all(|&b| self.law.leading(b).im == 0.0)
    }

    /// True when no eigenvalue lies in the half-open sector `(a, b]`.
    pub fn sector_is_empty(&self, a: Real, b: Real) -> Result<bool> {
        let sector = SolidAngle::new(a, b)?;
        for dir in self.leading_args() {
            if sector.contains_arg(dir) || on_ray(dir, b) {
                return Ok(false);
            }
        }
        for n in self.finite_indices(&[a, b])? {
            let arg = self.eigenvalue(n)?.0.arg();
            if sector.contains_arg(arg) || on_ray(arg, b) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// An eigenvalue-wise family `n ↦ f_n` in the operator's basis.
#[derive(Debug, Clone, PartialEq)]
pub enum EigenFamily {
    Constant(Cplx),
    /// Values at finitely many indices, zero elsewhere.
    Finite(BTreeMap<i64, Cplx>),
    Power {
        op: SpectralOperator,
        s: Cplx,
        cut: SpectralCut,
    },
    Log {
        op: SpectralOperator,
        cut: SpectralCut,
    },
    /// Linear combination.
    Sum(Vec<(Cplx, EigenFamily)>),
}

impl EigenFamily {
    pub fn identity() -> Self {
        EigenFamily::Constant(Cplx::new(1.0, 0.0))
    }

    pub fn value(&self, n: i64) -> Result<Cplx> {
        Ok(match self {
            EigenFamily::Constant(c) => *c,
            EigenFamily::Finite(map) => map.get(&n).copied().unwrap_or_default(),
            EigenFamily::Power { op, s, cut } => cut.pow(op.eigenvalue(n)?.0, *s)?,
            EigenFamily::Log { op, cut } => cut.log(op.eigenvalue(n)?.0)?,
            EigenFamily::Sum(parts) => {
                let mut acc = Cplx::new(0.0, 0.0);
                for (c, f) in parts {
                    acc += c * f.value(n)?;
                }
                acc
            }
        })
    }

    pub fn scaled(self, c: Cplx) -> Self {
        EigenFamily::Sum(vec![(c, self)])
    }

    pub fn plus(self, other: EigenFamily) -> Self {
        let one = Cplx::new(1.0, 0.0);
        EigenFamily::Sum(vec![(one, self), (one, other)])
    }

    /// Odd-class logarithm `½(log_(θ) + log_(θ−mπ))` of an operator.
    pub fn symmetrized_log(op: &SpectralOperator, theta: Real) -> Result<Self> {
        let m = op.order() as Real;
        let half = Cplx::new(0.5, 0.0);
        Ok(EigenFamily::Sum(vec![
            (half, op.log_op(SpectralCut::new(theta))?),
            (half, op.log_op(SpectralCut::new(theta - m * PI))?),
        ]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    fn dc(c: Real) -> SpectralOperator {
        SpectralOperator::shifted_dirac(c64(c, 0.0)).unwrap()
    }

    #[test]
    fn eigenvalue_examples() {
        let d = dc(1.0 / 3.0);
        let (v, m) = d.eigenvalue(2).unwrap();
        assert!((v - c64(7.0 / 3.0, 0.0)).norm() < 1e-15 && m == 1);
        let e = d.with_exception(1, c64(0.0, 1.0), 1).unwrap();
        assert_eq!(e.eigenvalue(1).unwrap(), (c64(0.0, 1.0), 1));
        let l = SpectralOperator::laplace_type(c64(1.0, 0.0)).unwrap();
        assert_eq!(l.eigenvalue(-3).unwrap(), (c64(10.0, 0.0), 1));
        let nz = SpectralOperator::from_law(d.law().clone(), IndexSet::ZNonzero).unwrap();
        assert_eq!(nz.eigenvalue(0), Err(Error::IndexOutOfSet(0)));
    }

    #[test]
    fn zero_eigenvalue_rejected() {
        let law = SpectralLaw::new(1, vec![LawTerm::new(c64(1.0, 0.0), 1, 1)]).unwrap();
        assert!(SpectralOperator::from_law(law.clone(), IndexSet::Z).is_err());
        assert!(SpectralOperator::from_law(law, IndexSet::ZNonzero).is_ok());
        assert!(SpectralOperator::shifted_dirac(c64(-2.0, 0.0)).is_err());
    }

    #[test]
    fn power_and_log_examples() {
        let d = dc(0.5);
        let cut = SpectralCut::new(PI / 2.0);
        let p1 = d.power_op(c64(1.0, 0.0), cut).unwrap();
        for n in -5..5 {
            assert!((p1.value(n).unwrap() - d.eigenvalue(n).unwrap().0).norm() < 1e-14);
        }
        let half = d.power_op(c64(0.5, 0.0), cut).unwrap();
        let expected = c64(0.0, -(0.5f64).sqrt());
        assert!((half.value(-1).unwrap() - expected).norm() < 1e-15);
        let p0 = d.power_op(c64(0.0, 0.0), cut).unwrap();
        assert_eq!(p0.value(7).unwrap(), c64(1.0, 0.0));

        let one = d.with_exception(1, c64(1.0, 0.0), 1).unwrap();
        let l = one.log_op(SpectralCut::new(PI / 2.0)).unwrap();
        assert!(l.value(1).unwrap().norm() < 1e-15);

        let neg = d.with_exception(1, c64(-1.0, 0.0), 1).unwrap();
        let a = neg.log_op(SpectralCut::new(PI / 2.0 + 0.1)).unwrap().value(1).unwrap();
        let b = neg
            .log_op(SpectralCut::new(PI / 2.0 + 0.1 + 2.0 * PI))
            .unwrap()
            .value(1)
            .unwrap();
        assert!((b - a - c64(0.0, 2.0 * PI)).norm() < 1e-14);

        let imag = d.with_exception(1, c64(0.0, 1.0), 1).unwrap();
        let hi = imag.log_op(SpectralCut::new(PI - 0.1)).unwrap().value(1).unwrap();
        let lo = imag.log_op(SpectralCut::new(0.1)).unwrap().value(1).unwrap();
        assert!((hi - lo - c64(0.0, 2.0 * PI)).norm() < 1e-14);
    }

    #[test]
    fn power_op_requires_agmon() {
        let d = dc(1.0 / 3.0);
        assert_eq!(
            d.power_op(c64(0.5, 0.0), SpectralCut::new(PI)),
            Err(Error::NotAgmon { theta: PI })
        );
        let e = d.with_exception(2, c64(1.0, 1.0), 1).unwrap();
        assert!(e.log_op(SpectralCut::new(PI / 4.0)).is_err());
        assert!(e.log_op(SpectralCut::new(PI / 3.0)).is_ok());
    }

    #[test]
    fn square_examples() {
        let c = 0.3;
        let sq = dc(c).square_op();
        for n in -6..6 {
            let x = n as Real + c;
            assert!((sq.eigenvalue(n).unwrap().0 - c64(x * x, 0.0)).norm() < 1e-13);
        }
        let e = dc(c).with_exception(1, c64(0.0, 1.0), 3).unwrap().square_op();
        assert_eq!(e.eigenvalue(1).unwrap(), (c64(-1.0, 0.0), 3));
        assert_eq!(sq, dc(c).multiply_commuting(&dc(c)).unwrap());
    }

    #[test]
    fn sign_only_term_squares_correctly_at_zero() {
        let law = SpectralLaw::new(
            1,
            vec![
                LawTerm::new(c64(1.0, 0.0), 1, 1),
                LawTerm::new(c64(0.5, 0.0), 1, 0),
                LawTerm::new(c64(0.25, 0.0), 0, 0),
            ],
        )
        .unwrap();
        let op = SpectralOperator::from_law(law, IndexSet::Z).unwrap();
        let sq = op.square_op();
        for n in -4..4 {
            let v = op.eigenvalue(n).unwrap().0;
            assert!((sq.eigenvalue(n).unwrap().0 - v * v).norm() < 1e-14);
        }
    }

    #[test]
    fn multiply_examples() {
        let d = dc(0.25);
        let l = SpectralOperator::laplace_type(c64(2.0, 0.0)).unwrap();
        let p = d.multiply_commuting(&l).unwrap();
        assert_eq!(p.order(), 3);
        assert_eq!(p.law().leading(Branch::Positive), c64(1.0, 0.0));
        assert_eq!(p.law().leading(Branch::Negative), c64(-1.0, 0.0));
        let nz = SpectralOperator::from_law(d.law().clone(), IndexSet::ZNonzero).unwrap();
        assert_eq!(nz.multiply_commuting(&l), Err(Error::IndexSetMismatch));
        let de = d.with_exception(2, c64(0.0, 3.0), 1).unwrap();
        let le = l.with_exception(2, c64(5.0, 0.0), 1).unwrap();
        let pe = de.multiply_commuting(&le).unwrap();
        assert_eq!(pe.eigenvalue(2).unwrap().0, c64(0.0, 15.0));
    }

    #[test]
    fn projection_examples() {
        let d = dc(1.0 / 3.0);
        let upper = SolidAngle::new(PI / 4.0, 3.0 * PI / 4.0).unwrap();
        let p = d.spectral_projection(upper).unwrap();
        assert_eq!(p.kind(), ProjectionKind::Finite);
        assert_eq!(p.rank(), Some(0));
        let e = d.with_exception(1, c64(0.0, 1.0), 1).unwrap();
        let p = e.spectral_projection(upper).unwrap();
        assert_eq!(p.added, vec![(1, 1)]);
        let right = SolidAngle::new(-PI / 2.0, PI / 2.0).unwrap();
        let p = d.spectral_projection(right).unwrap();
        assert_eq!(p.kind(), ProjectionKind::HalfLattice);
        assert!(p.positive_branch && !p.negative_branch);
        assert_eq!(p.added, vec![(0, 1)]);
        for n in -20..20 {
            assert_eq!(p.contains_index(n), n as Real + 1.0 / 3.0 > 0.0);
        }
        let bad = SolidAngle::new(0.0, PI / 2.0).unwrap();
        assert_eq!(d.spectral_projection(bad), Err(Error::InfiniteBothSides));
        let hit = e.spectral_projection(SolidAngle::new(PI / 2.0, PI).unwrap());
        assert_eq!(hit, Err(Error::InfiniteBothSides));
        let e2 = d.with_exception(2, c64(1.0, 1.0), 1).unwrap();
        let hit = e2.spectral_projection(SolidAngle::new(PI / 4.0, PI / 2.0).unwrap());
        assert_eq!(hit, Err(Error::BoundaryEigenvalue(2)));
    }

    #[test]
    fn imaginary_axis_examples() {
        let d = dc(1.0 / 3.0);
        assert_eq!(d.count_imaginary_axis().unwrap(), (0, 0));
        let e = d
            .with_exception(1, c64(0.0, 1.0), 1)
            .unwrap()
            .with_exception(-1, c64(0.0, -1.0), 1)
            .unwrap();
        assert_eq!(e.count_imaginary_axis().unwrap(), (1, 1));
        let e2 = d.with_exception(2, c64(0.0, 3.0), 2).unwrap();
        assert_eq!(e2.count_imaginary_axis().unwrap().0, 2);
        let rot = SpectralLaw::new(1, vec![LawTerm::new(c64(0.0, 1.0), 0, 1)]).unwrap();
        let r = SpectralOperator::from_law(rot, IndexSet::ZNonzero).unwrap();
        assert_eq!(r.count_imaginary_axis(), Err(Error::InfiniteOnAxis));
    }

    #[test]
    fn symmetry_examples() {
        let d = dc(1.0 / 3.0);
        assert!(d.is_symmetric_spectrum());
        let e = d.with_exception(1, c64(0.0, 1.0), 1).unwrap();
        assert!(!e.is_symmetric_spectrum());
        let e = e.with_exception(-1, c64(0.0, -1.0), 1).unwrap();
        assert!(e.is_symmetric_spectrum());
        let e = e.with_exception(-1, c64(0.0, -1.0), 2).unwrap();
        assert!(!e.is_symmetric_spectrum());
        let complex = SpectralOperator::shifted_dirac(c64(0.3, 0.1)).unwrap();
        assert!(!complex.is_symmetric_spectrum());
        // i·n is conjugation-symmetric through n ↦ −n.
        let rot = SpectralLaw::new(
            1,
            vec![
                LawTerm::new(c64(0.0, 1.0), 1, 1),
                LawTerm::new(c64(2.0, 0.0), 0, 0),
            ],
        )
        .unwrap();
        let r = SpectralOperator::from_law(rot, IndexSet::Z).unwrap();
        assert!(r.is_symmetric_spectrum());
    }
}
