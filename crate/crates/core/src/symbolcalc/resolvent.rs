//! Resolvent symbols, complex powers and logarithms by residue calculus.
//!
//! At `ξ = ±1` each `r_{−m−j}` is a polynomial in `w = (σ_m − λ)^{−1}` with
//! periodic coefficients, so the contour integral defining `σ(A^s)` reduces
//! to residues at `λ = σ_m(x, ±1)`.

use std::sync::OnceLock;

use serde::Serialize;

use super::periodic::{grid_len, Periodic};
use super::symbol::{falling, ClassicalSymbol, HomogComponent, LogSymbol, Side};
use crate::complexcut::{branch_log, on_ray, SpectralCut};
use crate::{Cplx, Error, Real, Result};

/// Step of the central difference in `s` used for logarithms.
pub const LOG_STEP: Real = 1e-5;

/// `r_{−m−j}(x, ±1; λ) = Σ_p a_{j,p}(x) (σ_m(x, ±1) − λ)^{−p}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResolventSymbolFamily {
    order: Cplx,
    principal: [Periodic; 2],
    /// `coeffs[side][j][p]`.
    coeffs: [Vec<Vec<Periodic>>; 2],
}

fn poly_add(acc: &mut Vec<Periodic>, p: usize, term: &Periodic) {
    let n = term.bandwidth();
    while acc.len() <= p {
        acc.push(Periodic::zero(n));
    }
    acc[p] = &acc[p] + term;
}

/// `D_x Σ a_p w^p = Σ (D_x a_p) w^p − p a_p (D_x σ_m) w^{p+1}`.
fn poly_dx(poly: &[Periodic], d_principal: &Periodic) -> Vec<Periodic> {
    let mut out = Vec::new();
    for (p, a) in poly.iter().enumerate() {
        if a.fourier_norm() == 0.0 {
            continue;
        }
        poly_add(&mut out, p, &a.dx());
        if p > 0 {
            poly_add(&mut out, p + 1, &(a * d_principal).scale(Cplx::new(-(p as Real), 0.0)));
        }
    }
    out
}

/// `binom(s, q)` for complex `s`.
fn binom(s: Cplx, q: usize) -> Cplx {
    (0..q).fold(Cplx::new(1.0, 0.0), |acc, i| acc * (s - i as Real) / (i + 1) as Real)
}

impl ResolventSymbolFamily {
    pub fn order(&self) -> Cplx {
        self.order
    }

    pub fn depth(&self) -> usize {
        self.coeffs[0].len() - 1
    }

    /// Coefficient `a_{j,p}` at one side.
    pub fn coefficient(&self, side: Side, j: usize, p: usize) -> Option<&Periodic> {
        self.coeffs[side.index()].get(j).and_then(|r| r.get(p))
    }

    fn build(a: &ClassicalSymbol, depth: usize) -> Self {
        let n = a.bandwidth();
        let sides = Side::BOTH.map(|side| {
            // d[i][k] = (1/k!) ∂_ξ^k σ_{m−i} at this side.
            let d: Vec<Vec<Periodic>> = (0..=depth)
                .map(|i| {
                    let comp = &a.components()[i];
                    let mut fact = 1.0;
                    (0..=depth - i)
                        .map(|k| {
                            if k > 0 {
                                fact *= k as Real;
                            }
                            let xi_k = side.xi().powi(k as i32);
                            comp.side(side).scale(falling(comp.degree, k) * xi_k / fact)
                        })
                        .collect()
                })
                .collect();
            let lam0 = a.principal().side(side).clone();
            let dlam0 = lam0.dx();
            let mut r: Vec<Vec<Periodic>> =
                vec![vec![Periodic::zero(n), Periodic::constant(n, Cplx::new(1.0, 0.0))]];
            // dxr[l][k] = D_x^k r_l
            let mut dxr: Vec<Vec<Vec<Periodic>>> = vec![vec![r[0].clone()]];
            for j in 1..=depth {
                for (l, row) in dxr.iter_mut().enumerate() {
                    while row.len() <= j - l {
                        let next = poly_dx(row.last().expect("nonempty"), &dlam0);
                        row.push(next);
                    }
                }
                let mut acc: Vec<Periodic> = Vec::new();
                for (l, row) in dxr.iter().enumerate().take(j) {
                    for (k, dk) in row.iter().enumerate().take(j - l + 1) {
                        let i = j - l - k;
                        if d[i][k].fourier_norm() == 0.0 {
                            continue;
                        }
                        for (p, coef) in dk.iter().enumerate() {
                            poly_add(&mut acc, p, &(&d[i][k] * coef));
                        }
                    }
                }
                let mut rj = vec![Periodic::zero(n)];
                rj.extend(acc.iter().map(|c| -c));
                dxr.push(vec![rj.clone()]);
                r.push(rj);
            }
            (lam0, r)
        });
        let [(l0, r0), (l1, r1)] = sides;
        Self {
            order: a.order(),
            principal: [l0, l1],
            coeffs: [r0, r1],
        }
    }

    /// `r_{−m−j}(x, ±1; λ)` at a fixed `λ` off the principal values.
    pub fn eval(&self, j: usize, side: Side, lambda: Cplx) -> Result<Periodic> {
        let poly = self.coeffs[side.index()].get(j).ok_or(Error::DepthInsufficient {
            needed: j,
            available: self.depth(),
        })?;
        let w = self.principal[side.index()].try_map(|v| {
            let d = v - lambda;
            if d.norm() < 1e-300 {
                Err(Error::InvalidInput(format!("λ = {lambda} hits the principal symbol")))
            } else {
                Ok(d.inv())
            }
        })?;
        let n = w.bandwidth();
        let mut out = Periodic::zero(n);
        let mut wp = Periodic::constant(n, Cplx::new(1.0, 0.0));
        for a in poly {
            out = &out + &(a * &wp);
            wp = &wp * &w;
        }
        Ok(out)
    }

    /// Components `σ_{sm−j}(A^s)` at one side, without orientation calibration.
    fn power_side(&self, side: Side, s: Cplx, cut: SpectralCut, orient: Real) -> Result<Vec<Periodic>> {
        let lam0 = &self.principal[side.index()];
        let n = lam0.bandwidth();
        let m = grid_len(n);
        let logs = lam0
            .values_on(m)
            .into_iter()
            .map(|v| {
                if on_ray(v.arg(), cut.theta) {
                    return Err(Error::NotPrincipal { theta: cut.theta });
                }
                branch_log(v, cut)
            })
            .collect::<Result<Vec<_>>>()?;
        let pmax = self.coeffs[side.index()].iter().map(Vec::len).max().unwrap_or(1);
        // Residue of λ^s (σ_m − λ)^{−p} at σ_m: (−1)^{p+1} binom(s, p−1) σ_m^{s−p+1}.
        let residues: Vec<Vec<Cplx>> = (0..pmax)
            .map(|p| {
                if p == 0 {
                    return vec![Cplx::new(0.0, 0.0); m];
                }
                let sign = if p % 2 == 1 { orient } else { -orient };
                let b = binom(s, p - 1) * sign;
                logs.iter().map(|l| b * ((s - (p - 1) as Real) * l).exp()).collect()
            })
            .collect();
        Ok(self.coeffs[side.index()]
            .iter()
            .map(|poly| {
                let mut vals = vec![Cplx::new(0.0, 0.0); m];
                for (p, a) in poly.iter().enumerate().skip(1) {
                    for ((v, av), rv) in vals.iter_mut().zip(a.values_on(m)).zip(&residues[p]) {
                        *v += av * rv;
                    }
                }
                Periodic::from_grid(n, vals)
            })
            .collect())
    }

    fn power_with(&self, s: Cplx, cut: SpectralCut, orient: Real) -> Result<ClassicalSymbol> {
        let plus = self.power_side(Side::Plus, s, cut, orient)?;
        let minus = self.power_side(Side::Minus, s, cut, orient)?;
        let order = s * self.order;
        let comps = plus
            .into_iter()
            .zip(minus)
            .enumerate()
            .map(|(j, (p, q))| HomogComponent::new(order - j as Real, p, q))
            .collect();
        ClassicalSymbol::new(order, comps)
    }

    /// `σ(A^s_(θ))` to the family's depth.
    pub fn power(&self, s: Cplx, cut: SpectralCut) -> Result<ClassicalSymbol> {
        self.power_with(s, cut, orientation())
    }

    /// `σ(log_(θ) A) = m log|ξ| + Σ_j ∂_s σ_{sm−j}(A^s)|_{s=0}`, by a central
    /// difference with one Richardson step.
    pub fn log(&self, cut: SpectralCut) -> Result<LogSymbol> {
        let diff = |h: Real| -> Result<Vec<HomogComponent>> {
            let up = self.power(Cplx::new(h, 0.0), cut)?;
            let down = self.power(Cplx::new(-h, 0.0), cut)?;
            let scale = Cplx::new(0.5 / h, 0.0);
            Ok(up
                .components()
                .iter()
                .zip(down.components())
                .enumerate()
                .map(|(j, (u, d))| {
                    HomogComponent::new(
                        Cplx::new(-(j as Real), 0.0),
                        (&u.plus - &d.plus).scale(scale),
                        (&u.minus - &d.minus).scale(scale),
                    )
                })
                .collect())
        };
        let coarse = diff(LOG_STEP)?;
        let fine = diff(0.5 * LOG_STEP)?;
        let comps = coarse
            .iter()
            .zip(&fine)
            .map(|(c, f)| {
                HomogComponent::new(
                    f.degree,
                    (&f.plus.scale(Cplx::new(4.0, 0.0)) - &c.plus).scale(Cplx::new(1.0 / 3.0, 0.0)),
                    (&f.minus.scale(Cplx::new(4.0, 0.0)) - &c.minus).scale(Cplx::new(1.0 / 3.0, 0.0)),
                )
            })
            .collect();
        LogSymbol::new(self.order, ClassicalSymbol::new(Cplx::new(0.0, 0.0), comps)?)
    }
}

/// Orientation of the spectral contour, fixed once by a probe: with the
/// right orientation `s = 1` reproduces the symbol and `s = 0` the identity.
fn orientation() -> Real {
    static ORIENT: OnceLock<Real> = OnceLock::new();
    *ORIENT.get_or_init(|| {
        let n = 2;
        let probe = ClassicalSymbol::polynomial(
            &[
                Periodic::from_modes(n, &[(0, Cplx::new(2.0, 0.0)), (1, Cplx::new(0.25, 0.0))]),
                Periodic::constant(n, Cplx::new(1.0, 0.0)),
            ],
            3,
        )
        .expect("probe symbol");
        let fam = ResolventSymbolFamily::build(&probe, 3);
        let cut = SpectralCut::new(std::f64::consts::FRAC_PI_2);
        let id = ClassicalSymbol::identity(n, 3);
        let dev = |x: &ClassicalSymbol, y: &ClassicalSymbol| {
            x.components()
                .iter()
                .zip(y.components())
                .map(|(a, b)| (&a.plus - &b.plus).fourier_norm() + (&a.minus - &b.minus).fourier_norm())
                .fold(0.0, Real::max)
        };
        for orient in [1.0, -1.0] {
            let one = fam.power_with(Cplx::new(1.0, 0.0), cut, orient).expect("probe power");
            let zero = fam.power_with(Cplx::new(0.0, 0.0), cut, orient).expect("probe power");
            if dev(&one, &probe) < 1e-10 && dev(&zero, &id) < 1e-10 {
                return orient;
            }
        }
        panic!("contour orientation calibration failed: neither orientation reproduces A and Id");
    })
}

fn check_input(a: &ClassicalSymbol, depth: usize) -> Result<()> {
    if !(a.order().re > 0.0) {
        return Err(Error::InvalidInput(format!(
            "resolvent needs positive order, got {}",
            a.order()
        )));
    }
    if depth > a.depth() {
        return Err(Error::DepthInsufficient {
            needed: depth,
            available: a.depth(),
        });
    }
    if !a.is_elliptic() {
        return Err(Error::NotElliptic);
    }
    Ok(())
}

/// Resolvent symbol family of an elliptic scalar symbol to depth `J`.
pub fn resolvent_symbols(a: &ClassicalSymbol, depth: usize) -> Result<ResolventSymbolFamily> {
    check_input(a, depth)?;
    Ok(ResolventSymbolFamily::build(a, depth))
}

/// `σ(A^s_(θ))`, components `0..=J`.
pub fn power_symbol(a: &ClassicalSymbol, s: Cplx, cut: SpectralCut, depth: usize) -> Result<ClassicalSymbol> {
    resolvent_symbols(a, depth)?.power(s, cut)
}

/// `σ(log_(θ) A)` with `γ = m`, components of degree `0, −1, …, −J`.
pub fn log_symbol(a: &ClassicalSymbol, cut: SpectralCut, depth: usize) -> Result<LogSymbol> {
    resolvent_symbols(a, depth)?.log(cut)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use std::f64::consts::PI;

    fn konst(n: usize, c: Cplx) -> Periodic {
        Periodic::constant(n, c)
    }

    fn dirac(c: Cplx, depth: usize) -> ClassicalSymbol {
        ClassicalSymbol::polynomial(&[konst(2, c), konst(2, c64(1.0, 0.0))], depth).unwrap()
    }

    fn laplace(a2: Real, depth: usize) -> ClassicalSymbol {
        let z = Periodic::zero(2);
        ClassicalSymbol::polynomial(&[konst(2, c64(a2, 0.0)), z, konst(2, c64(1.0, 0.0))], depth).unwrap()
    }

    fn variable(n: usize, depth: usize) -> ClassicalSymbol {
        let f = Periodic::from_modes(n, &[(0, c64(0.4, 0.1)), (1, c64(0.15, 0.0)), (-2, c64(0.0, 0.1))]);
        ClassicalSymbol::polynomial(&[f, konst(n, c64(1.0, 0.0))], depth).unwrap()
    }

    fn max_dev(x: &ClassicalSymbol, y: &ClassicalSymbol) -> Real {
        x.components()
            .iter()
            .zip(y.components())
            .map(|(a, b)| (&a.plus - &b.plus).fourier_norm().max((&a.minus - &b.minus).fourier_norm()))
            .fold(0.0, Real::max)
    }

    #[test]
    fn constant_dirac_resolvent_resums() {
        // Σ_j r_{−1−j}(±1; λ) = (±1 + c − λ)^{−1}
        let c = c64(0.3, 0.0);
        let fam = resolvent_symbols(&dirac(c, 20), 20).unwrap();
        let lam = c64(0.2, 3.0);
        for side in Side::BOTH {
            let total: Cplx = (0..=20).map(|j| fam.eval(j, side, lam).unwrap().mean()).sum();
            let want = (side.xi() + c - lam).inv();
            assert!((total - want).norm() < 1e-12);
        }
    }

    #[test]
    fn laplace_principal_resolvent() {
        let fam = resolvent_symbols(&laplace(0.5, 4), 4).unwrap();
        let lam = c64(-1.0, 0.5);
        for side in Side::BOTH {
            let r = fam.eval(0, side, lam).unwrap().mean();
            assert!((r - (c64(1.0, 0.0) - lam).inv()).norm() < 1e-15);
        }
    }

    #[test]
    fn parametrix_identity_variable_coefficients() {
        // Σ_{k+i+l=j} (1/k!) ∂_ξ^k σ_{m−i}(A − λ) D_x^k r_{−m−l} = δ_{j0}
        let depth = 5;
        let a = variable(12, depth);
        let fam = resolvent_symbols(&a, depth).unwrap();
        let lam = c64(0.3, 2.0);
        for side in Side::BOTH {
            let r: Vec<Periodic> = (0..=depth).map(|j| fam.eval(j, side, lam).unwrap()).collect();
            for j in 0..=depth {
                let mut total = Periodic::zero(12);
                for i in 0..=j {
                    for k in 0..=(j - i) {
                        let l = j - i - k;
                        let comp = a.component(i).unwrap().d_xi(k);
                        let mut sig = comp.side(side).clone();
                        if i == 0 && k == 0 {
                            sig = &sig - &konst(12, lam);
                        }
                        let mut dr = r[l].clone();
                        for _ in 0..k {
                            dr = dr.dx();
                        }
                        let fact: Real = (1..=k).map(|v| v as Real).product();
                        total = &total + &(&sig * &dr).scale(c64(1.0 / fact, 0.0));
                    }
                }
                let want = if j == 0 { 1.0 } else { 0.0 };
                assert!((&total - &konst(12, c64(want, 0.0))).fourier_norm() < 1e-10, "j = {j}");
            }
        }
    }

    #[test]
    fn powers_of_constant_dirac_match_binomial_series() {
        // (ξ + c)^s = |ξ|^s (±1)^s Σ_j binom(s, j) (±c)^j |ξ|^{−j}
        let c = c64(0.3, 0.2);
        let cut = SpectralCut::new(PI / 2.0);
        for s in [c64(0.5, 0.0), c64(-1.3, 0.7), c64(2.0, 0.0)] {
            let p = power_symbol(&dirac(c, 6), s, cut, 6).unwrap();
            let minus_phase = (s * c64(0.0, -PI)).exp();
            for (j, comp) in p.components().iter().enumerate() {
                let b = binom(s, j);
                assert!((comp.plus.mean() - b * c.powu(j as u32)).norm() < 1e-12);
                assert!((comp.minus.mean() - minus_phase * b * (-c).powu(j as u32)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn power_examples() {
        let cut = SpectralCut::new(PI / 2.0);
        let xi = ClassicalSymbol::polynomial(&[Periodic::zero(2), konst(2, c64(1.0, 0.0))], 3).unwrap();
        let s = c64(0.7, -0.4);
        let p = power_symbol(&xi, s, cut, 3).unwrap();
        let want = crate::complexcut::complex_power(c64(-1.0, 0.0), s, cut).unwrap();
        assert!((p.component(0).unwrap().minus.mean() - want).norm() < 1e-14);
        assert!((p.component(0).unwrap().plus.mean() - c64(1.0, 0.0)).norm() < 1e-14);
        let a = variable(8, 4);
        let one = power_symbol(&a, c64(1.0, 0.0), cut, 4).unwrap();
        assert!(max_dev(&one, &a) < 1e-12);
        let zero = power_symbol(&a, c64(0.0, 0.0), cut, 4).unwrap();
        assert!(max_dev(&zero, &ClassicalSymbol::identity(8, 4)) < 1e-12);
    }

    #[test]
    fn power_group_law_variable_coefficients() {
        let depth = 5;
        let a = variable(16, depth);
        let cut = SpectralCut::new(PI / 2.0);
        let fam = resolvent_symbols(&a, depth).unwrap();
        let s1 = c64(0.4, 0.3);
        let s2 = c64(-1.1, 0.2);
        let lhs = super::super::symbol::compose(&fam.power(s1, cut).unwrap(), &fam.power(s2, cut).unwrap(), depth)
            .unwrap();
        let rhs = fam.power(s1 + s2, cut).unwrap();
        assert!(max_dev(&lhs, &rhs) < 1e-10);
        let sq = super::super::symbol::compose(&a, &a, depth).unwrap();
        assert!(max_dev(&fam.power(c64(2.0, 0.0), cut).unwrap(), &sq) < 1e-10);
    }

    /// `∂_s[binom(s, q) σ^{s−q}]_{s=0}` in closed form: `log σ` for `q = 0`,
    /// `(−1)^{q−1}/q · σ^{−q}` otherwise.
    fn exact_log(fam: &ResolventSymbolFamily, cut: SpectralCut) -> Vec<[Periodic; 2]> {
        let o = orientation();
        (0..=fam.depth())
            .map(|j| {
                Side::BOTH.map(|side| {
                    let lam0 = &fam.principal[side.index()];
                    let mut total = Periodic::zero(lam0.bandwidth());
                    for (p, a) in fam.coeffs[side.index()][j].iter().enumerate().skip(1) {
                        let q = p - 1;
                        let sign = if p % 2 == 1 { o } else { -o };
                        let d = lam0.map(|v| {
                            if q == 0 {
                                branch_log(v, cut).unwrap()
                            } else {
                                let sgn = if q % 2 == 1 { 1.0 } else { -1.0 };
                                v.powi(-(q as i32)) * (sgn / q as Real)
                            }
                        });
                        total = &total + &(a * &d).scale(c64(sign, 0.0));
                    }
                    total
                })
            })
            .collect()
    }

    #[test]
    fn log_difference_matches_exact_derivative() {
        let depth = 5;
        let a = variable(12, depth);
        let fam = resolvent_symbols(&a, depth).unwrap();
        for theta in [PI / 2.0, -PI / 2.0] {
            let cut = SpectralCut::new(theta);
            let l = fam.log(cut).unwrap();
            assert_eq!(l.gamma, c64(1.0, 0.0));
            for (comp, [p, m]) in l.body.components().iter().zip(exact_log(&fam, cut)) {
                assert!((&comp.plus - &p).fourier_norm() < 1e-9);
                assert!((&comp.minus - &m).fourier_norm() < 1e-9);
            }
        }
    }

    #[test]
    fn log_examples() {
        let xi = ClassicalSymbol::polynomial(&[Periodic::zero(2), konst(2, c64(1.0, 0.0))], 2).unwrap();
        let l = log_symbol(&xi, SpectralCut::new(PI / 2.0), 2).unwrap();
        let c0 = l.body.component(0).unwrap();
        assert!(c0.plus.mean().norm() < 1e-10);
        assert!((c0.minus.mean() - c64(0.0, -PI)).norm() < 1e-10);
        let l = log_symbol(&xi, SpectralCut::new(-PI / 2.0), 2).unwrap();
        assert!((l.body.component(0).unwrap().plus.mean() - c64(0.0, -2.0 * PI)).norm() < 1e-10);
        // log(ξ² + a²) = 2 log|ξ| + a²ξ^{−2} − a⁴ξ^{−4}/2 + …
        let a2 = 0.6;
        let l = log_symbol(&laplace(a2, 6), SpectralCut::new(PI), 6).unwrap();
        assert_eq!(l.gamma, c64(2.0, 0.0));
        let want = [0.0, 0.0, a2, 0.0, -a2 * a2 / 2.0, 0.0, a2.powi(3) / 3.0];
        for (comp, w) in l.body.components().iter().zip(want) {
            for side in Side::BOTH {
                assert!((comp.side(side).mean() - c64(w, 0.0)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn errors() {
        let flat = ClassicalSymbol::polynomial(&[konst(2, c64(1.0, 0.0))], 2).unwrap();
        assert!(resolvent_symbols(&flat, 2).is_err());
        let xi = ClassicalSymbol::polynomial(&[Periodic::zero(2), konst(2, c64(1.0, 0.0))], 2).unwrap();
        assert_eq!(
            power_symbol(&xi, c64(0.5, 0.0), SpectralCut::new(0.0), 2),
            Err(Error::NotPrincipal { theta: 0.0 })
        );
        assert!(matches!(
            power_symbol(&xi, c64(0.5, 0.0), SpectralCut::new(1.0), 3),
            Err(Error::DepthInsufficient { .. })
        ));
        // Principal symbol 1 + e^{ix} vanishes at x = π.
        let degenerate = ClassicalSymbol::polynomial(
            &[
                konst(2, c64(1.0, 0.0)),
                Periodic::from_modes(2, &[(0, c64(1.0, 0.0)), (1, c64(1.0, 0.0))]),
            ],
            2,
        )
        .unwrap();
        assert_eq!(resolvent_symbols(&degenerate, 2), Err(Error::NotElliptic));
    }
}
