//! Identities built on powers and logarithms: the odd-class power relation,
//! the multiplicative anomaly integrand and the residue coboundary.

use std::f64::consts::PI;

use serde::Serialize;

use super::resolvent::{log_symbol, resolvent_symbols, ResolventSymbolFamily};
use super::symbol::{commutator_symbol, compose, parity, wodzicki_res, ClassicalSymbol, Symbol};
use crate::complexcut::SpectralCut;
use crate::{Cplx, Error, Real, Result};

/// `max_j ‖σ_{sm−j}(A^s_(θ))(·, −1) − (−1)^j e^{imsπ} σ_{sm−j}(A^s_(θ−mπ))(·, 1)‖`.
pub fn check_asodd(a: &ClassicalSymbol, cut: SpectralCut, s: Cplx, depth: usize) -> Result<Real> {
    let m = a.order();
    parity(m)?;
    let fam = resolvent_symbols(a, depth)?;
    let p1 = fam.power(s, cut)?;
    let p2 = fam.power(s, SpectralCut::new(cut.theta - m.re * PI))?;
    let phase = (Cplx::new(0.0, PI) * m * s).exp();
    let mut dev: Real = 0.0;
    for (j, (c1, c2)) in p1.components().iter().zip(p2.components()).enumerate() {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        dev = dev.max((&c1.minus - &c2.plus.scale(phase * sign)).fourier_norm());
    }
    Ok(dev)
}

/// Angles entering the anomaly integrand at one value of `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnomalyCuts {
    pub theta_a: Real,
    /// Cut for `log(A^t_(θ_A) B)`.
    pub alpha: Real,
    /// Cut for `log(A^t_(θ_A − m_Aπ) B)`.
    pub beta: Real,
}

impl AnomalyCuts {
    /// `α(t) = θ_B + tεθ_A` and `β(t) = α(t) − (m_A t + m_B)π`, with `ε = ±1`
    /// as `θ_A` lies in `(0, π)` or `(π, 2π)`.
    pub fn commuting_path(theta_a: Real, theta_b: Real, m_a: Real, m_b: Real, t: Real) -> Result<Self> {
        let alpha0 = crate::regdet::default_theta_ab(theta_a, theta_b)?;
        let eps = (alpha0 - theta_b) / theta_a;
        let alpha = theta_b + t * eps * theta_a;
        Ok(Self {
            theta_a,
            alpha,
            beta: alpha - (m_a * t + m_b) * PI,
        })
    }
}

fn real_order(sym: &ClassicalSymbol) -> Result<Real> {
    let m = sym.order();
    if m.im != 0.0 || !(m.re > 0.0) {
        return Err(Error::InvalidInput(format!("need a positive real order, got {m}")));
    }
    Ok(m.re)
}

/// `log_(angle)(A^t_(θ) B)/(m_A t + m_B) − log_(θ) A/m_A`, a classical symbol of order 0.
fn log_difference(
    fam_a: &ResolventSymbolFamily,
    b: &ClassicalSymbol,
    theta: Real,
    angle: Real,
    t: Real,
    depth: usize,
) -> Result<ClassicalSymbol> {
    let m_a = fam_a.order().re;
    let cut_a = SpectralCut::new(theta);
    let prod = compose(&fam_a.power(Cplx::new(t, 0.0), cut_a)?, b, depth)?;
    let ord = prod.order();
    let lp = log_symbol(&prod, SpectralCut::new(angle), depth)?;
    let la = fam_a.log(cut_a)?;
    lp.scale(ord.inv())
        .sub(&la.scale(Cplx::new(1.0 / m_a, 0.0)))?
        .into_classical(1e-12)
}

/// `Res(U(t)² + V(t)²)`.
pub fn anomaly_integrand(
    a: &ClassicalSymbol,
    b: &ClassicalSymbol,
    cuts: AnomalyCuts,
    t: Real,
    depth: usize,
) -> Result<Cplx> {
    let m_a = real_order(a)?;
    real_order(b)?;
    let fam_a = resolvent_symbols(a, depth)?;
    let u = log_difference(&fam_a, b, cuts.theta_a, cuts.alpha, t, depth)?;
    let v = log_difference(&fam_a, b, cuts.theta_a - m_a * PI, cuts.beta, t, depth)?;
    let sq = compose(&u, &u, depth)?.add(&compose(&v, &v, depth)?)?;
    wodzicki_res(&sq)
}

/// `−(1/m) Res([log_(θ) Q, A]∘B)`, the weighted trace of a commutator.
pub fn residue_coboundary(
    q: &ClassicalSymbol,
    cut: SpectralCut,
    a: &ClassicalSymbol,
    b: &ClassicalSymbol,
    depth: usize,
) -> Result<Cplx> {
    let m = real_order(q)?;
    let lq = log_symbol(q, cut, depth)?;
    let c = commutator_symbol(&Symbol::Log(lq), &Symbol::Classical(a.clone()), depth)?;
    Ok(-wodzicki_res(&compose(&c, b, depth)?)? / m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::symbolcalc::Periodic;

    fn konst(n: usize, c: Real) -> Periodic {
        Periodic::constant(n, c64(c, 0.0))
    }

    fn f(n: usize) -> Periodic {
        Periodic::from_modes(n, &[(0, c64(0.3, 0.0)), (1, c64(0.1, 0.05)), (-1, c64(0.1, -0.05))])
    }

    fn g(n: usize) -> Periodic {
        Periodic::from_modes(n, &[(0, c64(0.5, 0.0)), (2, c64(0.0, 0.1)), (-3, c64(0.07, 0.0))])
    }

    #[test]
    fn check_asodd_examples() {
        let n = 8;
        let xi = ClassicalSymbol::polynomial(&[Periodic::zero(n), konst(n, 1.0)], 4).unwrap();
        for s in [c64(0.5, 0.0), c64(-0.7, 1.3)] {
            assert!(check_asodd(&xi, SpectralCut::new(0.75 * PI), s, 4).unwrap() < 1e-10);
        }
        let lap = ClassicalSymbol::polynomial(&[konst(n, 0.49), Periodic::zero(n), konst(n, 1.0)], 4).unwrap();
        assert!(check_asodd(&lap, SpectralCut::new(PI), c64(0.5, 0.0), 4).unwrap() < 1e-8);
        let var = ClassicalSymbol::polynomial(&[f(n), konst(n, 1.0)], 4).unwrap();
        assert_eq!(check_asodd(&var, SpectralCut::new(0.75 * PI), c64(0.0, 0.0), 4).unwrap(), 0.0);
        assert!(check_asodd(&var, SpectralCut::new(0.75 * PI), c64(1.5, -0.5), 4).unwrap() < 1e-10);
    }

    #[test]
    fn coboundary_constant_coefficients_vanishes() {
        let n = 4;
        let q = ClassicalSymbol::polynomial(&[konst(n, 0.2), konst(n, 1.0)], 6).unwrap();
        let a = ClassicalSymbol::polynomial(&[konst(n, 1.5), konst(n, 0.3), konst(n, 1.0)], 6).unwrap();
        let b = ClassicalSymbol::polynomial(&[konst(n, -0.4), konst(n, 2.0)], 6).unwrap();
        let r = residue_coboundary(&q, SpectralCut::new(PI / 2.0), &a, &b, 6).unwrap();
        assert!(r.norm() < 1e-14);
    }

    /// Order-`order` symbol whose components satisfy the odd-class rule when
    /// `odd`, and the opposite parity otherwise.
    fn pseudo(n: usize, order: i64, odd: bool, depth: usize) -> ClassicalSymbol {
        let comps = (0..=depth)
            .map(|j| {
                let h = order - j as i64;
                let lead = if j == 0 { 1.0 } else { 0.3 / j as Real };
                let p = &f(n) + &konst(n, lead);
                let s = if (h % 2 == 0) == odd { 1.0 } else { -1.0 };
                crate::symbolcalc::HomogComponent::new(c64(h as Real, 0.0), p.clone(), p.scale(c64(s, 0.0)))
            })
            .collect();
        ClassicalSymbol::new(c64(order as Real, 0.0), comps).unwrap()
    }

    #[test]
    fn coboundary_symmetrizes_to_zero() {
        let n = 12;
        let q = ClassicalSymbol::polynomial(&[f(n), konst(n, 1.0)], 6).unwrap();
        let b = ClassicalSymbol::polynomial(&[Periodic::zero(n), g(n)], 6).unwrap();
        let theta = PI / 2.0;
        let sym = |a: &ClassicalSymbol| {
            let r1 = residue_coboundary(&q, SpectralCut::new(theta), a, &b, 6).unwrap();
            let r2 = residue_coboundary(&q, SpectralCut::new(theta - PI), a, &b, 6).unwrap();
            0.5 * (r1 + r2)
        };
        assert!(sym(&pseudo(n, 0, true, 6)).norm() < 1e-8);
        assert!(sym(&ClassicalSymbol::polynomial(&[f(n)], 6).unwrap()).norm() < 1e-8);
        // Without the odd-class rule on A the functional is not tracial.
        assert!(sym(&pseudo(n, 0, false, 6)).norm() > 1e-4);
    }

    #[test]
    fn anomaly_vanishes_for_odd_class_pair() {
        let n = 12;
        let depth = 4;
        let a = ClassicalSymbol::polynomial(&[f(n), konst(n, 1.0)], depth).unwrap();
        let b = ClassicalSymbol::polynomial(&[g(n), Periodic::zero(n), konst(n, 1.0)], depth).unwrap();
        for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let cuts = AnomalyCuts::commuting_path(0.75 * PI, PI / 8.0, 1.0, 2.0, t).unwrap();
            let r = anomaly_integrand(&a, &b, cuts, t, depth).unwrap();
            assert!(r.norm() < 1e-8, "t = {t}: {r}");
        }
    }

    #[test]
    fn anomaly_same_operator() {
        let n = 8;
        let a = ClassicalSymbol::polynomial(&[f(n), konst(n, 1.0)], 3).unwrap();
        let cuts = AnomalyCuts::commuting_path(0.75 * PI, 0.75 * PI, 1.0, 1.0, 0.5).unwrap();
        assert!(anomaly_integrand(&a, &a, cuts, 0.5, 3).unwrap().norm() < 1e-8);
    }
}
