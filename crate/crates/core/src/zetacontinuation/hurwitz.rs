//! Hurwitz zeta `ζ_H(z, a) = Σ_{k≥0} (k + a)^{−z}` and its `z`-derivative
//! by Euler–Maclaurin summation.

use crate::{Cplx, Error, Real, Result};

/// Point where direct summation hands over to the Euler–Maclaurin tail.
///
/// Large enough for the asymptotic series to converge at this `z`, small
/// enough that the direct terms do not cancel catastrophically when
/// `Re z < 0`.
fn handover(z: Cplx) -> Real {
    let base = (8.0 + 2.0 * z.re).clamp(5.0, 15.0);
    base.max(0.8 * z.im.abs()).max(0.7 * z.norm())
}

/// `B_2, B_4, …, B_24`.
const BERNOULLI: [Real; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

/// `ζ_H(z, a)` for any `a > 0`.
pub fn hurwitz_zeta(z: Cplx, a: Real) -> Result<Cplx> {
    Ok(hurwitz_with_derivative(z, a)?.0)
}

/// `∂_z ζ_H(z, a)`; note `Σ ln(k + a)(k + a)^{−z} = −∂_z ζ_H(z, a)`.
pub fn hurwitz_zeta_dz(z: Cplx, a: Real) -> Result<Cplx> {
    Ok(hurwitz_with_derivative(z, a)?.1)
}

/// `(ζ_H(z, a), ∂_z ζ_H(z, a))` in one pass.
pub fn hurwitz_with_derivative(z: Cplx, a: Real) -> Result<(Cplx, Cplx)> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::InvalidInput(format!(
            "Hurwitz parameter must be positive, got {a}"
        )));
    }
    let zm1 = z - 1.0;
    if zm1.norm() < 1e-14 {
        return Err(Error::PoleAtOne);
    }
    let mut val = Cplx::new(0.0, 0.0);
    let mut der = Cplx::new(0.0, 0.0);
    let direct = (handover(z) - a).ceil().max(0.0) as usize;
    for k in 0..direct {
        let x = k as Real + a;
        let lx = x.ln();
        let t = (-z * lx).exp();
        val += t;
        der -= t * lx;
    }
    let x = direct as Real + a;
    let lx = x.ln();
    let xz = (-z * lx).exp();

    // ∫_x^∞ t^{−z} dt and the half endpoint term.
    let integral = xz * x / zm1;
    val += integral + 0.5 * xz;
    der += -integral * lx - integral / zm1 - 0.5 * xz * lx;

    // Σ_j B_{2j}/(2j)! · z(z+1)…(z+2j−2) · x^{−z−2j+1}
    let mut p = z;
    let mut dp = Cplx::new(1.0, 0.0);
    let mut pw = xz / x;
    let mut fact = 2.0;
    for (j, b) in BERNOULLI.iter().enumerate() {
        let j = j + 1;
        let coef = b / fact;
        val += coef * p * pw;
        der += coef * (dp - p * lx) * pw;
        for i in [2 * j - 1, 2 * j] {
            let zi = z + i as Real;
            dp = dp * zi + p;
            p *= zi;
        }
        pw /= x * x;
        fact *= ((2 * j + 1) * (2 * j + 2)) as Real;
    }
    Ok((val, der))
}
