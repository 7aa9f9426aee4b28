//! Laurent data at `s = 0` from samples on a circle.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::{Cplx, Error, Real, Result};

/// Laurent data of a function at `s = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LaurentAt0 {
    /// Coefficient of `1/s`.
    pub pole_coefficient: Cplx,
    /// Zero-order coefficient (the finite part).
    pub finite_part: Cplx,
    /// Coefficient of `s`, i.e. the derivative of the regular part at 0.
    pub derivative_at_0: Cplx,
    /// Coefficient of `1/s²`; should vanish.
    pub double_pole_coefficient: Cplx,
    /// Largest scaled discrepancy between the fits at `r` and `r/2`.
    pub discrepancy: Real,
    pub radius: Real,
}

/// Coefficients `c_d`, `d = −2..=3`, of the Laurent polynomial fitted to
/// `points` samples on `|s| = r`.
///
/// On equispaced nodes the monomials `s^d` are orthogonal, so the least
/// squares fit reduces to a discrete Cauchy integral.
fn coefficients<F>(f: &F, r: Real, points: usize) -> Result<[Cplx; 6]>
where
    F: Fn(Cplx) -> Result<Cplx>,
{
    let mut c = [Cplx::new(0.0, 0.0); 6];
    for j in 0..points {
        // Half-step offset keeps nodes off the real axis.
        let phase = TAU * (j as Real + 0.5) / points as Real;
        let s = Cplx::from_polar(r, phase);
        let v = f(s)?;
        for (slot, d) in c.iter_mut().zip(-2i32..=3) {
            *slot += v * s.powi(-d);
        }
    }
    for slot in &mut c {
        *slot /= points as Real;
    }
    Ok(c)
}

/// Fits at `r` and `r/2` and cross-validates the `s^{−1}, s^0, s^1` terms.
pub fn fit_laurent<F>(f: F, r: Real, points: usize, eps: Real) -> Result<LaurentAt0>
where
    F: Fn(Cplx) -> Result<Cplx>,
{
    if !(r > 0.0) || points < 8 {
        return Err(Error::InvalidInput(
            "Laurent fit needs a positive radius and at least 8 points".into(),
        ));
    }
    let outer = coefficients(&f, r, points)?;
    let inner = coefficients(&f, 0.5 * r, points)?;
    let scale = outer[1..4]
        .iter()
        .map(|c| c.norm())
        .fold(1.0, Real::max);
    let discrepancy = (1..4)
        .map(|i| (outer[i] - inner[i]).norm() / scale)
        .fold(0.0, Real::max);
    if !(discrepancy < eps) {
        return Err(Error::FitUnstable(format!(
            "radius cross-validation discrepancy {discrepancy:.3e} exceeds {eps:.1e}"
        )));
    }
    if outer[0].norm() > eps * scale {
        return Err(Error::FitUnstable(format!(
            "double pole detected, coefficient {:.3e}",
            outer[0].norm()
        )));
    }
    Ok(LaurentAt0 {
        pole_coefficient: outer[1],
        finite_part: outer[2],
        derivative_at_0: outer[3],
        double_pole_coefficient: outer[0],
        discrepancy,
        radius: r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    #[test]
    fn recovers_known_laurent_data() {
        // 2/s + 3 − s + e^s − 1 = 2/s + 3 + 0·s + s²/2 + …
        let f = |s: Cplx| Ok(2.0 / s + 3.0 - s + s.exp() - 1.0);
        let l = fit_laurent(f, 0.1, 24, 1e-10).unwrap();
        assert!((l.pole_coefficient - c64(2.0, 0.0)).norm() < 1e-13);
        assert!((l.finite_part - c64(3.0, 0.0)).norm() < 1e-13);
        assert!(l.derivative_at_0.norm() < 1e-12);
    }

    #[test]
    fn rejects_double_pole() {
        let f = |s: Cplx| Ok(1.0 / (s * s) + 1.0);
        assert!(matches!(fit_laurent(f, 0.1, 24, 1e-8), Err(Error::FitUnstable(_))));
    }

    #[test]
    fn rejects_inconsistent_radii() {
        // A pole inside the outer circle but outside the inner one.
        let f = |s: Cplx| Ok(1.0 / (s - 0.07));
        assert!(matches!(fit_laurent(f, 0.1, 24, 1e-8), Err(Error::FitUnstable(_))));
    }
}
