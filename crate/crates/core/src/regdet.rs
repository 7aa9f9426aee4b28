//! ζ-regularized and symmetrized determinants of model operators.
//!
//! `log Det_(θ) A = d/ds|₀ TR(A^s_(θ))` and
//! `log Det^sym_(θ) A = ½(log Det_(θ) A + log Det_(θ−mπ) A)`.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::complexcut::SpectralCut;
use crate::spectralmodel::{Branch, SpectralOperator};
use crate::zetacontinuation::{ContinuationParams, LaurentAt0, ZetaFunction};
use crate::{Cplx, Error, Real, Result};

/// Tolerances and continuation knobs for the determinant engine.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetConfig {
    pub continuation: ContinuationParams,
    /// Relative tolerance for determinant identities.
    pub eps_det: Real,
    /// Tolerance for membership of a log-difference in iπℤ.
    pub eps_angle: Real,
    /// Tolerance for `ratio = ±1` in multiplicativity checks.
    pub eps_mult: Real,
    /// A pole coefficient above this (relative) aborts `log_det`.
    pub eps_pole: Real,
}

impl Default for DetConfig {
    fn default() -> Self {
        Self {
            continuation: ContinuationParams::default(),
            eps_det: 1e-8,
            eps_angle: 1e-6,
            eps_mult: 1e-5,
            eps_pole: 1e-8,
        }
    }
}

/// A log-determinant with the angles and fits that produced it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DetResult {
    pub log_det: Cplx,
    /// `exp(log_det)`.
    pub value: Cplx,
    pub angle_used: Real,
    /// `θ − mπ` for symmetrized results.
    pub partner_angle: Option<Real>,
    /// Laurent fits of `TR(A^s)` at each angle used.
    pub fits: Vec<LaurentAt0>,
}

/// `log Det_(θ) A`.
pub fn log_det(a: &SpectralOperator, cut: SpectralCut, cfg: &DetConfig) -> Result<DetResult> {
    let fit = ZetaFunction::new(a, cut)?
        .with_params(cfg.continuation)?
        .laurent_at_0()?;
    let scale = fit.finite_part.norm().max(1.0);
    if fit.pole_coefficient.norm() > cfg.eps_pole * scale {
        return Err(Error::PoleAtZero(format!("{:.6e}", fit.pole_coefficient)));
    }
    Ok(DetResult {
        log_det: fit.derivative_at_0,
        value: fit.derivative_at_0.exp(),
        angle_used: cut.theta,
        partner_angle: None,
        fits: vec![fit],
    })
}

/// `log Det^sym_(θ) A`.
pub fn log_det_sym(a: &SpectralOperator, theta: Real, cfg: &DetConfig) -> Result<DetResult> {
    let partner = theta - a.order() as Real * PI;
    let d1 = log_det(a, SpectralCut::new(theta), cfg)?;
    let d2 = log_det(a, SpectralCut::new(partner), cfg)?;
    let log_det = 0.5 * (d1.log_det + d2.log_det);
    Ok(DetResult {
        log_det,
        value: log_det.exp(),
        angle_used: theta,
        partner_angle: Some(partner),
        fits: d1.fits.into_iter().chain(d2.fits).collect(),
    })
}

/// Outcome of `Det^sym_(2θ)(A²) = (Det^sym_(θ) A)²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetSquareCheck {
    pub lhs: Cplx,
    pub rhs: Cplx,
    pub relative_deviation: Real,
    pub pass: bool,
}

pub fn check_det_square(a: &SpectralOperator, theta: Real, cfg: &DetConfig) -> Result<DetSquareCheck> {
    if a.order() % 2 == 0 {
        return Err(Error::OddOrderRequired);
    }
    let sq = a.square_op();
    let lhs = log_det_sym(&sq, 2.0 * theta, cfg)?.value;
    let rhs = (2.0 * log_det_sym(a, theta, cfg)?.log_det).exp();
    let relative_deviation = (lhs - rhs).norm() / rhs.norm();
    Ok(DetSquareCheck {
        lhs,
        rhs,
        relative_deviation,
        pass: relative_deviation < cfg.eps_det,
    })
}

/// Which hypothesis made a pair of angles admissible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AngleHypothesis {
    /// Finitely many eigenvalues in both swept sectors.
    FiniteInSectors,
    /// All but finitely many eigenvalues in the union of the swept sectors.
    CofiniteInUnion,
    /// Even order: the difference is reported, not asserted.
    EvenOrder,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AngleDependence {
    /// `log Det^sym_(θ1) − log Det^sym_(θ2)`.
    pub difference: Cplx,
    /// Nearest `k` with `difference ≈ iπk`.
    pub nearest_multiple: i64,
    pub residual: Real,
    pub multiple_of_i_pi: bool,
    pub hypothesis: AngleHypothesis,
}

/// Closed sector `[a, b]` contains the direction.
fn in_closed_sector(arg: Real, a: Real, b: Real) -> bool {
    let phi = a + (arg - a).rem_euclid(TAU);
    phi <= b || (arg - a).rem_euclid(TAU) > TAU - 1e-12
}

pub fn check_angle_dependence(
    a: &SpectralOperator,
    theta1: Real,
    theta2: Real,
    cfg: &DetConfig,
) -> Result<AngleDependence> {
    let hypothesis = if a.order() % 2 == 0 {
        AngleHypothesis::EvenOrder
    } else {
        angle_hypothesis(a, theta1, theta2)?
    };
    let l1 = log_det_sym(a, theta1, cfg)?.log_det;
    let l2 = log_det_sym(a, theta2, cfg)?.log_det;
    let difference = l1 - l2;
    let k = (difference.im / PI).round();
    let residual = Cplx::new(difference.re, difference.im - k * PI).norm();
    Ok(AngleDependence {
        difference,
        nearest_multiple: k as i64,
        residual,
        multiple_of_i_pi: residual < cfg.eps_angle,
        hypothesis,
    })
}

fn angle_hypothesis(a: &SpectralOperator, theta1: Real, theta2: Real) -> Result<AngleHypothesis> {
    let width = theta2 - theta1;
    if !(0.0..PI).contains(&width) {
        return Err(Error::HypothesisViolated(format!(
            "need 0 <= theta2 - theta1 < pi, got {width}"
        )));
    }
    for th in [theta1, theta2, theta1 - PI, theta2 - PI] {
        if !a.is_agmon(SpectralCut::new(th)) {
            return Err(Error::HypothesisViolated(format!("{th} is not an Agmon angle")));
        }
    }
    let sectors = [(theta1, theta2), (theta1 - PI, theta2 - PI)];
    let dirs = a.leading_args();
    let inside = |d: Real| sectors.iter().any(|&(lo, hi)| in_closed_sector(d, lo, hi));
    if dirs.iter().all(|&d| !inside(d)) {
        return Ok(AngleHypothesis::FiniteInSectors);
    }
    if dirs.iter().all(|&d| inside(d)) {
        return Ok(AngleHypothesis::CofiniteInUnion);
    }
    Err(Error::HypothesisViolated(
        "one asymptotic branch is swept and the other is not".into(),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SignReport {
    pub m_plus: u64,
    pub predicted: i32,
    pub measured: i32,
    /// Distance of `Im log Det^sym + m_+π` to 2πℤ.
    pub imaginary_residual: Real,
    pub log_det_sym: Cplx,
}

/// Sign of `Det^sym` for an odd-order operator with conjugation-symmetric spectrum.
pub fn sign_symmetric(a: &SpectralOperator, theta: Real, cfg: &DetConfig) -> Result<SignReport> {
    if !a.is_symmetric_spectrum() {
        return Err(Error::NotSymmetric);
    }
    let m = a.order();
    if m % 2 == 0 {
        return Err(Error::HypothesisViolated("order must be odd".into()));
    }
    if !(theta > PI / 2.0 && theta < PI) {
        return Err(Error::HypothesisViolated(format!("theta {theta} not in (pi/2, pi)")));
    }
    if !a.has_real_leading() {
        return Err(Error::HypothesisViolated("leading behavior is not real".into()));
    }
    if !a.sector_is_empty(PI / 2.0, theta)? || !a.sector_is_empty(-PI / 2.0, theta - PI)? {
        return Err(Error::HypothesisViolated(
            "eigenvalues between the imaginary axis and the cut".into(),
        ));
    }
    let (m_plus, _) = a.count_imaginary_axis()?;
    let d = log_det_sym(a, theta, cfg)?;
    let shifted = d.log_det.im + m_plus as Real * PI;
    let imaginary_residual = (shifted - TAU * (shifted / TAU).round()).abs();
    Ok(SignReport {
        m_plus,
        predicted: if m_plus % 2 == 0 { 1 } else { -1 },
        measured: if d.value.re >= 0.0 { 1 } else { -1 },
        imaginary_residual,
        log_det_sym: d.log_det,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MultiplicativityCheck {
    pub ratio: Cplx,
    pub sign: i32,
    pub deviation: Real,
    pub pass: bool,
    pub theta_ab: Real,
    pub log_det_ab: Cplx,
    pub log_det_a: Cplx,
    pub log_det_b: Cplx,
}

/// Default `θ_AB = θ_B + εθ_A`, `ε = ±1` by the half-plane of `θ_A ∈ (0, 2π)`.
pub fn default_theta_ab(theta_a: Real, theta_b: Real) -> Result<Real> {
    let eps = if theta_a > 0.0 && theta_a < PI {
        1.0
    } else if theta_a > PI && theta_a < TAU {
        -1.0
    } else {
        return Err(Error::InvalidInput(format!(
            "theta_A = {theta_a} must lie in (0, pi) or (pi, 2pi)"
        )));
    };
    Ok(theta_b + eps * theta_a)
}

/// `Det^sym(AB) / (Det^sym A · Det^sym B)` for commuting model operators.
pub fn multiplicativity_check(
    a: &SpectralOperator,
    b: &SpectralOperator,
    theta_a: Real,
    theta_b: Real,
    theta_ab: Option<Real>,
    cfg: &DetConfig,
) -> Result<MultiplicativityCheck> {
    let ab = a.multiply_commuting(b)?;
    let theta_ab = match theta_ab {
        Some(t) => t,
        None => default_theta_ab(theta_a, theta_b)?,
    };
    let la = log_det_sym(a, theta_a, cfg)?.log_det;
    let lb = log_det_sym(b, theta_b, cfg)?.log_det;
    let lab = log_det_sym(&ab, theta_ab, cfg)?.log_det;
    let ratio = (lab - la - lb).exp();
    let sign = if ratio.re >= 0.0 { 1 } else { -1 };
    let deviation = (ratio - Cplx::new(sign as Real, 0.0)).norm();
    Ok(MultiplicativityCheck {
        ratio,
        sign,
        deviation,
        pass: deviation < cfg.eps_mult,
        theta_ab,
        log_det_ab: lab,
        log_det_a: la,
        log_det_b: lb,
    })
}

/// Whether every leading coefficient is positive real (positive-definite analog).
pub fn is_positive_leading(a: &SpectralOperator) -> bool {
    Branch::BOTH.iter().all(|&br| {
        let l = a.law().leading(br);
        l.im == 0.0 && l.re > 0.0
    })
}
