//! Directed logarithms, complex powers and angle bookkeeping.
//!
//! A [`SpectralCut`] is a raw angle θ. Angles are never normalized on
//! storage, because θ and θ − 2kπ define different branches; normalization
//! only happens inside membership tests.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::{Cplx, Error, Real, Result};

/// Relative angular tolerance for deciding that a direction sits on a ray.
pub const EPS_RAY: Real = 1e-12;

/// Nudge used by [`nudge_agmon`] when no eigenvalue bounds the gap.
pub const NUDGE_CAP: Real = PI / 8.0;

/// A branch cut along the ray `R_θ = {ρ e^{iθ}}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralCut {
    pub theta: Real,
}

impl SpectralCut {
    pub const fn new(theta: Real) -> Self {
        Self { theta }
    }

    /// The cut rotated by `delta` radians (no normalization).
    pub fn shifted(self, delta: Real) -> Self {
        Self::new(self.theta + delta)
    }

    /// Logarithm with imaginary part in `(θ − 2π, θ]`.
    pub fn log(self, lambda: Cplx) -> Result<Cplx> {
        branch_log(lambda, self)
    }

    /// `λ^s = exp(s log_θ λ)`.
    pub fn pow(self, lambda: Cplx, s: Cplx) -> Result<Cplx> {
        complex_power(lambda, s, self)
    }

    /// True when no listed argument lies on the ray.
    pub fn is_agmon(self, eigen_args: &[Real]) -> bool {
        is_agmon(eigen_args, self)
    }

    /// Angular tolerance used for ray coincidence at this cut.
    pub fn ray_tol(self) -> Real {
        ray_tol(self.theta)
    }
}

/// Open solid angle `Λ_(θ1, θ2) = {ρ e^{iα}: θ1 < α < θ2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolidAngle {
    pub theta1: Real,
    pub theta2: Real,
}

impl SolidAngle {
    pub fn new(theta1: Real, theta2: Real) -> Result<Self> {
        if !(theta1 <= theta2) {
            return Err(Error::InvalidInput(format!(
                "solid angle needs theta1 <= theta2, got ({theta1}, {theta2})"
            )));
        }
        Ok(Self { theta1, theta2 })
    }

    pub fn width(&self) -> Real {
        self.theta2 - self.theta1
    }

    /// Membership of `λ ≠ 0`; see [`in_solid_angle`].
    pub fn contains(&self, lambda: Cplx) -> Result<bool> {
        in_solid_angle(lambda, *self)
    }

    /// Membership of a direction given by its argument.
    pub fn contains_arg(&self, arg: Real) -> bool {
        if self.width() >= TAU {
            return true;
        }
        let phi = representative_above(arg, self.theta1);
        let tol = ray_tol(self.theta1.abs().max(self.theta2.abs()));
        phi > self.theta1 + tol && phi < self.theta2 - tol
    }

    /// True when `arg` lies on one of the two boundary rays.
    pub fn on_boundary(&self, arg: Real) -> bool {
        on_ray(arg, self.theta1) || on_ray(arg, self.theta2)
    }
}

fn ray_tol(theta: Real) -> Real {
    EPS_RAY * theta.abs().max(1.0)
}

/// Smallest `arg + 2πk` strictly above `floor`.
fn representative_above(arg: Real, floor: Real) -> Real {
    let k = ((floor - arg) / TAU).floor() + 1.0;
    arg + TAU * k
}

/// Distance between two directions on the circle, in `[0, π]`.
pub fn angular_distance(a: Real, b: Real) -> Real {
    ((a - b + PI).rem_euclid(TAU) - PI).abs()
}

/// True when direction `arg` coincides with the ray at angle `theta`.
pub fn on_ray(arg: Real, theta: Real) -> bool {
    angular_distance(arg, theta) <= ray_tol(theta)
}

/// Counter-clockwise gap from `from` to `to`, in `[0, 2π)`.
pub fn ccw_gap(from: Real, to: Real) -> Real {
    (to - from).rem_euclid(TAU)
}

/// `log_(θ) λ` with imaginary part in the half-open interval `(θ − 2π, θ]`.
pub fn branch_log(lambda: Cplx, cut: SpectralCut) -> Result<Cplx> {
    if lambda.re == 0.0 && lambda.im == 0.0 {
        return Err(Error::ZeroArgument);
    }
    let arg = lambda.arg();
    let k = ((cut.theta - arg) / TAU).floor();
    Ok(Cplx::new(lambda.norm().ln(), arg + TAU * k))
}

/// `λ^s_(θ) = exp(s · log_(θ) λ)`.
pub fn complex_power(lambda: Cplx, s: Cplx, cut: SpectralCut) -> Result<Cplx> {
    Ok((s * branch_log(lambda, cut)?).exp())
}

/// True iff some representative of `arg λ` lies strictly between θ1 and θ2.
pub fn in_solid_angle(lambda: Cplx, angle: SolidAngle) -> Result<bool> {
    if lambda.re == 0.0 && lambda.im == 0.0 {
        return Err(Error::ZeroArgument);
    }
    Ok(angle.contains_arg(lambda.arg()))
}

/// True iff θ mod 2π differs from every listed argument by more than the ray tolerance.
pub fn is_agmon(eigen_args: &[Real], cut: SpectralCut) -> bool {
    eigen_args.iter().all(|&a| !on_ray(a, cut.theta))
}

/// Rotate θ forward by half the smaller gap above θ and above θ − order·π.
///
/// With no eigenvalue arguments the rotation is [`NUDGE_CAP`].
pub fn nudge_agmon(eigen_args: &[Real], theta: Real, order: u32) -> Result<SpectralCut> {
    if order == 0 {
        return Err(Error::InvalidInput("order must be positive".into()));
    }
    let partner = theta - order as Real * PI;
    if eigen_args
        .iter()
        .any(|&a| on_ray(a, theta) || on_ray(a, partner))
    {
        return Err(Error::NotPrincipal { theta });
    }
    if eigen_args.is_empty() {
        return Ok(SpectralCut::new(theta + NUDGE_CAP));
    }
    let gap = |from: Real| {
        eigen_args
            .iter()
            .map(|&a| ccw_gap(from, a))
            .fold(Real::INFINITY, Real::min)
    };
    let delta = 0.5 * gap(theta).min(gap(partner));
    Ok(SpectralCut::new(theta + delta))
}
