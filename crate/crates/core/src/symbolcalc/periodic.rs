//! Truncated Fourier series on the circle `x ∈ [0, 2π)`.

use std::cell::RefCell;
use std::f64::consts::TAU;
use std::ops::{Add, Mul, Neg, Sub};

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::{Cplx, Error, Real, Result};

thread_local! {
    static PLANNER: RefCell<FftPlanner<Real>> = RefCell::new(FftPlanner::new());
}

/// Grid length used for products and pointwise maps at bandwidth `n`.
///
/// `M ≥ 3n + 1` keeps the product of two bandwidth-`n` functions free of
/// aliasing after truncation back to `n`.
pub fn grid_len(n: usize) -> usize {
    (3 * n + 1).next_power_of_two().max(4)
}

fn transform(buf: &mut [Complex<Real>], inverse: bool) {
    PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        let plan = if inverse {
            p.plan_fft_inverse(buf.len())
        } else {
            p.plan_fft_forward(buf.len())
        };
        plan.process(buf);
    });
}

/// `f(x) = Σ_{|k| ≤ n} c_k e^{ikx}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Periodic {
    n: usize,
    coeffs: Vec<Cplx>,
}

impl Periodic {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            coeffs: vec![Cplx::new(0.0, 0.0); 2 * n + 1],
        }
    }

    pub fn constant(n: usize, c: Cplx) -> Self {
        let mut p = Self::zero(n);
        p.coeffs[n] = c;
        p
    }

    /// Coefficients listed from `k = −n` to `k = n`.
    pub fn from_coeffs(coeffs: Vec<Cplx>) -> Result<Self> {
        if coeffs.len() % 2 == 0 {
            return Err(Error::InvalidInput(format!(
                "Fourier coefficient list must have odd length, got {}",
                coeffs.len()
            )));
        }
        Ok(Self {
            n: coeffs.len() / 2,
            coeffs,
        })
    }

    /// Sparse construction from `(k, c_k)` pairs; modes beyond `n` are dropped.
    pub fn from_modes(n: usize, modes: &[(i64, Cplx)]) -> Self {
        let mut p = Self::zero(n);
        for &(k, c) in modes {
            if k.unsigned_abs() as usize <= n {
                p.coeffs[(k + n as i64) as usize] += c;
            }
        }
        p
    }

    /// Projection of a sampled function onto bandwidth `n`.
    pub fn sample(n: usize, f: impl Fn(Real) -> Cplx) -> Self {
        let m = grid_len(n);
        let vals: Vec<Cplx> = (0..m).map(|j| f(TAU * j as Real / m as Real)).collect();
        Self::from_grid(n, vals)
    }

    pub fn bandwidth(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[Cplx] {
        &self.coeffs
    }

    pub fn coeff(&self, k: i64) -> Cplx {
        if k.unsigned_abs() as usize > self.n {
            Cplx::new(0.0, 0.0)
        } else {
            self.coeffs[(k + self.n as i64) as usize]
        }
    }

    /// Zero Fourier mode, i.e. the mean over the circle.
    pub fn mean(&self) -> Cplx {
        self.coeffs[self.n]
    }

    pub fn eval(&self, x: Real) -> Cplx {
        (-(self.n as i64)..=self.n as i64)
            .map(|k| self.coeff(k) * Cplx::from_polar(1.0, k as Real * x))
            .sum()
    }

    /// Sum of coefficient moduli; bounds the sup norm.
    pub fn fourier_norm(&self) -> Real {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| i == self.n || *c == Cplx::new(0.0, 0.0))
    }

    /// Same function at another bandwidth (zero-padded or truncated).
    pub fn resized(&self, n: usize) -> Self {
        let mut p = Self::zero(n);
        for k in -(n.min(self.n) as i64)..=n.min(self.n) as i64 {
            p.coeffs[(k + n as i64) as usize] = self.coeff(k);
        }
        p
    }

    /// Values at `x_j = 2πj/M` for `M = grid_len(bandwidth)`.
    pub fn grid_values(&self) -> Vec<Cplx> {
        self.values_on(grid_len(self.n))
    }

    pub(crate) fn values_on(&self, m: usize) -> Vec<Cplx> {
        let mut buf = vec![Complex::new(0.0, 0.0); m];
        let mm = m as i64;
        for k in -(self.n as i64)..=self.n as i64 {
            buf[k.rem_euclid(mm) as usize] += self.coeff(k);
        }
        transform(&mut buf, true);
        buf
    }

    /// Truncated interpolant of grid values.
    pub fn from_grid(n: usize, mut vals: Vec<Cplx>) -> Self {
        let m = vals.len();
        transform(&mut vals, false);
        let mut p = Self::zero(n);
        let mm = m as i64;
        for k in -(n as i64)..=n as i64 {
            if 2 * k.unsigned_abs() < m as u64 || k == 0 {
                p.coeffs[(k + n as i64) as usize] = vals[k.rem_euclid(mm) as usize] / m as Real;
            }
        }
        p
    }

    /// `D_x = −i d/dx`, so `e^{ikx} ↦ k e^{ikx}`.
    pub fn dx(&self) -> Self {
        let mut p = self.clone();
        for (i, c) in p.coeffs.iter_mut().enumerate() {
            *c *= i as Real - self.n as Real;
        }
        p
    }

    pub fn scale(&self, c: Cplx) -> Self {
        Self {
            n: self.n,
            coeffs: self.coeffs.iter().map(|v| v * c).collect(),
        }
    }

    /// Pointwise map through the grid, truncated back to the bandwidth.
    pub fn map(&self, f: impl Fn(Cplx) -> Cplx) -> Self {
        let vals = self.grid_values().into_iter().map(f).collect();
        Self::from_grid(self.n, vals)
    }

    pub fn try_map(&self, f: impl Fn(Cplx) -> Result<Cplx>) -> Result<Self> {
        let vals = self
            .grid_values()
            .into_iter()
            .map(f)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_grid(self.n, vals))
    }

    fn zip(&self, other: &Self, f: impl Fn(Cplx, Cplx) -> Cplx) -> Self {
        let n = self.n.max(other.n);
        let mut p = Self::zero(n);
        for k in -(n as i64)..=n as i64 {
            p.coeffs[(k + n as i64) as usize] = f(self.coeff(k), other.coeff(k));
        }
        p
    }
}

impl Add for &Periodic {
    type Output = Periodic;
    fn add(self, rhs: &Periodic) -> Periodic {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub for &Periodic {
    type Output = Periodic;
    fn sub(self, rhs: &Periodic) -> Periodic {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Neg for &Periodic {
    type Output = Periodic;
    fn neg(self) -> Periodic {
        self.scale(Cplx::new(-1.0, 0.0))
    }
}

impl Mul for &Periodic {
    type Output = Periodic;
    fn mul(self, rhs: &Periodic) -> Periodic {
        if self.is_constant() {
            return rhs.resized(self.n.max(rhs.n)).scale(self.mean());
        }
        if rhs.is_constant() {
            return self.resized(self.n.max(rhs.n)).scale(rhs.mean());
        }
        let n = self.n.max(rhs.n);
        let m = grid_len(n);
        let vals = self
            .values_on(m)
            .into_iter()
            .zip(rhs.values_on(m))
            .map(|(a, b)| a * b)
            .collect();
        Periodic::from_grid(n, vals)
    }
}

impl Mul<Cplx> for &Periodic {
    type Output = Periodic;
    fn mul(self, rhs: Cplx) -> Periodic {
        self.scale(rhs)
    }
}
