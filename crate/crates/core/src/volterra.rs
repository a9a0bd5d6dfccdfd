//! Fixed-step solver for the scalar eigenvalue equation
//!
//! ```text
//! λ'(t) = μ λ(t) + ∫_0^t κ(t - τ) λ(τ) dτ,    λ(0) = 1,
//! ```
//!
//! where the Dirac part of the memory kernel has been folded into the local
//! rate `μ` and `κ` is the continuous non-local remainder. It shares no code
//! with the closed-form trajectories in [`crate::dynamics`] and serves as
//! their oracle.
//!
//! The convolution is discretized with the trapezoidal rule and the
//! time step with the trapezoidal (Crank–Nicolson) rule. The scheme is
//! implicit but linear in `λ_{n+1}`, so each step is solved in closed form.
//! Global error is `O(h²)`; cost is `O(n²)`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::series::{grid_len, TimeSeries};

/// Continuous part `κ(t)` of an eigenvalue memory kernel.
#[derive(Clone)]
pub enum NonLocalKernel {
    Zero,
    /// `amplitude · e^{-rate·t}`. The rate may be negative.
    Exponential {
        amplitude: f64,
        rate: f64,
    },
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl NonLocalKernel {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            NonLocalKernel::Zero => 0.0,
            NonLocalKernel::Exponential { amplitude, rate } => amplitude * (-rate * t).exp(),
            NonLocalKernel::Custom(f) => f(t),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            NonLocalKernel::Zero => true,
            NonLocalKernel::Exponential { amplitude, .. } => *amplitude == 0.0,
            NonLocalKernel::Custom(_) => false,
        }
    }
}

impl fmt::Debug for NonLocalKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NonLocalKernel::Zero => write!(f, "Zero"),
            NonLocalKernel::Exponential { amplitude, rate } => {
                write!(f, "Exponential {{ amplitude: {amplitude}, rate: {rate} }}")
            }
            NonLocalKernel::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

/// Eigenvalue-channel kernel `κ_α(t) = μ δ(t) + κ^{NL}(t)`.
#[derive(Debug, Clone)]
pub struct KernelSpec {
    pub mu: f64,
    pub nonlocal: NonLocalKernel,
    pub description: String,
}

impl KernelSpec {
    pub fn new(mu: f64, nonlocal: NonLocalKernel, description: impl Into<String>) -> Self {
        Self {
            mu,
            nonlocal,
            description: description.into(),
        }
    }

    pub fn markovian(mu: f64) -> Self {
        Self::new(mu, NonLocalKernel::Zero, format!("markovian mu={mu}"))
    }
}

/// Integrates the eigenvalue equation on `[0, t_max]` with step `h`.
/// Returns a single column named `lambda`.
pub fn solve(spec: &KernelSpec, t_max: f64, h: f64) -> Result<TimeSeries> {
    let n = grid_len(t_max, h)?;
    let kappa: Vec<f64> = (0..n).map(|j| spec.nonlocal.eval(j as f64 * h)).collect();
    if let Some(bad) = kappa.iter().position(|k| !k.is_finite()) {
        return Err(Error::InvalidParameters(format!(
            "non-local kernel not finite at t = {}",
            bad as f64 * h
        )));
    }

    let denom = 1.0 - 0.5 * h * (spec.mu + 0.5 * h * kappa[0]);
    if denom.abs() < 1e-14 {
        return Err(Error::InvalidStep(format!(
            "step {h} makes the implicit update singular"
        )));
    }

    let mut lambda = Vec::with_capacity(n);
    lambda.push(1.0);
    // f_n = μ λ_n + trapezoidal convolution up to t_n; f_0 has no memory term.
    let mut f_prev = spec.mu;
    for step in 0..n - 1 {
        let m = step + 1;
        // Known part of the convolution at t_m (all terms except j = m).
        let mut s = 0.5 * kappa[m] * lambda[0];
        for j in 1..m {
            s += kappa[m - j] * lambda[j];
        }
        s *= h;
        let next = (lambda[step] + 0.5 * h * (f_prev + s)) / denom;
        f_prev = spec.mu * next + s + 0.5 * h * kappa[0] * next;
        lambda.push(next);
    }

    TimeSeries::new(0.0, h, n)?.with_column("lambda", lambda)
}

/// Rational Laplace-domain descriptions of the eigenvalue kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LaplaceModel {
    /// `ℓ(t) = 0`.
    Zero,
    /// `ℓ(t) = η e^{-ξ t}`, i.e. `ℓ̃(s) = η / (s + ξ)`.
    Exponential { eta: f64, xi: f64 },
    /// Pure semigroup, `κ̃(s) = μ`.
    Semigroup { mu: f64 },
}

impl LaplaceModel {
    /// `κ̃(s) = -s ℓ̃(s) / (1 - ℓ̃(s))`, or `μ` for a semigroup.
    pub fn kernel_transform(&self, s: f64) -> Result<f64> {
        check_s(s)?;
        match *self {
            LaplaceModel::Zero => Ok(0.0),
            LaplaceModel::Semigroup { mu } => Ok(mu),
            LaplaceModel::Exponential { eta, xi } => {
                let pole = s + xi;
                if pole.abs() < 1e-300 {
                    return Err(Error::PoleAtS(s));
                }
                let ell = eta / pole;
                if (1.0 - ell).abs() < 1e-14 {
                    return Err(Error::PoleAtS(s));
                }
                Ok(-s * ell / (1.0 - ell))
            }
        }
    }

    /// `λ̃(s) = 1 / (s - κ̃(s))`.
    pub fn eigenvalue_transform(&self, s: f64) -> Result<f64> {
        let denom = s - self.kernel_transform(s)?;
        if denom.abs() < 1e-14 {
            return Err(Error::PoleAtS(s));
        }
        Ok(1.0 / denom)
    }
}

pub fn laplace_eigenvalue(model: &LaplaceModel, s: f64) -> Result<f64> {
    model.eigenvalue_transform(s)
}

fn check_s(s: f64) -> Result<()> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::InvalidParameters(format!(
            "Laplace variable must be real positive, got {s}"
        )));
    }
    Ok(())
}

/// Truncated trapezoidal Laplace transform `∫_0^{t_end} e^{-st} y(t) dt` of a
/// sampled column.
pub fn numerical_laplace(series: &TimeSeries, column: &str, s: f64) -> Result<f64> {
    check_s(s)?;
    let y = series
        .column(column)
        .ok_or_else(|| Error::InvalidParameters(format!("no column named {column}")))?;
    let h = series.step();
    let n = y.len();
    let mut acc = 0.0;
    for (i, v) in y.iter().enumerate() {
        let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
        acc += w * v * (-s * series.time(i)).exp();
    }
    Ok(acc * h)
}
