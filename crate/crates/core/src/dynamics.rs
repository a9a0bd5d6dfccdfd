//! Closed-form eigenvalue trajectories of generalized Pauli dynamical maps.
//!
//! Every family is parametrized through the functions `ℓ_α(t)` with
//! `λ_α(t) = 1 - ∫_0^t ℓ_α`. The kernel families split as
//! `K(t) = δ(t) ℒ + 𝕂(t)`; [`TrajectoryFamily::semigroup_baseline`] returns
//! the semigroup generated by `ℒ` alone.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::gpc::{GpChannel, CPTP_TOL};
use crate::mub::ensure_prime;
use crate::series::TimeSeries;
use crate::volterra::{KernelSpec, NonLocalKernel};

/// Pointwise classification threshold for fidelity comparisons.
pub const ORDERING_SLACK: f64 = 1e-12;

/// Slack allowed on the closed-form legitimacy inequalities.
const ANALYTIC_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum TrajectoryFamily {
    /// GKSL semigroup with rates `γ_α ≥ 0`; `λ_α = exp[-(γ_0 - γ_α) t]`.
    MarkovSemigroup { d: usize, gammas: Vec<f64> },
    /// Exponential memory `k(t) = γ B² e^{-t/T}` acting on a single
    /// generator `ℒ_{α*}`. `t_mem` is `T`, `alpha_star` is 1-based.
    Oscillatory {
        d: usize,
        gamma: f64,
        t_mem: f64,
        b: f64,
        alpha_star: usize,
    },
    /// `ℓ_α(t) = η e^{-ξ_α t}`.
    ExpDecayI { d: usize, eta: f64, xis: Vec<f64> },
    /// `ℓ_α(t) = η_α e^{-ξ t}`.
    ExpDecayII { d: usize, etas: Vec<f64>, xi: f64 },
    /// `Λ(t) = Σ_α x_α e^{d t ℒ_α}`.
    ConvexSemigroups { d: usize, xs: Vec<f64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    None,
    NonnegIntegral,
    SumUpper,
    SumDominance,
    FamilyBound,
}

impl Violation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Violation::None => "none",
            Violation::NonnegIntegral => "nonneg_integral",
            Violation::SumUpper => "sum_upper",
            Violation::SumDominance => "sum_dominance",
            Violation::FamilyBound => "family_bound",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LegitimacyReport {
    pub legitimate: bool,
    pub violated_condition: Violation,
    /// Smallest slack found. Negative when violated.
    pub worst_margin: f64,
    /// Time of `worst_margin`; `inf` for asymptotic conditions.
    pub worst_time: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderingClass {
    Below,
    Equal,
    Above,
}

impl OrderingClass {
    pub fn classify(gap: f64, slack: f64) -> Self {
        if gap > slack {
            OrderingClass::Above
        } else if gap < -slack {
            OrderingClass::Below
        } else {
            OrderingClass::Equal
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            OrderingClass::Below => "below",
            OrderingClass::Equal => "equal",
            OrderingClass::Above => "above",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderingPoint {
    pub t: f64,
    /// `f_min[Λ(t)] - f_min[Λ^MS(t)]`.
    pub min_gap: f64,
    pub max_gap: f64,
    pub min_class: OrderingClass,
    pub max_class: OrderingClass,
}

/// Parameter-based prediction against the pointwise empirical ordering of
/// the extremal fidelities relative to the Markovian baseline.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderingReport {
    pub predicted_min: OrderingClass,
    pub predicted_max: OrderingClass,
    pub points: Vec<OrderingPoint>,
}

impl OrderingReport {
    pub fn agrees(&self) -> bool {
        self.points
            .iter()
            .all(|p| p.min_class == self.predicted_min && p.max_class == self.predicted_max)
    }
}

/// `h(t; A) = (1 - e^{-At}) / A`, strictly decreasing in `A` for fixed `t > 0`.
pub fn decay_integral(t: f64, a: f64) -> f64 {
    if a == 0.0 {
        return t;
    }
    -(-a * t).exp_m1() / a
}

/// `1 - e^{-x}` without cancellation.
fn one_minus_exp(x: f64) -> f64 {
    -(-x).exp_m1()
}

/// Shape functions of the oscillatory family. With `a = (1+γT)/2T` and
/// `ζ² = 4γB²T² - (1-γT)²`,
///
/// ```text
/// λ(t) = e^{-at} [C(t) + (1 - γT) S(t)]
/// ℓ(t) = γ e^{-at} [C(t) + (1 + 2B²T - γT) S(t)]
/// ```
///
/// where `C = cos(ζt/2T)`, `S = sin(ζt/2T)/ζ` for `ζ² > 0`, the hyperbolic
/// counterparts with `|ζ|` for `ζ² < 0`, and `C = 1`, `S = t/2T` at `ζ = 0`.
#[derive(Debug, Clone, Copy)]
struct Oscillation {
    gamma: f64,
    t_mem: f64,
    b: f64,
    decay: f64,
    zeta2: f64,
}

impl Oscillation {
    fn new(gamma: f64, t_mem: f64, b: f64) -> Self {
        let zeta2 = 4.0 * gamma * b * b * t_mem * t_mem - (1.0 - gamma * t_mem).powi(2);
        Self {
            gamma,
            t_mem,
            b,
            decay: (1.0 + gamma * t_mem) / (2.0 * t_mem),
            zeta2,
        }
    }

    fn shapes(&self, t: f64) -> (f64, f64) {
        let two_t = 2.0 * self.t_mem;
        if self.zeta2 > 0.0 {
            let z = self.zeta2.sqrt();
            let arg = z * t / two_t;
            (arg.cos(), arg.sin() / z)
        } else if self.zeta2 < 0.0 {
            let z = (-self.zeta2).sqrt();
            let arg = z * t / two_t;
            (arg.cosh(), arg.sinh() / z)
        } else {
            (1.0, t / two_t)
        }
    }

    fn lambda(&self, t: f64) -> f64 {
        let (c, s) = self.shapes(t);
        (-self.decay * t).exp() * (c + (1.0 - self.gamma * self.t_mem) * s)
    }

    fn ell(&self, t: f64) -> f64 {
        let (c, s) = self.shapes(t);
        let coeff = 1.0 + 2.0 * self.b * self.b * self.t_mem - self.gamma * self.t_mem;
        self.gamma * (-self.decay * t).exp() * (c + coeff * s)
    }
}

/// Closed-form bound `B ≤ π√γ / ln(d-1)` for the `T = 1/γ` oscillatory
/// family. `None` for `d = 2`, where the bound is vacuous.
pub fn oscillation_bound(d: usize, gamma: f64) -> Option<f64> {
    if d <= 2 {
        None
    } else {
        Some(PI * gamma.sqrt() / ((d - 1) as f64).ln())
    }
}

/// Global minimum over `t ≥ 0` of `e^{-γt} cos(B√γ t)`, attained at the
/// first trough `t_m = (π - arctan(γ/ω)) / ω`, `ω = B√γ`. Returns
/// `(t_m, value)`; for `B = 0` the infimum 0 is approached as `t → ∞`.
pub fn oscillation_minimum(gamma: f64, b: f64) -> (f64, f64) {
    let w = b * gamma.sqrt();
    if w <= 0.0 {
        return (f64::INFINITY, 0.0);
    }
    let t_m = (PI - (gamma / w).atan()) / w;
    (t_m, -(-gamma * t_m).exp() * w / w.hypot(gamma))
}

/// Largest `B` for which `e^{-γt} cos(B√γ t) ≥ -1/(d-1)` for all `t`, by
/// bisection on [`oscillation_minimum`]. `None` for `d = 2`.
pub fn oscillation_exact_threshold(d: usize, gamma: f64) -> Option<f64> {
    if d <= 2 {
        return None;
    }
    let floor = -1.0 / (d - 1) as f64;
    let (mut lo, mut hi) = (0.0, 1.0);
    while oscillation_minimum(gamma, hi).1 > floor {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if oscillation_minimum(gamma, mid).1 > floor {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameters(format!(
            "{name} must be positive and finite, got {v}"
        )))
    }
}

fn check_len(name: &str, v: &[f64], d: usize) -> Result<()> {
    if v.len() != d + 1 {
        return Err(Error::InvalidParameters(format!(
            "{name} needs d+1 = {} entries, got {}",
            d + 1,
            v.len()
        )));
    }
    Ok(())
}

fn sign_class(a: f64, b: f64) -> OrderingClass {
    let scale = a.abs().max(b.abs()).max(1.0);
    OrderingClass::classify(a - b, ORDERING_SLACK * scale)
}

impl TrajectoryFamily {
    pub fn dim(&self) -> usize {
        match self {
            TrajectoryFamily::MarkovSemigroup { d, .. }
            | TrajectoryFamily::Oscillatory { d, .. }
            | TrajectoryFamily::ExpDecayI { d, .. }
            | TrajectoryFamily::ExpDecayII { d, .. }
            | TrajectoryFamily::ConvexSemigroups { d, .. } => *d,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            TrajectoryFamily::MarkovSemigroup { .. } => "semigroup",
            TrajectoryFamily::Oscillatory { .. } => "oscillatory",
            TrajectoryFamily::ExpDecayI { .. } => "exp-decay-1",
            TrajectoryFamily::ExpDecayII { .. } => "exp-decay-2",
            TrajectoryFamily::ConvexSemigroups { .. } => "convex",
        }
    }

    /// Checks dimension and parameter constraints.
    pub fn validate(&self) -> Result<()> {
        let d = self.dim();
        ensure_prime(d)?;
        match self {
            TrajectoryFamily::MarkovSemigroup { gammas, .. } => {
                check_len("gammas", gammas, d)?;
                if gammas.iter().any(|g| !g.is_finite()) {
                    return Err(Error::InvalidParameters("rates must be finite".into()));
                }
            }
            TrajectoryFamily::Oscillatory {
                gamma,
                t_mem,
                b,
                alpha_star,
                ..
            } => {
                positive("gamma", *gamma)?;
                positive("T", *t_mem)?;
                if !(*b >= 0.0) || !b.is_finite() {
                    return Err(Error::InvalidParameters(format!(
                        "B must be non-negative, got {b}"
                    )));
                }
                if *alpha_star == 0 || *alpha_star > d + 1 {
                    return Err(Error::IndexOutOfRange {
                        index: *alpha_star,
                        max: d + 1,
                    });
                }
            }
            TrajectoryFamily::ExpDecayI { eta, xis, .. } => {
                positive("eta", *eta)?;
                check_len("xis", xis, d)?;
                xis.iter().try_for_each(|x| positive("xi", *x))?;
            }
            TrajectoryFamily::ExpDecayII { etas, xi, .. } => {
                positive("xi", *xi)?;
                check_len("etas", etas, d)?;
                etas.iter().try_for_each(|x| positive("eta", *x))?;
            }
            TrajectoryFamily::ConvexSemigroups { xs, .. } => {
                check_len("xs", xs, d)?;
                if xs.iter().any(|x| !(*x >= 0.0)) {
                    return Err(Error::InvalidParameters(
                        "weights must be non-negative".into(),
                    ));
                }
                let s: f64 = xs.iter().sum();
                if (s - 1.0).abs() > 1e-12 {
                    return Err(Error::InvalidParameters(format!(
                        "weights sum to {s}, not 1"
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_alpha(&self, alpha: usize) -> Result<usize> {
        let d = self.dim();
        if alpha == 0 || alpha > d + 1 {
            return Err(Error::IndexOutOfRange {
                index: alpha,
                max: d + 1,
            });
        }
        Ok(alpha - 1)
    }

    fn check_time(t: f64) -> Result<()> {
        if t < 0.0 || t.is_nan() {
            return Err(Error::NegativeTime(t));
        }
        Ok(())
    }

    /// `λ_1(t), …, λ_{d+1}(t)`.
    pub fn eigenvalues_at(&self, t: f64) -> Result<Vec<f64>> {
        Self::check_time(t)?;
        self.validate()?;
        let d = self.dim();
        Ok(match self {
            TrajectoryFamily::MarkovSemigroup { gammas, .. } => {
                let g0: f64 = gammas.iter().sum();
                gammas.iter().map(|g| (-(g0 - g) * t).exp()).collect()
            }
            TrajectoryFamily::Oscillatory {
                gamma,
                t_mem,
                b,
                alpha_star,
                ..
            } => {
                let lam = Oscillation::new(*gamma, *t_mem, *b).lambda(t);
                (1..=d + 1)
                    .map(|a| if a == *alpha_star { 1.0 } else { lam })
                    .collect()
            }
            TrajectoryFamily::ExpDecayI { eta, xis, .. } => xis
                .iter()
                .map(|xi| 1.0 - eta / xi * one_minus_exp(xi * t))
                .collect(),
            TrajectoryFamily::ExpDecayII { etas, xi, .. } => {
                let decay = one_minus_exp(xi * t);
                etas.iter().map(|eta| 1.0 - eta / xi * decay).collect()
            }
            TrajectoryFamily::ConvexSemigroups { xs, .. } => {
                let decay = one_minus_exp(d as f64 * t);
                xs.iter().map(|x| 1.0 - (1.0 - x) * decay).collect()
            }
        })
    }

    pub fn channel_at(&self, t: f64) -> Result<GpChannel> {
        GpChannel::new(self.dim(), self.eigenvalues_at(t)?)
    }

    /// `ℓ_α(t) = -λ_α'(t)`.
    pub fn ell_at(&self, alpha: usize, t: f64) -> Result<f64> {
        Self::check_time(t)?;
        self.validate()?;
        let a = self.check_alpha(alpha)?;
        let d = self.dim();
        Ok(match self {
            TrajectoryFamily::MarkovSemigroup { gammas, .. } => {
                let rate: f64 = gammas.iter().sum::<f64>() - gammas[a];
                rate * (-rate * t).exp()
            }
            TrajectoryFamily::Oscillatory {
                gamma,
                t_mem,
                b,
                alpha_star,
                ..
            } => {
                if alpha == *alpha_star {
                    0.0
                } else {
                    Oscillation::new(*gamma, *t_mem, *b).ell(t)
                }
            }
            TrajectoryFamily::ExpDecayI { eta, xis, .. } => eta * (-xis[a] * t).exp(),
            TrajectoryFamily::ExpDecayII { etas, xi, .. } => etas[a] * (-xi * t).exp(),
            TrajectoryFamily::ConvexSemigroups { xs, .. } => {
                let df = d as f64;
                df * (1.0 - xs[a]) * (-df * t).exp()
            }
        })
    }

    /// The semigroup generated by the local part `ℒ` of the kernel.
    pub fn semigroup_baseline(&self) -> Result<TrajectoryFamily> {
        self.validate()?;
        let d = self.dim();
        let df = d as f64;
        let gammas = match self {
            TrajectoryFamily::MarkovSemigroup { .. } => return Err(Error::AlreadySemigroup),
            TrajectoryFamily::Oscillatory {
                gamma, alpha_star, ..
            } => (1..=d + 1)
                .map(|a| if a == *alpha_star { *gamma } else { 0.0 })
                .collect(),
            TrajectoryFamily::ExpDecayI { eta, .. } => vec![eta / df; d + 1],
            TrajectoryFamily::ExpDecayII { etas, .. } => {
                let total: f64 = etas.iter().sum();
                etas.iter().map(|e| (total - df * e) / df).collect()
            }
            TrajectoryFamily::ConvexSemigroups { xs, .. } => {
                if let Some(x) = xs.iter().find(|x| **x >= 1.0) {
                    return Err(Error::InvalidParameters(format!(
                        "baseline rate 1/(1-x) undefined for x = {x}"
                    )));
                }
                xs.iter().map(|x| 1.0 / (1.0 - x)).collect()
            }
        };
        Ok(TrajectoryFamily::MarkovSemigroup { d, gammas })
    }

    /// Eigenvalue-channel kernel `κ_α = μ_α δ(t) + κ_α^{NL}(t)`.
    pub fn kernel_spec(&self, alpha: usize) -> Result<KernelSpec> {
        self.validate()?;
        let a = self.check_alpha(alpha)?;
        let exp_kernel = |amplitude: f64, rate: f64| {
            if amplitude == 0.0 {
                NonLocalKernel::Zero
            } else {
                NonLocalKernel::Exponential { amplitude, rate }
            }
        };
        Ok(match self {
            TrajectoryFamily::MarkovSemigroup { gammas, .. } => {
                let g0: f64 = gammas.iter().sum();
                KernelSpec::new(
                    gammas[a] - g0,
                    NonLocalKernel::Zero,
                    format!("semigroup alpha={alpha}"),
                )
            }
            TrajectoryFamily::Oscillatory {
                gamma,
                t_mem,
                b,
                alpha_star,
                ..
            } => {
                if alpha == *alpha_star {
                    KernelSpec::new(0.0, NonLocalKernel::Zero, "oscillatory invariant channel")
                } else {
                    KernelSpec::new(
                        -gamma,
                        exp_kernel(-gamma * b * b, 1.0 / t_mem),
                        format!("oscillatory alpha={alpha}"),
                    )
                }
            }
            TrajectoryFamily::ExpDecayI { eta, xis, .. } => {
                let r = xis[a] - eta;
                KernelSpec::new(
                    -eta,
                    exp_kernel(eta * r, r),
                    format!("exp-decay-1 alpha={alpha}"),
                )
            }
            TrajectoryFamily::ExpDecayII { etas, xi, .. } => {
                let r = xi - etas[a];
                KernelSpec::new(
                    -etas[a],
                    exp_kernel(etas[a] * r, r),
                    format!("exp-decay-2 alpha={alpha}"),
                )
            }
            TrajectoryFamily::ConvexSemigroups { .. } => {
                return Err(Error::UnsupportedFamily("convex combination of semigroups"))
            }
        })
    }

    /// Closed-form legitimacy criteria where known, followed by the three
    /// integral conditions on `L_α(t) = 1 - λ_α(t)` at every grid point of
    /// `(0, t_max]`.
    pub fn legitimacy_check(&self, t_max: f64, n_grid: usize) -> Result<LegitimacyReport> {
        if !(t_max > 0.0) || !t_max.is_finite() || n_grid < 2 {
            return Err(Error::InvalidGrid(format!(
                "need t_max > 0 and n_grid >= 2, got {t_max}, {n_grid}"
            )));
        }
        self.validate()?;
        if let Some(report) = self.analytic_violation() {
            return Ok(report);
        }

        let d = self.dim();
        let df = d as f64;
        let upper = df * df / (df - 1.0);
        let mut worst = (f64::INFINITY, f64::NAN, Violation::None);
        for i in 1..n_grid {
            let t = t_max * i as f64 / (n_grid - 1) as f64;
            let integrals: Vec<f64> = self.eigenvalues_at(t)?.iter().map(|l| 1.0 - l).collect();
            let total: f64 = integrals.iter().sum();
            let min = integrals.iter().copied().fold(f64::INFINITY, f64::min);
            let max = integrals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            for (margin, cond) in [
                (min, Violation::NonnegIntegral),
                (upper - total, Violation::SumUpper),
                (total - df * max, Violation::SumDominance),
            ] {
                if margin < worst.0 {
                    worst = (margin, t, cond);
                }
            }
        }
        let (worst_margin, worst_time, cond) = worst;
        let legitimate = worst_margin >= -CPTP_TOL;
        Ok(LegitimacyReport {
            legitimate,
            violated_condition: if legitimate { Violation::None } else { cond },
            worst_margin,
            worst_time,
        })
    }

    fn analytic_violation(&self) -> Option<LegitimacyReport> {
        let d = self.dim();
        let df = d as f64;
        let fail = |margin: f64, time: f64, cond: Violation| {
            (margin < -ANALYTIC_TOL).then_some(LegitimacyReport {
                legitimate: false,
                violated_condition: cond,
                worst_margin: margin,
                worst_time: time,
            })
        };
        match self {
            TrajectoryFamily::MarkovSemigroup { gammas, .. } => {
                let min = gammas.iter().copied().fold(f64::INFINITY, f64::min);
                fail(min, 0.0, Violation::FamilyBound)
            }
            TrajectoryFamily::Oscillatory {
                gamma, t_mem, b, ..
            } => {
                if (gamma * t_mem - 1.0).abs() > 1e-12 {
                    return None;
                }
                let bound = oscillation_bound(d, *gamma)?;
                fail(bound - b, PI / (b * gamma.sqrt()), Violation::FamilyBound)
            }
            TrajectoryFamily::ExpDecayI { eta, xis, .. } => {
                let inv_sum: f64 = xis.iter().map(|x| 1.0 / x).sum();
                let inv_max = xis.iter().map(|x| 1.0 / x).fold(0.0, f64::max);
                fail(
                    df * df / (df - 1.0) - eta * inv_sum,
                    f64::INFINITY,
                    Violation::SumUpper,
                )
                .or_else(|| {
                    fail(
                        inv_sum - df * inv_max,
                        f64::INFINITY,
                        Violation::SumDominance,
                    )
                })
            }
            TrajectoryFamily::ExpDecayII { etas, xi, .. } => {
                let total: f64 = etas.iter().sum();
                let max = etas.iter().copied().fold(0.0, f64::max);
                fail(total - df * max, f64::INFINITY, Violation::SumDominance).or_else(|| {
                    fail(
                        df * df * xi / (df - 1.0) - total,
                        f64::INFINITY,
                        Violation::SumUpper,
                    )
                })
            }
            TrajectoryFamily::ConvexSemigroups { .. } => None,
        }
    }

    /// Columns `lambda_1..lambda_{d+1}` on `[0, t_max]`.
    pub fn eigenvalue_series(&self, t_max: f64, step: f64) -> Result<TimeSeries> {
        let mut ts = TimeSeries::uniform(t_max, step)?;
        let rows: Vec<Vec<f64>> = ts
            .times()
            .iter()
            .map(|&t| self.eigenvalues_at(t))
            .collect::<Result<_>>()?;
        for a in 0..=self.dim() {
            ts.push_column(
                format!("lambda_{}", a + 1),
                rows.iter().map(|r| r[a]).collect(),
            )?;
        }
        Ok(ts)
    }

    /// Columns `f_min`, `f_max` on `[0, t_max]`.
    pub fn fidelity_series(&self, t_max: f64, step: f64) -> Result<TimeSeries> {
        let ts = TimeSeries::uniform(t_max, step)?;
        let mut fmin = Vec::with_capacity(ts.len());
        let mut fmax = Vec::with_capacity(ts.len());
        for t in ts.times() {
            let e = self.channel_at(t)?.fidelity_extremes();
            fmin.push(e.f_min);
            fmax.push(e.f_max);
        }
        ts.with_column("f_min", fmin)?.with_column("f_max", fmax)
    }

    /// Fidelity ordering against the Markovian baseline for the two
    /// exponential families: the prediction from the parameters and the
    /// pointwise classification at every grid time `t > 0`.
    pub fn compare_with_baseline(&self, t_max: f64, step: f64) -> Result<OrderingReport> {
        self.validate()?;
        let (predicted_min, predicted_max) = match self {
            TrajectoryFamily::ExpDecayI { eta, xis, .. } => {
                let xi_min = xis.iter().copied().fold(f64::INFINITY, f64::min);
                let xi_max = xis.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                (sign_class(xi_min, *eta), sign_class(xi_max, *eta))
            }
            TrajectoryFamily::ExpDecayII { etas, xi, .. } => {
                let eta_min = etas.iter().copied().fold(f64::INFINITY, f64::min);
                let eta_max = etas.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                (sign_class(*xi, eta_max), sign_class(*xi, eta_min))
            }
            _ => {
                return Err(Error::UnsupportedFamily(
                    "ordering comparison outside the exponential families",
                ))
            }
        };
        let baseline = self.semigroup_baseline()?;
        let own = self.fidelity_series(t_max, step)?;
        let base = baseline.fidelity_series(t_max, step)?;
        let (fmin, fmax) = (own.column("f_min").unwrap(), own.column("f_max").unwrap());
        let (bmin, bmax) = (base.column("f_min").unwrap(), base.column("f_max").unwrap());
        let points = (1..own.len())
            .map(|i| {
                let min_gap = fmin[i] - bmin[i];
                let max_gap = fmax[i] - bmax[i];
                OrderingPoint {
                    t: own.time(i),
                    min_gap,
                    max_gap,
                    min_class: OrderingClass::classify(min_gap, ORDERING_SLACK),
                    max_class: OrderingClass::classify(max_gap, ORDERING_SLACK),
                }
            })
            .collect();
        Ok(OrderingReport {
            predicted_min,
            predicted_max,
            points,
        })
    }

    /// A horizon long enough for the slowest closed-form rate to decay
    /// twenty-fold in the exponent.
    pub fn default_horizon(&self) -> f64 {
        let rate = match self {
            TrajectoryFamily::MarkovSemigroup { gammas, .. } => {
                let g0: f64 = gammas.iter().sum();
                gammas
                    .iter()
                    .map(|g| g0 - g)
                    .filter(|r| *r > 0.0)
                    .fold(f64::INFINITY, f64::min)
            }
            TrajectoryFamily::Oscillatory { gamma, .. } => *gamma,
            TrajectoryFamily::ExpDecayI { xis, .. } => {
                xis.iter().copied().fold(f64::INFINITY, f64::min)
            }
            TrajectoryFamily::ExpDecayII { xi, .. } => *xi,
            TrajectoryFamily::ConvexSemigroups { d, .. } => *d as f64,
        };
        if rate.is_finite() && rate > 0.0 {
            20.0 / rate
        } else {
            20.0
        }
    }
}
