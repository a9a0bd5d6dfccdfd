//! Generalized Pauli channel algebra.
//!
//! A channel is stored by its eigenvalues `λ_1..λ_{d+1}` on the operator
//! basis `{U_α^k}`. The mixing probabilities `p_0, p_1..p_{d+1}` of the
//! mixed-unitary form
//!
//! ```text
//! Λ = p_0 id + 1/(d-1) Σ_α p_α 𝕌_α
//! ```
//!
//! are derived on demand.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector};
use crate::mub::{ensure_prime, MubFamily};

/// Default tolerance for complete-positivity verdicts.
pub const CPTP_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct GpChannel {
    d: usize,
    lambdas: Vec<f64>,
}

/// Slack in both generalized Fujiwara–Algoet inequalities
/// `-1/(d-1) ≤ Σ λ ≤ 1 + d min λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CptpReport {
    pub cptp: bool,
    /// `Σ λ + 1/(d-1)`.
    pub lower_slack: f64,
    /// `1 + d min λ - Σ λ`.
    pub upper_slack: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChoiReport {
    pub psd: bool,
    pub min_eigenvalue: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityExtremes {
    pub f_min: f64,
    pub f_max: f64,
    /// 1-based basis index achieving `f_min` (smallest on ties).
    pub argmin_alpha: usize,
    pub argmax_alpha: usize,
}

/// Where a sampled pure state came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleOrigin {
    Mub { alpha: usize, l: usize },
    Haar { index: usize },
}

/// Empirical extremes of `Tr(P Λ[P])` over MUB vectors plus Haar samples.
#[derive(Debug, Clone)]
pub struct BruteForceFidelity {
    pub min: f64,
    pub max: f64,
    pub argmin: SampleOrigin,
    pub argmax: SampleOrigin,
    pub argmin_state: CVector,
    /// Extremes over the `(d+1)·d` MUB vectors alone.
    pub mub_min: f64,
    pub mub_max: f64,
}

impl GpChannel {
    pub fn new(d: usize, lambdas: Vec<f64>) -> Result<Self> {
        ensure_prime(d)?;
        if lambdas.len() != d + 1 {
            return Err(Error::DimensionMismatch {
                expected: d + 1,
                found: lambdas.len(),
            });
        }
        if lambdas.iter().any(|l| !l.is_finite()) {
            return Err(Error::InvalidParameters(
                "channel eigenvalues must be finite".into(),
            ));
        }
        Ok(Self { d, lambdas })
    }

    pub fn identity(d: usize) -> Result<Self> {
        Self::new(d, vec![1.0; d + 1])
    }

    /// Builds the channel from `(p_0, p_1, …, p_{d+1})`.
    pub fn from_probabilities(d: usize, p: &[f64]) -> Result<Self> {
        ensure_prime(d)?;
        if p.len() != d + 2 {
            return Err(Error::DimensionMismatch {
                expected: d + 2,
                found: p.len(),
            });
        }
        if let Some((i, v)) = p.iter().enumerate().find(|(_, v)| !(**v >= -1e-12)) {
            return Err(Error::NotADistribution(format!("p[{i}] = {v} is negative")));
        }
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::NotADistribution(format!("entries sum to {total}")));
        }
        let df = d as f64;
        let p0 = p[0];
        let sum_rest: f64 = p[1..].iter().sum();
        let lambdas = p[1..]
            .iter()
            .map(|pa| p0 + df / (df - 1.0) * pa - sum_rest / (df - 1.0))
            .collect();
        Ok(Self { d, lambdas })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    /// `λ_α`, 1-based.
    pub fn lambda(&self, alpha: usize) -> Result<f64> {
        if alpha == 0 || alpha > self.d + 1 {
            return Err(Error::IndexOutOfRange {
                index: alpha,
                max: self.d + 1,
            });
        }
        Ok(self.lambdas[alpha - 1])
    }

    /// `(p_0, p_1, …, p_{d+1})`.
    pub fn to_probabilities(&self) -> Vec<f64> {
        let df = self.d as f64;
        let s: f64 = self.lambdas.iter().sum();
        let mut p = Vec::with_capacity(self.d + 2);
        p.push((1.0 + (df - 1.0) * s) / (df * df));
        p.extend(
            self.lambdas
                .iter()
                .map(|l| (df - 1.0) / (df * df) * (1.0 + df * l - s)),
        );
        p
    }

    pub fn is_cptp(&self, tol: f64) -> CptpReport {
        let df = self.d as f64;
        let s: f64 = self.lambdas.iter().sum();
        let min = self.lambdas.iter().copied().fold(f64::INFINITY, f64::min);
        let lower_slack = s + 1.0 / (df - 1.0);
        let upper_slack = 1.0 + df * min - s;
        CptpReport {
            cptp: lower_slack >= -tol && upper_slack >= -tol,
            lower_slack,
            upper_slack,
        }
    }

    fn check_family(&self, fam: &MubFamily) -> Result<()> {
        if fam.dim() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                found: fam.dim(),
            });
        }
        Ok(())
    }

    /// Applies the channel to an arbitrary `d×d` operator (the map is linear,
    /// so non-states such as `U_α^k` are accepted).
    pub fn apply(&self, fam: &MubFamily, rho: &CMatrix) -> Result<CMatrix> {
        self.check_family(fam)?;
        fam.check_square(rho)?;
        let p = self.to_probabilities();
        let scale = 1.0 / (self.d as f64 - 1.0);
        let mut out = rho.map(|z| z * p[0]);
        for alpha in 1..=self.d + 1 {
            let w = p[alpha] * scale;
            if w != 0.0 {
                out += fam.twirl_map(alpha, rho)?.map(|z| z * w);
            }
        }
        Ok(out)
    }

    /// Choi matrix `Σ_{ij} |i⟩⟨j| ⊗ Λ(|i⟩⟨j|)`.
    pub fn choi_matrix(&self, fam: &MubFamily) -> Result<CMatrix> {
        self.check_family(fam)?;
        let d = self.d;
        let mut choi = CMatrix::zeros(d * d, d * d);
        for i in 0..d {
            for j in 0..d {
                let mut e = CMatrix::zeros(d, d);
                e[(i, j)] = linalg::ONE;
                let img = self.apply(fam, &e)?;
                choi.view_mut((i * d, j * d), (d, d)).copy_from(&img);
            }
        }
        Ok(choi)
    }

    /// Complete positivity from the spectrum of the Choi matrix.
    pub fn choi_psd_check(&self, fam: &MubFamily, tol: f64) -> Result<ChoiReport> {
        let choi = self.choi_matrix(fam)?;
        let min_eigenvalue = linalg::hermitian_eigenvalues(&choi)[0];
        Ok(ChoiReport {
            psd: min_eigenvalue >= -tol,
            min_eigenvalue,
        })
    }

    /// Closed-form extremal channel fidelities over pure inputs.
    pub fn fidelity_extremes(&self) -> FidelityExtremes {
        let mut argmin = 0;
        let mut argmax = 0;
        for (i, &l) in self.lambdas.iter().enumerate() {
            if l < self.lambdas[argmin] {
                argmin = i;
            }
            if l > self.lambdas[argmax] {
                argmax = i;
            }
        }
        let df = self.d as f64;
        let f = |l: f64| (1.0 + (df - 1.0) * l) / df;
        FidelityExtremes {
            f_min: f(self.lambdas[argmin]),
            f_max: f(self.lambdas[argmax]),
            argmin_alpha: argmin + 1,
            argmax_alpha: argmax + 1,
        }
    }

    /// `⟨ψ|Λ[|ψ⟩⟨ψ|]|ψ⟩` for a unit vector, evaluated from the mixed-unitary
    /// form without building `Λ[P]`.
    pub fn pure_state_fidelity(&self, fam: &MubFamily, psi: &CVector) -> Result<f64> {
        self.check_family(fam)?;
        if psi.len() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                found: psi.len(),
            });
        }
        let p = self.to_probabilities();
        let scale = 1.0 / (self.d as f64 - 1.0);
        let mut f = p[0];
        for alpha in 1..=self.d + 1 {
            let mut acc = 0.0;
            for k in 1..self.d {
                acc += psi.dotc(&(fam.unitary_power(alpha, k)? * psi)).norm_sqr();
            }
            f += p[alpha] * scale * acc;
        }
        Ok(f)
    }

    /// Scans every MUB vector and `n_samples` Haar-random pure states.
    pub fn fidelity_bruteforce(
        &self,
        fam: &MubFamily,
        n_samples: usize,
        seed: u64,
    ) -> Result<BruteForceFidelity> {
        if n_samples == 0 {
            return Err(Error::InvalidSampleCount);
        }
        self.check_family(fam)?;
        let d = self.d;

        let mut best = Tracker::default();
        for alpha in 1..=d + 1 {
            for l in 0..d {
                let v = fam.vector(alpha, l)?;
                best.offer(
                    self.pure_state_fidelity(fam, v)?,
                    SampleOrigin::Mub { alpha, l },
                    v,
                );
            }
        }
        let (mub_min, mub_max) = (best.min, best.max);

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for index in 0..n_samples {
            let v = haar_state(d, &mut rng);
            best.offer(
                self.pure_state_fidelity(fam, &v)?,
                SampleOrigin::Haar { index },
                &v,
            );
        }
        Ok(BruteForceFidelity {
            min: best.min,
            max: best.max,
            argmin: best.argmin.expect("at least one sample"),
            argmax: best.argmax.expect("at least one sample"),
            argmin_state: best.argmin_state.expect("at least one sample"),
            mub_min,
            mub_max,
        })
    }
}

struct Tracker {
    min: f64,
    max: f64,
    argmin: Option<SampleOrigin>,
    argmax: Option<SampleOrigin>,
    argmin_state: Option<CVector>,
}

impl Default for Tracker {
    fn default() -> Self {
        Self {
            min: f64::INFINITY,
            max: f64::NEG_INFINITY,
            argmin: None,
            argmax: None,
            argmin_state: None,
        }
    }
}

impl Tracker {
    fn offer(&mut self, f: f64, origin: SampleOrigin, v: &CVector) {
        if f < self.min {
            self.min = f;
            self.argmin = Some(origin);
            self.argmin_state = Some(v.clone());
        }
        if f > self.max {
            self.max = f;
            self.argmax = Some(origin);
        }
    }
}

/// Haar-random unit vector: normalized i.i.d. standard complex Gaussians.
pub fn haar_state<R: rand::Rng + ?Sized>(d: usize, rng: &mut R) -> CVector {
    let v = DVector::from_iterator(
        d,
        (0..d).map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(re, im)
        }),
    );
    let n = v.norm();
    v / Complex64::new(n, 0.0)
}

/// Channel drawn from the flat Dirichlet distribution on the probability
/// vector `(p_0, …, p_{d+1})`, hence always CPTP.
pub fn random_cptp_channel<R: rand::Rng + ?Sized>(d: usize, rng: &mut R) -> Result<GpChannel> {
    let w: Vec<f64> = (0..d + 2)
        .map(|_| -(1.0 - rng.random::<f64>()).ln())
        .collect();
    let total: f64 = w.iter().sum();
    let p: Vec<f64> = w.iter().map(|x| x / total).collect();
    GpChannel::from_probabilities(d, &p)
}

/// Coefficients `x_{αk} = Tr(U_α^{k†} X)` of the expansion
/// `X = (Tr X / d) I + (1/d) Σ_{α,k≥1} x_{αk} U_α^k`, indexed `[α-1][k-1]`.
pub fn weyl_coefficients(fam: &MubFamily, x: &CMatrix) -> Result<Vec<Vec<Complex64>>> {
    fam.check_square(x)?;
    let d = fam.dim();
    (1..=d + 1)
        .map(|alpha| {
            (1..d)
                .map(|k| Ok(linalg::trace(&(fam.unitary_power(alpha, k)?.adjoint() * x))))
                .collect()
        })
        .collect()
}
