//! Entanglement, entropy and coherence under generalized Pauli channels.
//!
//! Each closed formula in terms of the channel eigenvalues comes with a
//! direct computation on the explicit density matrix.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::dynamics::TrajectoryFamily;
use crate::error::{Error, Result};
use crate::gpc::GpChannel;
use crate::linalg::{self, CMatrix};
use crate::mub::{build_mub, MubFamily};
use crate::series::TimeSeries;

const STATE_TOL: f64 = 1e-12;

/// Density matrix on `C^d ⊗ C^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteState {
    d: usize,
    matrix: CMatrix,
}

impl BipartiteState {
    pub fn new(d: usize, matrix: CMatrix) -> Result<Self> {
        let n = d * d;
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: matrix.nrows(),
            });
        }
        let herm = linalg::hermiticity_defect(&matrix);
        if herm > STATE_TOL {
            return Err(Error::NotAState(format!("hermiticity defect {herm:e}")));
        }
        let tr = linalg::trace(&matrix);
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::NotAState(format!("trace {tr}")));
        }
        Ok(Self { d, matrix })
    }

    /// `|Φ⁺⟩⟨Φ⁺|` with `|Φ⁺⟩ = d^{-1/2} Σ_k |k⟩|k⟩`.
    pub fn maximally_entangled(d: usize) -> Self {
        let mut m = CMatrix::zeros(d * d, d * d);
        let w = Complex64::new(1.0 / d as f64, 0.0);
        for i in 0..d {
            for j in 0..d {
                m[(i * d + i, j * d + j)] = w;
            }
        }
        Self { d, matrix: m }
    }

    pub fn maximally_mixed(d: usize) -> Self {
        let n = d * d;
        Self {
            d,
            matrix: linalg::identity(n).map(|z| z / n as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }
}

/// `(𝟙 ⊗ Λ)[|Φ⁺⟩⟨Φ⁺|] = (1/d) Σ_{ij} |i⟩⟨j| ⊗ Λ(|i⟩⟨j|)`.
pub fn evolve_maximally_entangled(channel: &GpChannel, fam: &MubFamily) -> Result<BipartiteState> {
    let d = channel.dim();
    let mut m = CMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            let mut e = CMatrix::zeros(d, d);
            e[(i, j)] = linalg::ONE;
            let img = channel.apply(fam, &e)? / Complex64::new(d as f64, 0.0);
            m.view_mut((i * d, j * d), (d, d)).copy_from(&img);
        }
    }
    BipartiteState::new(d, m)
}

/// Qubit eigenvalues relabelled to the Pauli order `(σ_x, σ_y, σ_z)`. The
/// basis indices are `1 ↔ σ_z`, `2 ↔ σ_x`, `3 ↔ σ_y`.
pub fn pauli_lambdas(channel: &GpChannel) -> Result<[f64; 3]> {
    if channel.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: channel.dim(),
        });
    }
    let l = channel.lambdas();
    Ok([l[1], l[2], l[0]])
}

/// `½ max{0, |λ1-λ2| - 1 - λ3, |λ1+λ2| - 1 + λ3}` for the state
/// `(𝟙 ⊗ Λ)[ρ_W]` of two qubits.
pub fn concurrence_pauli(l1: f64, l2: f64, l3: f64) -> f64 {
    let a = (l1 - l2).abs() - 1.0 - l3;
    let b = (l1 + l2).abs() - 1.0 + l3;
    0.5 * a.max(b).max(0.0)
}

/// Wootters' concurrence from the spectrum of `ρ (σ_y⊗σ_y) ρ̄ (σ_y⊗σ_y)`.
pub fn concurrence_wootters(state: &BipartiteState) -> Result<f64> {
    if state.d != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: state.d,
        });
    }
    let i = Complex64::new(0.0, 1.0);
    let o = linalg::ZERO;
    let sy = CMatrix::from_row_slice(2, 2, &[o, -i, i, o]);
    let flip = linalg::kron(&sy, &sy);
    let rho = &state.matrix;
    // √(eigenvalues of √ρ ρ̃ √ρ) are the singular values of √ρ F √ρ̄.
    let root = linalg::psd_sqrt(rho);
    let mut r: Vec<f64> = (&root * &flip * root.map(|z| z.conj()))
        .singular_values()
        .iter()
        .copied()
        .collect();
    r.sort_by(|a, b| b.total_cmp(a));
    Ok((r[0] - r[1] - r[2] - r[3]).max(0.0))
}

/// `(‖ρ_W^{T2}‖_1, log₂ ‖ρ_W^{T2}‖_1)` for a qutrit channel, via
///
/// ```text
/// ‖ρ^{T2}‖_1 = (1/6)[2|1 - λ0| + |2 + λ0 + √Z| + |2 + λ0 - √Z|]
/// λ0 = Σ λ_α,  Z = 9 Σ λ_α² - 6 Σ_{α<β} λ_α λ_β
/// ```
pub fn negativity_d3(lambdas: &[f64]) -> Result<(f64, f64)> {
    if lambdas.len() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: lambdas.len(),
        });
    }
    let l0: f64 = lambdas.iter().sum();
    let squares: f64 = lambdas.iter().map(|l| l * l).sum();
    let mut cross = 0.0;
    for a in 0..4 {
        for b in a + 1..4 {
            cross += lambdas[a] * lambdas[b];
        }
    }
    let mut z = 9.0 * squares - 6.0 * cross;
    if z < 0.0 {
        if z > -STATE_TOL {
            z = 0.0;
        } else {
            return Err(Error::NegativeDiscriminant(z));
        }
    }
    let rz = z.sqrt();
    let norm = (2.0 * (1.0 - l0).abs() + (2.0 + l0 + rz).abs() + (2.0 + l0 - rz).abs()) / 6.0;
    Ok((norm, norm.log2()))
}

/// Trace norm of the partial transpose and its base-2 logarithm, from the
/// spectrum of the explicit `ρ^{T2}`.
pub fn negativity_direct(state: &BipartiteState) -> Result<(f64, f64)> {
    let pt = linalg::partial_transpose_second(&state.matrix, state.d, state.d);
    let norm: f64 = linalg::hermitian_eigenvalues(&pt)
        .iter()
        .map(|x| x.abs())
        .sum();
    Ok((norm, norm.log2()))
}

fn xlnx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// Entropy of `ρ_{k,α} = Λ[P_k^{(α)}]`, whose spectrum is
/// `ν_k = (1 + (d-1)λ)/d` once and `ν_j = (1 - λ)/d` with multiplicity `d-1`.
pub fn entropy_output(d: usize, lambda: f64) -> Result<f64> {
    let df = d as f64;
    let nu_k = (1.0 + (df - 1.0) * lambda) / df;
    let nu_j = (1.0 - lambda) / df;
    let ok = |x: f64| (-STATE_TOL..=1.0 + STATE_TOL).contains(&x);
    if !ok(nu_k) || !ok(nu_j) {
        return Err(Error::InvalidEigenvalue(lambda));
    }
    Ok(-xlnx(nu_k) - (df - 1.0) * xlnx(nu_j))
}

/// `-Tr ρ ln ρ` from the Hermitian spectrum, with `0 ln 0 = 0`.
pub fn von_neumann_entropy(rho: &CMatrix) -> f64 {
    -linalg::hermitian_eigenvalues(rho)
        .into_iter()
        .map(xlnx)
        .sum::<f64>()
}

/// Sum of the moduli of the off-diagonal entries.
pub fn l1_coherence_direct(rho: &CMatrix) -> f64 {
    let mut acc = 0.0;
    for i in 0..rho.nrows() {
        for j in 0..rho.ncols() {
            if i != j {
                acc += rho[(i, j)].norm();
            }
        }
    }
    acc
}

/// Piecewise qutrit formula: 0 for a computational-basis projector,
/// `λ_α` otherwise.
pub fn l1_coherence_formula(lambda: f64, is_computational: bool) -> f64 {
    if is_computational {
        0.0
    } else {
        lambda
    }
}

/// `ρ_{k,α} = Λ[P_k^{(α)}]`; `alpha` is 1-based, `k` 0-based.
pub fn output_state(
    channel: &GpChannel,
    fam: &MubFamily,
    alpha: usize,
    k: usize,
) -> Result<CMatrix> {
    channel.apply(fam, &fam.projector(alpha, k)?)
}

fn sample<F>(
    family: &TrajectoryFamily,
    t_max: f64,
    step: f64,
    mut f: F,
) -> Result<(TimeSeries, Vec<Vec<f64>>)>
where
    F: FnMut(&GpChannel) -> Result<Vec<f64>>,
{
    let ts = TimeSeries::uniform(t_max, step)?;
    let rows = ts
        .times()
        .into_iter()
        .map(|t| f(&family.channel_at(t)?))
        .collect::<Result<Vec<_>>>()?;
    Ok((ts, rows))
}

fn assemble(mut ts: TimeSeries, names: &[&str], rows: Vec<Vec<f64>>) -> Result<TimeSeries> {
    for (c, name) in names.iter().enumerate() {
        ts.push_column(*name, rows.iter().map(|r| r[c]).collect())?;
    }
    Ok(ts)
}

/// Columns `concurrence` (eigenvalue formula) and `concurrence_wootters`.
pub fn concurrence_series(family: &TrajectoryFamily, t_max: f64, step: f64) -> Result<TimeSeries> {
    let mub = build_mub(family.dim())?;
    let (ts, rows) = sample(family, t_max, step, |ch| {
        let [a, b, c] = pauli_lambdas(ch)?;
        let state = evolve_maximally_entangled(ch, &mub)?;
        Ok(vec![
            concurrence_pauli(a, b, c),
            concurrence_wootters(&state)?,
        ])
    })?;
    assemble(ts, &["concurrence", "concurrence_wootters"], rows)
}

/// Columns `trace_norm`, `log_negativity` and the direct `*_direct` pair.
pub fn negativity_series(family: &TrajectoryFamily, t_max: f64, step: f64) -> Result<TimeSeries> {
    let mub = build_mub(family.dim())?;
    let (ts, rows) = sample(family, t_max, step, |ch| {
        let (n, ln) = negativity_d3(ch.lambdas())?;
        let (dn, dln) = negativity_direct(&evolve_maximally_entangled(ch, &mub)?)?;
        Ok(vec![n, ln, dn, dln])
    })?;
    assemble(
        ts,
        &[
            "trace_norm",
            "log_negativity",
            "trace_norm_direct",
            "log_negativity_direct",
        ],
        rows,
    )
}

/// Columns `entropy` (spectral formula) and `entropy_direct` for `ρ_{0,α}`.
pub fn entropy_series(
    family: &TrajectoryFamily,
    alpha: usize,
    t_max: f64,
    step: f64,
) -> Result<TimeSeries> {
    let mub = build_mub(family.dim())?;
    let (ts, rows) = sample(family, t_max, step, |ch| {
        let s = entropy_output(ch.dim(), ch.lambda(alpha)?)?;
        let direct = von_neumann_entropy(&output_state(ch, &mub, alpha, 0)?);
        Ok(vec![s, direct])
    })?;
    assemble(ts, &["entropy", "entropy_direct"], rows)
}

/// Columns `coherence_formula`, `coherence_direct` and their `coherence_ratio`
/// (direct over closed formula, NaN where the formula vanishes) for `ρ_{0,α}`.
pub fn coherence_series(
    family: &TrajectoryFamily,
    alpha: usize,
    t_max: f64,
    step: f64,
) -> Result<TimeSeries> {
    let mub = build_mub(family.dim())?;
    let (ts, rows) = sample(family, t_max, step, |ch| {
        let formula = l1_coherence_formula(ch.lambda(alpha)?, alpha == 1);
        let direct = l1_coherence_direct(&output_state(ch, &mub, alpha, 0)?);
        let ratio = if formula == 0.0 {
            f64::NAN
        } else {
            direct / formula
        };
        Ok(vec![formula, direct, ratio])
    })?;
    assemble(
        ts,
        &["coherence_formula", "coherence_direct", "coherence_ratio"],
        rows,
    )
}

/// Real diagonal unitary `diag(e^{iφ_j})`.
pub fn phase_unitary(phases: &[f64]) -> CMatrix {
    let n = phases.len();
    DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::from_polar(1.0, phases[i])
        } else {
            linalg::ZERO
        }
    })
}
