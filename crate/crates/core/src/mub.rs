//! Maximal sets of mutually unbiased bases for prime dimension and the Weyl
//! unitaries `U_α = Σ_l ω^l P_l^{(α)}` built from them.
//!
//! Basis 1 is the computational basis (eigenbasis of the clock operator
//! `Z`). Basis `m + 2`, for `m = 0..d-1`, is the eigenbasis of `X Z^m` where
//! `X` is the cyclic shift. The eigenvectors are written in closed form,
//! which fixes both the labelling and the phase: component 0 of every
//! vector is real and positive.
//!
//! Basis indices in the public API are 1-based (`α = 1..=d+1`).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector};

/// Smallest nontrivial factor of `d`, or `None` when `d` is prime.
/// Values below 2 report themselves as their own factor.
pub fn smallest_factor(d: usize) -> Option<usize> {
    if d < 2 {
        return Some(d);
    }
    let mut f = 2;
    while f * f <= d {
        if d.is_multiple_of(f) {
            return Some(f);
        }
        f += 1;
    }
    None
}

pub fn is_prime(d: usize) -> bool {
    smallest_factor(d).is_none()
}

pub fn ensure_prime(d: usize) -> Result<()> {
    match smallest_factor(d) {
        None => Ok(()),
        Some(factor) => Err(Error::NonPrimeDimension { d, factor }),
    }
}

/// `ω = e^{2πi/d}`.
pub fn omega(d: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI / d as f64)
}

/// The `d + 1` mutually unbiased bases of a prime dimension together with
/// their Weyl unitaries and all powers `U_α^k`, `k = 0..d-1`.
#[derive(Debug, Clone)]
pub struct MubFamily {
    d: usize,
    bases: Vec<Vec<CVector>>,
    unitaries: Vec<CMatrix>,
    powers: Vec<Vec<CMatrix>>,
}

/// Worst-case deviations of a [`MubFamily`] from the defining relations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MubDefects {
    pub orthonormality: f64,
    pub unbiasedness: f64,
}

/// Builds the maximal MUB family for prime `d`.
pub fn build_mub(d: usize) -> Result<MubFamily> {
    ensure_prime(d)?;
    let df = d as f64;
    let norm = 1.0 / df.sqrt();

    let mut bases = Vec::with_capacity(d + 1);
    bases.push(
        (0..d)
            .map(|l| {
                let mut v = CVector::zeros(d);
                v[l] = linalg::ONE;
                v
            })
            .collect(),
    );

    for m in 0..d {
        // X Z^m has eigenvalues μ_0 ω^l with μ_0^d = ω^{m d(d-1)/2}.
        let mu0_phase = PI * (m * (d - 1)) as f64 / df;
        let basis = (0..d)
            .map(|l| {
                let mu_phase = mu0_phase + 2.0 * PI * l as f64 / df;
                CVector::from_iterator(
                    d,
                    (0..d).map(|j| {
                        let quad = (m * (j * j.saturating_sub(1) / 2)) % d;
                        let phase = 2.0 * PI * quad as f64 / df - j as f64 * mu_phase;
                        Complex64::from_polar(norm, phase)
                    }),
                )
            })
            .collect();
        bases.push(basis);
    }

    let w = omega(d);
    let unitaries: Vec<CMatrix> = bases
        .iter()
        .map(|basis: &Vec<CVector>| {
            basis
                .iter()
                .enumerate()
                .fold(CMatrix::zeros(d, d), |acc, (l, v)| {
                    acc + linalg::outer(v) * w.powu(l as u32)
                })
        })
        .collect();
    let powers = unitaries
        .iter()
        .map(|u| {
            let mut out = Vec::with_capacity(d);
            let mut acc = linalg::identity(d);
            for _ in 0..d {
                out.push(acc.clone());
                acc = &acc * u;
            }
            out
        })
        .collect();

    Ok(MubFamily {
        d,
        bases,
        unitaries,
        powers,
    })
}

impl MubFamily {
    pub fn dim(&self) -> usize {
        self.d
    }

    /// Number of bases, `d + 1`.
    pub fn len(&self) -> usize {
        self.d + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn check_alpha(&self, alpha: usize) -> Result<usize> {
        if alpha == 0 || alpha > self.d + 1 {
            return Err(Error::IndexOutOfRange {
                index: alpha,
                max: self.d + 1,
            });
        }
        Ok(alpha - 1)
    }

    /// The `d` vectors of basis `alpha`.
    pub fn basis(&self, alpha: usize) -> Result<&[CVector]> {
        let a = self.check_alpha(alpha)?;
        Ok(&self.bases[a])
    }

    pub fn vector(&self, alpha: usize, l: usize) -> Result<&CVector> {
        let basis = self.basis(alpha)?;
        basis.get(l).ok_or(Error::IndexOutOfRange {
            index: l,
            max: self.d - 1,
        })
    }

    /// Rank-one projector `P_l^{(α)}`.
    pub fn projector(&self, alpha: usize, l: usize) -> Result<CMatrix> {
        Ok(linalg::outer(self.vector(alpha, l)?))
    }

    /// `U_α`.
    pub fn weyl_unitary(&self, alpha: usize) -> Result<&CMatrix> {
        let a = self.check_alpha(alpha)?;
        Ok(&self.unitaries[a])
    }

    /// `U_α^k` for `k` taken modulo `d`.
    pub fn unitary_power(&self, alpha: usize, k: usize) -> Result<&CMatrix> {
        let a = self.check_alpha(alpha)?;
        Ok(&self.powers[a][k % self.d])
    }

    /// `𝕌_α[ρ] = Σ_{k=1}^{d-1} U_α^k ρ U_α^{k†}`.
    pub fn twirl_map(&self, alpha: usize, rho: &CMatrix) -> Result<CMatrix> {
        let a = self.check_alpha(alpha)?;
        self.check_square(rho)?;
        Ok(self.powers[a][1..]
            .iter()
            .fold(CMatrix::zeros(self.d, self.d), |acc, u| {
                acc + u * rho * u.adjoint()
            }))
    }

    pub(crate) fn check_square(&self, m: &CMatrix) -> Result<()> {
        if m.nrows() != self.d || m.ncols() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                found: if m.nrows() != self.d {
                    m.nrows()
                } else {
                    m.ncols()
                },
            });
        }
        Ok(())
    }

    /// Worst deviation from orthonormality within each basis and from
    /// `|⟨ψ_k^{(α)}, ψ_l^{(β)}⟩|² = 1/d` across bases.
    pub fn defects(&self) -> MubDefects {
        let inv_d = 1.0 / self.d as f64;
        let mut ortho = 0.0f64;
        let mut unbiased = 0.0f64;
        for (a, ba) in self.bases.iter().enumerate() {
            for (b, bb) in self.bases.iter().enumerate() {
                for (k, u) in ba.iter().enumerate() {
                    for (l, v) in bb.iter().enumerate() {
                        let ip = u.dotc(v);
                        if a == b {
                            let target = if k == l { 1.0 } else { 0.0 };
                            ortho = ortho.max((ip - Complex64::new(target, 0.0)).norm());
                        } else {
                            unbiased = unbiased.max((ip.norm_sqr() - inv_d).abs());
                        }
                    }
                }
            }
        }
        MubDefects {
            orthonormality: ortho,
            unbiasedness: unbiased,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{identity, max_abs_diff, trace};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn composite_and_tiny_dimensions_rejected() {
        assert_eq!(
            build_mub(4).unwrap_err(),
            Error::NonPrimeDimension { d: 4, factor: 2 }
        );
        assert_eq!(
            build_mub(9).unwrap_err(),
            Error::NonPrimeDimension { d: 9, factor: 3 }
        );
        assert!(matches!(
            build_mub(1),
            Err(Error::NonPrimeDimension { d: 1, .. })
        ));
        assert!(matches!(build_mub(0), Err(Error::NonPrimeDimension { .. })));
    }

    #[test]
    fn qubit_bases_are_pauli_eigenbases() {
        let fam = build_mub(2).unwrap();
        let sz = CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)]);
        let sx = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]);
        let sy = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]);
        assert!(max_abs_diff(fam.weyl_unitary(1).unwrap(), &sz) < 1e-15);
        assert!(max_abs_diff(fam.weyl_unitary(2).unwrap(), &sx) < 1e-15);
        // σ_y eigenbasis, labelled so that U = -σ_y.
        assert!(max_abs_diff(fam.weyl_unitary(3).unwrap(), &(-sy)) < 1e-15);
        let d = fam.defects();
        assert!(d.unbiasedness < 1e-15 && d.orthonormality < 1e-15);
    }

    #[test]
    fn phase_convention_first_component_positive() {
        for d in [2, 3, 5, 7] {
            let fam = build_mub(d).unwrap();
            for a in 1..=d + 1 {
                for v in fam.basis(a).unwrap() {
                    let first = v.iter().find(|z| z.norm() > 1e-12).unwrap();
                    assert!(first.im.abs() < 1e-15 && first.re > 0.0);
                }
            }
        }
    }

    #[test]
    fn unitaries_are_traceless_order_d_and_unitary() {
        for d in [2, 3, 5, 7] {
            let fam = build_mub(d).unwrap();
            for a in 1..=d + 1 {
                let u = fam.weyl_unitary(a).unwrap();
                assert!(trace(u).norm() < 1e-12);
                assert!(max_abs_diff(&(u * u.adjoint()), &identity(d)) < 1e-12);
                assert!(max_abs_diff(&linalg::matrix_power(u, d), &identity(d)) < 1e-12);
                let complete = (0..d).fold(CMatrix::zeros(d, d), |acc, l| {
                    acc + fam.projector(a, l).unwrap()
                });
                assert!(max_abs_diff(&complete, &identity(d)) < 1e-12);
            }
        }
    }

    #[test]
    fn shifted_bases_diagonalise_x_z_powers() {
        let d = 5;
        let fam = build_mub(d).unwrap();
        let w = omega(d);
        let mut x = CMatrix::zeros(d, d);
        let mut z = CMatrix::zeros(d, d);
        for j in 0..d {
            x[((j + 1) % d, j)] = linalg::ONE;
            z[(j, j)] = w.powu(j as u32);
        }
        for m in 0..d {
            let op = &x * linalg::matrix_power(&z, m);
            for v in fam.basis(m + 2).unwrap() {
                let image = &op * v;
                let mu = v.dotc(&image);
                assert!((image - v * mu).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn index_errors() {
        let fam = build_mub(3).unwrap();
        assert_eq!(
            fam.weyl_unitary(0).unwrap_err(),
            Error::IndexOutOfRange { index: 0, max: 4 }
        );
        assert!(fam.weyl_unitary(5).is_err());
        assert!(fam.vector(1, 3).is_err());
        assert!(matches!(
            fam.twirl_map(1, &identity(2)),
            Err(Error::DimensionMismatch {
                expected: 3,
                found: 2
            })
        ));
    }

    #[test]
    fn twirl_of_identity_and_eigenprojectors() {
        for d in [2, 3, 5] {
            let fam = build_mub(d).unwrap();
            let scale = (d - 1) as f64;
            let mixed = identity(d).map(|z| z / d as f64);
            for a in 1..=d + 1 {
                let out = fam.twirl_map(a, &mixed).unwrap();
                assert!(max_abs_diff(&out, &mixed.map(|z| z * scale)) < 1e-12);
                for l in 0..d {
                    let p = fam.projector(a, l).unwrap();
                    let out = fam.twirl_map(a, &p).unwrap();
                    assert!(max_abs_diff(&out, &p.map(|z| z * scale)) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn twirl_negates_other_weyl_powers() {
        let fam = build_mub(3).unwrap();
        for a in 1..=4 {
            for b in (1..=4).filter(|&b| b != a) {
                for k in 1..3 {
                    let u = fam.unitary_power(b, k).unwrap();
                    let out = fam.twirl_map(a, u).unwrap();
                    assert!(max_abs_diff(&out, &(-u)) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn construction_is_deterministic() {
        let a = build_mub(7).unwrap();
        let b = build_mub(7).unwrap();
        for alpha in 1..=8 {
            assert_eq!(
                a.weyl_unitary(alpha).unwrap(),
                b.weyl_unitary(alpha).unwrap()
            );
        }
    }
}
