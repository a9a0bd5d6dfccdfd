//! Generalized Pauli channels on prime-dimensional systems and their
//! evolution under memory-kernel master equations.
//!
//! A generalized Pauli channel is diagonal in the operator basis formed by
//! the powers of the `d + 1` Weyl unitaries attached to a maximal set of
//! mutually unbiased bases, so every quantity of interest reduces to the
//! `d + 1` real channel eigenvalues `λ_α`. The crate is organised around
//! that fact:
//!
//! - [`mub`] builds the bases and unitaries for prime `d`.
//! - [`gpc`] converts between eigenvalues and probabilities, certifies
//!   complete positivity two independent ways, applies the channel, and
//!   computes the extremal channel fidelities.
//! - [`dynamics`] holds closed-form eigenvalue trajectories for the
//!   supported kernel families, their Markovian baselines, legitimacy
//!   checks and fidelity-ordering comparisons.
//! - [`volterra`] is an independent fixed-step integro-differential solver
//!   used to cross-check every closed form.
//! - [`observables`] evaluates concurrence, logarithmic negativity,
//!   output entropy and l1-coherence, each with a direct matrix oracle.

pub mod dynamics;
pub mod error;
pub mod gpc;
pub mod linalg;
pub mod mub;
pub mod observables;
pub mod series;
pub mod volterra;

pub use dynamics::{LegitimacyReport, OrderingClass, OrderingReport, TrajectoryFamily, Violation};
pub use error::{Error, Result};
pub use gpc::{CptpReport, FidelityExtremes, GpChannel};
pub use linalg::CMatrix;
pub use mub::MubFamily;
pub use observables::BipartiteState;
pub use series::TimeSeries;
pub use volterra::{KernelSpec, NonLocalKernel};
