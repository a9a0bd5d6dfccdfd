//! Fixtures shared by the criterion benchmarks.

use gpc_core::{GpChannel, TrajectoryFamily};

/// Oscillatory family with the figure-one parameters.
pub fn oscillatory_fixture() -> TrajectoryFamily {
    TrajectoryFamily::Oscillatory {
        d: 3,
        gamma: 2.0,
        t_mem: 2.0,
        b: 3.0,
        alpha_star: 1,
    }
}

/// A fixed CPTP channel in dimension `d` with distinct eigenvalues.
pub fn channel_fixture(d: usize) -> GpChannel {
    let lambdas = (0..=d).map(|a| 0.9 - 0.5 * a as f64 / d as f64).collect();
    GpChannel::new(d, lambdas).expect("fixture dimension must be prime")
}
