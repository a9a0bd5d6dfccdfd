//! Library side of the `gpc` command-line tool: configuration parsing, CSV
//! emission, figure reproduction and parameter sweeps.

pub mod config;
pub mod csv;
pub mod error;
pub mod figure;
pub mod params;
pub mod sweep;

pub use config::{ExperimentConfig, SweepSpec};
pub use csv::CsvDocument;
pub use error::{CliError, CliResult};
pub use figure::run_figure;
pub use params::{build_family, ParamMap};
pub use sweep::run_sweep;

/// Seed for randomized commands: `GPC_SEED` if set and valid, else 0.
pub fn default_seed() -> u64 {
    std::env::var("GPC_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(0)
}
