//! Reproduction of the five published figures as CSV time series.

use gpc_core::observables::{
    coherence_series, concurrence_series, entropy_series, negativity_series,
};
use gpc_core::{TimeSeries, TrajectoryFamily};

use crate::csv::CsvDocument;
use crate::error::{CliError, CliResult};

pub const DEFAULT_T_MAX: f64 = 5.0;
pub const DEFAULT_STEP: f64 = 1e-3;

/// Observed output state for entropy and coherence: `P_0` of the first
/// basis unbiased to the computational one.
const OBSERVED_ALPHA: usize = 2;

/// Local, oscillatory and exponential evolutions sharing one rate `η`.
struct Trio {
    d: usize,
    eta: f64,
    xi: f64,
    t_mem: f64,
    b: f64,
}

impl Trio {
    fn curves(&self) -> CliResult<[(&'static str, TrajectoryFamily); 3]> {
        let exponential = TrajectoryFamily::ExpDecayI {
            d: self.d,
            eta: self.eta,
            xis: vec![self.xi; self.d + 1],
        };
        let semigroup = exponential.semigroup_baseline()?;
        let oscillatory = TrajectoryFamily::Oscillatory {
            d: self.d,
            gamma: self.eta,
            t_mem: self.t_mem,
            b: self.b,
            alpha_star: 1,
        };
        Ok([
            ("semigroup", semigroup),
            ("oscillatory", oscillatory),
            ("exponential", exponential),
        ])
    }
}

fn append_suffixed(target: &mut TimeSeries, src: &TimeSeries, suffix: &str) -> CliResult<()> {
    for (name, values) in src.columns() {
        target.push_column(format!("{name}_{suffix}"), values.clone())?;
    }
    Ok(())
}

fn legitimacy_note(label: &str, fam: &TrajectoryFamily) -> CliResult<String> {
    let horizon = fam.default_horizon();
    let r = fam.legitimacy_check(horizon, 20_001)?;
    Ok(format!(
        "{label}: {fam:?}; legitimate on [0, {horizon}] = {} (worst margin {:.3e})",
        r.legitimate, r.worst_margin
    ))
}

pub fn run_figure(id: u32, t_max: f64, step: f64) -> CliResult<CsvDocument> {
    let mut ts = TimeSeries::uniform(t_max, step)?;
    let mut notes = Vec::new();
    match id {
        1 => {
            notes.push(
                "extremal channel fidelities, d=3, gamma=2 1/s, T=2 s, B=3 and B=0 s^-1/2"
                    .to_string(),
            );
            for b in [3.0, 0.0] {
                let fam = TrajectoryFamily::Oscillatory {
                    d: 3,
                    gamma: 2.0,
                    t_mem: 2.0,
                    b,
                    alpha_star: 1,
                };
                notes.push(legitimacy_note(&format!("B{b}"), &fam)?);
                append_suffixed(
                    &mut ts,
                    &fam.fidelity_series(t_max, step)?,
                    &format!("B{b}"),
                )?;
            }
        }
        2..=5 => {
            let (trio, what) = match id {
                // The captions of figures 2 and 3 give no T; the T = 1/η
                // branch of the oscillatory family is used with γ = η.
                2 => (Trio { d: 2, eta: 0.5, xi: 1.0, t_mem: 2.0, b: 5.0 }, "concurrence, eta=1/2 1/s, xi=1 1/s, B=5 s^-1/2, T=1/eta (not in caption)"),
                3 => (Trio { d: 3, eta: 1.0, xi: 1.5, t_mem: 1.0, b: 4.0 }, "logarithmic negativity, eta=1 1/s, xi=3/2 1/s, B=4 s^-1/2, T=1/eta (not in caption)"),
                4 => (Trio { d: 3, eta: 1.0, xi: 1.5, t_mem: 1.0, b: 4.0 }, "output entropy of P_0 in basis 2, d=3, eta=1 1/s, xi=3/2 1/s, T=1 s, B=4 s^-1/2"),
                _ => (Trio { d: 3, eta: 2.0, xi: 2.5, t_mem: 2.0, b: 3.0 }, "l1-coherence of P_0 in basis 2, d=3, eta=2 1/s, xi=5/2 1/s, T=2 s, B=3 s^-1/2"),
            };
            notes.push(what.to_string());
            notes.push("oscillatory curve uses gamma = eta and alpha_star = 1".to_string());
            for (label, fam) in trio.curves()? {
                notes.push(legitimacy_note(label, &fam)?);
                let series = match id {
                    2 => concurrence_series(&fam, t_max, step)?,
                    3 => negativity_series(&fam, t_max, step)?,
                    4 => entropy_series(&fam, OBSERVED_ALPHA, t_max, step)?,
                    _ => coherence_series(&fam, OBSERVED_ALPHA, t_max, step)?,
                };
                append_suffixed(&mut ts, &series, label)?;
            }
        }
        other => return Err(CliError::UnknownFigure(other)),
    }
    let mut doc = CsvDocument::from_series(&ts);
    doc.comment(format!("figure {id}; time in s"));
    for n in notes {
        doc.comment(n);
    }
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_figure() {
        assert!(matches!(
            run_figure(6, 1.0, 0.1),
            Err(CliError::UnknownFigure(6))
        ));
        assert!(matches!(
            run_figure(0, 1.0, 0.1),
            Err(CliError::UnknownFigure(0))
        ));
    }

    #[test]
    fn figure_one_starts_at_identity() {
        let doc = run_figure(1, 1.0, 0.01).unwrap();
        for name in ["f_min_B3", "f_max_B3", "f_min_B0", "f_max_B0"] {
            assert_eq!(doc.column(name).unwrap()[0], 1.0, "{name}");
        }
    }

    #[test]
    fn figure_columns() {
        let doc = run_figure(5, 0.5, 0.01).unwrap();
        for suffix in ["semigroup", "oscillatory", "exponential"] {
            for base in ["coherence_formula", "coherence_direct", "coherence_ratio"] {
                assert!(doc.column(&format!("{base}_{suffix}")).is_some());
            }
        }
        doc.validate().unwrap();
    }
}
