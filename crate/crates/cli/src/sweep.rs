//! One-parameter sweeps. Rows are evaluated in parallel and emitted in
//! parameter order.

use rayon::prelude::*;

use gpc_core::{OrderingClass, TrajectoryFamily, Violation};

use crate::config::{ExperimentConfig, SweepSpec};
use crate::csv::CsvDocument;
use crate::error::{CliError, CliResult};
use crate::params::{build_family, ParamMap};

pub const DEFAULT_T_MAX: f64 = 5.0;
pub const DEFAULT_STEP: f64 = 1e-3;

pub fn violation_code(v: Violation) -> f64 {
    match v {
        Violation::None => 0.0,
        Violation::NonnegIntegral => 1.0,
        Violation::SumUpper => 2.0,
        Violation::SumDominance => 3.0,
        Violation::FamilyBound => 4.0,
    }
}

pub fn class_code(c: OrderingClass) -> f64 {
    match c {
        OrderingClass::Below => -1.0,
        OrderingClass::Equal => 0.0,
        OrderingClass::Above => 1.0,
    }
}

const COLUMNS: [&str; 7] = [
    "legitimate",
    "violation",
    "worst_margin",
    "predicted_min_class",
    "predicted_max_class",
    "ordering_agrees",
    "min_fidelity_gap",
];

fn with_value(params: &ParamMap, spec: &SweepSpec, value: f64) -> CliResult<ParamMap> {
    let mut p = params.clone();
    match spec.index {
        None => p.set(spec.param.clone(), vec![value]),
        Some(i) => {
            let mut list = p.list(&spec.param)?;
            if i >= list.len() {
                return Err(CliError::config(
                    spec.label(),
                    format!("index {i} past list of length {}", list.len()),
                ));
            }
            list[i] = value;
            p.set(spec.param.clone(), list);
        }
    }
    Ok(p)
}

/// Verdicts for a single parameter point; the same numbers the `legitimacy`
/// and `evolve --baseline` subcommands report for it.
pub fn evaluate_point(fam: &TrajectoryFamily, t_max: f64, step: f64) -> CliResult<Vec<f64>> {
    let n_grid = gpc_core::series::grid_len(t_max, step)?;
    let leg = fam.legitimacy_check(t_max, n_grid)?;
    let (pmin, pmax, agrees, gap) = match fam {
        TrajectoryFamily::ExpDecayI { .. } | TrajectoryFamily::ExpDecayII { .. } => {
            let rep = fam.compare_with_baseline(t_max, step)?;
            let gap = rep
                .points
                .iter()
                .map(|p| p.min_gap)
                .fold(f64::INFINITY, f64::min);
            (
                class_code(rep.predicted_min),
                class_code(rep.predicted_max),
                rep.agrees() as u8 as f64,
                gap,
            )
        }
        TrajectoryFamily::MarkovSemigroup { .. } => (f64::NAN, f64::NAN, f64::NAN, f64::NAN),
        _ => {
            let own = fam.fidelity_series(t_max, step)?;
            let base = fam.semigroup_baseline()?.fidelity_series(t_max, step)?;
            let gap = own
                .column("f_min")
                .unwrap()
                .iter()
                .zip(base.column("f_min").unwrap())
                .skip(1)
                .map(|(a, b)| a - b)
                .fold(f64::INFINITY, f64::min);
            (f64::NAN, f64::NAN, f64::NAN, gap)
        }
    };
    Ok(vec![
        leg.legitimate as u8 as f64,
        violation_code(leg.violated_condition),
        leg.worst_margin,
        pmin,
        pmax,
        agrees,
        gap,
    ])
}

pub fn run_sweep(cfg: &ExperimentConfig) -> CliResult<CsvDocument> {
    let spec = cfg
        .sweep
        .as_ref()
        .ok_or_else(|| CliError::config("sweep", "missing"))?;
    let family = cfg
        .family
        .as_deref()
        .ok_or_else(|| CliError::config("family", "missing"))?;
    let t_max = cfg.t_max.unwrap_or(DEFAULT_T_MAX);
    let step = cfg.step.unwrap_or(DEFAULT_STEP);
    // Fail on malformed parameters before fanning out.
    build_family(family, &with_value(&cfg.params, spec, spec.from)?)?;

    let values = spec.values();
    let rows = values
        .par_iter()
        .map(|&v| {
            let fam = build_family(family, &with_value(&cfg.params, spec, v)?)?;
            let mut row = vec![v];
            row.extend(evaluate_point(&fam, t_max, step)?);
            Ok(row)
        })
        .collect::<CliResult<Vec<_>>>()?;

    let mut header = vec![spec.label()];
    header.extend(COLUMNS.iter().map(|c| c.to_string()));
    let mut doc = CsvDocument::new(header);
    doc.comment(format!(
        "sweep of {} for family {family} on [0, {t_max}] s, step {step} s",
        spec.label()
    ));
    doc.comment(
        "violation: 0 none, 1 nonneg_integral, 2 sum_upper, 3 sum_dominance, 4 family_bound",
    );
    doc.comment("ordering classes relative to the Markovian baseline: -1 below, 0 equal, 1 above; NaN where undefined");
    doc.rows = rows;
    Ok(doc)
}
