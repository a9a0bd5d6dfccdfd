use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use gpc_cli::{
    build_family, default_seed, run_figure, run_sweep, CliError, CliResult, CsvDocument,
    ExperimentConfig, ParamMap,
};
use gpc_core::gpc::CPTP_TOL;
use gpc_core::mub::build_mub;
use gpc_core::observables::{
    coherence_series, concurrence_series, entropy_series, negativity_series,
};
use gpc_core::series::grid_len;
use gpc_core::{volterra, GpChannel, TimeSeries, TrajectoryFamily};

const LEGITIMACY_GRID: usize = 20_001;

/// `println!` that reports a closed stdout as an error instead of panicking.
macro_rules! say {
    ($($arg:tt)*) => {
        writeln!(std::io::stdout().lock(), $($arg)*)?
    };
}

#[derive(Parser)]
#[command(
    name = "gpc",
    version,
    about = "Generalized Pauli channel dynamics with memory kernels"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct FamilyArgs {
    /// semigroup, oscillatory, exp-decay-1, exp-decay-2 or convex
    #[arg(long)]
    family: String,
    /// Comma-separated `key=value` pairs, e.g. `d=3,eta=1,xis=2,3,4,5`
    #[arg(long)]
    params: String,
}

impl FamilyArgs {
    fn build(&self) -> CliResult<TrajectoryFamily> {
        build_family(&self.family, &ParamMap::parse(&self.params)?)
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum Observable {
    Concurrence,
    Negativity,
    Entropy,
    Coherence,
}

#[derive(Subcommand)]
enum Command {
    /// Orthonormality and unbiasedness defects of the constructed bases
    Mub {
        d: usize,
        /// Also print every basis vector
        #[arg(long)]
        vectors: bool,
    },
    /// Complete positivity and fidelity extremes of one channel
    Channel {
        #[arg(long)]
        d: usize,
        /// d+1 comma-separated eigenvalues
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambdas: Vec<f64>,
        /// Haar samples for the brute-force fidelity scan
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Eigenvalue and fidelity time series of a family
    Evolve {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        tmax: Option<f64>,
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        /// Emit even if the trajectory is not legitimate
        #[arg(long)]
        force: bool,
        /// Add the Markovian baseline fidelities
        #[arg(long)]
        baseline: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Legitimacy verdict on a time grid
    Legitimacy {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        tmax: Option<f64>,
        #[arg(long, default_value_t = LEGITIMACY_GRID)]
        grid: usize,
    },
    /// Closed form against the integro-differential solver for one eigenvalue
    Oracle {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 2)]
        alpha: usize,
        #[arg(long, default_value_t = 1e-3)]
        h: f64,
        #[arg(long, default_value_t = 5.0)]
        tmax: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Observable time series with formula and matrix columns
    Observe {
        #[arg(value_enum)]
        observable: Observable,
        #[command(flatten)]
        family: FamilyArgs,
        /// Basis of the observed projector (entropy, coherence)
        #[arg(long, default_value_t = 2)]
        alpha: usize,
        #[arg(long, default_value_t = 5.0)]
        tmax: f64,
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce one of the five figures
    Figure {
        id: u32,
        #[arg(long, default_value_t = gpc_cli::figure::DEFAULT_T_MAX)]
        tmax: f64,
        #[arg(long, default_value_t = gpc_cli::figure::DEFAULT_STEP)]
        step: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parameter sweep driven by a `key = value` file
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Extra `key=value` lines applied after the file
        #[arg(long = "set")]
        overrides: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(doc: &CsvDocument, out: Option<&PathBuf>) -> CliResult<()> {
    let text = doc.render();
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn mub(d: usize, vectors: bool) -> CliResult<()> {
    let fam = build_mub(d)?;
    let defects = fam.defects();
    say!("d = {d}");
    say!("bases = {}", fam.len());
    say!("orthonormality_defect = {:e}", defects.orthonormality);
    say!("unbiasedness_defect = {:e}", defects.unbiasedness);
    if vectors {
        for alpha in 1..=fam.len() {
            for (l, v) in fam.basis(alpha)?.iter().enumerate() {
                let comps: Vec<String> = v
                    .iter()
                    .map(|z| format!("{:+.12}{:+.12}i", z.re, z.im))
                    .collect();
                say!("basis {alpha} vector {l}: {}", comps.join(" "));
            }
        }
    }
    Ok(())
}

fn channel(d: usize, lambdas: Vec<f64>, samples: Option<usize>) -> CliResult<()> {
    let ch = GpChannel::new(d, lambdas)?;
    let mub = build_mub(d)?;
    let p = ch.to_probabilities();
    let fmt = |v: &[f64]| {
        v.iter()
            .map(|x| format!("{x:.12}"))
            .collect::<Vec<_>>()
            .join(",")
    };
    say!("lambdas = {}", fmt(ch.lambdas()));
    say!("probabilities = {}", fmt(&p));
    let cptp = ch.is_cptp(CPTP_TOL);
    say!("cptp = {}", cptp.cptp);
    say!("cptp_lower_slack = {:e}", cptp.lower_slack);
    say!("cptp_upper_slack = {:e}", cptp.upper_slack);
    let choi = ch.choi_psd_check(&mub, CPTP_TOL)?;
    say!("choi_psd = {}", choi.psd);
    say!("choi_min_eigenvalue = {:e}", choi.min_eigenvalue);
    let f = ch.fidelity_extremes();
    say!("f_min = {:.15} (basis {})", f.f_min, f.argmin_alpha);
    say!("f_max = {:.15} (basis {})", f.f_max, f.argmax_alpha);
    if let Some(n) = samples {
        let seed = default_seed();
        let bf = ch.fidelity_bruteforce(&mub, n, seed)?;
        say!("seed = {seed}");
        say!("bruteforce_min = {:.15} ({:?})", bf.min, bf.argmin);
        say!("bruteforce_max = {:.15} ({:?})", bf.max, bf.argmax);
    }
    Ok(())
}

fn evolve(
    fam: &TrajectoryFamily,
    tmax: f64,
    step: f64,
    force: bool,
    baseline: bool,
) -> CliResult<CsvDocument> {
    // Legitimacy is a property of the whole trajectory, so the check runs on
    // its own fine grid rather than the output grid.
    let horizon = tmax.max(fam.default_horizon());
    let report = fam.legitimacy_check(horizon, grid_len(tmax, step)?.max(LEGITIMACY_GRID))?;
    if !report.legitimate && !force {
        return Err(CliError::Illegitimate(format!(
            "{} violated at t = {}, margin {:e}",
            report.violated_condition.as_str(),
            report.worst_time,
            report.worst_margin
        )));
    }
    let mut ts = fam.eigenvalue_series(tmax, step)?;
    let fid = fam.fidelity_series(tmax, step)?;
    ts.merge_prefixed(&fid, "")?;
    if baseline {
        ts.merge_prefixed(
            &fam.semigroup_baseline()?.fidelity_series(tmax, step)?,
            "baseline_",
        )?;
    }
    if !report.legitimate {
        let flags = ts
            .times()
            .into_iter()
            .map(|t| {
                Ok(if fam.channel_at(t)?.is_cptp(CPTP_TOL).cptp {
                    0.0
                } else {
                    1.0
                })
            })
            .collect::<CliResult<Vec<f64>>>()?;
        ts.push_column("not_cptp", flags)?;
    }
    let mut doc = CsvDocument::from_series(&ts);
    doc.comment(format!("{fam:?}"));
    doc.comment(format!(
        "legitimate = {}; violated = {}; worst margin {:e} at t = {}",
        report.legitimate,
        report.violated_condition.as_str(),
        report.worst_margin,
        report.worst_time
    ));
    if !report.legitimate {
        eprintln!("warning: trajectory is not legitimate; see the not_cptp column");
    }
    Ok(doc)
}

fn legitimacy(fam: &TrajectoryFamily, tmax: Option<f64>, grid: usize) -> CliResult<()> {
    let tmax = tmax.unwrap_or_else(|| fam.default_horizon());
    let r = fam.legitimacy_check(tmax, grid)?;
    say!("family = {fam:?}");
    say!("t_max = {tmax}");
    say!("grid = {grid}");
    say!("legitimate = {}", r.legitimate);
    say!("violated_condition = {}", r.violated_condition.as_str());
    say!("worst_margin = {:e}", r.worst_margin);
    say!("worst_time = {}", r.worst_time);
    Ok(())
}

fn oracle(fam: &TrajectoryFamily, alpha: usize, h: f64, tmax: f64) -> CliResult<CsvDocument> {
    let spec = fam.kernel_spec(alpha)?;
    let solved = volterra::solve(&spec, tmax, h)?;
    let numeric = solved.column("lambda").unwrap().to_vec();
    let closed = solved
        .times()
        .into_iter()
        .map(|t| Ok(fam.eigenvalues_at(t)?[alpha - 1]))
        .collect::<CliResult<Vec<f64>>>()?;
    let err: Vec<f64> = numeric
        .iter()
        .zip(&closed)
        .map(|(a, b)| (a - b).abs())
        .collect();
    let sup = err.iter().copied().fold(0.0, f64::max);
    let ts = TimeSeries::new(0.0, h, numeric.len())?
        .with_column("closed_form", closed)?
        .with_column("volterra", numeric)?
        .with_column("abs_error", err)?;
    let mut doc = CsvDocument::from_series(&ts);
    doc.comment(format!(
        "{fam:?}, alpha = {alpha}, kernel: {}",
        spec.description
    ));
    doc.comment(format!("sup abs error = {sup:e}"));
    Ok(doc)
}

fn observe(
    obs: Observable,
    fam: &TrajectoryFamily,
    alpha: usize,
    tmax: f64,
    step: f64,
) -> CliResult<CsvDocument> {
    let ts = match obs {
        Observable::Concurrence => concurrence_series(fam, tmax, step)?,
        Observable::Negativity => negativity_series(fam, tmax, step)?,
        Observable::Entropy => entropy_series(fam, alpha, tmax, step)?,
        Observable::Coherence => coherence_series(fam, alpha, tmax, step)?,
    };
    let mut doc = CsvDocument::from_series(&ts);
    doc.comment(format!("{fam:?}"));
    Ok(doc)
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Mub { d, vectors } => mub(d, vectors),
        Command::Channel {
            d,
            lambdas,
            samples,
        } => channel(d, lambdas, samples),
        Command::Evolve {
            family,
            tmax,
            step,
            force,
            baseline,
            out,
        } => {
            let fam = family.build()?;
            let tmax = tmax.unwrap_or_else(|| fam.default_horizon());
            emit(&evolve(&fam, tmax, step, force, baseline)?, out.as_ref())
        }
        Command::Legitimacy { family, tmax, grid } => legitimacy(&family.build()?, tmax, grid),
        Command::Oracle {
            family,
            alpha,
            h,
            tmax,
            out,
        } => emit(&oracle(&family.build()?, alpha, h, tmax)?, out.as_ref()),
        Command::Observe {
            observable,
            family,
            alpha,
            tmax,
            step,
            out,
        } => emit(
            &observe(observable, &family.build()?, alpha, tmax, step)?,
            out.as_ref(),
        ),
        Command::Figure {
            id,
            tmax,
            step,
            out,
        } => emit(&run_figure(id, tmax, step)?, out.as_ref()),
        Command::Sweep {
            config,
            overrides,
            out,
        } => {
            let text = std::fs::read_to_string(&config)?;
            let cfg = ExperimentConfig::with_overrides(&text, &overrides)?;
            let out = out.or_else(|| cfg.out.clone());
            emit(&run_sweep(&cfg)?, out.as_ref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
