//! `quatreg`: check algebraic regularity of special-shape quaternion
//! functions from JSON job files, and run the randomized identity suite.

mod job;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use quatreg_core::{
    check_point, identities, quaternion_derivative, LimitConfig, Mode, Tolerances, Verdict,
};
use rayon::prelude::*;

use crate::job::Job;
use crate::report::{CheckOutput, DerivativeOutput, Format};

const DEFAULT_SEED: u64 = 2017;

#[derive(Debug, Parser)]
#[command(
    name = "quatreg",
    version,
    about = "Algebraic regularity checks for quaternion-valued functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Residual tolerance for the PDE system; form residuals use ten times this.
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Seed for sampled directions and random cases.
    #[arg(long, global = true, env = "QUATREG_SEED")]
    seed: Option<u64>,

    /// Random cases per identity.
    #[arg(long, global = true, default_value_t = 100)]
    samples: usize,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    /// Overrides the job file's mode: pde, forms, dq-left, dq-right or all.
    #[arg(long, global = true)]
    mode: Option<Mode>,

    /// Random directions added to the eight basis directions for limits.
    #[arg(long, global = true, default_value_t = 16)]
    directions: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a job's function at every job point.
    Check { job: PathBuf },
    /// Verify the exterior-calculus identities on seeded random cases.
    Identities,
    /// Print the quaternion derivative of a job's function and check it.
    Derivative { job: PathBuf },
}

fn tolerances(cli: &Cli, base: Tolerances) -> Result<Tolerances, String> {
    match cli.tol {
        None => Ok(base),
        Some(t) if t.is_finite() && t >= 0.0 => Ok(Tolerances {
            pde: t,
            forms: 10.0 * t,
            ..base
        }),
        Some(t) => Err(format!("--tol must be a non-negative number, got {t}")),
    }
}

fn load(cli: &Cli, path: &Path) -> Result<(Job, Tolerances), ExitCode> {
    let job = Job::load(path).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })?;
    let tol = tolerances(cli, job.tolerances).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })?;
    Ok((job, tol))
}

fn exit_for(verdicts: impl IntoIterator<Item = Verdict>) -> ExitCode {
    if verdicts.into_iter().all(|v| v == Verdict::Regular) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn format_of(cli: &Cli) -> Format {
    match cli.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Json => Format::Json,
    }
}

fn run_check(cli: &Cli, path: &Path) -> ExitCode {
    let (job, tol) = match load(cli, path) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let mode = cli.mode.unwrap_or(job.mode);
    let seed = cli.seed.or(job.seed).unwrap_or(DEFAULT_SEED);
    let limits = LimitConfig {
        random_directions: cli.directions,
        seed,
        ..LimitConfig::default()
    };
    let reports: Vec<_> = job
        .points
        .par_iter()
        .map(|&c| check_point(&job.function, c, mode, &tol, &limits))
        .collect();
    let out = CheckOutput::new(&job.f0, &job.f1, mode, seed, tol, reports);
    print!("{}", out.render(format_of(cli)));
    exit_for(out.points.iter().map(|r| r.verdict))
}

fn run_derivative(cli: &Cli, path: &Path) -> ExitCode {
    let (job, tol) = match load(cli, path) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let derivative = quaternion_derivative(&job.function);
    let reports: Vec<_> = job
        .points
        .par_iter()
        .map(|&c| check_point(&derivative, c, Mode::Pde, &tol, &LimitConfig::default()))
        .collect();
    let out = DerivativeOutput::new(&job.f0, &job.f1, &derivative, tol, reports);
    print!("{}", out.render(format_of(cli)));
    exit_for(out.points.iter().map(|r| r.verdict))
}

fn run_identities(cli: &Cli) -> ExitCode {
    if let Some(t) = cli.tol {
        if !(t.is_finite() && t >= 0.0) {
            eprintln!("error: --tol must be a non-negative number, got {t}");
            return ExitCode::from(2);
        }
    }
    if cli.samples == 0 {
        eprintln!("warning: --samples 0 runs no cases; every identity passes vacuously");
    }
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    let report = identities::run(seed, cli.samples, cli.tol);
    print!("{}", report::render_identities(&report, format_of(cli)));
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Check { job } => run_check(&cli, job),
        Command::Derivative { job } => run_derivative(&cli, job),
        Command::Identities => run_identities(&cli),
    }
}
