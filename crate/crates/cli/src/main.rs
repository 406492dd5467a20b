//! `euler2c`: constants, convexity verdicts, curve data and identity checks
//! for the planar two-centre problem.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 invalid input, 3 theory and
//! oracle disagree, 4 an identity check failed.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{Claim, CurveKind, ScanTarget};
use config::{parse_component, RunConfig};

#[derive(Debug)]
pub struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> CliError {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    pub fn runtime(message: impl Into<String>) -> CliError {
        CliError {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<euler2c::Error> for CliError {
    fn from(e: euler2c::Error) -> CliError {
        use euler2c::Error::*;
        match e {
            InvalidMassRatio(_) | EnergyAboveCritical { .. } | InvalidArgument(_) => {
                CliError::invalid(e.to_string())
            }
            _ => CliError::runtime(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "euler2c",
    version,
    about = "Convexity of energy levels in the planar two-centre problem"
)]
struct Cli {
    /// File of `key = value` lines preloading any option below.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Single `key=value` override; may be repeated.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Write output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// json or csv.
    #[arg(long, global = true)]
    format: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Default)]
struct Problem {
    /// Mass ratio in (0, 1); the Moon has mass mu.
    #[arg(long)]
    mu: Option<f64>,
    /// Energy: a number, `cJ` or `cJ-0.1` style offsets.
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    /// earth or moon.
    #[arg(long)]
    component: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// l, c_J, the roots a and b at c_J - 0.1, and the convexity thresholds.
    Constants {
        #[arg(long)]
        mu: Option<f64>,
    },
    /// Convexity verdict from theory, a numerical oracle, or both.
    Verdict {
        claim: Claim,
        #[command(flatten)]
        problem: Problem,
        /// theory, oracle or both.
        #[arg(long)]
        method: Option<String>,
        #[arg(long)]
        n_lambda: Option<usize>,
        #[arg(long)]
        n_nu: Option<usize>,
        #[arg(long)]
        n_phi: Option<usize>,
        /// Boundary samples per energy.
        #[arg(long)]
        rays: Option<usize>,
        /// Effective energies checked by the fiberwise oracle.
        #[arg(long)]
        energies: Option<usize>,
    },
    /// Point series as CSV (`series,x,y,f`).
    Curve {
        which: CurveKind,
        #[command(flatten)]
        problem: Problem,
        #[arg(long)]
        rays: Option<usize>,
        #[arg(long)]
        points: Option<usize>,
    },
    /// Run the exact polynomial identity suite.
    VerifyIdentities {
        /// Print identity names and exit.
        #[arg(long)]
        list: bool,
        /// Run only these identities.
        #[arg(long)]
        only: Vec<String>,
    },
    /// Grid sign scan of a field with refinement near sign changes.
    Scan {
        target: ScanTarget,
        #[command(flatten)]
        problem: Problem,
        #[arg(long)]
        nx: Option<usize>,
        #[arg(long)]
        ny: Option<usize>,
        #[arg(long)]
        refine_depth: Option<usize>,
    },
}

fn problem_config(p: &Problem) -> Result<RunConfig, CliError> {
    Ok(RunConfig {
        mu: p.mu,
        c: p.c.as_deref().map(str::parse).transpose()?,
        component: p.component.as_deref().map(parse_component).transpose()?,
        ..Default::default()
    })
}

fn build_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    for kv in &cli.set {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| CliError::invalid(format!("--set expects key=value, got `{kv}`")))?;
        cfg.set(k.trim(), v.trim())?;
    }
    let mut flags = match &cli.command {
        Command::Constants { mu } => RunConfig {
            mu: *mu,
            ..Default::default()
        },
        Command::Verdict {
            problem,
            method,
            n_lambda,
            n_nu,
            n_phi,
            rays,
            energies,
            ..
        } => RunConfig {
            method: method.as_deref().map(str::parse).transpose()?,
            n_lambda: *n_lambda,
            n_nu: *n_nu,
            n_phi: *n_phi,
            rays: *rays,
            energies: *energies,
            ..problem_config(problem)?
        },
        Command::Curve {
            problem,
            rays,
            points,
            ..
        } => RunConfig {
            rays: *rays,
            points: *points,
            ..problem_config(problem)?
        },
        Command::Scan {
            problem,
            nx,
            ny,
            refine_depth,
            ..
        } => RunConfig {
            nx: *nx,
            ny: *ny,
            refine_depth: *refine_depth,
            ..problem_config(problem)?
        },
        Command::VerifyIdentities { .. } => RunConfig::default(),
    };
    flags.output = cli.output.clone();
    flags.format = cli.format.as_deref().map(str::parse).transpose()?;
    Ok(cfg.overlay(flags))
}

fn init_threads(cfg: &RunConfig) -> Result<(), CliError> {
    let from_env = match std::env::var("EULER2C_THREADS") {
        Ok(v) => Some(
            v.trim()
                .parse::<usize>()
                .map_err(|_| CliError::invalid(format!("EULER2C_THREADS=`{v}` is not a count")))?,
        ),
        Err(_) => None,
    };
    if let Some(n) = from_env.or(cfg.threads).filter(|&n| n > 0) {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::runtime(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let cfg = build_config(&cli)?;
    init_threads(&cfg)?;
    match &cli.command {
        Command::Constants { .. } => commands::constants(&cfg).map(|_| 0),
        Command::Verdict { claim, .. } => {
            commands::verdict(*claim, &cfg).map(|agree| if agree { 0 } else { 3 })
        }
        Command::Curve { which, .. } => commands::curve(*which, &cfg).map(|_| 0),
        Command::VerifyIdentities { list, only } => {
            commands::identities(*list, only).map(|ok| if ok { 0 } else { 4 })
        }
        Command::Scan { target, .. } => commands::scan(*target, &cfg).map(|_| 0),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
