mod args;
mod commands;
mod output;
mod verify;

use std::fmt;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use intmat::asymptotics::AsymptoticsError;
use intmat::counts::{Budget, CountError};
use intmat::monte_carlo::SampleError;

use args::{Cli, Command};

/// Failure classes with stable exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or preconditions: exit 1.
    Usage(String),
    /// An invariant suite found a counterexample: exit 2.
    Verification(String),
    /// A counter refused to exceed its budget: exit 3.
    Budget(String),
    /// Writing output failed.
    Io(std::io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Verification(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
            CliError::Budget(m) => write!(f, "refused: {m} (raise INTMAT_BUDGET_MB or lower k)"),
            CliError::Io(e) => write!(f, "error: {e}"),
        }
    }
}

impl From<CountError> for CliError {
    fn from(e: CountError) -> Self {
        match e {
            CountError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<SampleError> for CliError {
    fn from(e: SampleError) -> Self {
        match e {
            SampleError::Count(c) => c.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<AsymptoticsError> for CliError {
    fn from(e: AsymptoticsError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}

/// Shared settings derived from global flags and the environment.
#[derive(Debug, Clone, Copy)]
pub struct Context {
    pub format: args::Format,
    pub workers: usize,
    pub budget: Budget,
}

fn budget_from_env() -> Result<Budget, CliError> {
    match std::env::var("INTMAT_BUDGET_MB") {
        Ok(v) => {
            let mb: u64 = v
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("INTMAT_BUDGET_MB={v:?} is not a whole number")))?;
            Ok(Budget::default().with_memory_mb(mb))
        }
        Err(_) => Ok(Budget::default()),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let workers = match cli.workers {
        Some(0) => return Err(CliError::Usage("--workers must be at least 1".into())),
        Some(w) => w,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let ctx = Context {
        format: cli.format,
        workers,
        budget: budget_from_env()?,
    };
    match cli.command {
        Command::Count(a) => commands::count(&ctx, &a),
        Command::Estimate(a) => commands::estimate(&ctx, &a),
        Command::Hist(a) => commands::hist(&ctx, &a),
        Command::Curve(a) => commands::curve(&ctx, &a),
        Command::Verify(a) => verify::run(&ctx, &a),
        Command::Report(a) => commands::report(&ctx, &a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                // clap's own code 2 would collide with verification failure
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.code())
        }
    }
}
