//! Command-line harness for decomposed-type quantum walk experiments:
//! finite-time simulation, limit-measure evaluation, simulation-vs-limit
//! comparison, parameter classification, isometry checking, and parallel
//! sweeps. All numeric output uses a fixed 17-significant-digit format, so
//! identical configurations produce byte-identical files.

use std::io::Write as _;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

pub mod commands;
pub mod config;
pub mod format;

use commands::{cmd_check, cmd_classify, cmd_compare, cmd_limit, cmd_simulate, write_file};
use config::{load, parse_angle, Angle, CoinSpec, ExperimentConfig, SweepConfig, SweepJob};
use format::json_str;

/// Exit status 1; bad input of any kind.
#[derive(Debug)]
pub enum CliError {
    Validation(String),
    /// Exit status 2; a configured comparison threshold was exceeded.
    Tolerance(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(msg) | CliError::Tolerance(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for CliError {}

#[derive(Parser)]
#[command(
    name = "dqw",
    version,
    about = "Quantum walks on the line: simulation, limit measures, and comparisons"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve a walk for n steps and write the position distribution as CSV.
    Simulate(RunArgs),
    /// Sample a rescaled limit density; one JSON header line, then CSV rows.
    Limit(RunArgs),
    /// Compare a finite-time distribution against its limit measure.
    Compare(RunArgs),
    /// Classify coin parameters and verify the +-1 eigenvalue condition.
    Classify(RunArgs),
    /// Report the isometry diagnostic for an explicit matrix pair.
    Check(RunArgs),
    /// Run a list of jobs from one config file on a worker pool.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Path to the JSON configuration.
    #[arg(long)]
    config: PathBuf,
    /// Write here instead of the config's `output` (stdout if neither is set).
    #[arg(long)]
    output: Option<PathBuf>,
    /// Override the config's step count.
    #[arg(long)]
    steps: Option<u64>,
    /// Override the family angle: radians or a multiple of pi like "0.75pi".
    #[arg(long)]
    delta: Option<String>,
    /// Override the density sample count (limit mode).
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Args)]
struct SweepArgs {
    /// Path to the JSON sweep configuration ({"jobs": [...]}).
    #[arg(long)]
    config: PathBuf,
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let benign = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return if benign { 0 } else { 1 };
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(CliError::Tolerance(msg)) => {
            eprintln!("tolerance failure: {msg}");
            2
        }
    }
}

fn apply_overrides(config: &mut ExperimentConfig, args: &RunArgs) -> Result<(), CliError> {
    if let Some(steps) = args.steps {
        config.steps = Some(steps);
    }
    if let Some(samples) = args.samples {
        config.samples = Some(samples);
    }
    if let Some(text) = &args.delta {
        let delta = Angle(parse_angle(text).map_err(CliError::Validation)?);
        match &mut config.coin {
            Some(CoinSpec::Delta { value }) => *value = delta,
            Some(CoinSpec::Params(p)) => p.delta = delta,
            Some(_) => {
                return Err(CliError::Validation(
                    "--delta only applies to coins of type delta or params".to_string(),
                ))
            }
            none => *none = Some(CoinSpec::Delta { value: delta }),
        }
    }
    if let Some(path) = &args.output {
        config.output = Some(path.clone());
    }
    Ok(())
}

fn emit(bytes: &[u8], output: Option<&PathBuf>) -> Result<(), CliError> {
    match output {
        Some(path) => write_file(path, bytes),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(bytes)
                .and_then(|_| lock.flush())
                .map_err(|e| CliError::Validation(format!("cannot write to stdout: {e}")))
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate(args) => {
            let mut config: ExperimentConfig = load(&args.config)?;
            apply_overrides(&mut config, &args)?;
            let bytes = cmd_simulate(&config)?;
            emit(&bytes, config.output.as_ref())
        }
        Command::Limit(args) => {
            let mut config: ExperimentConfig = load(&args.config)?;
            apply_overrides(&mut config, &args)?;
            let bytes = cmd_limit(&config)?;
            emit(&bytes, config.output.as_ref())
        }
        Command::Compare(args) => {
            let mut config: ExperimentConfig = load(&args.config)?;
            apply_overrides(&mut config, &args)?;
            let outcome = cmd_compare(&config)?;
            emit(&outcome.bytes, config.output.as_ref())?;
            match outcome.failure {
                Some(msg) => Err(CliError::Tolerance(msg)),
                None => Ok(()),
            }
        }
        Command::Classify(args) => {
            let config = load(&args.config)?;
            let bytes = cmd_classify(&config)?;
            emit(&bytes, args.output.as_ref())
        }
        Command::Check(args) => {
            let config = load(&args.config)?;
            let bytes = cmd_check(&config)?;
            emit(&bytes, args.output.as_ref())
        }
        Command::Sweep(args) => run_sweep(&args),
    }
}

enum JobStatus {
    Ok,
    Validation(String),
    Tolerance(String),
}

fn run_job(job: &SweepJob) -> (String, JobStatus) {
    let config = match job {
        SweepJob::Simulate { config } | SweepJob::Limit { config } | SweepJob::Compare { config } => config,
    };
    let Some(output) = config.output.clone() else {
        return (
            String::new(),
            JobStatus::Validation("sweep jobs must set `output`".to_string()),
        );
    };
    let shown = output.display().to_string();
    let result = match job {
        SweepJob::Simulate { config } => cmd_simulate(config).map(|bytes| (bytes, None)),
        SweepJob::Limit { config } => cmd_limit(config).map(|bytes| (bytes, None)),
        SweepJob::Compare { config } => {
            cmd_compare(config).map(|outcome| (outcome.bytes, outcome.failure))
        }
    };
    match result {
        Err(CliError::Validation(msg)) | Err(CliError::Tolerance(msg)) => {
            (shown, JobStatus::Validation(msg))
        }
        Ok((bytes, failure)) => match write_file(&output, &bytes) {
            Err(CliError::Validation(msg)) | Err(CliError::Tolerance(msg)) => {
                (shown, JobStatus::Validation(msg))
            }
            Ok(()) => match failure {
                Some(msg) => (shown, JobStatus::Tolerance(msg)),
                None => (shown, JobStatus::Ok),
            },
        },
    }
}

fn run_sweep(args: &SweepArgs) -> Result<(), CliError> {
    let sweep: SweepConfig = load(&args.config)?;
    if sweep.jobs.is_empty() {
        return Err(CliError::Validation("sweep config has no jobs".to_string()));
    }
    let results: Vec<(String, JobStatus)> = sweep.jobs.par_iter().map(run_job).collect();

    let mut summary = String::from("{\"jobs\":[");
    let mut any_validation = false;
    let mut any_tolerance = false;
    for (i, (output, status)) in results.iter().enumerate() {
        if i > 0 {
            summary.push(',');
        }
        let (tag, detail) = match status {
            JobStatus::Ok => ("ok", None),
            JobStatus::Validation(msg) => {
                any_validation = true;
                ("validation-error", Some(msg))
            }
            JobStatus::Tolerance(msg) => {
                any_tolerance = true;
                ("tolerance-failure", Some(msg))
            }
        };
        summary.push_str(&format!(
            "{{\"index\":{i},\"output\":{},\"status\":{}",
            json_str(output),
            json_str(tag)
        ));
        if let Some(msg) = detail {
            summary.push_str(&format!(",\"detail\":{}", json_str(msg)));
        }
        summary.push('}');
    }
    summary.push_str("]}\n");
    emit(summary.as_bytes(), None)?;

    if any_validation {
        Err(CliError::Validation("one or more sweep jobs failed".to_string()))
    } else if any_tolerance {
        Err(CliError::Tolerance(
            "one or more sweep comparisons exceeded their thresholds".to_string(),
        ))
    } else {
        Ok(())
    }
}
