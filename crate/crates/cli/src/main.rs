use clap::{Parser, Subcommand, ValueEnum};
use perdec_cli::commands::{
    run_check, run_conditions, run_decompose, run_demo, run_oracle, run_validate, Method,
};
use perdec_cli::error::CliError;
use perdec_cli::fuzz::{fuzz_report, run_fuzz, FuzzOptions};
use perdec_cli::instance::parse_instance;
use perdec_cli::report::Report;
use perdec_core::decompose::Ring;
use serde_json::json;
use std::path::PathBuf;

/// Decides whether a function decomposes into a sum of components invariant
/// under given commuting invertible transformations, in exact arithmetic.
#[derive(Parser)]
#[command(name = "perdec", version, about)]
struct Cli {
    /// Add wall-clock timing to the report diagnostics (makes output
    /// non-reproducible byte-for-byte).
    #[arg(long, global = true)]
    timings: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RingArg {
    Rational,
    Integer,
}

impl From<RingArg> for Ring {
    fn from(value: RingArg) -> Ring {
        match value {
            RingArg::Rational => Ring::Rational,
            RingArg::Integer => Ring::Integer,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate an instance file.
    Validate { file: PathBuf },
    /// Run the decomposability check and emit a certificate on failure.
    Check {
        file: PathBuf,
        /// Check every element of each block intersection instead of one
        /// canonical generator.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Produce a decomposition or a violation certificate.
    Decompose {
        file: PathBuf,
        /// Force the constructive route (rational ring only).
        #[arg(long, conflicts_with = "oracle")]
        constructive: bool,
        /// Force the linear-algebra oracle route.
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value = "rational")]
        ring: RingArg,
    },
    /// Decide feasibility by the linear-algebra oracle only.
    Oracle {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "rational")]
        ring: RingArg,
    },
    /// List the nontrivial difference conditions for symbolic periods.
    Conditions { file: PathBuf },
    /// Cross-validate checker, oracle and constructor on random instances.
    Fuzz {
        #[arg(long, default_value = "0")]
        seed: u64,
        #[arg(long, default_value = "100")]
        count: u64,
        #[arg(long, default_value = "40")]
        max_carrier: usize,
        #[arg(long, default_value = "4")]
        max_gens: usize,
    },
    /// Run a bundled demonstration instance end to end.
    Demo { name: String },
}

fn load_instance(path: &PathBuf) -> Result<perdec_cli::Instance, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    parse_instance(&text)
}

fn execute(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Validate { file } => run_validate(&load_instance(file)?),
        Command::Check { file, exhaustive } => run_check(&load_instance(file)?, *exhaustive),
        Command::Decompose {
            file,
            constructive,
            oracle,
            ring,
        } => {
            let method = if *constructive {
                Method::Constructive
            } else if *oracle {
                Method::Oracle
            } else {
                Method::Auto
            };
            run_decompose(&load_instance(file)?, method, (*ring).into())
        }
        Command::Oracle { file, ring } => run_oracle(&load_instance(file)?, (*ring).into()),
        Command::Conditions { file } => run_conditions(&load_instance(file)?),
        Command::Fuzz {
            seed,
            count,
            max_carrier,
            max_gens,
        } => Ok(fuzz_report(&run_fuzz(&FuzzOptions {
            seed: *seed,
            count: *count,
            max_carrier: *max_carrier,
            max_gens: *max_gens,
        }))),
        Command::Demo { name } => run_demo(name),
    }
}

fn main() {
    let cli = Cli::parse();
    let started = std::time::Instant::now();
    let outcome = std::panic::catch_unwind(|| execute(&cli.command));
    let mut report = match outcome {
        Ok(Ok(report)) => report,
        Ok(Err(error)) => Report::from_error(&error),
        Err(panic) => {
            let message = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            Report::from_error(&CliError::internal(format!("panic: {message}")))
        }
    };
    if cli.timings {
        report = report.with_diagnostic(
            "elapsed_ms",
            json!(started.elapsed().as_millis() as u64),
        );
    }
    println!("{}", report.to_json());
    std::process::exit(report.exit_code());
}
