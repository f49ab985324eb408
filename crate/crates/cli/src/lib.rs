//! Front end of `qtl`: argument grammar, run configuration, the
//! subcommands and report rendering. The binary is a thin wrapper around
//! [`run`].

pub mod args;
mod commands;
pub mod error;
pub mod report;

use qtl_core::algebra::Field;

use args::{Cli, Command};
use error::CliError;
use report::{render, render_error, Budgets, RunConfig};

/// Rendered output of one invocation and its exit status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn config_for(cli: &Cli) -> RunConfig {
    let (max_len, max_j, trials) = match &cli.command {
        Command::Paths { max_len, .. } => (Some(*max_len), None, None),
        Command::Generate { max_len, max_j, .. } => (Some(*max_len), *max_j, None),
        Command::Verify { max_len, max_j, trials, .. } => (Some(*max_len), *max_j, Some(*trials)),
        Command::SpanCheck { word_bound, .. } => (*word_bound, None, None),
        Command::ReduceSupermixed { max_len, trials, .. } => (trials.map(|_| *max_len), None, *trials),
        _ => (None, None, None),
    };
    let default_field = match cli.command {
        Command::Verify { .. } => Field::Prime(101),
        _ => Field::Rational,
    };
    RunConfig {
        command: cli.command.name().to_string(),
        input: cli.command.input().map(|p| p.display().to_string()),
        field: cli.field.unwrap_or(default_field),
        seed: cli.seed,
        budgets: Budgets {
            max_len,
            max_j,
            trials,
            max_monomials: cli.max_monomials,
            max_products: cli.max_products,
            max_terms: cli.max_terms,
        },
        format: cli.format,
        version: env!("CARGO_PKG_VERSION"),
    }
}

/// Runs a parsed command line. Exit code 0 on success, 1 on any error or
/// failed check; diagnostics go to `stderr`.
pub fn run(cli: &Cli) -> RunOutcome {
    let config = config_for(cli);
    let result = commands::dispatch(&cli.command, &config).and_then(|out| Ok((render(&config, &out)?, out.failed)));
    match result {
        Ok((stdout, failed)) => RunOutcome { stdout, stderr: String::new(), code: i32::from(failed) },
        Err(e) => RunOutcome { stdout: String::new(), stderr: render_error(cli.format, &config.command, &e), code: 1 },
    }
}

/// Caps the global thread pool at `QTL_THREADS` when set.
pub fn init_threads(value: Option<&str>) -> Result<(), CliError> {
    let Some(v) = value else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Threads(format!("expected a positive integer, got `{v}`")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| CliError::Threads(e.to_string()))
}
