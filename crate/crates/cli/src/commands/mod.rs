//! One function per subcommand, each producing an [`Output`].

mod contract;
mod generate;
mod oracle;
mod quiver;
mod supermixed;

use std::path::Path;

use qtl_core::oracle::Budgets as OracleBudgets;
use qtl_core::quiver::{parse_spec, SpecFile};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::args::Command;
use crate::error::CliError;
use crate::report::{Output, RunConfig};

pub fn dispatch(command: &Command, config: &RunConfig) -> Result<Output, CliError> {
    match command {
        Command::Describe { spec } => quiver::describe(&load(spec)?),
        Command::Double { spec } => quiver::double(&load(spec)?),
        Command::Paths { spec, max_len, dedupe } => quiver::paths(&load(spec)?, *max_len as usize, *dedupe),
        Command::Generate { spec, max_len, max_j } => {
            generate::generate(&load(spec)?, config, *max_len as usize, max_j.map(|j| j as usize))
        }
        Command::Verify { spec, trials, max_len, max_j } => {
            let file = load(spec)?;
            if file.supermixed.is_some() {
                supermixed::verify(&file, config, *trials as usize, *max_len as usize)
            } else {
                generate::verify(&file, config, *trials as usize, *max_len as usize, max_j.map(|j| j as usize))
            }
        }
        Command::SpanCheck { spec, multidegree, word_bound } => {
            oracle::span(&load(spec)?, config, multidegree, word_bound.map(|b| b as usize))
        }
        Command::Contract { sigma, layout, spec, multidegree, dim } => {
            let file = spec.as_deref().map(load).transpose()?;
            contract::contract(
                config,
                sigma,
                layout.as_deref(),
                file.as_ref(),
                multidegree.as_deref(),
                dim.map(|d| d as usize),
            )
        }
        Command::ReduceSupermixed { spec, trials, max_len } => {
            supermixed::reduce(&load(spec)?, config, trials.map(|t| t as usize), *max_len as usize)
        }
    }
}

fn load(path: &Path) -> Result<SpecFile, CliError> {
    Ok(parse_spec(path)?)
}

pub(crate) fn oracle_budgets(config: &RunConfig) -> OracleBudgets {
    OracleBudgets {
        max_monomials: config.budgets.max_monomials as usize,
        max_products: config.budgets.max_products as usize,
    }
}

/// Independent stream for job `index`, so results do not depend on the
/// number of threads.
pub(crate) fn job_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}
