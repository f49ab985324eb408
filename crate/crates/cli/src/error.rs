//! Errors surfaced by the front end and their diagnostic kind.

use qtl_core::algebra::AlgebraError;
use qtl_core::invariant::InvariantError;
use qtl_core::oracle::OracleError;
use qtl_core::perm::PermError;
use qtl_core::quiver::QuiverError;
use qtl_core::supermixed::SupermixedError;
use qtl_core::words::WordError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("QTL_THREADS: {0}")]
    Threads(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Supermixed(#[from] SupermixedError),
    #[error("output: {0}")]
    Output(String),
}

/// Wrapper variants that only forward another error.
const WRAPPERS: [&str; 8] = ["Quiver", "Word", "Perm", "Algebra", "Invariant", "Oracle", "Supermixed", "Threads"];

impl CliError {
    /// Name of the innermost error variant, e.g. `PartitionViolation`.
    pub fn kind(&self) -> String {
        let debug = format!("{self:?}");
        let mut rest = debug.as_str();
        loop {
            let end = rest.find(|c: char| !c.is_alphanumeric() && c != '_').unwrap_or(rest.len());
            let (name, tail) = rest.split_at(end);
            if WRAPPERS.contains(&name) && tail.starts_with('(') && name != "Threads" {
                rest = &tail[1..];
                continue;
            }
            return name.to_string();
        }
    }
}
