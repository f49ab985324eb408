//! Command-line grammar.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use qtl_core::algebra::Field;
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "qtl", version, about = "Invariants of mixed and supermixed quiver representations")]
pub struct Cli {
    /// Coefficient field: Q or F<p>. Defaults to F101 for verification and Q elsewhere.
    #[arg(long, global = true)]
    pub field: Option<Field>,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest monomial basis an oracle run may build.
    #[arg(long, global = true, default_value_t = 20_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_monomials: u64,
    /// Largest number of generator products a span check may form.
    #[arg(long, global = true, default_value_t = 200_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_products: u64,
    /// Largest number of terms in a symbolic generator.
    #[arg(long, global = true, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_terms: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DedupeArg {
    Rotation,
    RotationTranspose,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a quiver file, classify its arrows and show the fourth-case normalization.
    Describe { spec: PathBuf },
    /// Print the doubled quiver.
    Double { spec: PathBuf },
    /// Enumerate closed paths of the doubled quiver.
    Paths {
        spec: PathBuf,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        max_len: u64,
        #[arg(long, value_enum, default_value_t = DedupeArg::RotationTranspose)]
        dedupe: DedupeArg,
    },
    /// Print the generators sigma_j(w).
    Generate {
        spec: PathBuf,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        max_len: u64,
        /// Defaults to the largest vertex dimension.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_j: Option<u64>,
    },
    /// Check invariance of every generator at random points; files with a
    /// supermixed block check the restricted generators of the reduction.
    Verify {
        spec: PathBuf,
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        max_len: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_j: Option<u64>,
    },
    /// Compare the span of generator products with the oracle space at one multidegree.
    SpanCheck {
        spec: PathBuf,
        /// `a=2,b=1` or positional `2,1`.
        #[arg(long)]
        multidegree: String,
        /// Longest word used; defaults to the total degree.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        word_bound: Option<u64>,
    },
    /// Contract a permutation of the hat numbers into a product of traces.
    Contract {
        /// Cycle notation, e.g. `(1726)(354)`.
        #[arg(long)]
        sigma: String,
        /// `t,s`; the one-pair layout with t loops and s arrows each way.
        #[arg(long)]
        layout: Option<String>,
        /// Take the layout from this quiver at `--multidegree` instead.
        #[arg(long, requires = "multidegree")]
        spec: Option<PathBuf>,
        #[arg(long)]
        multidegree: Option<String>,
        /// Also expand the polynomial at this dimension (universal layout only).
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        dim: Option<u64>,
    },
    /// Build the mixed quiver of a supermixed file and its substitution.
    ReduceSupermixed {
        spec: PathBuf,
        /// Also verify the restricted generators with this many trials.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        trials: Option<u64>,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        max_len: u64,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Describe { .. } => "describe",
            Command::Double { .. } => "double",
            Command::Paths { .. } => "paths",
            Command::Generate { .. } => "generate",
            Command::Verify { .. } => "verify",
            Command::SpanCheck { .. } => "span-check",
            Command::Contract { .. } => "contract",
            Command::ReduceSupermixed { .. } => "reduce-supermixed",
        }
    }

    pub fn input(&self) -> Option<&PathBuf> {
        match self {
            Command::Describe { spec }
            | Command::Double { spec }
            | Command::Paths { spec, .. }
            | Command::Generate { spec, .. }
            | Command::Verify { spec, .. }
            | Command::SpanCheck { spec, .. }
            | Command::ReduceSupermixed { spec, .. } => Some(spec),
            Command::Contract { spec, .. } => spec.as_ref(),
        }
    }
}
