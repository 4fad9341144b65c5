use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "descon", version, about = "Descent sets, connectivity sets, and their joint distribution")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: CommonOpts,
}

#[derive(Debug, Args, Clone)]
pub struct CommonOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Worker threads for permutation enumeration (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Override the enumeration cap (at most 12). Defaults to DESCON_MAX_N or 10.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
}

#[derive(Debug, Subcommand, Clone)]
pub enum Command {
    /// Statistics D(w), C(w), inv(w), co(w) of one permutation.
    Stats {
        /// One-line notation: `1342`, or comma-separated for n > 9.
        perm: String,
    },
    /// Emit one of the subset-indexed matrices.
    Table {
        /// Which matrix.
        #[arg(long, value_enum)]
        kind: TableKind,
        #[arg(long)]
        n: usize,
        /// Inversion-weighted q-analogue.
        #[arg(long)]
        q: bool,
        /// Order rows and columns by size, then lexicographically.
        #[arg(long)]
        paper_order: bool,
    },
    /// Run every identity check for n = 1..=max-n.
    Verify {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        /// Include the q-analogue checks.
        #[arg(long)]
        q: bool,
    },
    /// Connected-permutation counts by enumeration and by series.
    Connected {
        #[arg(long, default_value_t = 9)]
        max_n: usize,
    },
    /// Check the multiset connectivity counts and the reduction bijection.
    Multiset {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Gamma,
    A,
    B,
    M,
}
