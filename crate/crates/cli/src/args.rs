use std::path::PathBuf;

use clap::{ArgAction, Parser, Subcommand};

/// Invariants and word calculus for fundamental groups of reduced
/// suspensions.
#[derive(Debug, Parser)]
#[command(name = "archipelago", version)]
pub struct Cli {
    /// Projection bound used by `word eq` and `word neq`.
    #[arg(long, global = true, default_value_t = 32)]
    pub nmax: u32,

    /// Emit the full JSON report; with `--json=false` only the result is printed.
    #[arg(long, global = true, default_value_t = true, num_args = 0..=1, default_missing_value = "true", action = ArgAction::Set)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Horseshoe or tpd classification of a model (a file or `builtin:<name>`).
    Classify { model: String },
    /// Isomorphism test of the suspension groups of two tpd models.
    Iso { a: String, b: String },
    #[command(subcommand)]
    Word(WordCommand),
    #[command(subcommand)]
    Seq(SeqCommand),
    /// Print a builtin model, or re-emit a model file canonically.
    Examples { name: String },
}

#[derive(Debug, Subcommand)]
pub enum WordCommand {
    /// Normal form of the letters of level at most `n`.
    Project { n: u32, word: PathBuf },
    /// Compare two words at every projection up to `--nmax`.
    Eq { u: PathBuf, v: PathBuf },
    /// Least projection level up to `--nmax` telling two words apart.
    Neq { u: PathBuf, v: PathBuf },
    Concat { u: PathBuf, v: PathBuf },
    Invert { word: PathBuf },
    /// Apply `a_n ↦ a_{2n} a_{2n+1}⁻¹` letterwise.
    Phi { word: PathBuf },
    /// `k`-th root of a finite word.
    Root { k: u32, word: PathBuf },
    /// Word of the reduced loop, with point ids resolved against a model.
    ReduceLoop {
        #[arg(value_name = "LOOP")]
        loop_file: PathBuf,
        model: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum SeqCommand {
    Equiv { a: PathBuf, b: PathBuf },
    /// Sum a sequence over the blocks of a block schema.
    Regroup { seq: PathBuf, schema: PathBuf },
    /// Partial sum of the first `m + 1` terms.
    Sum { m: usize, seq: PathBuf },
}
