use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "ghostring", version, about = "Exact Koszul, Tor, André–Quillen and ghost-map computations for graded rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Print the JSON run report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Simplicial truncation level L.
    #[arg(long, global = true, value_name = "L")]
    pub levels: Option<usize>,

    /// Internal degree bound D.
    #[arg(long = "degree-bound", global = true, value_name = "D", allow_negative_numbers = true)]
    pub degree_bound: Option<i64>,

    /// Homological bound N.
    #[arg(long = "homological-bound", global = true, value_name = "N")]
    pub homological_bound: Option<usize>,

    /// Monomial order: `degrevlex` or `deglex`, optionally with a variable
    /// priority such as `deglex:y>x`.
    #[arg(long, global = true, value_name = "ORDER")]
    pub order: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Embedding dimension, Krull dimension, minimal generator count and
    /// regular / complete-intersection verdict.
    Classify { ring: String },

    /// Conormal, contracting and Koszul-ghost tests for an endomorphism.
    Ghost {
        ring: String,
        #[arg(long)]
        map: String,
        /// Largest power tried by the contracting test.
        #[arg(long = "j-max", default_value_t = 8)]
        j_max: u32,
    },

    /// André–Quillen homology of a complete-intersection presentation.
    Aq { ring: String },

    /// Koszul homology on the variables or on a given sequence.
    Koszul {
        ring: String,
        /// Comma-separated polynomials; defaults to the variables.
        #[arg(long)]
        sequence: Option<String>,
        /// Also compute the normalized simplicial Koszul homology.
        #[arg(long)]
        simplicial: bool,
    },

    /// Betti numbers of the residue field.
    Betti { ring: String },

    /// `dim Tor_i(k, X)` for a choice of second argument.
    Tor {
        ring: String,
        #[arg(long, value_enum, default_value_t = TorWith::ResidueField)]
        with: TorWith,
        #[arg(long = "frobenius-power", default_value_t = 1)]
        frobenius_power: u32,
    },

    /// Frobenius pushforward Tor against regularity.
    Kunz {
        ring: String,
        #[arg(long = "frobenius-power", default_value_t = 1)]
        frobenius_power: u32,
    },

    /// Tor of the Frobenius-twisted Koszul complex against the product
    /// formula.
    GhostTrivial {
        ring: String,
        #[arg(long = "frobenius-power", default_value_t = 1)]
        frobenius_power: u32,
    },

    /// Ideal membership of a polynomial in the defining ideal.
    Member { ring: String, poly: String },

    /// Krull dimension.
    Dim { ring: String },

    /// Verify a corpus file (the bundled corpus by default).
    Corpus { path: Option<PathBuf> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TorWith {
    ResidueField,
    Frobenius,
    KoszulTrivial,
    KoszulFrobenius,
}
