//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "zcohom", version, about = "Cohomology of finite semigroups with zero")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Where the semigroup comes from: a table file or a presentation.
#[derive(Debug, Clone, Args)]
pub struct Source {
    /// Semigroup table as JSON.
    #[arg(long, conflicts_with = "presentation")]
    pub semigroup: Option<PathBuf>,
    /// Presentation in the text grammar.
    #[arg(long)]
    pub presentation: Option<PathBuf>,
    /// Element bound for enumerating a presentation.
    #[arg(long)]
    pub bound: Option<usize>,
    /// Enumerate the presentation as a monoid (empty word allowed).
    #[arg(long)]
    pub monoid: bool,
}

/// Coefficients: a module file, or a trivial module on the given group.
#[derive(Debug, Clone, Args)]
pub struct Coeffs {
    /// Module as JSON.
    #[arg(long, conflicts_with = "group")]
    pub module: Option<PathBuf>,
    /// Invariant factors of a trivial coefficient group, e.g. `2` or `2,4`; `0` is Z.
    #[arg(long)]
    pub group: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Zero,
    Em,
    Bimodule,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Checks a semigroup (and optionally a module) and reports its predicates.
    Validate {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        module: Option<PathBuf>,
    },
    /// One cohomology group with its generating cocycles.
    Cohom {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        coeffs: Coeffs,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value = "zero")]
        variant: VariantArg,
        /// Cross-check the group order by listing cochains.
        #[arg(long)]
        oracle: bool,
    },
    /// Schur multiplier with trivial coefficients.
    Schur {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        group: String,
        /// Cross-check against factor-set enumeration.
        #[arg(long)]
        oracle: bool,
    },
    /// Brauer monoid of GF(q^n)/GF(q).
    Brauer {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
        /// Cross-check against weak-cocycle enumeration.
        #[arg(long)]
        oracle: bool,
    },
    /// All modifications of a finite group.
    Modifications {
        #[command(flatten)]
        source: Source,
        /// Abelian group by invariant factors, used instead of a table.
        #[arg(long)]
        group: Option<String>,
    },
    /// Gown presentation of a presentation, or gown classes of a table.
    Gown {
        #[arg(long, conflicts_with = "presentation")]
        semigroup: Option<PathBuf>,
        #[arg(long)]
        presentation: Option<PathBuf>,
        /// Element bound (presentations) or sequence length bound (tables).
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long)]
        monoid: bool,
    },
    /// Enumerates a presented semigroup or monoid.
    Enumerate {
        #[arg(long)]
        presentation: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        bound: usize,
        #[arg(long)]
        monoid: bool,
    },
    /// Closed subsets of G x G for a finite abelian group G.
    Tsubsets {
        #[arg(long)]
        group: String,
    },
    /// The 25-element monoid acting on pairs of group elements.
    Tsemigroup,
    /// Cohomology of the natural system induced by a module, degrees 0..=degree.
    Natsys {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        coeffs: Coeffs,
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
    /// Compares the cochain complex with Hom out of the bar resolution.
    CompareComplexes {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        coeffs: Coeffs,
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
    /// Runs every applicable brute-force twin.
    Oracle {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        coeffs: Coeffs,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, value_enum, default_value = "zero")]
        variant: VariantArg,
        #[arg(long, requires = "n")]
        q: Option<u64>,
        #[arg(long, requires = "q")]
        n: Option<u32>,
    },
}
