//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use cyclic_rips_core::rational::{parse_rational, Rational};

use crate::output::Format;

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "cyclic-rips", version, about = "Vietoris-Rips and Cech complexes of finite circle subsets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// A cyclic graph: either `C_n^k` or the VR digraph of a points file.
#[derive(Debug, Clone, Args)]
pub struct GraphInput {
    /// Points file: one rational in [0, 1) per line, `#` comments.
    #[arg(long, value_name = "FILE", conflicts_with = "cnk", required_unless_present = "cnk")]
    pub points: Option<PathBuf>,
    /// The cycle power C_n^k.
    #[arg(long, num_args = 2, value_names = ["N", "K"])]
    pub cnk: Option<Vec<usize>>,
    /// Scale for --points, as p/q or a decimal.
    #[arg(long, value_parser = rational_arg, conflicts_with = "cnk")]
    pub r: Option<Rational>,
    /// Use d < r instead of d <= r.
    #[arg(long, conflicts_with = "leq")]
    pub strict: bool,
    /// Use d <= r (the default).
    #[arg(long)]
    pub leq: bool,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write here (atomically) instead of stdout.
    #[arg(long, short, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct TrialArgs {
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
    #[arg(long, env = "CYCLIC_RIPS_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Winding fraction, core, homotopy type and homology of the clique complex.
    Classify {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Homotopy types of all four complexes of the whole circle at scale r.
    Lookup {
        #[arg(long, value_parser = rational_arg)]
        r: Rational,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Canonical dismantling trace, survivors and retraction.
    Dismantle {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Winding fraction only.
    Wf {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Homology of the clique complex by Smith normal form.
    Homology {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Checks the projection from the transformed VR complex onto the Cech complex.
    Cech {
        #[arg(long, value_name = "FILE")]
        points: PathBuf,
        #[arg(long, value_parser = rational_arg)]
        r: Rational,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Random point insertions: per-step series, mean curves or waiting-time summary.
    Evolve {
        #[arg(long, value_parser = rational_arg)]
        r: Rational,
        #[arg(long)]
        strict: bool,
        #[arg(long, default_value_t = 1000)]
        max_n: usize,
        #[command(flatten)]
        trials: TrialArgs,
        /// Emit waiting-time statistics instead of the series.
        #[arg(long, conflicts_with = "means")]
        summary: bool,
        /// Emit the per-n averages instead of the series.
        #[arg(long)]
        means: bool,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Balls into K bins with m colours.
    Bins {
        #[arg(long)]
        m: usize,
        #[arg(long = "K", alias = "k")]
        k: usize,
        #[command(flatten)]
        trials: TrialArgs,
        /// json: summary; csv: one row per trial.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Regular subsets on the circle coupled with the colour bins.
    RegularCoupling {
        #[arg(long)]
        m: usize,
        #[arg(long = "K", alias = "k")]
        k: usize,
        #[command(flatten)]
        trials: TrialArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        out: OutputArgs,
    },
}
