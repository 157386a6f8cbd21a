use std::path::PathBuf;

use clap::builder::PossibleValuesParser;
use clap::{Args, Parser, Subcommand, ValueEnum};
use cutgroup::families::PRESET_NAMES;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Decide the cut property and related unit questions for integral group rings.
///
/// Exit status: 0 for an affirmative answer or success, 1 for a negative answer or a
/// failed suite, 2 for usage and input errors.
#[derive(Debug, Parser)]
#[command(name = "cutgroup", version)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Largest group order for `verify`; defaults per suite.
    #[arg(long, global = true)]
    pub max_order: Option<usize>,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

/// A finite group: either a catalog entry or a JSON spec file.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct GroupArgs {
    /// Catalog name followed by its integer parameters, e.g. `--catalog symmetric 4`.
    #[arg(long, num_args = 1.., value_name = "NAME PARAMS", allow_negative_numbers = true)]
    pub catalog: Option<Vec<String>>,
    /// Group spec JSON file.
    #[arg(long, value_name = "FILE")]
    pub spec: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Inspect a finite group.
    Group {
        #[command(subcommand)]
        action: GroupAction,
    },
    /// Decide whether a finite group is cut.
    Cut {
        #[command(subcommand)]
        action: CutAction,
    },
    /// Decide RS-elements and RS-subgroups.
    Rs {
        #[command(subcommand)]
        action: RsAction,
    },
    /// Rank of the group of central units of ZG.
    Rank(GroupArgs),
    /// Whether the central unit rank of G/N equals that of G.
    RankPreserved {
        #[command(flatten)]
        group: GroupArgs,
        /// Elements whose normal closure is N.
        #[arg(long, value_delimiter = ',', required = true)]
        normal: Vec<usize>,
    },
    /// Arithmetic in ZG. Elements are JSON `[{"elem":i,"coeff":c},...]`, inline or a file path.
    Ring {
        #[command(subcommand)]
        action: RingAction,
    },
    /// Symbolic decisions for infinite families.
    Families {
        #[command(subcommand)]
        action: FamiliesAction,
    },
    /// Run a theorem suite over the default catalog.
    Verify {
        #[arg(value_parser = PossibleValuesParser::new(["P0", "P1", "pgroup", "nilpotent", "L0", "c0", "T3", "all"]))]
        suite: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum GroupAction {
    /// Order, generators and structural flags.
    Show {
        #[command(flatten)]
        group: GroupArgs,
        /// Also list every element.
        #[arg(long)]
        elements: bool,
    },
    /// Conjugacy classes with their RS status.
    Classes(GroupArgs),
    /// Normal subgroups.
    Normals(GroupArgs),
}

#[derive(Debug, Subcommand)]
pub enum CutAction {
    Check(GroupArgs),
}

#[derive(Debug, Subcommand)]
pub enum RsAction {
    Element {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        element: usize,
    },
    Subgroup {
        #[command(flatten)]
        group: GroupArgs,
        /// Generators of the subgroup.
        #[arg(long, value_delimiter = ',', required = true)]
        generators: Vec<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum RingAction {
    Mul {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// The involution sending g to g^-1.
    Star {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        u: String,
    },
    /// `u u*` for a central unit u.
    Theta {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        u: String,
    },
    /// The Bass unit built from `element` and exponent `k`.
    Bass {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        element: usize,
        #[arg(long)]
        k: u64,
    },
    /// Whether u lies in Δ(G)Δ(N).
    DeltaMember {
        #[command(flatten)]
        group: GroupArgs,
        /// Elements whose normal closure is N.
        #[arg(long, value_delimiter = ',', required = true)]
        normal: Vec<usize>,
        #[arg(long)]
        u: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum FamiliesAction {
    /// `<a, b | a^m, b^n, b a = a^r b>` with 0 meaning infinite order.
    Metacyclic {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, allow_negative_numbers = true)]
        r: i64,
    },
    /// Baumslag-Solitar group `<a, t | t^-1 a^m t = a^n>`.
    Bs {
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
    },
    /// Amalgamated free product, from a preset or explicit structural flags.
    Amalgam {
        #[arg(long, value_parser = PossibleValuesParser::new(PRESET_NAMES.iter().copied()),
              conflicts_with_all = ["rs_in_factor", "indices"])]
        preset: Option<String>,
        /// Whether the amalgamated subgroup is RS in one of the factors.
        #[arg(long)]
        rs_in_factor: Option<bool>,
        /// Indices of the amalgamated subgroup in the two factors; 0 for infinite.
        #[arg(long, value_delimiter = ',')]
        indices: Option<Vec<u64>>,
    },
}
