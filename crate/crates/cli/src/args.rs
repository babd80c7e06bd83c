use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "nilgrowth", version, about = "Exact experiments on nilpotent groups, lattices and growth")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// BCH products, brackets, dilations and Zassenhaus factors.
    Lie(LieArgs),
    /// Successive minima, Minkowski's second theorem and nested exploration.
    Lattice(LatticeArgs),
    /// The H₋/H₊ sandwich, index checks and Følner counts.
    Harmonious(HarmoniousArgs),
    /// Ball sizes of Cayley graphs and the two-scale Heisenberg example.
    Growth(GrowthArgs),
    /// Scales of new relations and breadth-first subgroup exploration.
    Relations(RelationsArgs),
    /// Randomized verification suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Ceiling on enumerated lattice points.
    #[arg(long)]
    pub budget_points: Option<u64>,
    /// Ceiling on enumerated group elements and interval cells.
    #[arg(long)]
    pub budget_elements: Option<u64>,
    /// Wall-clock ceiling in seconds.
    #[arg(long)]
    pub time_limit: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LieOp {
    Bch,
    Bracket,
    Commutator,
    Dilate,
    Pnorm,
    Zassenhaus,
    Basis,
}

#[derive(Debug, Clone, Args)]
#[command(args_override_self = true)]
pub struct LieArgs {
    #[arg(long, value_enum)]
    pub op: LieOp,
    /// `heisenberg` or `free-k<k>-s<s>`.
    #[arg(long, default_value = "heisenberg")]
    pub algebra: String,
    /// Coordinates as comma-separated rationals.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<String>,
    #[arg(long)]
    pub lambda: Option<String>,
    /// Step for `zassenhaus`.
    #[arg(long)]
    pub step: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LatticeOp {
    Hnf,
    Minima,
    Minkowski,
    Explore,
}

#[derive(Debug, Clone, Args)]
#[command(args_override_self = true)]
pub struct LatticeArgs {
    #[arg(long, value_enum)]
    pub op: LatticeOp,
    /// Rows separated by `;`, entries by `,`.
    #[arg(long, allow_hyphen_values = true)]
    pub basis: String,
    /// `cube(r)`, `box(w1,..)`, `l1(r)`, `l2(r)` or `parallelotope(s; v1; v2; ..)`.
    #[arg(long)]
    pub body: Option<String>,
    /// Nested bodies separated by `|`.
    #[arg(long)]
    pub bodies: Option<String>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HarmoniousOp {
    Closure,
    Sandwich,
    Index,
    Scaling,
    Folner,
}

#[derive(Debug, Clone, Args)]
#[command(args_override_self = true)]
pub struct HarmoniousArgs {
    #[arg(long, value_enum)]
    pub op: HarmoniousOp,
    #[arg(long, default_value = "heisenberg")]
    pub algebra: String,
    /// Lie coordinates of the generators of Γ, rows separated by `;`;
    /// defaults to the integer Heisenberg group.
    #[arg(long, allow_hyphen_values = true)]
    pub generators: Option<String>,
    #[arg(long)]
    pub c1: Option<u64>,
    #[arg(long)]
    pub c2: Option<u64>,
    #[arg(long)]
    pub lambda: Option<String>,
    /// Word radius of the closure enumeration of Γ.
    #[arg(long, default_value_t = 6)]
    pub word_radius: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
#[command(args_override_self = true)]
pub struct GrowthArgs {
    /// finite-abelian, heisenberg-Z, heisenberg-mod-m or heisenberg-tao.
    #[arg(long)]
    pub group: String,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub moduli: Option<Vec<i64>>,
    #[arg(long = "N")]
    pub n: Option<i64>,
    /// Largest power for heisenberg-tao.
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Largest radius for the other groups.
    #[arg(long)]
    pub r_max: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
#[command(args_override_self = true)]
pub struct RelationsArgs {
    /// Moduli of `Π Z/nᵢ` with standard generators.
    #[arg(long, value_delimiter = ',')]
    pub abelian: Option<Vec<i64>>,
    #[arg(long, default_value_t = 10)]
    pub max_scale: u32,
    /// Explore a subgroup of this group instead.
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub moduli: Option<Vec<i64>>,
    /// Subgroup generators, rows separated by `;`.
    #[arg(long, allow_hyphen_values = true)]
    pub subgroup: Option<String>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Minkowski,
    Exploration,
    Planar,
    Pairs,
    Scales,
    Folner,
    TaoRelations,
}

#[derive(Debug, Clone, Args)]
#[command(args_override_self = true)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// `lo..hi` or a single dimension.
    #[arg(long, default_value = "2..4")]
    pub dims: String,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long = "N", default_value_t = 3)]
    pub n: i64,
    #[arg(long, default_value_t = 32)]
    pub lambda: i64,
    #[command(flatten)]
    pub common: Common,
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Lie(a) => &a.common,
            Command::Lattice(a) => &a.common,
            Command::Harmonious(a) => &a.common,
            Command::Growth(a) => &a.common,
            Command::Relations(a) => &a.common,
            Command::Verify(a) => &a.common,
        }
    }
}
