//! Command-line definition.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "flowtopo",
    version,
    about = "Persistent homology of Markov chain flow imbalance"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stationary flows, imbalance and barcode of one chain.
    Analyze(AnalyzeArgs),
    /// Barcodes along a PageRank alpha grid, traced into a bifurcation diagram.
    PagerankSweep(SweepArgs),
    /// Monomer lattice model: composite chain, aggregated lattice flows and barcode.
    Monomer(MonomerArgs),
    /// Enumerate convection cycles and classify them against the barcode.
    Cycles(CyclesArgs),
    /// Compare barcodes against a rank oracle on seeded random instances.
    OracleCheck(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    Descending,
    Ascending,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LayoutArg {
    Circle,
    Lattice,
}

#[derive(Debug, Clone, Args)]
pub struct GraphArgs {
    /// Edge list CSV `src,dst,weight` (header line optional).
    #[arg(long, short)]
    pub input: PathBuf,
    /// Vertex count; inferred from the largest id when omitted.
    #[arg(long)]
    pub num_vertices: Option<usize>,
    /// Accept self-loops in the edge list.
    #[arg(long)]
    pub allow_self_loops: bool,
    /// Give vertices without out-edges a uniform row instead of failing.
    #[arg(long)]
    pub dangling_patch: bool,
}

#[derive(Debug, Clone, Args)]
pub struct AnalysisArgs {
    /// Filtration direction.
    #[arg(long, value_enum, default_value = "descending")]
    pub direction: DirectionArg,
    /// Start of the filtration range [default: 1.05 max|delta| descending, 0 ascending].
    #[arg(long, allow_negative_numbers = true)]
    pub eps_a: Option<f64>,
    /// End of the filtration range [default: 0 descending, 1.05 max|delta| ascending].
    #[arg(long, allow_negative_numbers = true)]
    pub eps_b: Option<f64>,
    /// Put balanced pairs (|delta| at or below --balance-tol) in the complex at eps_b.
    #[arg(long)]
    pub include_balanced_at_floor: bool,
    /// Pairs with |delta| at or below this count as balanced.
    #[arg(long, default_value = "1e-12")]
    pub balance_tol: f64,
    /// Leave teleportation-only pairs with |delta| below this out of the filtration.
    #[arg(long)]
    pub drop_teleport_below: Option<f64>,
    /// Power-iteration tolerance on the 1-norm of successive iterates.
    #[arg(long, default_value = "1e-13")]
    pub tolerance: f64,
    /// Power-iteration cap [default: 1000000; 10000000 for monomer].
    #[arg(long)]
    pub max_iters: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct AnalyzeArgs {
    /// Edge list CSV `src,dst,weight` (header line optional).
    #[arg(long, short, required_unless_present = "rates", conflicts_with = "rates")]
    pub input: Option<PathBuf>,
    /// Continuous-time rate CSV `src,dst,rate`, uniformized before analysis.
    #[arg(long)]
    pub rates: Option<PathBuf>,
    /// Vertex (state) count; inferred from the largest id when omitted.
    #[arg(long)]
    pub num_vertices: Option<usize>,
    /// Accept self-loops in the edge list.
    #[arg(long)]
    pub allow_self_loops: bool,
    /// Give vertices without out-edges a uniform row instead of failing.
    #[arg(long)]
    pub dangling_patch: bool,
    /// PageRank teleportation weight in (0, 1]; plain random walk when omitted.
    #[arg(long, conflicts_with = "rates")]
    pub alpha: Option<f64>,
    /// Uniformization rate for --rates [default: 1.01 times the largest exit rate].
    #[arg(long, requires = "rates")]
    pub rate_scale: Option<f64>,
    #[command(flatten)]
    pub analysis: AnalysisArgs,
    #[command(flatten)]
    pub plot: PlotArgs,
    /// Also write filtration.csv and complex.json.
    #[arg(long)]
    pub dump_filtration: bool,
    /// Output directory (created if missing).
    #[arg(long, short, default_value = "out")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct PlotArgs {
    /// Bars with lifespan at or below this are left out of barcode plots.
    #[arg(long, default_value_t = 0.0)]
    pub min_lifespan: f64,
    /// Comma-separated eps values drawn as dashed lines on barcode plots.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub sample_eps: Vec<f64>,
    /// Also write imbalance.svg.
    #[arg(long)]
    pub imbalance_svg: bool,
    /// Draw teleportation pairs in imbalance.svg.
    #[arg(long)]
    pub include_teleport_edges: bool,
    /// Vertex layout for imbalance.svg.
    #[arg(long, value_enum, default_value = "circle")]
    pub layout: LayoutArg,
    /// Columns of the lattice layout [default: ceil(sqrt(n))].
    #[arg(long)]
    pub lattice_columns: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Comma-separated alpha grid, strictly increasing in (0, 1].
    #[arg(long, conflicts_with_all = ["alpha_min", "alpha_max", "alpha_steps"])]
    pub alphas: Option<String>,
    /// Evenly spaced grid: first alpha.
    #[arg(long, default_value_t = 0.1)]
    pub alpha_min: f64,
    /// Evenly spaced grid: last alpha.
    #[arg(long, default_value_t = 1.0)]
    pub alpha_max: f64,
    /// Evenly spaced grid: number of points.
    #[arg(long, default_value_t = 50)]
    pub alpha_steps: usize,
    /// Dimension-1 bars at or below this lifespan are not traced.
    #[arg(long, default_value_t = 0.0)]
    pub min_lifespan: f64,
    /// Representative Jaccard overlap needed to continue a trace.
    #[arg(long, default_value_t = 0.5)]
    pub match_threshold: f64,
    /// Write barcode_alpha_<k>.json for every grid point.
    #[arg(long)]
    pub barcodes: bool,
    /// Bisect each change in the traced bar count down to this width and
    /// write bisection.csv.
    #[arg(long)]
    pub bisect_tol: Option<f64>,
    /// Worker threads for the grid [default: all cores].
    #[arg(long)]
    pub threads: Option<usize>,
    #[command(flatten)]
    pub analysis: AnalysisArgs,
    /// Output directory (created if missing).
    #[arg(long, short, default_value = "out")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct MonomerArgs {
    /// Monomer JSON `{"L1":4,"L2":4,"gamma_in":0.01,"gamma_ex":1.0}`; an
    /// optional `gamma_in_reverse` adds backward internal moves.
    #[arg(long, short)]
    pub spec: PathBuf,
    /// Comma-separated gamma_ex values; writes sweep.csv and one barcode each.
    #[arg(long, value_delimiter = ',')]
    pub gamma_ex_grid: Vec<f64>,
    /// Uniformization rate [default: 1.01 times the largest exit rate; with a
    /// grid, the largest over the grid so every run shares one time scale].
    #[arg(long)]
    pub rate_scale: Option<f64>,
    #[command(flatten)]
    pub analysis: AnalysisArgs,
    /// Bars with lifespan at or below this are left out of barcode plots.
    #[arg(long, default_value_t = 0.0)]
    pub min_lifespan: f64,
    /// Output directory (created if missing).
    #[arg(long, short, default_value = "out")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct CyclesArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// PageRank teleportation weight in (0, 1]; plain random walk when omitted.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Longest cycle enumerated.
    #[arg(long, default_value_t = 20)]
    pub max_length: usize,
    /// Enumeration stops (with a warning) after this many cycles.
    #[arg(long, default_value_t = 1_000_000)]
    pub max_count: usize,
    #[command(flatten)]
    pub analysis: AnalysisArgs,
    /// Draw teleportation pairs in imbalance.svg.
    #[arg(long)]
    pub include_teleport_edges: bool,
    /// Output directory (created if missing).
    #[arg(long, short, default_value = "out")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    /// Random seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of random instances.
    #[arg(long, default_value_t = 50)]
    pub instances: usize,
    /// Largest vertex count of an instance.
    #[arg(long, default_value_t = 12)]
    pub max_vertices: usize,
    /// Thresholds compared per instance.
    #[arg(long, default_value_t = 100)]
    pub thresholds: usize,
    /// Write a JSON report here.
    #[arg(long)]
    pub report: Option<PathBuf>,
}
