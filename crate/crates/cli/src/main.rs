//! `permanence` command line: scoring, detection, validation, perturbation
//! and analysis over edge-list and partition files.

mod commands;
mod error;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::CliError;
use crate::output::{Format, Output, Run};

#[derive(Debug, Parser)]
#[command(name = "permanence", version, about = "Permanence scoring and MaxPerm community detection")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Score a partition: permanence, modularity, conductance and cut-ratio.
    Score(ScoreArgs),
    /// Detect communities with MaxPerm.
    Detect(DetectArgs),
    /// Compare a detected partition with ground truth.
    Validate(ValidateArgs),
    /// Score perturbed ground truth over a grid of noise levels.
    Perturb(PerturbArgs),
    /// Sensitivity of MaxPerm to the vertex processing order.
    Sensitivity(SensitivityArgs),
    /// Analysis studies built on permanence.
    #[command(subcommand)]
    Analyze(AnalyzeCommand),
    /// Generate a synthetic graph with its planted communities.
    Generate(GenerateArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum AggregationArg {
    Unweighted,
    SizeWeighted,
}

#[derive(Debug, Args, Serialize)]
pub struct ScoreArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub partition: PathBuf,
    /// Emit one row per vertex instead of the graph-level metrics.
    #[arg(long)]
    pub per_vertex: bool,
    /// How conductance and cut-ratio are averaged over communities.
    #[arg(long, value_enum, default_value_t = AggregationArg::Unweighted)]
    pub aggregation: AggregationArg,
    /// Compute in exact rational arithmetic before printing.
    #[arg(long)]
    pub exact: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum SeedArg {
    PairWise,
    HighDegree,
    HighCc,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum ScanArg {
    First,
    Best,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum AcceptArg {
    VertexAndNeighbors,
    VertexOnly,
}

#[derive(Debug, Args, Serialize)]
pub struct DetectorArgs {
    #[arg(long, value_enum, default_value_t = SeedArg::HighDegree)]
    pub seed_strategy: SeedArg,
    #[arg(long, default_value_t = 10)]
    pub max_iter: usize,
    #[arg(long, default_value_t = 0)]
    pub rng_seed: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct DetectArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[command(flatten)]
    pub detector: DetectorArgs,
    /// Vertex labels in processing order.
    #[arg(long)]
    pub order_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ScanArg::First)]
    pub scan: ScanArg,
    #[arg(long, value_enum, default_value_t = AcceptArg::VertexAndNeighbors)]
    pub acceptance: AcceptArg,
    /// Recompute every permanence instead of using the edge cache.
    #[arg(long)]
    pub no_cache: bool,
    /// Also write the partition in partition-file format.
    #[arg(long)]
    pub partition_out: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args, Serialize)]
pub struct ValidateArgs {
    #[arg(long)]
    pub detected: PathBuf,
    #[arg(long)]
    pub truth: PathBuf,
    /// Enables the degree-weighted metrics.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum StrategyArg {
    EdgeBased,
    Random,
    CommunityBased,
    All,
}

#[derive(Debug, Args, Serialize)]
pub struct PerturbArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub truth: PathBuf,
    #[arg(long, value_enum, default_value_t = StrategyArg::All)]
    pub strategy: StrategyArg,
    /// Ascending perturbation intensities.
    #[arg(long, value_delimiter = ',', default_value = "0.01,0.1,0.2,0.3,0.4,0.5")]
    pub p_grid: Vec<f64>,
    #[arg(long, default_value_t = 10)]
    pub runs: usize,
    #[arg(long, default_value_t = 0)]
    pub rng_seed: u64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args, Serialize)]
pub struct SensitivityArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, default_value_t = 20)]
    pub permutations: usize,
    #[command(flatten)]
    pub detector: DetectorArgs,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args, Serialize)]
pub struct GraphPartition {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub partition: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct PartitionPair {
    #[arg(long)]
    pub detected: PathBuf,
    #[arg(long)]
    pub truth: PathBuf,
    /// Reads both partitions against the graph's labels.
    #[arg(long)]
    pub graph: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum SelectorArg {
    Random,
    Degree,
    Permanence,
    All,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum WiringArg {
    Tight,
    Sparse,
}

#[derive(Debug, Subcommand)]
pub enum AnalyzeCommand {
    /// Permanence histogram over 20 bins on [-1, 1].
    Histogram(HistogramArgs),
    /// Mean permanence components per histogram bin.
    Components(HistogramArgs),
    /// Density change after removing the least permanent members.
    Strengthen(StrengthenArgs),
    /// Permanence against farness from co-members.
    Farness(FarnessArgs),
    /// Assortativity of permanence and degree inside communities.
    Assortativity(HistogramArgs),
    /// Overlap weights between detected and truth communities.
    Overlap(OverlapArgs),
    /// Community size distributions and the largest community's best match.
    Sizes(OverlapArgs),
    /// Push-protocol spreading from one initiator per community.
    Spread(SpreadArgs),
    /// Four-case bridge scenario and the lemma sign checks.
    Lemmas(LemmaArgs),
    /// Modularity and permanence as planted blocks are added.
    Growth(GrowthArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct HistogramArgs {
    #[command(flatten)]
    pub input: GraphPartition,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args, Serialize)]
pub struct StrengthenArgs {
    #[command(flatten)]
    pub input: GraphPartition,
    /// Fractions of each community to remove, each in [0, 0.5].
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.2,0.3")]
    pub fractions: Vec<f64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args, Serialize)]
pub struct FarnessArgs {
    #[command(flatten)]
    pub input: GraphPartition,
    #[arg(long, default_value_t = 0.1)]
    pub bin_width: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args, Serialize)]
pub struct OverlapArgs {
    #[command(flatten)]
    pub input: PartitionPair,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args, Serialize)]
pub struct SpreadArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub truth: PathBuf,
    #[arg(long, value_enum, default_value_t = SelectorArg::All)]
    pub selector: SelectorArg,
    #[arg(long, default_value_t = 500)]
    pub runs: usize,
    #[arg(long, default_value_t = 0)]
    pub rng_seed: u64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args, Serialize)]
pub struct LemmaArgs {
    #[arg(long, default_value_t = 2)]
    pub alpha: usize,
    #[arg(long, default_value_t = 2)]
    pub beta: usize,
    #[arg(long, default_value_t = 6)]
    pub size_a: usize,
    #[arg(long, default_value_t = 6)]
    pub size_b: usize,
    #[arg(long, value_enum, default_value_t = WiringArg::Sparse)]
    pub wiring_a: WiringArg,
    #[arg(long, value_enum, default_value_t = WiringArg::Sparse)]
    pub wiring_b: WiringArg,
    /// Shuffles vertex ids; results do not depend on it.
    #[arg(long, default_value_t = 0)]
    pub rng_seed: u64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args, Serialize)]
pub struct GrowthArgs {
    #[arg(long, value_delimiter = ',', default_value = "4,8,16,32")]
    pub blocks: Vec<usize>,
    #[arg(long, default_value_t = 25)]
    pub block_size: usize,
    #[arg(long, default_value_t = 0.6)]
    pub p_in: f64,
    #[arg(long, default_value_t = 0.02)]
    pub p_out: f64,
    #[arg(long, default_value_t = 0)]
    pub rng_seed: u64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum KindArg {
    Ring,
    Grid,
    Planted,
}

#[derive(Debug, Args, Serialize)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Ring: number of cliques.
    #[arg(long, default_value_t = 10)]
    pub m: usize,
    /// Ring: clique size.
    #[arg(long, default_value_t = 5)]
    pub k: usize,
    #[arg(long, default_value_t = 10)]
    pub rows: usize,
    #[arg(long, default_value_t = 10)]
    pub cols: usize,
    #[arg(long, default_value_t = 4)]
    pub blocks: usize,
    #[arg(long, default_value_t = 25)]
    pub block_size: usize,
    #[arg(long, default_value_t = 0.8)]
    pub p_in: f64,
    #[arg(long, default_value_t = 0.05)]
    pub p_out: f64,
    #[arg(long, default_value_t = 0)]
    pub rng_seed: u64,
    /// Edge list destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Planted partition destination.
    #[arg(long)]
    pub truth: Option<PathBuf>,
    /// Format of the summary printed to stdout.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

fn start(subcommand: &str, args: &impl Serialize, inputs: Vec<String>, rng_seed: Option<u64>) -> Result<Run, CliError> {
    Ok(Run { subcommand: subcommand.to_string(), inputs, flags: serde_json::to_value(args)?, rng_seed, started: Instant::now() })
}

/// Runs `body` and writes its output in the requested format.
fn execute<A: Serialize>(
    name: &str,
    args: &A,
    common: &Common,
    inputs: Vec<String>,
    rng_seed: Option<u64>,
    body: impl FnOnce(&A) -> Result<Output, CliError>,
) -> Result<(), CliError> {
    let run = start(name, args, inputs, rng_seed)?;
    let output = body(args)?;
    let sidecar = common.out.as_deref().filter(|_| common.format == Format::Csv).map(output::manifest_path);
    output::emit(&run, output, common.format, common.out.as_deref(), sidecar)
}

fn dispatch(command: Command) -> Result<(), CliError> {
    use input::{display, display_all};
    match command {
        Command::Score(a) => {
            let inputs = display_all([&a.graph, &a.partition]);
            execute("score", &a, &a.common, inputs, None, commands::score)
        }
        Command::Detect(a) => {
            let inputs = display_all(std::iter::once(&a.graph).chain(&a.order_file));
            execute("detect", &a, &a.common, inputs, Some(a.detector.rng_seed), commands::detect)
        }
        Command::Validate(a) => {
            let inputs = display_all([&a.detected, &a.truth].into_iter().chain(&a.graph));
            execute("validate", &a, &a.common, inputs, None, commands::validate)
        }
        Command::Perturb(a) => {
            let inputs = display_all([&a.graph, &a.truth]);
            execute("perturb", &a, &a.common, inputs, Some(a.rng_seed), commands::perturb)
        }
        Command::Sensitivity(a) => {
            let inputs = vec![display(&a.graph)];
            execute("sensitivity", &a, &a.common, inputs, Some(a.detector.rng_seed), commands::sensitivity)
        }
        Command::Generate(a) => {
            let run = start("generate", &a, Vec::new(), Some(a.rng_seed))?;
            let output = commands::generate(&a)?;
            let sidecar = a.out.as_deref().map(output::manifest_path);
            output::emit(&run, output, a.format, None, sidecar)
        }
        Command::Analyze(cmd) => match cmd {
            AnalyzeCommand::Histogram(a) => {
                let inputs = display_all([&a.input.graph, &a.input.partition]);
                execute("analyze histogram", &a, &a.common, inputs, None, commands::histogram)
            }
            AnalyzeCommand::Components(a) => {
                let inputs = display_all([&a.input.graph, &a.input.partition]);
                execute("analyze components", &a, &a.common, inputs, None, commands::components)
            }
            AnalyzeCommand::Strengthen(a) => {
                let inputs = display_all([&a.input.graph, &a.input.partition]);
                execute("analyze strengthen", &a, &a.common, inputs, None, commands::strengthen)
            }
            AnalyzeCommand::Farness(a) => {
                let inputs = display_all([&a.input.graph, &a.input.partition]);
                execute("analyze farness", &a, &a.common, inputs, None, commands::farness)
            }
            AnalyzeCommand::Assortativity(a) => {
                let inputs = display_all([&a.input.graph, &a.input.partition]);
                execute("analyze assortativity", &a, &a.common, inputs, None, commands::assortativity)
            }
            AnalyzeCommand::Overlap(a) => {
                let inputs = display_all([&a.input.detected, &a.input.truth].into_iter().chain(&a.input.graph));
                execute("analyze overlap", &a, &a.common, inputs, None, commands::overlap)
            }
            AnalyzeCommand::Sizes(a) => {
                let inputs = display_all([&a.input.detected, &a.input.truth].into_iter().chain(&a.input.graph));
                execute("analyze sizes", &a, &a.common, inputs, None, commands::sizes)
            }
            AnalyzeCommand::Spread(a) => {
                let inputs = display_all([&a.graph, &a.truth]);
                execute("analyze spread", &a, &a.common, inputs, Some(a.rng_seed), commands::spread)
            }
            AnalyzeCommand::Lemmas(a) => execute("analyze lemmas", &a, &a.common, Vec::new(), Some(a.rng_seed), commands::lemmas),
            AnalyzeCommand::Growth(a) => execute("analyze growth", &a, &a.common, Vec::new(), Some(a.rng_seed), commands::growth),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
