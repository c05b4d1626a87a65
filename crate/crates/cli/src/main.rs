//! `uted`: tree edit distances, benchmarks and k-NN evaluation from the
//! command line.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 computation
//! failure, 3 I/O or input format error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use uted_core::chem::LabelScheme;
use uted_core::eval::Algorithm;
use uted_core::HeuristicKind;

#[derive(Debug, Parser)]
#[command(
    name = "uted",
    version,
    about = "Exact unordered tree edit distance with custom costs"
)]
struct Cli {
    /// Increase log verbosity (-v info, -vv debug); logs go to stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Convert a JSONL dataset (SMILES or tree records) into tree records.
    Convert(ConvertArgs),
    /// Compute the pairwise distance matrix of a dataset.
    Dist(DistArgs),
    /// Benchmark search effort and runtime over several configurations.
    Bench(BenchArgs),
    /// Cross-validate a k-nearest-neighbour regressor on a dataset.
    Knn(KnnArgs),
    /// Run built-in correctness checks.
    Selfcheck(SelfcheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SourceFormat {
    /// Records carry a "smiles" field.
    Smiles,
    /// Records carry a "tree" field.
    Tree,
}

#[derive(Debug, Args)]
struct ConvertArgs {
    /// Kind of input records.
    #[arg(long = "from", value_enum, default_value = "smiles")]
    from: SourceFormat,
    /// Label scheme for converted trees: hydrogen-count, electron-count, syntactic or raw.
    #[arg(long, default_value = "syntactic", value_parser = parse_scheme)]
    scheme: LabelScheme,
    /// Input JSONL dataset.
    input: PathBuf,
    /// Output JSONL dataset (stdout when omitted).
    output: Option<PathBuf>,
}

#[derive(Debug, Args, Clone)]
struct CostArgs {
    /// Cost function: "unit", "numeric" (absolute label difference) or a CSV cost table path.
    #[arg(long, default_value = "unit")]
    costs: String,
    /// Numeric value of the gap under numeric costs.
    #[arg(long, default_value_t = 0.0)]
    gap_value: f64,
}

#[derive(Debug, Args, Clone)]
struct DatasetArgs {
    /// JSONL dataset with "tree" or "smiles" records.
    dataset: PathBuf,
    /// Label scheme applied to SMILES records: hydrogen-count, electron-count, syntactic or raw.
    #[arg(long, default_value = "electron-count", value_parser = parse_scheme)]
    scheme: LabelScheme,
}

#[derive(Debug, Args, Clone)]
struct SearchArgs {
    /// Distance algorithm.
    #[arg(long, default_value = "uted", value_parser = parse_algorithm)]
    algorithm: Algorithm,
    /// A* heuristic: h1, h2, h3 or zero.
    #[arg(long, default_value = "h2", value_parser = parse_heuristic)]
    heuristic: HeuristicKind,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Abort a pair after this many polls.
    #[arg(long)]
    budget_polls: Option<u64>,
    /// Abort a pair after this many milliseconds.
    #[arg(long)]
    budget_ms: Option<u64>,
    /// Require the roots to be substituted for each other (uted and oracle only).
    #[arg(long)]
    forced_roots: bool,
}

#[derive(Debug, Args)]
struct DistArgs {
    #[command(flatten)]
    data: DatasetArgs,
    #[command(flatten)]
    search: SearchArgs,
    #[command(flatten)]
    cost: CostArgs,
    /// Matrix CSV output (stdout when omitted).
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Per-pair statistics CSV output.
    #[arg(long)]
    stats: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[command(flatten)]
    data: DatasetArgs,
    /// Algorithms to benchmark (comma separated).
    #[arg(long, value_delimiter = ',', default_value = "uted", value_parser = parse_algorithm)]
    algorithm: Vec<Algorithm>,
    /// Heuristics to benchmark (comma separated).
    #[arg(long, value_delimiter = ',', default_value = "h1,h2,h3", value_parser = parse_heuristic)]
    heuristic: Vec<HeuristicKind>,
    /// Cost functions to benchmark (comma separated; see `dist --costs`).
    #[arg(long, value_delimiter = ',', default_value = "unit")]
    costs: Vec<String>,
    /// Numeric value of the gap under numeric costs.
    #[arg(long, default_value_t = 0.0)]
    gap_value: f64,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Abort a pair after this many polls.
    #[arg(long)]
    budget_polls: Option<u64>,
    /// Abort a pair after this many milliseconds.
    #[arg(long)]
    budget_ms: Option<u64>,
    /// Directory receiving <config>.summary.csv, <config>.pairs.csv and <config>.plot.csv.
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Debug, Args)]
struct KnnArgs {
    #[command(flatten)]
    data: DatasetArgs,
    #[command(flatten)]
    search: SearchArgs,
    #[command(flatten)]
    cost: CostArgs,
    /// Number of neighbours.
    #[arg(long, default_value_t = 5)]
    k: usize,
    /// Number of cross-validation folds.
    #[arg(long, default_value_t = 15)]
    folds: usize,
    /// Seed of the fold shuffle.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Report CSV output (stdout when omitted).
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SelfcheckArgs {
    /// Heuristic used by the A* checks.
    #[arg(long, default_value = "h2", value_parser = parse_heuristic)]
    heuristic: HeuristicKind,
    #[command(flatten)]
    cost: CostArgs,
    /// Number of random pairs in the oracle sweep.
    #[arg(long, default_value_t = 50)]
    pairs: usize,
    /// Seed of the random sweep.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn parse_scheme(s: &str) -> Result<LabelScheme, String> {
    s.parse()
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse()
}

fn parse_heuristic(s: &str) -> Result<HeuristicKind, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .init();

    let result = match cli.command {
        Command::Convert(args) => commands::convert(args),
        Command::Dist(args) => commands::dist(args),
        Command::Bench(args) => commands::bench(args),
        Command::Knn(args) => commands::knn(args),
        Command::Selfcheck(args) => commands::selfcheck(args),
    };
    match result {
        Ok(code) => code.into(),
        Err(failure) => {
            eprintln!("error: {:#}", failure.error);
            failure.code.into()
        }
    }
}
