use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "spanlab",
    version,
    about = "Spanning-tree degree and star-factor laboratory"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a graph and write it as graph6 (plus optional DOT and role labels).
    Generate(GenerateArgs),
    /// Check whether every spanning tree has an internal vertex of degree 2.
    Verify(VerifyArgs),
    /// Run one solver and print a JSON report.
    Solve(SolveArgs),
    /// Run every analysis and print a combined JSON report.
    Report(ReportArgs),
}

/// Where the graph comes from. Exactly one source must be given.
#[derive(Debug, Args, Default, Clone)]
pub struct GraphSource {
    /// The minimum-degree counterexample; needs --d and --n.
    #[arg(long)]
    pub counterexample: bool,
    /// Random d-regular graph; needs --d and --m (and --seed).
    #[arg(long)]
    pub random_regular: bool,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    /// Complete graph on M vertices.
    #[arg(long, value_name = "M")]
    pub complete: Option<usize>,
    /// Path on M vertices.
    #[arg(long, value_name = "M")]
    pub path: Option<usize>,
    /// Cycle on M vertices.
    #[arg(long, value_name = "M")]
    pub cycle: Option<usize>,
    /// Star with M leaves.
    #[arg(long, value_name = "M")]
    pub star: Option<usize>,
    /// graph6 file (first record is used).
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Role-label JSON for --input; defaults to a sibling `<stem>.roles.json`.
    #[arg(long, value_name = "FILE")]
    pub labels: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args, Default, Clone)]
pub struct SolverOptions {
    #[arg(long, value_name = "NODES")]
    pub budget_nodes: Option<u64>,
    #[arg(long, value_name = "SECONDS")]
    pub budget_seconds: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub report: Option<PathBuf>,
    /// Record wall time in the report (makes output run-dependent).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub source: GraphSource,
    /// graph6 output; stdout when absent.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub dot: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: GraphSource,
    #[command(flatten)]
    pub solver: SolverOptions,
    /// Enumerate all trees when the spanning-tree count is at most this.
    #[arg(long, default_value_t = 1_000_000)]
    pub enum_threshold: u64,
    /// Random trees checked against the certificate when not enumerating.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
}

#[derive(Debug, Args)]
#[group(id = "mode", required = true, multiple = false, args = ["mmid", "count", "starfactor", "maxleaf", "decide"])]
pub struct SolveArgs {
    #[command(flatten)]
    pub source: GraphSource,
    #[command(flatten)]
    pub solver: SolverOptions,
    /// Max-min internal degree over spanning trees.
    #[arg(long)]
    pub mmid: bool,
    /// Exact spanning-tree count.
    #[arg(long)]
    pub count: bool,
    /// Max-min star size over star factors.
    #[arg(long)]
    pub starfactor: bool,
    /// Greedy max-leaf spanning tree.
    #[arg(long)]
    pub maxleaf: bool,
    /// Decide whether a tree with all internal degrees >= K exists.
    #[arg(long, value_name = "K")]
    pub decide: Option<usize>,
    /// Constant in the star-size bound c (d / ln d)^(1/3).
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub source: GraphSource,
    #[command(flatten)]
    pub solver: SolverOptions,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
}
