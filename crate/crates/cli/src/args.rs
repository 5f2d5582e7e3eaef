use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use preclusion::io::Format;

#[derive(Debug, Parser)]
#[command(name = "preclusion", version, about = "Exact matching preclusion, conditional matching preclusion and anti-Kekulé solvers")]
pub struct Cli {
    /// Worker threads for the solver and the verification suites.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: u16,

    /// Return lexicographically smallest witnesses so reports are reproducible.
    #[arg(long, global = true)]
    pub deterministic: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a named or random graph to standard output.
    Gen(GenArgs),
    /// Compute mp, mp_s or the anti-Kekulé number of a graph.
    Solve(SolveArgs),
    /// Build the reduction gadget G' from a balanced bipartite graph.
    Reduce(ReduceArgs),
    /// Run one of the verification suites.
    Verify(VerifyArgs),
    /// Time the solver on a fixed roster of graphs.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    #[value(alias = "graph6")]
    G6,
    #[value(alias = "edge-list")]
    Edges,
    Json,
}

impl From<GraphFormat> for Format {
    fn from(f: GraphFormat) -> Format {
        match f {
            GraphFormat::G6 => Format::Graph6,
            GraphFormat::Edges => Format::EdgeList,
            GraphFormat::Json => Format::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Auto,
    #[value(alias = "graph6")]
    G6,
    #[value(alias = "edge-list")]
    Edges,
    Json,
}

impl InputFormat {
    pub fn format(self) -> Option<Format> {
        match self {
            InputFormat::Auto => None,
            InputFormat::G6 => Some(Format::Graph6),
            InputFormat::Edges => Some(Format::EdgeList),
            InputFormat::Json => Some(Format::Json),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Mp,
    Mps,
    Ak,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Family and its parameters: hypercube N, complete N,
    /// complete-bipartite A B, petersen, cycle N, path N, random N P,
    /// random-bipartite T P.
    #[arg(required = true, num_args = 1..)]
    pub family: Vec<String>,

    #[arg(long, value_enum, default_value_t = GraphFormat::G6)]
    pub format: GraphFormat,

    /// Seed for the random families.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Graph file; standard input when absent or "-".
    pub input: Option<PathBuf>,

    #[arg(long, value_enum)]
    pub mode: Mode,

    /// Minimum surviving component size minus one (mode mps only).
    #[arg(long)]
    pub s: Option<usize>,

    /// Decide "value ≤ budget" instead of computing the exact value.
    #[arg(long)]
    pub budget: Option<usize>,

    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    pub format: InputFormat,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    /// Balanced bipartite graph with a perfect matching; standard input when
    /// absent or "-".
    pub input: Option<PathBuf>,

    /// Encoding of the gadget inside the report.
    #[arg(long, value_enum, default_value_t = GraphFormat::G6)]
    pub format: GraphFormat,

    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    pub input_format: InputFormat,

    /// Also check mp(G) ≤ k ⟺ ak(G') ≤ k+1 ⟺ mp_s(G') ≤ k+1 with the
    /// exhaustive oracle.
    #[arg(long, value_name = "K")]
    pub check: Option<usize>,

    /// Values of s used by --check.
    #[arg(long = "s", value_delimiter = ',', default_values_t = [1usize, 2])]
    pub s_values: Vec<usize>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,

    /// Suite parameters: hypercube N S, lemma4 N, stars N, lemma5 N,
    /// lemma6 N, and SEED COUNT for the random suites.
    pub params: Vec<u64>,

    /// Seed for the random suites when not given positionally.
    #[arg(long)]
    pub seed: Option<u64>,

    /// Instance count for the random suites when not given positionally.
    #[arg(long)]
    pub count: Option<usize>,

    /// Sample this many sets in lemma5 instead of enumerating all of them.
    #[arg(long)]
    pub samples: Option<usize>,

    /// Permit exhaustive runs that take minutes (lemma4 on Q_4).
    #[arg(long)]
    pub allow_long: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// mp_s(Q_n) = 2n - 2 for s ≥ 2.
    Hypercube,
    /// Optimal conditional matching preclusion sets of Q_n are trivial.
    Lemma4,
    /// Optimal matching preclusion sets of Q_n are vertex stars.
    Stars,
    /// Edge cuts of size 2n - 2 in Q_n, literal and corrected forms.
    Lemma5,
    /// Trivial conditional sets leave Q_n connected.
    Lemma6,
    /// mp_1(G) ≤ v_e(G) on random graphs.
    Lemma3,
    /// mp ≤ mp_1 ≤ mp_2 ≤ mp_3 on random graphs.
    Chain,
    /// Reduction equivalence on random balanced bipartite sources.
    ReductionFuzz,
    /// Matching engines against the exhaustive oracle.
    Matching,
    /// Every suite at its acceptance size.
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Repetitions per roster entry; the fastest is reported.
    #[arg(long, default_value_t = 1)]
    pub count: usize,

    #[arg(long, value_enum, default_value_t = BenchFormat::Csv)]
    pub format: BenchFormat,
}
