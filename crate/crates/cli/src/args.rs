use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "stabrank", version, about = "Exact stabilizer rank, bounds, and Clifford+T simulation")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Common {
    /// Worker threads (default: STABRANK_THREADS, else all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Exact scalars as rational strings (default).
    #[arg(long, global = true, conflicts_with = "float")]
    pub exact: bool,
    /// Render exact scalars as floats rounded to `--tol`.
    #[arg(long, global = true)]
    pub float: bool,
    #[arg(long, global = true, requires = "float")]
    pub tol: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Number of (real) stabilizer states.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        real: bool,
    },
    /// Write every (real) stabilizer state to `--out`.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        real: bool,
    },
    /// Exact stabilizer rank of a dense state.
    Rank {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        real: bool,
        #[arg(long)]
        max_r: Option<usize>,
        /// Disable support-cover pruning.
        #[arg(long)]
        no_prune: bool,
        /// Enable the qubit-permutation symmetry reduction.
        #[arg(long)]
        symmetry: bool,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Smallest stabilizer set spanning the symmetric subspace.
    ChiN {
        #[arg(long)]
        n: usize,
    },
    /// Rank lower bound from exponentially increasing coordinates.
    #[command(group(ArgGroup::new("input").required(true).args(["state", "t_power", "qubit"])))]
    LowerBound {
        #[arg(long)]
        state: Option<PathBuf>,
        #[arg(long)]
        t_power: Option<u64>,
        /// Single-qubit state as "c0,c1".
        #[arg(long, requires = "power")]
        qubit: Option<String>,
        #[arg(long, requires = "qubit")]
        power: Option<u64>,
    },
    /// Certificate, bound and truncation data for the explicit hard state.
    HardState {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Random trials of the subset-sum length property.
    MoultonCheck {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        trials: usize,
    },
    /// Bounds on the rank of two copies of e00 + alpha(e01 + e10).
    Multiplicativity {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, value_parser = ["rank1", "pairs", "triples"])]
        stage: String,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Exact amplitude and probability of one outcome of a Clifford+T circuit.
    Simulate {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        outcome: String,
        #[arg(long, value_parser = ["decomposition", "dense"], default_value = "decomposition")]
        method: String,
    },
    /// Rewrite a decomposition of a real vector over real stabilizer states.
    Realify {
        #[arg(long)]
        decomposition: PathBuf,
    },
}
