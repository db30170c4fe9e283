use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use levyarea::{AlgorithmId, ErrorNorm, ParseNameError};

#[derive(Debug, Clone, Parser)]
#[command(
    name = "levyarea",
    version,
    about = "Simulate iterated Itô integrals and Lévy areas, query cut-offs, run error studies"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Simulate one matrix of iterated integrals I(h).
    Simulate(SimulateArgs),
    /// Report the cheapest algorithm for a precision target.
    Optimal(OptimalArgs),
    /// Monte-Carlo error study against a stored Fourier reference.
    Convergence(ConvergenceArgs),
    /// Wall-clock timing of full I(h) generation over a step-size grid.
    Bench(BenchArgs),
}

impl Cli {
    pub fn output(&self) -> Option<&PathBuf> {
        match &self.command {
            Command::Simulate(a) => a.output.as_ref(),
            Command::Optimal(a) => a.output.as_ref(),
            Command::Convergence(a) => a.output.as_ref(),
            Command::Bench(a) => a.output.as_ref(),
        }
    }
}

/// `auto` or a fixed algorithm name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AlgSelect(pub Option<AlgorithmId>);

impl FromStr for AlgSelect {
    type Err = ParseNameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("auto") {
            Ok(AlgSelect(None))
        } else {
            s.parse().map(|a| AlgSelect(Some(a)))
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    /// Dimension m of the Wiener process.
    #[arg(long)]
    pub dim: usize,
    /// Step size h.
    #[arg(long)]
    pub stepsize: f64,
    /// Target precision; defaults to h^(3/2).
    #[arg(long)]
    pub eps: Option<f64>,
    /// Error norm: maxl2 or frobeniusl2. Defaults to maxl2, or frobeniusl2
    /// with --qwiener-file.
    #[arg(long)]
    pub norm: Option<ErrorNorm>,
    /// auto, fourier, milstein, wiktorsson or mronroe.
    #[arg(long, default_value = "auto")]
    pub alg: AlgSelect,
    /// Fixed truncation parameter; overrides --eps.
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Covariance eigenvalues of a Q-Wiener projection, one per line.
    #[arg(long)]
    pub qwiener_file: Option<PathBuf>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct OptimalArgs {
    #[arg(long)]
    pub dim: usize,
    #[arg(long)]
    pub stepsize: f64,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long, default_value = "maxl2")]
    pub norm: ErrorNorm,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ConvergenceArgs {
    #[arg(long)]
    pub dim: usize,
    /// Step size; errors and bounds scale linearly in h.
    #[arg(long, default_value_t = 1.0)]
    pub stepsize: f64,
    #[arg(long, default_value = "maxl2")]
    pub norm: ErrorNorm,
    /// Comma-separated algorithms; all four when absent.
    #[arg(long, value_delimiter = ',')]
    pub alg: Vec<AlgorithmId>,
    #[arg(long, default_value_t = 100)]
    pub reps: usize,
    /// Truncation of the stored reference path.
    #[arg(long, default_value_t = 1_000_000)]
    pub p_ref: usize,
    /// Smallest p of the dyadic grid.
    #[arg(long, default_value_t = 4)]
    pub p_min: usize,
    /// Largest p of the dyadic grid.
    #[arg(long, default_value_t = 1024)]
    pub p_max: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub dim: usize,
    /// Comma-separated step sizes; eps = h^(3/2) at each.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "1e-2,1e-3,1e-4,1e-5,1e-6"
    )]
    pub stepsizes: Vec<f64>,
    #[arg(long, default_value = "maxl2")]
    pub norm: ErrorNorm,
    #[arg(long, value_delimiter = ',')]
    pub alg: Vec<AlgorithmId>,
    /// Timed runs per cell.
    #[arg(long, default_value_t = 10)]
    pub reps: usize,
    /// Untimed runs per cell before the timed ones.
    #[arg(long, default_value_t = 1)]
    pub warmup: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}
