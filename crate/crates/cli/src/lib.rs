//! Command-line front-end for `levyarea`. All output is CSV; seeds are
//! drawn from system entropy when absent and always echoed.

pub mod args;
pub mod commands;
pub mod error;
pub mod qwiener;

use std::fs::File;
use std::io::{self, BufWriter, Write};

pub use args::{Cli, Command};
pub use error::{CliError, Result};

fn seed_or_entropy(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(rand::random)
}

/// Runs a parsed command, writing to `out`.
pub fn run_to(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Simulate(a) => commands::cmd_simulate(a, seed_or_entropy(a.seed), out),
        Command::Optimal(a) => commands::cmd_optimal(a, out),
        Command::Convergence(a) => {
            commands::cmd_convergence(a, seed_or_entropy(a.seed), out)
        }
        Command::Bench(a) => commands::cmd_bench(a, seed_or_entropy(a.seed), out),
    }
}

/// Runs a parsed command, writing to `--output` or standard output.
pub fn run(cli: &Cli) -> Result<()> {
    let mut out: Box<dyn Write> = match cli.output() {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    run_to(cli, &mut out)?;
    out.flush()?;
    Ok(())
}
