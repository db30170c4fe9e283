use std::io::ErrorKind as IoKind;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use levyarea_cli::{Cli, CliError};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
            eprintln!("error: a subcommand is required (simulate, optimal, convergence, bench); see --help");
            return ExitCode::from(2);
        }
        Err(e) => {
            // clap's rendering ends with a usage block; keep the first paragraph
            let msg = e.to_string();
            let head: Vec<&str> = msg
                .lines()
                .take_while(|l| !l.trim().is_empty())
                .map(str::trim)
                .collect();
            eprintln!("{}", head.join(" "));
            return ExitCode::from(2);
        }
    };
    match levyarea_cli::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        // downstream closed the pipe, e.g. `| head`
        Err(CliError::Io(e)) if e.kind() == IoKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
