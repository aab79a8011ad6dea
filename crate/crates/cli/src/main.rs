use std::process::ExitCode;

use clap::Parser;
use cyclic_rips::args::Cli;
use cyclic_rips::commands::run;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
