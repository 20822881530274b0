use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use orefield::cli::{run, Cli};
use orefield::EXIT_INTERNAL;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match std::panic::catch_unwind(|| run(&cli)) {
        Ok(Ok(outcome)) => {
            let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
            ExitCode::from(outcome.code)
        }
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
        Err(_) => {
            eprintln!("error: internal failure");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}
