use std::process::ExitCode;

use clap::Parser;
use qss_cli::{run, status_for, Cli, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(EXIT_USAGE as u8),
            };
        }
    };
    let outcome = match run(&cli.command) {
        Ok(outcome) => outcome,
        Err(e) => {
            eprintln!("qss5: {e}");
            return ExitCode::from(status_for(&e) as u8);
        }
    };
    match cli.command.out() {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.document) {
                eprintln!("qss5: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_DOMAIN as u8);
            }
        }
        None => print!("{}", outcome.document),
    }
    if outcome.status != EXIT_OK {
        eprintln!("qss5: verification failed");
    }
    ExitCode::from(outcome.status as u8)
}
