use clap::Parser;
use mudiv_cli::{execute, Cli, RunSpec};
use std::process::ExitCode;

fn main() -> ExitCode {
    let spec = RunSpec::from(Cli::parse());
    match execute(&spec) {
        Ok(outcome) => {
            println!("{}", outcome.summary);
            for f in &outcome.files {
                println!("wrote {}", f.display());
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
