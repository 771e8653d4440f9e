use std::process::ExitCode;

use clap::Parser;
use curvedg_cli::{execute, Cli};

fn main() -> ExitCode {
    let run = execute(&Cli::parse());
    print!("{}", run.report);
    if !run.errors.is_empty() {
        eprint!("{}", run.errors);
    }
    ExitCode::from(run.code as u8)
}
