mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Keygen(a) => commands::keygen(a),
        Command::Prove(a) => commands::prove(a),
        Command::Verify(a) => commands::verify(a),
        Command::Session(a) => commands::session(a),
        Command::Attack(a) => commands::attack(a),
        Command::Simulate(a) => commands::simulate(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
