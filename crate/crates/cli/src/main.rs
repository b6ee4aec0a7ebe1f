mod args;
mod commands;
mod error;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Command::Reconstruct(a) => commands::reconstruct(a),
        Command::Kinematics(a) => commands::kinematics(a),
        Command::Length(a) => commands::length(a),
        Command::Summary(a) => commands::summary(a),
        Command::Convergence(a) => commands::convergence(a),
        Command::Compare(a) => commands::compare(a),
        Command::Backtrace(a) => commands::backtrace(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
