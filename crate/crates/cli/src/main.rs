//! `polycomp`: command-line access to polynomial composition tools.

mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use commands::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    let outcome = commands::run(cli.command, json);
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&outcome.to_json()).expect("json values serialize")
        );
    } else {
        print!("{}", outcome.text);
    }
    if let Some(err) = &outcome.error {
        eprintln!("error: {err}");
    }
    ExitCode::from(outcome.code)
}
