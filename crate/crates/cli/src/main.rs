mod args;
mod commands;
mod output;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};

const EXIT_INPUT: i32 = 1;
const EXIT_RESOURCE: i32 = 2;

fn exit_code(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<fliftlab::Error>() {
        Some(e) if e.is_resource_limit() => EXIT_RESOURCE,
        _ => EXIT_INPUT,
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_INPUT,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let result = match &cli.command {
        Command::Classify(a) => commands::classify_cmd(a),
        Command::Table(a) => commands::table_cmd(a),
        Command::Sweep(a) => commands::sweep_cmd(a),
        Command::Identity(a) => commands::identity_cmd(a),
        Command::Catalog(a) => commands::catalog_cmd(a),
    };
    match result {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(exit_code(&e));
        }
    }
}
