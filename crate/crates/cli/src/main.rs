mod args;
mod commands;
mod config_file;
mod error;

use clap::Parser;

use args::{Cli, Command};

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Schedule(a) => commands::schedule::run(a),
        Command::Emulate(a) => commands::emulate::run(a),
        Command::Validate(a) => commands::validate::run(a),
        Command::Model(a) => commands::model::run(a),
        Command::Bench(a) => commands::bench::run(a),
    };
    if let Err(err) = result {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
