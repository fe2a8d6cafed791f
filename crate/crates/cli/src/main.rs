mod cache;
mod commands;
mod config;
mod output;

use clap::Parser;

fn main() {
    let cli = config::Cli::parse();
    std::process::exit(commands::run(cli));
}
