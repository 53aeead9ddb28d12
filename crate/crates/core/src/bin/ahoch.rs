use ahoch::cli::{run, Cli};
use clap::Parser;
use std::process::exit;

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            for line in &outcome.lines {
                println!("{line}");
            }
            exit(outcome.exit_code);
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            exit(e.exit_code());
        }
    }
}
