use std::process::ExitCode;

use clap::Parser;
use electoral_sim::cli::{execute, summary_table, RunConfig};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let config = RunConfig::parse();
    println!("electoral-sim {}", config.describe());
    match execute(&config) {
        Ok(report) => {
            print!("{}", summary_table(&report.output));
            for path in &report.written {
                println!("wrote {}", path.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
