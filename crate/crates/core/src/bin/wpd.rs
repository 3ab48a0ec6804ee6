use std::process::ExitCode;

use clap::Parser;
use coherence_triality::cli::{execute, exit_code, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = execute(&cli, &mut std::io::stdout().lock());
    if let Err(e) = &result {
        eprintln!("wpd: {e}");
    }
    ExitCode::from(exit_code(&result) as u8)
}
