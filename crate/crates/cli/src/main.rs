use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use gpdkit_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = run(&cli);
    let text = if cli.json { report.to_json() } else { report.to_human() };
    let _ = std::io::stdout().write_all(text.as_bytes());
    ExitCode::from(report.exit_code() as u8)
}
