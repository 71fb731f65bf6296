//! `infotherm` command-line tool.
//!
//! Exit status: 0 on success, 1 when the computation succeeded but a Clausius
//! verdict is violated, 2 on usage or input errors.

mod args;
mod commands;
mod config;
mod csv_export;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;
use crate::commands::Output;

const EXIT_VIOLATED: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let argv = match config::expand(std::env::args().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code.clamp(0, 255) as u8);
        }
    };
    let output = match commands::execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_USAGE);
        }
    };

    let text = match &output {
        Output::Csv { text, .. } => text.clone(),
        Output::Report(r) if cli.json => r.to_json(),
        Output::Report(r) => r.to_text(),
    };
    let mut stdout = std::io::stdout().lock();
    if stdout
        .write_all(text.as_bytes())
        .and_then(|_| stdout.flush())
        .is_err()
    {
        return ExitCode::from(EXIT_USAGE);
    }

    if output.report().any_violated() {
        ExitCode::from(EXIT_VIOLATED)
    } else {
        ExitCode::SUCCESS
    }
}
