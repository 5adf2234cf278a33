//! `zzlie`: brackets, structure tables, verification sweeps, Virasoro modules
//! and classification systems from the command line.
//!
//! Exit codes: 0 success, 1 violation or infeasibility, 2 usage error.

mod args;
mod commands;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, OutputArgs};
use commands::UsageError;
use render::Report;

fn dispatch(cmd: &Command) -> Result<(Report, &OutputArgs), UsageError> {
    Ok(match cmd {
        Command::Bracket { alg, left, right, out } => (commands::bracket(alg, left, right)?, out),
        Command::Table { alg, window, out } => (commands::table(alg, *window)?, out),
        Command::Verify { check, alg, window, out } => (commands::verify(*check, alg, *window)?, out),
        Command::Module { action, module, out } => (commands::module(*action, module)?, out),
        Command::Classify { action, params, out } => (commands::classify(*action, params)?, out),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, out) = match dispatch(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = match report.render(out.format) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let written = match &out.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written.or_else(|e| match e.kind() {
        std::io::ErrorKind::BrokenPipe => Ok(()),
        _ => Err(e),
    }) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(if report.ok { 0 } else { 1 })
}
