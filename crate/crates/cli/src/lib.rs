//! Command-line front end: tables, cone listings and the self-check.
//!
//! Exit codes: 0 pass, 1 value mismatch, 2 internal failure, 64 usage error.

pub mod commands;
pub mod expected;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use conewright_core::Case;
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "conewright", version, about = "Exact intersection numbers and movable cones of determinantal Calabi-Yau threefolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Intersection numbers and ODP counts of X_F
    Table1(OutputArgs),
    /// Euler characteristic and h^{2,1} of X_F
    Table2(OutputArgs),
    /// Intersection numbers of the flopped V5 threefold
    Table3(OutputArgs),
    /// Chamber decomposition of the movable cone
    Cone {
        #[arg(long, value_parser = parse_case)]
        case: Case,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Recompute every published value and compare
    Check {
        #[arg(long, conflicts_with = "case")]
        all: bool,
        #[arg(long, value_parser = parse_case)]
        case: Option<Case>,
    },
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Print JSON instead of text
    #[arg(long)]
    json: bool,
    /// Also write the JSON output to this file
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_case(s: &str) -> Result<Case, String> {
    s.parse().map_err(|e: conewright_core::Error| e.to_string())
}

fn emit<T: Serialize>(
    data: &T,
    text: String,
    output: &OutputArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let json = match serde_json::to_string_pretty(data) {
        Ok(j) => j + "\n",
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_INTERNAL;
        }
    };
    if let Some(path) = &output.out {
        if let Err(e) = std::fs::write(path, &json) {
            let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
            return EXIT_INTERNAL;
        }
    }
    let body = if output.json { json } else { text };
    if stdout.write_all(body.as_bytes()).is_err() {
        return EXIT_INTERNAL;
    }
    EXIT_OK
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let internal = |stderr: &mut dyn Write, e: conewright_core::Error| {
        let _ = writeln!(stderr, "error: {e}");
        EXIT_INTERNAL
    };
    match cli.command {
        Command::Table1(output) => table("table1", &output, stdout, stderr),
        Command::Table2(output) => table("table2", &output, stdout, stderr),
        Command::Table3(output) => table("table3", &output, stdout, stderr),
        Command::Cone { case, output } => match commands::cone(case) {
            Ok(data) => {
                let text = report::render_cone(&data);
                emit(&data, text, &output, stdout, stderr)
            }
            Err(e) => internal(stderr, e),
        },
        Command::Check { all: _, case } => {
            let cases = match case {
                Some(c) => vec![c],
                None => Case::ALL.to_vec(),
            };
            match commands::check(&cases) {
                Ok(rep) => {
                    let _ = stdout.write_all(report::render_report(&rep).as_bytes());
                    if rep.failures() == 0 {
                        EXIT_OK
                    } else {
                        EXIT_MISMATCH
                    }
                }
                Err(e) => internal(stderr, e),
            }
        }
    }
}

fn table(name: &str, output: &OutputArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    match commands::table(name) {
        Ok(data) => {
            let text = report::render_table(&data);
            emit(&data, text, output, stdout, stderr)
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INTERNAL
        }
    }
}
