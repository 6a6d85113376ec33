//! `moncolim`: check monoids, build monoid coequalizers and monoid rings,
//! and compare hom-sets across the free abelian group adjunction.
//!
//! Exit status: 0 when every verification passes, 1 when the input is
//! well formed but a mathematical check fails, 2 for usage or schema errors.

mod commands;
mod report;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use monoid_colimits::Error;
use serde_json::Value;

use commands::Depth;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Command {
    /// Monoid laws of an object, or the morphism laws of a map.
    Check,
    /// Quotient of a monoid by one or more pairs of maps into its carrier.
    Coequalize,
    /// The monoid ring of a finite monoid, built as a quotient of tensor powers.
    MonoidRing,
    /// Monoid maps D -> (A, ·, 1) against ring maps Z[D] -> A.
    HomCheck,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VerifyDepth {
    Fast,
    Full,
}

#[derive(Debug, Parser)]
#[command(name = "moncolim", version, about)]
struct Args {
    /// JSON input file, or "-" for stdin.
    #[arg(long)]
    input: PathBuf,

    #[arg(long, value_enum)]
    command: Command,

    /// Tensor degree at which the monoid ring is truncated; the result is
    /// compared against the next degree. Defaults to 3 for monoid-ring and
    /// 2 for hom-check, which lifts the multiplicative monoid of the ring.
    #[arg(long)]
    truncation: Option<usize>,

    #[arg(long, value_enum, default_value = "text")]
    report: Format,

    #[arg(long, value_enum, default_value = "fast")]
    verify_depth: VerifyDepth,
}

fn read_input(path: &PathBuf) -> Result<String, String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("reading stdin: {e}"))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))
    }
}

/// Well-formed input that fails a mathematical requirement exits with 1;
/// everything else is a usage error.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::LawViolation(_)
        | Error::NotCoequalizing(_)
        | Error::NoFactorization(_)
        | Error::NotStabilized(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match read_input(&args.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let input: Value = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: input is not valid JSON: {e}");
            return ExitCode::from(2);
        }
    };
    let depth = match args.verify_depth {
        VerifyDepth::Fast => Depth::Fast,
        VerifyDepth::Full => Depth::Full,
    };
    let outcome = match args.command {
        Command::Check => commands::check(&input),
        Command::Coequalize => commands::coequalize(&input, depth),
        Command::MonoidRing => commands::monoid_ring(&input, args.truncation.unwrap_or(3), depth),
        Command::HomCheck => commands::hom_check(&input, args.truncation.unwrap_or(2), depth),
    };
    match outcome {
        Ok(report) => {
            let text = match args.report {
                Format::Json => {
                    serde_json::to_string_pretty(&report.to_json()).expect("reports serialize") + "\n"
                }
                Format::Text => report.to_text(),
            };
            // a closed pipe downstream is not our failure
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
