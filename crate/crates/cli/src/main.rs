//! `corings`: exact checks for corings, comodules and Frobenius pairs on
//! JSON input documents.
//!
//! Exit codes: 0 all checks pass, 1 a check failed or the verdict is
//! negative, 2 undecided under the budget, 3 input error.

mod commands;
mod input;
mod output;
mod resolve;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use coring_core::algkernel::DEFAULT_GRID_BUDGET;
use coring_core::frobenius::{Budget, DEFAULT_CANDIDATES, DEFAULT_HEIGHT};

use commands::Command;
use output::{exit_code, render_text, ReportDocument};
use resolve::{Env, InputError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "corings",
    version,
    about = "Exact checks for corings, comodules and Frobenius pairs"
)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Input document (JSON).
    path: PathBuf,
    /// Object names to check; defaults depend on the command.
    names: Vec<String>,
    /// Largest coefficient height tried by witness sweeps.
    #[arg(long, env = "CORINGS_BUDGET_HEIGHT", default_value_t = DEFAULT_HEIGHT)]
    budget_height: u32,
    /// Evaluations allowed when looking for an invertible element.
    #[arg(long, env = "CORINGS_BUDGET_GRID", default_value_t = DEFAULT_GRID_BUDGET)]
    budget_grid: u64,
    /// Candidate vectors allowed per sweep.
    #[arg(long, env = "CORINGS_BUDGET_CANDIDATES", default_value_t = DEFAULT_CANDIDATES)]
    budget_candidates: u64,
    #[arg(long, value_enum, env = "CORINGS_FORMAT", default_value_t = Format::Text)]
    format: Format,
    /// Recorded in the report; no verdict depends on it.
    #[arg(long)]
    seed: Option<u64>,
}

fn load(path: &PathBuf) -> Result<Env, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError {
        location: path.display().to_string(),
        message: e.to_string(),
    })?;
    let doc: input::InputDocument = serde_json::from_str(&text).map_err(|e| InputError {
        location: format!("{} line {} column {}", path.display(), e.line(), e.column()),
        message: e.to_string(),
    })?;
    Env::build(&doc)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = Budget {
        height: cli.budget_height,
        grid: cli.budget_grid,
        candidates: cli.budget_candidates,
    };
    let run = load(&cli.path).and_then(|env| {
        let results = commands::run(cli.command, &env, &cli.names, &budget)?;
        Ok((env.field, env.description, results))
    });
    let (field, description, results) = match run {
        Ok(v) => v,
        Err(e) => {
            eprintln!("input error: {e}");
            if cli.format == Format::Json {
                let doc = serde_json::json!({
                    "command": cli.command.name(),
                    "error": {"location": e.location, "message": e.message},
                    "exit_code": 3,
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("json value serializes")
                );
            }
            return ExitCode::from(3);
        }
    };
    let (status, code) = exit_code(&results);
    let doc = ReportDocument {
        command: cli.command.name().to_string(),
        description,
        criterion: cli.command.criterion().to_string(),
        field: field.to_string(),
        budget: (&budget).into(),
        seed: cli.seed,
        results,
        status: status.to_string(),
        exit_code: code,
    };
    match cli.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("report serializes")
        ),
        Format::Text => print!("{}", render_text(&doc)),
    }
    ExitCode::from(code as u8)
}
