//! Command-line surface over the exact geometry core: builds models from a
//! TOML/JSON config, computes bodies, filtration invariants, and limit
//! bodies, and runs the acceptance suite.
//!
//! Exit codes: 0 success, 1 configuration error, 2 truncation budget
//! exhausted, 3 verification failure.

mod commands;
mod config;
mod output;
mod pool;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        CliError { code: 1, message: message.into() }
    }
    pub fn truncation(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }
}

/// One output file, fully built before anything touches the disk.
pub struct Artifact {
    pub name: String,
    pub content: String,
}

#[derive(Parser)]
#[command(
    name = "okounkov",
    about = "Exact Newton-Okounkov bodies and filtration stability invariants"
)]
struct Cli {
    /// TOML or JSON configuration (auto-detected by extension).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for artifacts.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Largest table degree m.
    #[arg(long, global = true)]
    m_max: Option<u32>,
    /// Level cap M for body construction.
    #[arg(long, global = true)]
    level_cap: Option<u32>,
    /// Comma-separated tau values in [0, 1], e.g. 0,1/4,1.
    #[arg(long, global = true, value_delimiter = ',')]
    tau: Option<Vec<String>>,
    /// Weight-tie handling: lex or strict.
    #[arg(long, global = true)]
    tiebreak: Option<String>,
    /// Refinement budget for sign decisions on irrational weights.
    #[arg(long, global = true)]
    precision_cap: Option<u32>,
    /// Seed for randomized checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the body (and prediction/slices) of the configured model.
    Body,
    /// Compute the jumping table and the full invariant family.
    Invariants,
    /// Compute limit bodies of a sequence, or run a chamber sweep.
    Limits,
    /// Run the acceptance suite.
    Verify {
        /// Comma-separated criterion subset, e.g. A1,A5.
        #[arg(long, value_delimiter = ',')]
        criteria: Option<Vec<String>>,
    },
}

fn write_artifacts(out: &PathBuf, artifacts: &[Artifact]) -> Result<(), CliError> {
    fs::create_dir_all(out)
        .map_err(|e| CliError::config(format!("cli: cannot create {}: {e}", out.display())))?;
    for a in artifacts {
        let path = out.join(&a.name);
        fs::write(&path, &a.content)
            .map_err(|e| CliError::config(format!("cli: cannot write {}: {e}", path.display())))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    let overrides = config::Overrides {
        m_max: cli.m_max,
        level_cap: cli.level_cap,
        tau: cli.tau.clone(),
        tiebreak: cli.tiebreak.clone(),
        precision_cap: cli.precision_cap,
        seed: cli.seed,
    };
    let cfg = config::load(cli.config.as_deref(), &overrides)?;
    match &cli.cmd {
        Cmd::Body => {
            let artifacts = commands::cmd_body(&cfg)?;
            write_artifacts(&cli.out, &artifacts)?;
            Ok(0)
        }
        Cmd::Invariants => {
            let artifacts = commands::cmd_invariants(&cfg)?;
            write_artifacts(&cli.out, &artifacts)?;
            Ok(0)
        }
        Cmd::Limits => {
            let artifacts = commands::cmd_limits(&cfg)?;
            write_artifacts(&cli.out, &artifacts)?;
            Ok(0)
        }
        Cmd::Verify { criteria } => {
            let (artifacts, all_pass) = commands::cmd_verify(&cfg, criteria.as_deref())?;
            write_artifacts(&cli.out, &artifacts)?;
            Ok(if all_pass { 0 } else { 3 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
