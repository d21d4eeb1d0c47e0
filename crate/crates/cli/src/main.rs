// Copyright 2026 The dasim Authors
// SPDX-License-Identifier: Apache-2.0

//! `dasim` command-line frontend.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug)]
pub enum CliError {
    /// Exit 2.
    Verification(String),
    /// Exit 3.
    Config(String),
    /// Exit 4.
    Resource(String),
    /// Exit 1: I/O failures while writing results.
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Verification(_) => 2,
            CliError::Config(_) => 3,
            CliError::Resource(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Resource(m) => write!(f, "resource limit: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<dasim::Error> for CliError {
    fn from(e: dasim::Error) -> Self {
        match e {
            dasim::Error::Resource(m) => CliError::Resource(m),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Da,
    Digital,
    Fsg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    #[value(name = "paper-fig-cnot")]
    Cnot,
    #[value(name = "paper-fig-omega")]
    Omega,
    #[value(name = "paper-fig-noise")]
    Noise,
}

#[derive(Debug, Parser)]
#[command(name = "dasim", version, about = "Digital-analog refocusing compiler and simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
pub struct Common {
    /// TOML run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file (directory for the noise preset).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Replaces every seed in the configuration.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compile a refocusing schedule and verify it.
    Compile {
        #[command(flatten)]
        common: Common,
    },
    /// Verify a schedule file against the configured target.
    Verify {
        #[command(flatten)]
        common: Common,
        schedule: PathBuf,
    },
    /// Build one Trotter step and compare it with exact evolution.
    Trotter {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        backend: Option<BackendArg>,
    },
    /// Fidelity sweeps and the figure presets.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        preset: Option<Preset>,
        #[arg(long, value_enum)]
        backend: Option<BackendArg>,
    },
    /// Closed-form and measured entangler counts per Trotter step.
    Counts {
        /// chain, grid or complete (all-to-all).
        kind: String,
        n: usize,
        /// Draw couplings from [1, 4] with this seed instead of equal couplings.
        #[arg(long)]
        spread_seed: Option<u64>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Compile { common } => commands::compile(&common),
        Command::Verify { common, schedule } => commands::verify(&common, &schedule),
        Command::Trotter { common, backend } => commands::trotter(&common, backend),
        Command::Sweep { common, preset, backend } => commands::sweep(&common, preset, backend),
        Command::Counts { kind, n, spread_seed } => commands::counts(&kind, n, spread_seed),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("dasim: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
