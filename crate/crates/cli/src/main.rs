//! Woods-Saxon bound-state spectroscopy command line tool.
//!
//! Exit codes: 0 success, 1 conformance assertion failure, 2 usage or
//! configuration error, 3 solver failure.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::CmdError;
use config::RunConfig;

#[derive(Parser)]
#[command(name = "ws-spectra", version, about = "Woods-Saxon bound-state spectroscopy")]
struct Cli {
    /// Built-in parameter set: table1, fig3, or fig4.
    #[arg(long, global = true, default_value = "table1")]
    preset: String,

    /// Config file with `key = value` overrides, applied on top of the preset.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Highest principal level to include (overrides preset/config).
    #[arg(long, global = true)]
    nmax: Option<u32>,

    /// Output directory for CSV and report files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Level table: closed-form and shooting-solver energies side by side.
    Spectrum,
    /// Effective-potential overlay (exact vs replaced centrifugal term).
    Potential,
    /// Radial eigenfunctions for one state, with a deviation report.
    Wavefunction,
    /// Check computed values against the reference tables; exit 1 on failure.
    Conformance,
}

fn build_config(cli: &Cli) -> Result<RunConfig, CmdError> {
    let mut cfg = RunConfig::preset(&cli.preset).map_err(CmdError::Usage)?;
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CmdError::Usage(format!("cannot read config {}: {e}", path.display()))
        })?;
        cfg.apply_file(&text)
            .map_err(|e| CmdError::Usage(format!("{}: {e}", path.display())))?;
    }
    if let Some(nmax) = cli.nmax {
        cfg.n_max = nmax;
    }
    if let Some(out) = &cli.out {
        cfg.out_dir = out.clone();
    }
    cfg.validate().map_err(CmdError::Usage)?;
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<(), CmdError> {
    let cfg = build_config(cli)?;
    match cli.command {
        Command::Spectrum => commands::cmd_spectrum(&cfg),
        Command::Potential => commands::cmd_potential(&cfg),
        Command::Wavefunction => commands::cmd_wavefunction(&cfg),
        Command::Conformance => commands::cmd_conformance(&cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
