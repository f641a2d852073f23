//! Command-line front-end for `lvphase`: reads a configuration, runs one
//! command and writes a CSV artifact.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod table;

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{CommandFactory, FromArgMatches, Parser, ValueEnum};

use crate::commands::{run_command, Output, RunOptions};
use crate::config::{defaults_help, parse_config_with, Command, Override};

/// Largest seed that survives the round trip through the config echo.
const MAX_SEED: u64 = 1 << 53;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CommandArg {
    /// Equilibrium isotherm p -> nu at fixed theta.
    Isotherm,
    /// Coexistence line, volume jump, latent heat and spinodals over theta.
    PhaseDiagram,
    /// Number of minima over a (u, h/a) grid.
    Minima,
    /// Spinodal field bounds h/a over u.
    Spinodal,
    /// Quasi-static sweep of h/a up and down.
    Hysteresis,
    /// Isothermal homogeneous relaxation.
    Relax,
    /// Homogeneous relaxation with the temperature evolving.
    Thermal,
    /// One-dimensional gradient flow.
    Pde1d,
    /// Thermodynamic audit suite.
    Validate,
}

impl From<CommandArg> for Command {
    fn from(c: CommandArg) -> Command {
        match c {
            CommandArg::Isotherm => Command::Isotherm,
            CommandArg::PhaseDiagram => Command::PhaseDiagram,
            CommandArg::Minima => Command::Minima,
            CommandArg::Spinodal => Command::Spinodal,
            CommandArg::Hysteresis => Command::Hysteresis,
            CommandArg::Relax => Command::Relax,
            CommandArg::Thermal => Command::Thermal,
            CommandArg::Pde1d => Command::Pde1d,
            CommandArg::Validate => Command::Validate,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "lvphase",
    version,
    about = "Liquid-vapour phase-field computations"
)]
struct Cli {
    #[arg(value_enum)]
    command: CommandArg,
    /// Configuration file; defaults apply to every omitted key.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output CSV; standard output when omitted.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Override `section.key=value`; a bare key means a model key or a key
    /// of the current command.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<Override>,
    /// Sampling seed for `validate`.
    #[arg(long, value_parser = clap::value_parser!(u64).range(..=MAX_SEED))]
    seed: Option<u64>,
    /// Suppress the summary on standard error.
    #[arg(long)]
    quiet: bool,
}

/// Runs the CLI and returns the process exit code: 0 on success, 1 for
/// usage and configuration errors, 2 for runtime errors.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let matches = match Cli::command()
        .after_help(defaults_help())
        .try_get_matches_from(args)
    {
        Ok(m) => m,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return 1;
        }
    };
    let cmd = Command::from(cli.command);
    let text = match &cli.config {
        Some(path) => match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", path.display());
                return 1;
            }
        },
        None => String::new(),
    };
    let mut overrides = cli.set.clone();
    if let (Some(seed), Command::Validate) = (cli.seed, cmd) {
        overrides.push(Override {
            section: Some("run.validate".into()),
            key: "seed".into(),
            value: seed.to_string(),
        });
    }
    let cfg = match parse_config_with(&text, Some(cmd), &overrides) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}: {e}", e.name());
            return 1;
        }
    };
    let opts = RunOptions {
        out: cli.out.map_or(Output::Stdout, Output::File),
        seed: cli.seed,
        quiet: cli.quiet,
    };
    match run_command(cmd, &cfg, &opts) {
        Ok(()) => 0,
        Err(commands::RunError::Usage(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(e) => {
            eprintln!("error: {}: {e}", e.name());
            2
        }
    }
}
