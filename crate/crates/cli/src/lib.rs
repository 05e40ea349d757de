//! Command-line experiments on top of `flyspin-core`.
//!
//! Exit codes: 0 success, 1 config error, 2 runtime error, 3 no pump trial
//! converged.

pub mod commands;
pub mod config;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use commands::{Artifacts, CommandError};
use config::{ConfigError, ExperimentConfig, Grid};

type Runner = fn(&ExperimentConfig) -> Result<Artifacts, CommandError>;

const ANGLE_NOTE: &str = "Angles are in units of π: --theta1 0.25 means π/4.";

#[derive(Parser, Debug)]
#[command(name = "flyspin", version, about = "Flying-spin entanglement experiments", after_help = ANGLE_NOTE)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Concurrence of the resource state over a θ₁ × θ₂ grid (CSV).
    SweepConcurrence(Overrides),
    /// Resource state and two-round parity projection at one angle pair.
    EoRun(Overrides),
    /// Monte Carlo entanglement pumping trajectories (CSV + summary).
    PumpSim(Overrides),
    /// Selective entanglement of one pair in a chain of static qubits.
    ChainDemo(Overrides),
}

/// Every flag overrides the matching key of `--config`.
#[derive(Args, Debug, Default)]
#[command(after_help = ANGLE_NOTE)]
struct Overrides {
    /// Flat `key = value` config file.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// First mixing angle, units of π.
    #[arg(long, allow_negative_numbers = true)]
    theta1: Option<f64>,
    /// Second mixing angle, units of π.
    #[arg(long, allow_negative_numbers = true)]
    theta2: Option<f64>,
    /// θ₁ sweep range `min:max:steps`, units of π.
    #[arg(long, value_name = "MIN:MAX:STEPS")]
    theta1_grid: Option<Grid>,
    /// θ₂ sweep range `min:max:steps`, units of π.
    #[arg(long, value_name = "MIN:MAX:STEPS")]
    theta2_grid: Option<Grid>,
    /// Probability the flying qubit starts ↓.
    #[arg(long)]
    eps_init: Option<f64>,
    /// Flying-qubit phase-flip probability between the static qubits.
    #[arg(long)]
    eps_z: Option<f64>,
    /// Flying-qubit ↑→↓ relaxation probability between the static qubits.
    #[arg(long)]
    eps_relax: Option<f64>,
    /// Also dephase the static qubits during transit.
    #[arg(long)]
    dephase_static: Option<bool>,
    #[arg(long)]
    trials: Option<u64>,
    /// Master seed; trial k uses stream k.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    target_fidelity: Option<f64>,
    #[arg(long)]
    max_rounds: Option<u32>,
    /// Number of static qubits in the chain.
    #[arg(long)]
    chain_size: Option<usize>,
    /// Entangle static qubits (target_pair, target_pair + 1).
    #[arg(long)]
    target_pair: Option<usize>,
    /// Phase θ′ picked up at chain spectators, units of π.
    #[arg(long, allow_negative_numbers = true)]
    transit_phase: Option<f64>,
    /// Output file; the resolved config goes to `<out>.config`.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

impl Overrides {
    fn resolve(&self, command: &str) -> Result<ExperimentConfig, ConfigError> {
        let mut cfg = ExperimentConfig::defaults(command);
        if let Some(path) = &self.config {
            cfg.load_file(path)?;
        }
        macro_rules! take {
            ($($field:ident => $target:expr),* $(,)?) => {
                $(if let Some(v) = self.$field.clone() { $target = v; })*
            };
        }
        take! {
            theta1 => cfg.theta1,
            theta2 => cfg.theta2,
            theta1_grid => cfg.theta1_grid,
            theta2_grid => cfg.theta2_grid,
            eps_init => cfg.noise.eps_init,
            eps_z => cfg.noise.eps_z,
            eps_relax => cfg.noise.eps_relax,
            dephase_static => cfg.noise.dephase_static,
            trials => cfg.trials,
            seed => cfg.seed,
            target_fidelity => cfg.target_fidelity,
            max_rounds => cfg.max_rounds,
            chain_size => cfg.chain_size,
            target_pair => cfg.target_pair,
            transit_phase => cfg.transit_phase,
        }
        if let Some(out) = &self.out {
            cfg.out = Some(out.clone());
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Appends `.config` to the full file name.
pub fn config_echo_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".config");
    PathBuf::from(s)
}

fn emit(cfg: &ExperimentConfig, artifacts: &Artifacts) -> Result<(), CommandError> {
    let io_err = |p: &Path, e: std::io::Error| {
        CommandError::Runtime(format!("cannot write {}: {e}", p.display()))
    };
    match &cfg.out {
        Some(out) => {
            fs::write(out, &artifacts.primary).map_err(|e| io_err(out, e))?;
            let echo = config_echo_path(out);
            fs::write(&echo, cfg.render()).map_err(|e| io_err(&echo, e))?;
            if artifacts.primary != artifacts.report {
                print!("{}", artifacts.report);
            }
        }
        None => {
            print!("{}", artifacts.primary);
            let mut err = std::io::stderr().lock();
            if artifacts.primary != artifacts.report {
                let _ = write!(err, "{}", artifacts.report);
            }
            let _ = write!(err, "# resolved config\n{}", cfg.render());
        }
    }
    Ok(())
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let (name, overrides, cmd): (&str, &Overrides, Runner) = match &cli.command {
        Command::SweepConcurrence(o) => ("sweep-concurrence", o, commands::sweep_concurrence),
        Command::EoRun(o) => ("eo-run", o, commands::eo_run),
        Command::PumpSim(o) => ("pump-sim", o, commands::pump_sim),
        Command::ChainDemo(o) => ("chain-demo", o, commands::chain_demo),
    };
    let result = overrides
        .resolve(name)
        .map_err(CommandError::from)
        .and_then(|cfg| {
            let outcome = cmd(&cfg);
            match &outcome {
                Ok(a) => emit(&cfg, a),
                Err(CommandError::NonConvergence(a)) => emit(&cfg, a).and(outcome.map(|_| ())),
                Err(_) => outcome.map(|_| ()),
            }
        });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("flyspin: {e}");
            e.exit_code()
        }
    }
}
