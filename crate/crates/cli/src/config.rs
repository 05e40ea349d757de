//! Experiment configuration: a flat `key = value` file, overridden by flags.
//!
//! Angles are given in units of π throughout (`0.25` is π/4). The resolved
//! configuration renders back into the same format, so a `<out>.config` echo
//! can be passed to `--config` to rerun an experiment.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use flyspin_core::channels::NoiseParams;
use flyspin_core::qcore::MAX_QUBITS;

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

/// Inclusive, evenly spaced range `min:max:steps` in units of π.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Grid {
    pub fn parse(s: &str) -> Result<Self, ConfigError> {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        if parts.len() != 3 {
            return err(format!("grid `{s}` must look like min:max:steps"));
        }
        let min = parse_f64("grid min", parts[0])?;
        let max = parse_f64("grid max", parts[1])?;
        let steps = parts[2]
            .parse::<usize>()
            .map_err(|_| ConfigError(format!("grid steps `{}` is not a count", parts[2])))?;
        Ok(Grid { min, max, steps })
    }

    /// Grid points in units of π.
    pub fn points(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.max
                } else {
                    self.min + (self.max - self.min) * i as f64 / last
                }
            })
            .collect()
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.min, self.max, self.steps)
    }
}

impl std::str::FromStr for Grid {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Grid::parse(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub command: String,
    /// Units of π.
    pub theta1: f64,
    pub theta2: f64,
    pub theta1_grid: Grid,
    pub theta2_grid: Grid,
    pub noise: NoiseParams,
    pub trials: u64,
    pub seed: u64,
    pub target_fidelity: f64,
    pub max_rounds: u32,
    pub chain_size: usize,
    pub target_pair: usize,
    /// Phase θ′ picked up at chain spectators, units of π.
    pub transit_phase: f64,
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn defaults(command: &str) -> Self {
        let full = Grid {
            min: 0.0,
            max: 1.0,
            steps: 41,
        };
        ExperimentConfig {
            command: command.to_string(),
            theta1: 0.25,
            theta2: 0.5,
            theta1_grid: full,
            theta2_grid: full,
            noise: NoiseParams::noiseless(),
            trials: 10_000,
            seed: 0,
            target_fidelity: 0.9999,
            max_rounds: 10_000,
            chain_size: 4,
            target_pair: 1,
            transit_phase: 0.0,
            out: None,
        }
    }

    /// Applies one `key = value` setting. Keys accept `-` or `_`.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let key = key.trim().replace('-', "_");
        let value = value.trim();
        match key.as_str() {
            "command" => {
                if value != self.command {
                    return err(format!(
                        "config is for command `{value}`, running `{}`",
                        self.command
                    ));
                }
            }
            "theta1" => self.theta1 = parse_f64("theta1", value)?,
            "theta2" => self.theta2 = parse_f64("theta2", value)?,
            "theta1_grid" => self.theta1_grid = Grid::parse(value)?,
            "theta2_grid" => self.theta2_grid = Grid::parse(value)?,
            "eps_init" => self.noise.eps_init = parse_f64("eps_init", value)?,
            "eps_z" => self.noise.eps_z = parse_f64("eps_z", value)?,
            "eps_relax" => self.noise.eps_relax = parse_f64("eps_relax", value)?,
            "dephase_static" => {
                self.noise.dephase_static = match value {
                    "true" | "1" => true,
                    "false" | "0" => false,
                    _ => return err(format!("dephase_static: `{value}` is not a boolean")),
                }
            }
            "trials" => self.trials = parse_int("trials", value)?,
            "seed" => self.seed = parse_int("seed", value)?,
            "target_fidelity" => self.target_fidelity = parse_f64("target_fidelity", value)?,
            "max_rounds" => self.max_rounds = parse_int("max_rounds", value)?,
            "chain_size" => self.chain_size = parse_int("chain_size", value)?,
            "target_pair" => self.target_pair = parse_int("target_pair", value)?,
            "transit_phase" => self.transit_phase = parse_f64("transit_phase", value)?,
            "out" => {
                self.out = if value.is_empty() {
                    None
                } else {
                    Some(PathBuf::from(value))
                }
            }
            _ => return err(format!("unknown config key `{key}`")),
        }
        Ok(())
    }

    pub fn load_file(&mut self, path: &Path) -> Result<(), ConfigError> {
        let text = fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read config {}: {e}", path.display())))?;
        self.merge_text(&text)
    }

    pub fn merge_text(&mut self, text: &str) -> Result<(), ConfigError> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return err(format!("config line {}: expected key = value", lineno + 1));
            };
            self.set(key, value)
                .map_err(|e| ConfigError(format!("config line {}: {e}", lineno + 1)))?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        for (name, v) in [
            ("theta1", self.theta1),
            ("theta2", self.theta2),
            ("transit_phase", self.transit_phase),
        ] {
            if !v.is_finite() {
                return err(format!("{name} must be finite"));
            }
        }
        for (name, g) in [
            ("theta1_grid", self.theta1_grid),
            ("theta2_grid", self.theta2_grid),
        ] {
            if !g.min.is_finite() || !g.max.is_finite() {
                return err(format!("{name} bounds must be finite"));
            }
            if g.steps < 2 {
                return err(format!("{name} needs at least 2 steps"));
            }
        }
        self.noise
            .validate()
            .map_err(|e| ConfigError(e.to_string()))?;
        if self.trials < 1 {
            return err("trials must be at least 1");
        }
        if !self.target_fidelity.is_finite() || !(0.0..1.0).contains(&self.target_fidelity) {
            return err("target_fidelity must lie in [0, 1)");
        }
        if self.chain_size < 2 || self.chain_size + 1 > MAX_QUBITS {
            return err(format!(
                "chain_size must be between 2 and {}",
                MAX_QUBITS - 1
            ));
        }
        if self.target_pair + 1 >= self.chain_size {
            return err(format!(
                "target_pair {} leaves no right neighbour in a chain of {}",
                self.target_pair, self.chain_size
            ));
        }
        Ok(())
    }

    /// Fully resolved configuration in the file format.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let mut kv = |k: &str, v: String| {
            s.push_str(k);
            s.push_str(" = ");
            s.push_str(&v);
            s.push('\n');
        };
        kv("command", self.command.clone());
        kv("theta1", self.theta1.to_string());
        kv("theta2", self.theta2.to_string());
        kv("theta1_grid", self.theta1_grid.to_string());
        kv("theta2_grid", self.theta2_grid.to_string());
        kv("eps_init", self.noise.eps_init.to_string());
        kv("eps_z", self.noise.eps_z.to_string());
        kv("eps_relax", self.noise.eps_relax.to_string());
        kv("dephase_static", self.noise.dephase_static.to_string());
        kv("trials", self.trials.to_string());
        kv("seed", self.seed.to_string());
        kv("target_fidelity", self.target_fidelity.to_string());
        kv("max_rounds", self.max_rounds.to_string());
        kv("chain_size", self.chain_size.to_string());
        kv("target_pair", self.target_pair.to_string());
        kv("transit_phase", self.transit_phase.to_string());
        kv(
            "out",
            self.out
                .as_ref()
                .map(|p| p.display().to_string())
                .unwrap_or_default(),
        );
        s
    }
}

fn parse_f64(name: &str, value: &str) -> Result<f64, ConfigError> {
    value
        .parse::<f64>()
        .map_err(|_| ConfigError(format!("{name}: `{value}` is not a number")))
}

fn parse_int<T: std::str::FromStr>(name: &str, value: &str) -> Result<T, ConfigError> {
    value
        .parse::<T>()
        .map_err(|_| ConfigError(format!("{name}: `{value}` is not a valid integer")))
}
