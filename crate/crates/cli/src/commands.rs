//! The four experiments. Each returns its artifacts as strings; writing them
//! out is left to the caller so runs can be compared byte for byte.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::{self, Write as _};

use rayon::prelude::*;

use flyspin_core::metrics::{bell_fidelity, concurrence, success_stats, BellLabel};
use flyspin_core::protocol::parity::{plus_plus, success_summary, two_round_parity_projection};
use flyspin_core::protocol::{
    chain_selective_eo, generate_resource, pump_trial, ChainConfig, PumpTrajectory,
};
use flyspin_core::rng::trial_rng;
use flyspin_core::scattering::ForwardScatterParams;

use crate::config::{ConfigError, ExperimentConfig};

#[derive(Debug)]
pub enum CommandError {
    Config(ConfigError),
    Runtime(String),
    /// No pump trial reached the target; the artifacts are still produced.
    NonConvergence(Box<Artifacts>),
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Config(_) => 1,
            CommandError::Runtime(_) => 2,
            CommandError::NonConvergence(_) => 3,
        }
    }
}

impl fmt::Display for CommandError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommandError::Config(e) => write!(f, "config error: {e}"),
            CommandError::Runtime(e) => write!(f, "runtime error: {e}"),
            CommandError::NonConvergence(_) => f.write_str("no trial reached the target fidelity"),
        }
    }
}

impl std::error::Error for CommandError {}

impl From<ConfigError> for CommandError {
    fn from(e: ConfigError) -> Self {
        CommandError::Config(e)
    }
}

impl From<flyspin_core::Error> for CommandError {
    fn from(e: flyspin_core::Error) -> Self {
        CommandError::Runtime(e.to_string())
    }
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifacts {
    /// The file written to `--out` (CSV, or the report for chain-demo).
    pub primary: String,
    /// Human-readable summary.
    pub report: String,
}

pub const SWEEP_HEADER: &str = "theta1,theta2,concurrence,p1,p2,herald_prob";
pub const PUMP_HEADER: &str =
    "trial,rounds_to_target,converged,pairs_consumed,final_fidelity,frame_flips";

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Concurrence over the θ₁ × θ₂ grid, θ₁-major, angles in radians.
pub fn sweep_concurrence(cfg: &ExperimentConfig) -> Result<Artifacts, CommandError> {
    cfg.validate()?;
    let t1s = cfg.theta1_grid.points();
    let t2s = cfg.theta2_grid.points();
    let grid: Vec<(f64, f64)> = t1s
        .iter()
        .flat_map(|&a| t2s.iter().map(move |&b| (a * PI, b * PI)))
        .collect();
    let rows = grid
        .par_iter()
        .map(|&(t1, t2)| {
            let r = generate_resource(t1, t2, &cfg.noise)?;
            let c = concurrence(&r.rho)?;
            Ok(format!(
                "{},{},{},{},{},{}\n",
                num(t1),
                num(t2),
                num(c),
                num(r.p1),
                num(r.p2),
                num(r.herald_prob)
            ))
        })
        .collect::<flyspin_core::Result<Vec<String>>>()?;
    let mut csv = String::with_capacity(rows.len() * 140);
    csv.push_str(SWEEP_HEADER);
    csv.push('\n');
    rows.iter().for_each(|r| csv.push_str(r));
    let report = format!(
        "sweep-concurrence: {} x {} grid points\n",
        t1s.len(),
        t2s.len()
    );
    Ok(Artifacts {
        primary: csv,
        report,
    })
}

/// Resource parameters, exact and sampled parity-projection success, and
/// output fidelities for one angle pair.
pub fn eo_run(cfg: &ExperimentConfig) -> Result<Artifacts, CommandError> {
    cfg.validate()?;
    let (t1, t2) = (cfg.theta1 * PI, cfg.theta2 * PI);
    let resource = generate_resource(t1, t2, &cfg.noise)?;
    let ancillas = plus_plus()?;
    let (exact, output) = success_summary(&resource.rho, &resource.rho, &ancillas)?;

    let outcomes = (0..cfg.trials)
        .into_par_iter()
        .map(|k| {
            let mut rng = trial_rng(cfg.seed, k);
            two_round_parity_projection(|| Ok(resource.clone()), &ancillas, &mut rng)
                .map(|o| o.succeeded)
        })
        .collect::<flyspin_core::Result<Vec<bool>>>()?;
    let (mc, se) = success_stats(&outcomes)?;

    let mut rows: Vec<(String, String)> = vec![
        ("theta1".into(), num(t1)),
        ("theta2".into(), num(t2)),
        ("p1".into(), num(resource.p1)),
        ("p2".into(), num(resource.p2)),
        ("herald_prob".into(), num(resource.herald_prob)),
        ("concurrence".into(), num(resource.concurrence()?)),
        (
            "correction_s1_phase".into(),
            num(resource.correction.s1_phase),
        ),
        ("success_exact".into(), num(exact)),
        ("success_mc".into(), num(mc)),
        ("success_mc_se".into(), num(se)),
        ("trials".into(), cfg.trials.to_string()),
    ];
    for label in BellLabel::ALL {
        let f = match &output {
            Some(s) => num(bell_fidelity(s, label)?),
            None => "nan".into(),
        };
        rows.push((format!("fidelity_{}", label.name()), f));
    }

    let mut csv = String::from("key,value\n");
    for (k, v) in &rows {
        writeln!(csv, "{k},{v}").unwrap();
    }

    let mut report = String::new();
    writeln!(
        report,
        "eo-run at theta1 = {}π, theta2 = {}π",
        cfg.theta1, cfg.theta2
    )
    .unwrap();
    writeln!(
        report,
        "  P1 = {:.12}  P2 = {:.12}  herald = {:.12}",
        resource.p1, resource.p2, resource.herald_prob
    )
    .unwrap();
    writeln!(
        report,
        "  resource concurrence = {:.12}",
        resource.concurrence()?
    )
    .unwrap();
    writeln!(report, "  success (exact)       = {exact:.12}").unwrap();
    writeln!(
        report,
        "  success (Monte Carlo) = {mc:.6} ± {se:.6} over {} trials",
        cfg.trials
    )
    .unwrap();
    match &output {
        Some(s) => {
            for label in BellLabel::ALL {
                writeln!(
                    report,
                    "  fidelity {:<9} = {:.12}",
                    label.name(),
                    bell_fidelity(s, label)?
                )
                .unwrap();
            }
        }
        None => writeln!(report, "  degenerate resource: projection never succeeds").unwrap(),
    }
    Ok(Artifacts {
        primary: csv,
        report,
    })
}

/// Summary statistics over the converged trials.
#[derive(Debug, Clone, PartialEq)]
pub struct PumpSummary {
    pub trials: usize,
    pub converged: usize,
    pub mean_rounds: f64,
    pub std_rounds: f64,
    pub median_rounds: f64,
    pub histogram: BTreeMap<u32, usize>,
}

pub fn summarize(trajectories: &[PumpTrajectory]) -> PumpSummary {
    let mut rounds: Vec<u32> = trajectories
        .iter()
        .filter(|t| t.converged)
        .map(|t| t.rounds())
        .collect();
    rounds.sort_unstable();
    let n = rounds.len();
    let mean = if n == 0 {
        f64::NAN
    } else {
        rounds.iter().map(|&r| r as f64).sum::<f64>() / n as f64
    };
    let std = if n < 2 {
        0.0
    } else {
        (rounds
            .iter()
            .map(|&r| (r as f64 - mean).powi(2))
            .sum::<f64>()
            / (n - 1) as f64)
            .sqrt()
    };
    let median = match n {
        0 => f64::NAN,
        _ if n % 2 == 1 => rounds[n / 2] as f64,
        _ => (rounds[n / 2 - 1] + rounds[n / 2]) as f64 / 2.0,
    };
    let mut histogram = BTreeMap::new();
    for r in rounds {
        *histogram.entry(r).or_insert(0) += 1;
    }
    PumpSummary {
        trials: trajectories.len(),
        converged: n,
        mean_rounds: mean,
        std_rounds: std,
        median_rounds: median,
        histogram,
    }
}

pub fn pump_trajectories(cfg: &ExperimentConfig) -> Result<Vec<PumpTrajectory>, CommandError> {
    cfg.validate()?;
    Ok((0..cfg.trials)
        .into_par_iter()
        .map(|k| {
            pump_trial(
                cfg.noise.eps_z,
                cfg.target_fidelity,
                cfg.max_rounds,
                cfg.seed,
                k,
            )
        })
        .collect::<flyspin_core::Result<Vec<_>>>()?)
}

pub fn pump_sim(cfg: &ExperimentConfig) -> Result<Artifacts, CommandError> {
    let trajectories = pump_trajectories(cfg)?;
    let mut csv = String::with_capacity(trajectories.len() * 60);
    csv.push_str(PUMP_HEADER);
    csv.push('\n');
    for (k, t) in trajectories.iter().enumerate() {
        let flips = t.steps.iter().filter(|s| s.frame_flip).count();
        writeln!(
            csv,
            "{k},{},{},{},{},{flips}",
            t.rounds(),
            u8::from(t.converged),
            t.pairs_consumed(),
            num(t.final_fidelity())
        )
        .unwrap();
    }

    let s = summarize(&trajectories);
    let mut report = String::new();
    writeln!(
        report,
        "pump-sim: eps_z = {}, target = {}, fresh fidelity = {:.12}",
        cfg.noise.eps_z,
        cfg.target_fidelity,
        flyspin_core::protocol::parity::fresh_pair_fidelity(cfg.noise.eps_z)
    )
    .unwrap();
    writeln!(
        report,
        "  trials = {}, converged = {}, non-converged = {}",
        s.trials,
        s.converged,
        s.trials - s.converged
    )
    .unwrap();
    writeln!(
        report,
        "  rounds: mean = {:.6}, std = {:.6}, median = {}",
        s.mean_rounds, s.std_rounds, s.median_rounds
    )
    .unwrap();
    writeln!(
        report,
        "  pairs consumed: mean = {:.6}",
        s.mean_rounds + 1.0
    )
    .unwrap();
    writeln!(report, "  histogram (rounds: trials)").unwrap();
    for (r, count) in &s.histogram {
        writeln!(report, "    {r:>5}: {count}").unwrap();
    }

    let artifacts = Artifacts {
        primary: csv,
        report,
    };
    if s.converged == 0 {
        return Err(CommandError::NonConvergence(Box::new(artifacts)));
    }
    Ok(artifacts)
}

pub fn chain_config(cfg: &ExperimentConfig) -> Result<ChainConfig, CommandError> {
    Ok(ChainConfig {
        n_static: cfg.chain_size,
        target_pair: cfg.target_pair,
        gate1: ForwardScatterParams::new(cfg.theta1 * PI, 0.0)?,
        gate2: ForwardScatterParams::new(cfg.theta2 * PI, 0.0)?,
        transit_phase: cfg.transit_phase * PI,
    })
}

pub fn chain_demo(cfg: &ExperimentConfig) -> Result<Artifacts, CommandError> {
    cfg.validate()?;
    let out = chain_selective_eo(&chain_config(cfg)?)?;
    let corrected = out.resource.corrected_rho()?;
    let mut report = String::new();
    writeln!(
        report,
        "chain-demo: {} static qubits, target pair ({}, {}), theta1 = {}π, theta2 = {}π",
        cfg.chain_size,
        cfg.target_pair,
        cfg.target_pair + 1,
        cfg.theta1,
        cfg.theta2
    )
    .unwrap();
    writeln!(
        report,
        "  target pair concurrence = {:.12}",
        out.resource.concurrence()?
    )
    .unwrap();
    for label in BellLabel::ALL {
        writeln!(
            report,
            "  corrected fidelity {:<9} = {:.12}",
            label.name(),
            bell_fidelity(&corrected, label)?
        )
        .unwrap();
    }
    for (j, purity, up) in &out.spectators {
        writeln!(
            report,
            "  spectator {j}: purity = {purity:.12}, up population = {up:.12}"
        )
        .unwrap();
    }
    writeln!(
        report,
        "  magnetization before = {:.12}, after = {:.12}, drift = {:.3e}",
        out.magnetization_before,
        out.magnetization_after,
        (out.magnetization_after - out.magnetization_before).abs()
    )
    .unwrap();
    Ok(Artifacts {
        primary: report.clone(),
        report,
    })
}
