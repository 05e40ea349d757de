//! Selective entanglement of one neighbouring pair in a chain of static qubits.
//!
//! The chain is |↑…↑ ↓↓ ↑…↑⟩ with the ↓↓ pair at `(i, i+1)`. A flying ↑
//! passes spectators as identity up to a phase, applies gate 1 at `i` and
//! gate 2 at `i+1`, passes the rest, and is traced out. Register layout:
//! qubit 0 is the flying qubit, qubit `1 + j` is static qubit `j`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::qcore::{gates, DensityMatrix, Spin, MAX_QUBITS};
use crate::scattering::{forward_unitary, ForwardScatterParams};

use super::resource::{assemble, EOResource, GateModel};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChainConfig {
    pub n_static: usize,
    /// EO between static qubits `target_pair` and `target_pair + 1`.
    pub target_pair: usize,
    pub gate1: ForwardScatterParams,
    pub gate2: ForwardScatterParams,
    /// Phase θ′ picked up passing a spectator (θ = 0 there).
    pub transit_phase: f64,
}

impl ChainConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_static < 2 {
            return Err(Error::Config("chain needs at least two static qubits"));
        }
        if self.n_static + 1 > MAX_QUBITS {
            return Err(Error::QubitCount(self.n_static + 1));
        }
        if self.target_pair + 1 >= self.n_static {
            return Err(Error::Config("target pair index out of range"));
        }
        if !self.transit_phase.is_finite() {
            return Err(Error::NonFinite("transit_phase"));
        }
        Ok(())
    }

    fn initial_spins(&self) -> Vec<Spin> {
        let mut spins = alloc::vec![Spin::Up];
        spins.extend((0..self.n_static).map(|j| {
            if j == self.target_pair || j == self.target_pair + 1 {
                Spin::Down
            } else {
                Spin::Up
            }
        }));
        spins
    }
}

/// Chain run: the target-pair resource plus transit diagnostics.
#[derive(Clone, Debug)]
pub struct ChainOutcome {
    pub resource: EOResource,
    /// `(static index, purity, ⟨↑|ρ_j|↑⟩)` for each spectator.
    pub spectators: Vec<(usize, f64, f64)>,
    /// `⟨Σσ_z⟩` over flying + chain before and after transit.
    pub magnetization_before: f64,
    pub magnetization_after: f64,
}

pub fn chain_selective_eo(cfg: &ChainConfig) -> Result<ChainOutcome> {
    cfg.validate()?;
    let n = cfg.n_static + 1;
    let initial = DensityMatrix::from_spins(&cfg.initial_spins())?;
    let transit = forward_unitary(&ForwardScatterParams::new(0.0, cfg.transit_phase)?);
    let mut state = initial.clone();
    for j in 0..cfg.n_static {
        let u = if j == cfg.target_pair {
            forward_unitary(&cfg.gate1)
        } else if j == cfg.target_pair + 1 {
            forward_unitary(&cfg.gate2)
        } else {
            transit.clone()
        };
        state = state.apply_unitary(&u, &[0, 1 + j])?;
    }

    let tz = gates::total_z(n);
    let magnetization_before = initial.expectation(&tz)?.re;
    let magnetization_after = state.expectation(&tz)?.re;

    let pair = state.partial_trace(&[1 + cfg.target_pair, 2 + cfg.target_pair])?;
    let spectators = (0..cfg.n_static)
        .filter(|&j| j != cfg.target_pair && j != cfg.target_pair + 1)
        .map(|j| {
            let rho = state.partial_trace(&[1 + j])?;
            Ok((j, rho.purity(), rho.entry(0, 0).re))
        })
        .collect::<Result<Vec<_>>>()?;

    let resource = assemble(
        pair,
        &GateModel::Forward(cfg.gate1),
        &GateModel::Forward(cfg.gate2),
        1.0,
    );
    Ok(ChainOutcome {
        resource,
        spectators,
        magnetization_before,
        magnetization_after,
    })
}
