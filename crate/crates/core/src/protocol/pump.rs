//! Entanglement pumping against phase errors.
//!
//! The stored pair is `Fψ⁺ + (1−F)ψ⁻` and every fresh pair is `fψ⁺ + (1−f)ψ⁻`.
//! One round compares the two pairs' phase-error parity. An even syndrome
//! (probability `Ff + (1−F)(1−f)`) raises `F` to `Ff/p_e`; an odd one lowers
//! it to `F(1−f)/(F(1−f) + (1−F)f)`. The stored pair is kept either way, so
//! `F` follows a biased random walk.

use alloc::vec::Vec;

use rand_core::RngCore;

use crate::channels::check_probability;
use crate::error::{Error, Result};
use crate::rng;

use super::parity::fresh_pair_fidelity;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Syndrome {
    Even,
    Odd,
}

/// How the syndrome of a round is decided.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SyndromeDraw {
    /// Even when the uniform draw is below the even-syndrome probability.
    Sampled(f64),
    Forced(Syndrome),
}

/// Stored-pair fidelity with respect to ψ⁺ and the number of rounds so far.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PumpState {
    pub fidelity: f64,
    pub round: u32,
}

impl PumpState {
    pub fn new(fidelity: f64) -> Result<Self> {
        check_probability("fidelity", fidelity)?;
        Ok(PumpState { fidelity, round: 0 })
    }
}

/// `Ff + (1−F)(1−f)`.
pub fn even_probability(stored: f64, fresh: f64) -> f64 {
    stored * fresh + (1.0 - stored) * (1.0 - fresh)
}

/// Result of one round.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PumpStep {
    pub state: PumpState,
    pub syndrome: Syndrome,
    /// Probability of the syndrome that occurred.
    pub probability: f64,
}

pub fn pump_step(stored: &PumpState, fresh_fidelity: f64, draw: SyndromeDraw) -> Result<PumpStep> {
    let big_f = check_probability("stored fidelity", stored.fidelity)?;
    let f = check_probability("fresh fidelity", fresh_fidelity)?;
    let p_even = even_probability(big_f, f);
    let syndrome = match draw {
        SyndromeDraw::Forced(s) => s,
        SyndromeDraw::Sampled(u) if u < p_even => Syndrome::Even,
        SyndromeDraw::Sampled(_) => Syndrome::Odd,
    };
    let (probability, fidelity) = match syndrome {
        Syndrome::Even => (p_even, big_f * f / p_even),
        Syndrome::Odd => {
            let p_odd = big_f * (1.0 - f) + (1.0 - big_f) * f;
            (p_odd, big_f * (1.0 - f) / p_odd)
        }
    };
    if probability <= 0.0 {
        return Err(Error::ZeroProbability);
    }
    Ok(PumpStep {
        state: PumpState {
            fidelity: fidelity.clamp(0.0, 1.0),
            round: stored.round + 1,
        },
        syndrome,
        probability,
    })
}

/// One round of a trajectory, after any frame flip.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PumpRecord {
    pub round: u32,
    pub syndrome: Syndrome,
    pub fidelity: f64,
    /// A Z correction was recorded on the stored pair (`F → 1 − F`).
    pub frame_flip: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PumpTrajectory {
    pub initial_fidelity: f64,
    pub fresh_fidelity: f64,
    pub steps: Vec<PumpRecord>,
    pub converged: bool,
}

impl PumpTrajectory {
    pub fn rounds(&self) -> u32 {
        self.steps.len() as u32
    }

    /// Fresh pairs used, counting the one that seeded the stored pair.
    pub fn pairs_consumed(&self) -> u32 {
        self.rounds() + 1
    }

    pub fn final_fidelity(&self) -> f64 {
        self.steps
            .last()
            .map_or(self.initial_fidelity, |s| s.fidelity)
    }
}

fn check_target(target: f64) -> Result<()> {
    if !target.is_finite() {
        return Err(Error::NonFinite("target_fidelity"));
    }
    if !(0.0..1.0).contains(&target) {
        return Err(Error::Config("target fidelity must lie in [0, 1)"));
    }
    Ok(())
}

/// Pumps with fresh pairs of fidelity `1 − 2ε_z(1−ε_z)` until the stored pair
/// reaches `target_fidelity` or `max_rounds` rounds have run.
///
/// Whenever the fidelity falls below 1/2 the stored pair is relabeled by a
/// recorded Z correction, so `F` always refers to the better of ψ±.
pub fn pump_with_rng<R: RngCore + ?Sized>(
    eps_z: f64,
    target_fidelity: f64,
    max_rounds: u32,
    rng: &mut R,
) -> Result<PumpTrajectory> {
    check_probability("eps_z", eps_z)?;
    check_target(target_fidelity)?;
    let fresh = fresh_pair_fidelity(eps_z);
    let mut state = PumpState::new(fresh)?;
    let mut steps = Vec::new();
    while state.fidelity < target_fidelity && state.round < max_rounds {
        let step = pump_step(&state, fresh, SyndromeDraw::Sampled(rng::uniform(rng)))?;
        state = step.state;
        let frame_flip = state.fidelity < 0.5;
        if frame_flip {
            state.fidelity = 1.0 - state.fidelity;
        }
        steps.push(PumpRecord {
            round: state.round,
            syndrome: step.syndrome,
            fidelity: state.fidelity,
            frame_flip,
        });
    }
    Ok(PumpTrajectory {
        initial_fidelity: fresh,
        fresh_fidelity: fresh,
        steps,
        converged: state.fidelity >= target_fidelity,
    })
}

/// [`pump_with_rng`] on stream 0 of `rng_seed`.
pub fn pump_until(
    eps_z: f64,
    target_fidelity: f64,
    max_rounds: u32,
    rng_seed: u64,
) -> Result<PumpTrajectory> {
    pump_trial(eps_z, target_fidelity, max_rounds, rng_seed, 0)
}

/// Trial `trial` of a seeded batch.
pub fn pump_trial(
    eps_z: f64,
    target_fidelity: f64,
    max_rounds: u32,
    master_seed: u64,
    trial: u64,
) -> Result<PumpTrajectory> {
    let mut rng = rng::trial_rng(master_seed, trial);
    pump_with_rng(eps_z, target_fidelity, max_rounds, &mut rng)
}
