//! Per-trial random streams.
//!
//! Trials draw from ChaCha8 (`rand_chacha::ChaCha8Rng`), a counter-based
//! generator. Trial `k` of a run with master seed `s` uses
//! `ChaCha8Rng::seed_from_u64(s)` switched to stream `k`, so streams are
//! derived statelessly and results do not depend on the order trials run in.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

pub type TrialRng = ChaCha8Rng;

/// Independent stream for one trial.
pub fn trial_rng(master_seed: u64, trial: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(trial);
    rng
}

/// Uniform draw in `[0, 1)` with 53 random bits.
pub fn uniform<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Index `i` with probability `weights[i] / Σ weights`.
pub fn sample_index<R: RngCore + ?Sized>(weights: &[f64], rng: &mut R) -> usize {
    let total: f64 = weights.iter().sum();
    let target = uniform(rng) * total;
    let mut acc = 0.0;
    for (i, w) in weights.iter().enumerate() {
        acc += w;
        if target < acc {
            return i;
        }
    }
    // Rounding can leave `target` just past the last partial sum.
    weights.iter().rposition(|&w| w > 0.0).unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Pinned stream prefixes; these are documented in the README.
    #[test]
    fn stream_test_vectors() {
        let mut a = trial_rng(0, 0);
        let first: [u64; 2] = [a.next_u64(), a.next_u64()];
        let mut b = trial_rng(0, 0);
        assert_eq!(first, [b.next_u64(), b.next_u64()]);
        assert_eq!(first, [0xb585f767a79a3b6c, 0x7746a55fbad8c037]);
        assert_eq!(trial_rng(42, 7).next_u64(), 0x20e5cc8835be27d0);
    }

    #[test]
    fn streams_differ_by_trial() {
        let mut a = trial_rng(1234, 0);
        let mut b = trial_rng(1234, 1);
        assert_ne!(a.next_u64(), b.next_u64());
    }

    #[test]
    fn uniform_in_unit_interval() {
        let mut rng = trial_rng(9, 3);
        for _ in 0..10_000 {
            let u = uniform(&mut rng);
            assert!((0.0..1.0).contains(&u));
        }
    }

    #[test]
    fn sample_index_skips_zero_weights() {
        let mut rng = trial_rng(5, 0);
        for _ in 0..1000 {
            let i = sample_index(&[0.0, 0.3, 0.0, 0.7], &mut rng);
            assert!(i == 1 || i == 3);
        }
    }
}
