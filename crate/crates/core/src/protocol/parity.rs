//! Two-round parity projection on a pair of ancilla qubits, one per node,
//! driven by two independently generated resource states.
//!
//! Each round: CNOT from every ancilla (control) onto its co-located resource
//! qubit, then a Z-basis readout of both resource qubits. Round 2 is bracketed
//! by X on both ancillas. The resource's single-excitation part acts as the
//! diagonal filter `a·P_u + b·P_v` on two ancilla basis states of equal
//! parity; the X bracket swaps which of the two receives `a`, so when round 2
//! repeats round 1's outcome the product is `a·b·Π`, an ideal projection.
//! Every other outcome pair is a failure, including all that involve the
//! |↓↓⟩ component of either resource.
//!
//! Register layout during a round: (s1, s2, a1, a2).

use alloc::vec::Vec;

use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::qcore::{gates, Branch, DensityMatrix, C64};
use crate::rng;

use super::resource::EOResource;

/// Readout of one round: bit 1 is s1, bit 0 is s2.
pub type RoundOutcome = u8;

/// Recorded Pauli-frame fix applied to the ancillas on success.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParityCorrection {
    /// X on a2, turning an even-parity projection into the odd one.
    pub flip_a2: bool,
}

/// One syndrome branch of the protocol with its exact Born probability.
#[derive(Clone, Debug)]
pub struct ParityBranch {
    pub syndrome: [RoundOutcome; 2],
    pub probability: f64,
    pub succeeded: bool,
    /// Ancilla state after correction, when the branch has nonzero probability.
    pub post_state: Option<DensityMatrix>,
}

/// A sampled run of the protocol.
#[derive(Clone, Debug)]
pub struct ParityOutcome {
    pub succeeded: bool,
    pub syndrome: [RoundOutcome; 2],
    pub correction: ParityCorrection,
    /// Corrected ancilla state; present only on success.
    pub post_state: Option<DensityMatrix>,
}

/// Success syndromes are those where round 2 repeats round 1.
pub fn is_success(syndrome: [RoundOutcome; 2]) -> bool {
    syndrome[0] == syndrome[1]
}

/// Parity the ancillas were projected on for a success syndrome: 1 is odd.
pub fn projected_parity(outcome: RoundOutcome) -> u8 {
    1 ^ (outcome >> 1) ^ (outcome & 1)
}

pub fn correction_for(syndrome: [RoundOutcome; 2]) -> ParityCorrection {
    ParityCorrection {
        flip_a2: is_success(syndrome) && projected_parity(syndrome[0]) == 0,
    }
}

fn check_inputs(resource: &DensityMatrix, ancillas: &DensityMatrix) -> Result<()> {
    if ancillas.n_qubits() != 2 {
        return Err(Error::Dimension {
            expected: 4,
            found: ancillas.dim(),
        });
    }
    if resource.n_qubits() != 2 {
        return Err(Error::Dimension {
            expected: 4,
            found: resource.dim(),
        });
    }
    Ok(())
}

/// |++⟩ on the two ancillas.
pub fn plus_plus() -> Result<DensityMatrix> {
    let up = DensityMatrix::basis(1, 0)?;
    let plus = up.apply_unitary(&gates::hadamard(), &[0])?;
    plus.tensor(&plus)
}

fn flip_both(ancillas: &DensityMatrix) -> Result<DensityMatrix> {
    ancillas
        .apply_unitary(&gates::pauli_x(), &[0])?
        .apply_unitary(&gates::pauli_x(), &[1])
}

/// One round: returns the four readout branches with the conditional ancilla
/// states.
pub fn parity_round(
    resource: &DensityMatrix,
    ancillas: &DensityMatrix,
    toggled: bool,
) -> Result<Vec<Branch>> {
    check_inputs(resource, ancillas)?;
    let ancillas = if toggled {
        flip_both(ancillas)?
    } else {
        ancillas.clone()
    };
    let joint = resource
        .tensor(&ancillas)?
        .apply_unitary(&gates::cnot(), &[2, 0])?
        .apply_unitary(&gates::cnot(), &[3, 1])?;
    joint
        .measure_qubits(&[0, 1])?
        .into_iter()
        .map(|b| {
            let state = match b.state {
                Some(s) => {
                    let reduced = s.partial_trace(&[2, 3])?;
                    Some(if toggled {
                        flip_both(&reduced)?
                    } else {
                        reduced
                    })
                }
                None => None,
            };
            Ok(Branch {
                probability: b.probability,
                state,
            })
        })
        .collect()
}

fn finish(state: DensityMatrix, syndrome: [RoundOutcome; 2]) -> Result<DensityMatrix> {
    if correction_for(syndrome).flip_a2 {
        state.apply_unitary(&gates::pauli_x(), &[1])
    } else {
        Ok(state)
    }
}

/// Every syndrome pair with its exact joint probability.
pub fn enumerate_two_round(
    first: &DensityMatrix,
    second: &DensityMatrix,
    ancillas: &DensityMatrix,
) -> Result<Vec<ParityBranch>> {
    check_inputs(second, ancillas)?;
    let mut out = Vec::with_capacity(16);
    for (m1, b1) in parity_round(first, ancillas, false)?
        .into_iter()
        .enumerate()
    {
        let second_round = match &b1.state {
            Some(s) => Some(parity_round(second, s, true)?),
            None => None,
        };
        for m2 in 0..4u8 {
            let syndrome = [m1 as RoundOutcome, m2];
            let (probability, post) = match &second_round {
                Some(branches) => {
                    let b2 = &branches[m2 as usize];
                    (b1.probability * b2.probability, b2.state.clone())
                }
                None => (0.0, None),
            };
            let post_state = match post {
                Some(s) if probability > crate::qcore::ZERO_PROB => Some(finish(s, syndrome)?),
                _ => None,
            };
            out.push(ParityBranch {
                syndrome,
                probability,
                succeeded: is_success(syndrome),
                post_state,
            });
        }
    }
    Ok(out)
}

/// Exact success probability and the success-averaged, corrected ancilla state.
pub fn success_summary(
    first: &DensityMatrix,
    second: &DensityMatrix,
    ancillas: &DensityMatrix,
) -> Result<(f64, Option<DensityMatrix>)> {
    let branches = enumerate_two_round(first, second, ancillas)?;
    let mut total = 0.0;
    let mut acc = crate::qcore::CMatrix::zeros(4, 4);
    for b in branches.iter().filter(|b| b.succeeded) {
        if let Some(s) = &b.post_state {
            total += b.probability;
            acc += s.matrix().map(|z| z * b.probability);
        }
    }
    if total <= crate::qcore::ZERO_PROB {
        return Ok((total, None));
    }
    let avg = DensityMatrix::from_op(acc / C64::new(total, 0.0))?;
    Ok((total, Some(avg)))
}

/// Samples one run of the protocol, drawing two resources from `make_resource`.
pub fn two_round_parity_projection<F, R>(
    mut make_resource: F,
    ancillas: &DensityMatrix,
    rng: &mut R,
) -> Result<ParityOutcome>
where
    F: FnMut() -> Result<EOResource>,
    R: RngCore + ?Sized,
{
    let first = make_resource()?;
    let second = make_resource()?;
    let mut syndrome = [0u8; 2];
    let mut state = ancillas.clone();
    for (round, resource) in [&first, &second].into_iter().enumerate() {
        let branches = parity_round(&resource.rho, &state, round == 1)?;
        let weights: Vec<f64> = branches.iter().map(|b| b.probability).collect();
        let pick = rng::sample_index(&weights, rng);
        syndrome[round] = pick as RoundOutcome;
        state = branches
            .into_iter()
            .nth(pick)
            .and_then(|b| b.state)
            .ok_or(Error::ZeroProbability)?;
    }
    let succeeded = is_success(syndrome);
    let post_state = if succeeded {
        Some(finish(state, syndrome)?)
    } else {
        None
    };
    Ok(ParityOutcome {
        succeeded,
        syndrome,
        correction: correction_for(syndrome),
        post_state,
    })
}

/// Fidelity of the ancilla pair produced from |++⟩ under flying-qubit
/// dephasing `ε_z`: `1 − 2ε_z(1 − ε_z)`.
pub fn fresh_pair_fidelity(eps_z: f64) -> f64 {
    1.0 - 2.0 * eps_z * (1.0 - eps_z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::NoiseParams;
    use crate::metrics::{bell_fidelity, BellLabel};
    use crate::protocol::resource::{generate_resource, idle_resource};
    use core::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn optimal(noise: NoiseParams) -> EOResource {
        generate_resource(FRAC_PI_4, FRAC_PI_2, &noise).unwrap()
    }

    #[test]
    fn optimal_noiseless_run() {
        let r = optimal(NoiseParams::noiseless());
        let (p, out) = success_summary(&r.rho, &r.rho, &plus_plus().unwrap()).unwrap();
        assert!((p - 0.5).abs() < 1e-12);
        let f = bell_fidelity(&out.unwrap(), BellLabel::PsiPlus).unwrap();
        assert!((f - 1.0).abs() < 1e-10);
    }

    #[test]
    fn branch_probabilities_sum_to_one() {
        let r = generate_resource(0.3, 1.2, &NoiseParams::noiseless()).unwrap();
        let total: f64 = enumerate_two_round(&r.rho, &r.rho, &plus_plus().unwrap())
            .unwrap()
            .iter()
            .map(|b| b.probability)
            .sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_resource_never_succeeds() {
        let idle = idle_resource().unwrap();
        let (p, out) = success_summary(&idle.rho, &idle.rho, &plus_plus().unwrap()).unwrap();
        assert!(p < 1e-15);
        assert!(out.is_none());
    }

    #[test]
    fn rejects_non_two_qubit_ancillas() {
        let r = optimal(NoiseParams::noiseless());
        let one = DensityMatrix::maximally_mixed(1).unwrap();
        assert!(enumerate_two_round(&r.rho, &r.rho, &one).is_err());
    }

    #[test]
    fn supplier_failure_propagates() {
        let anc = plus_plus().unwrap();
        let mut rng = rng::trial_rng(1, 0);
        let err = two_round_parity_projection(|| Err(Error::Config("broken")), &anc, &mut rng);
        assert_eq!(err.unwrap_err(), Error::Config("broken"));
    }

    #[test]
    fn sampled_success_is_psi_plus() {
        let anc = plus_plus().unwrap();
        let mut rng = rng::trial_rng(11, 0);
        let mut seen = 0;
        for _ in 0..40 {
            let out = two_round_parity_projection(
                || Ok(optimal(NoiseParams::noiseless())),
                &anc,
                &mut rng,
            )
            .unwrap();
            if let Some(s) = out.post_state {
                seen += 1;
                assert!((bell_fidelity(&s, BellLabel::PsiPlus).unwrap() - 1.0).abs() < 1e-10);
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn fresh_fidelity_exact_value() {
        assert!((fresh_pair_fidelity(0.089) - 0.837842).abs() < 1e-12);
        assert_eq!(fresh_pair_fidelity(0.0), 1.0);
    }
}
