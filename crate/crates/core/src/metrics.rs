//! Entanglement and fidelity diagnostics for two-qubit states.

use core::f64::consts::FRAC_1_SQRT_2;

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::qcore::{gates, CMatrix, DensityMatrix, PureState, C64};

/// Spectral values below this are treated as zero.
const SPECTRAL_FLOOR: f64 = 1e-12;

/// The four Bell states, `ψ± = (|↑↓⟩ ± |↓↑⟩)/√2` and `φ± = (|↑↑⟩ ± |↓↓⟩)/√2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BellLabel {
    PsiPlus,
    PsiMinus,
    PhiPlus,
    PhiMinus,
}

impl BellLabel {
    pub const ALL: [BellLabel; 4] = [
        BellLabel::PsiPlus,
        BellLabel::PsiMinus,
        BellLabel::PhiPlus,
        BellLabel::PhiMinus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BellLabel::PsiPlus => "psi_plus",
            BellLabel::PsiMinus => "psi_minus",
            BellLabel::PhiPlus => "phi_plus",
            BellLabel::PhiMinus => "phi_minus",
        }
    }

    pub fn state(self) -> PureState {
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        let z = C64::new(0.0, 0.0);
        let amps = match self {
            BellLabel::PsiPlus => [z, h, h, z],
            BellLabel::PsiMinus => [z, h, -h, z],
            BellLabel::PhiPlus => [h, z, z, h],
            BellLabel::PhiMinus => [h, z, z, -h],
        };
        PureState::new(amps.to_vec()).expect("Bell states are normalized")
    }
}

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.n_qubits() != 2 {
        return Err(Error::Dimension {
            expected: 4,
            found: rho.dim(),
        });
    }
    Ok(())
}

fn psd_sqrt(m: &CMatrix) -> CMatrix {
    let eig = m.clone().symmetric_eigen();
    let roots = eig
        .eigenvalues
        .map(|e| C64::new(libm::sqrt(e.max(0.0)), 0.0));
    let v = &eig.eigenvectors;
    v * CMatrix::from_diagonal(&roots) * v.adjoint()
}

/// Wootters concurrence.
///
/// The spin-flip spectrum is taken from the Hermitian form `√ρ ρ̃ √ρ` with
/// `ρ̃ = (Y⊗Y) ρ* (Y⊗Y)`, whose eigenvalues are the squares of the λᵢ.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubits(rho)?;
    let yy = gates::pauli_y().kronecker(&gates::pauli_y());
    let flipped = &yy * rho.matrix().map(|z| z.conj()) * &yy;
    let root = psd_sqrt(rho.matrix());
    let r = &root * flipped * &root;
    let r = (&r + r.adjoint()) * C64::new(0.5, 0.0);
    let mut lambdas: Vec<f64> = r
        .symmetric_eigenvalues()
        .iter()
        .map(|&mu| {
            if mu < SPECTRAL_FLOOR {
                0.0
            } else {
                libm::sqrt(mu)
            }
        })
        .collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    let c = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3];
    Ok(c.clamp(0.0, 1.0))
}

/// `⟨bell|ρ|bell⟩`.
pub fn bell_fidelity(rho: &DensityMatrix, label: BellLabel) -> Result<f64> {
    require_two_qubits(rho)?;
    rho.fidelity_pure(&label.state())
}

/// Sample mean and binomial standard error of a list of success flags.
pub fn success_stats(outcomes: &[bool]) -> Result<(f64, f64)> {
    if outcomes.is_empty() {
        return Err(Error::Config("success_stats needs at least one outcome"));
    }
    let n = outcomes.len() as f64;
    let p = outcomes.iter().filter(|&&b| b).count() as f64 / n;
    Ok((p, libm::sqrt(p * (1.0 - p) / n)))
}
