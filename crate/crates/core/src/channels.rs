//! Noise models for the flying qubit: imperfect initialization, dephasing and
//! single-shot relaxation, each per transit.

use alloc::vec;

use crate::error::{Error, Result};
use crate::qcore::{gates, CMatrix, DensityMatrix, KrausChannel, C64};

pub(crate) fn check_probability(name: &'static str, value: f64) -> Result<f64> {
    if !value.is_finite() {
        return Err(Error::NonFinite(name));
    }
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::Probability { name, value });
    }
    Ok(value)
}

/// Per-transit error probabilities.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct NoiseParams {
    /// Probability the flying qubit starts ↓ instead of ↑.
    pub eps_init: f64,
    /// Phase-flip probability while the flying qubit travels between the static qubits.
    pub eps_z: f64,
    /// Probability of ↑ → ↓ relaxation of the flying qubit between the static qubits.
    pub eps_relax: f64,
    /// Also dephase both static qubits with `eps_z` during the inter-gate segment.
    pub dephase_static: bool,
}

impl NoiseParams {
    pub fn noiseless() -> Self {
        NoiseParams::default()
    }

    pub fn validate(&self) -> Result<()> {
        check_probability("eps_init", self.eps_init)?;
        check_probability("eps_z", self.eps_z)?;
        check_probability("eps_relax", self.eps_relax)?;
        Ok(())
    }
}

/// `(1−ε)|↑⟩⟨↑| + ε|↓⟩⟨↓|`.
pub fn imperfect_init(eps_init: f64) -> Result<DensityMatrix> {
    let eps = check_probability("eps_init", eps_init)?;
    DensityMatrix::diagonal(&[1.0 - eps, eps])
}

/// Phase flip with probability `eps_z`: Kraus set `{√(1−ε) I, √ε Z}`.
pub fn dephasing(eps_z: f64) -> Result<KrausChannel> {
    let eps = check_probability("eps_z", eps_z)?;
    KrausChannel::new(vec![
        gates::identity(1) * C64::new(libm::sqrt(1.0 - eps), 0.0),
        gates::pauli_z() * C64::new(libm::sqrt(eps), 0.0),
    ])
}

/// Amplitude damping of ↑ into ↓ with probability `eps_relax`.
pub fn relaxation(eps_relax: f64) -> Result<KrausChannel> {
    let eps = check_probability("eps_relax", eps_relax)?;
    let zero = C64::new(0.0, 0.0);
    let keep = CMatrix::from_row_slice(
        2,
        2,
        &[
            C64::new(libm::sqrt(1.0 - eps), 0.0),
            zero,
            zero,
            C64::new(1.0, 0.0),
        ],
    );
    let decay = CMatrix::from_row_slice(2, 2, &[zero, zero, C64::new(libm::sqrt(eps), 0.0), zero]);
    KrausChannel::new(vec![keep, decay])
}

/// Dephasing at `a` followed by dephasing at `b` is dephasing at this value.
pub fn compose_dephasing(a: f64, b: f64) -> f64 {
    a + b - 2.0 * a * b
}
