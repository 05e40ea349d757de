//! Resource-state generation between two static qubits.
//!
//! A flying qubit prepared ↑ passes static qubits s1 and s2, both ↓. Gate 1
//! acts on (flying, s1), the flying qubit then travels through the noisy
//! segment, gate 2 acts on (flying, s2), and the flying qubit is traced out.
//! In the noiseless forward-scattering case the result is
//!
//! `ρ = (1 − (P₁+P₂)/2)|↓↓⟩⟨↓↓| + |v⟩⟨v|`, with
//! `|v⟩ = cosθ₁ sinθ₂|↓↑⟩ + e^{iθ₂} sinθ₁|↑↓⟩`,
//!
//! `P₁ = 2cos²θ₁ sin²θ₂` and `P₂ = 2sin²θ₁`. The state is always obtained by
//! simulating the register, never from this formula.

use crate::channels::{self, imperfect_init, NoiseParams};
use crate::error::Result;
use crate::metrics;
use crate::qcore::{gates, DensityMatrix, Spin};
use crate::scattering::{
    forward_unitary, full_scatter_on, herald_transmission, ForwardScatterParams, FullScatterParams,
};

/// Static-qubit indices inside the (flying, s1, s2) register.
const FLYING: usize = 0;
const S1: usize = 1;
const S2: usize = 2;

/// Products of `P₁P₂` below this are treated as separable.
const DEGENERATE: f64 = 1e-20;

/// How one flying/static interaction is modeled.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GateModel {
    /// Reflectionless phase-only scattering.
    Forward(ForwardScatterParams),
    /// Transmission/reflection amplitudes, post-selected on transmission.
    Heralded(FullScatterParams),
}

impl GateModel {
    /// Forward gate with mixing angle `theta` and no global phase.
    pub fn forward(theta: f64) -> Result<Self> {
        Ok(GateModel::Forward(ForwardScatterParams::new(theta, 0.0)?))
    }

    fn theta(&self) -> Option<f64> {
        match self {
            GateModel::Forward(p) => Some(p.theta()),
            GateModel::Heralded(_) => None,
        }
    }
}

/// Known local phase left on the pair: applying `diag(e^{iφ}, 1)` to s1
/// makes the ↑↓/↓↑ coherence real and non-negative.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorrectionTag {
    pub s1_phase: f64,
}

impl CorrectionTag {
    pub fn none() -> Self {
        CorrectionTag { s1_phase: 0.0 }
    }

    /// Reads the correction off the pair's ↑↓/↓↑ coherence.
    pub fn for_state(rho: &DensityMatrix) -> Self {
        let coherence = rho.entry(1, 2);
        if coherence.norm() < 1e-14 {
            return CorrectionTag::none();
        }
        CorrectionTag {
            s1_phase: -coherence.arg(),
        }
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        rho.apply_unitary(&gates::phase_up(self.s1_phase), &[0])
    }
}

/// Mixed entangled state between two static qubits.
#[derive(Clone, Debug)]
pub struct EOResource {
    /// State on (s1, s2).
    pub rho: DensityMatrix,
    /// `2cos²θ₁ sin²θ₂` for forward gates; `2⟨↓↑|ρ|↓↑⟩` of the heralded state otherwise.
    pub p1: f64,
    /// `2sin²θ₁` for forward gates; `2⟨↑↓|ρ|↑↓⟩` of the heralded state otherwise.
    pub p2: f64,
    /// Mixing angle of gate 2 when it is a forward gate.
    pub theta2: Option<f64>,
    /// Probability that every heralded gate transmitted (1 for forward gates).
    pub herald_prob: f64,
    pub correction: CorrectionTag,
    /// `P₁P₂ = 0`: no entanglement and no defined |χ⟩.
    pub separable: bool,
}

impl EOResource {
    /// `ρ` after the recorded phase correction.
    pub fn corrected_rho(&self) -> Result<DensityMatrix> {
        self.correction.apply(&self.rho)
    }

    pub fn concurrence(&self) -> Result<f64> {
        metrics::concurrence(&self.rho)
    }
}

/// `(P₁, P₂)` for forward gates with mixing angles `θ₁`, `θ₂`.
pub fn p_values(theta1: f64, theta2: f64) -> (f64, f64) {
    let c1 = libm::cos(theta1);
    let s1 = libm::sin(theta1);
    let s2 = libm::sin(theta2);
    (2.0 * c1 * c1 * s2 * s2, 2.0 * s1 * s1)
}

/// Resource from forward gates with mixing angles `θ₁`, `θ₂` and `θ′ = 0`.
pub fn generate_resource(theta1: f64, theta2: f64, noise: &NoiseParams) -> Result<EOResource> {
    generate_resource_with(
        &GateModel::forward(theta1)?,
        &GateModel::forward(theta2)?,
        noise,
    )
}

fn apply_gate(
    state: &DensityMatrix,
    gate: &GateModel,
    static_qubit: usize,
) -> Result<(f64, DensityMatrix)> {
    match gate {
        GateModel::Forward(p) => Ok((
            1.0,
            state.apply_unitary(&forward_unitary(p), &[FLYING, static_qubit])?,
        )),
        GateModel::Heralded(p) => {
            let branch = herald_transmission(&full_scatter_on(state, FLYING, static_qubit, p)?)?;
            match branch.state {
                Some(s) => Ok((branch.probability, s)),
                None => Err(crate::Error::ZeroProbability),
            }
        }
    }
}

/// Simulates init → gate 1 → inter-gate noise → gate 2 → trace out the flying qubit.
pub fn generate_resource_with(
    gate1: &GateModel,
    gate2: &GateModel,
    noise: &NoiseParams,
) -> Result<EOResource> {
    noise.validate()?;
    let statics = DensityMatrix::from_spins(&[Spin::Down, Spin::Down])?;
    let register = imperfect_init(noise.eps_init)?.tensor(&statics)?;

    let (h1, mut register) = apply_gate(&register, gate1, S1)?;

    if noise.eps_relax > 0.0 {
        register = register.apply_channel(&channels::relaxation(noise.eps_relax)?, &[FLYING])?;
    }
    if noise.eps_z > 0.0 {
        let dephase = channels::dephasing(noise.eps_z)?;
        register = register.apply_channel(&dephase, &[FLYING])?;
        if noise.dephase_static {
            register = register.apply_channel(&dephase, &[S1])?;
            register = register.apply_channel(&dephase, &[S2])?;
        }
    }

    let (h2, register) = apply_gate(&register, gate2, S2)?;
    let rho = register.partial_trace(&[S1, S2])?;
    Ok(assemble(rho, gate1, gate2, h1 * h2))
}

pub(crate) fn assemble(
    rho: DensityMatrix,
    gate1: &GateModel,
    gate2: &GateModel,
    herald_prob: f64,
) -> EOResource {
    let (p1, p2) = match (gate1.theta(), gate2.theta()) {
        (Some(t1), Some(t2)) => p_values(t1, t2),
        _ => (2.0 * rho.entry(2, 2).re, 2.0 * rho.entry(1, 1).re),
    };
    let correction = CorrectionTag::for_state(&rho);
    EOResource {
        rho,
        p1,
        p2,
        theta2: gate2.theta(),
        herald_prob,
        correction,
        separable: p1 * p2 < DEGENERATE,
    }
}

/// The resource for the zero-interaction case, `|↓↓⟩⟨↓↓|`.
pub fn idle_resource() -> Result<EOResource> {
    let rho = DensityMatrix::from_spins(&[Spin::Down, Spin::Down])?;
    Ok(EOResource {
        rho,
        p1: 0.0,
        p2: 0.0,
        theta2: Some(0.0),
        herald_prob: 1.0,
        correction: CorrectionTag::none(),
        separable: true,
    })
}
