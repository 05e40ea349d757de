//! Two-spin scattering gates between a flying and a static electron.
//!
//! The Coulomb interaction is spin independent, so the singlet |S⟩ and the
//! triplets scatter with their own amplitudes. In the forward-scattering
//! limit each sector only picks up a phase; in general the flying electron
//! leaves in a superposition of transmitted and reflected waves, carried here
//! by an appended direction qubit (transmitted = bit 0, reflected = bit 1).

use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, TAU};

use crate::error::{Error, Result};
use crate::qcore::{Branch, CMatrix, DensityMatrix, C64, EXACT_TOL};

fn reduce_angle(x: f64) -> f64 {
    let r = libm::fmod(x, TAU);
    if r < 0.0 {
        r + TAU
    } else {
        r
    }
}

/// Phase pair of the forward-scattering gate: `θ = (θ_T − θ_S)/2` and
/// `θ′ = (θ_T + θ_S)/2`, stored reduced into `[0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ForwardScatterParams {
    theta: f64,
    theta_prime: f64,
}

impl ForwardScatterParams {
    pub fn new(theta: f64, theta_prime: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::NonFinite("theta"));
        }
        if !theta_prime.is_finite() {
            return Err(Error::NonFinite("theta_prime"));
        }
        Ok(ForwardScatterParams {
            theta: reduce_angle(theta),
            theta_prime: reduce_angle(theta_prime),
        })
    }

    /// From the singlet and triplet transmission phases.
    pub fn from_phases(theta_singlet: f64, theta_triplet: f64) -> Result<Self> {
        Self::new(
            (theta_triplet - theta_singlet) / 2.0,
            (theta_triplet + theta_singlet) / 2.0,
        )
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn theta_prime(&self) -> f64 {
        self.theta_prime
    }

    pub fn theta_singlet(&self) -> f64 {
        self.theta_prime - self.theta
    }

    pub fn theta_triplet(&self) -> f64 {
        self.theta_prime + self.theta
    }
}

/// Named gate settings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GatePreset {
    /// θ = π/4: entangles an anti-parallel pair into (|↑↓⟩ + i|↓↑⟩)/√2.
    BellGate,
    /// θ = π/2: exchanges anti-parallel spins up to phases.
    SwapGate,
}

impl GatePreset {
    pub fn theta(self) -> f64 {
        match self {
            GatePreset::BellGate => FRAC_PI_4,
            GatePreset::SwapGate => FRAC_PI_2,
        }
    }

    /// Preset with `θ′ = 0`.
    pub fn params(self) -> ForwardScatterParams {
        ForwardScatterParams {
            theta: self.theta(),
            theta_prime: 0.0,
        }
    }

    pub fn with_phase(self, theta_prime: f64) -> Result<ForwardScatterParams> {
        ForwardScatterParams::new(self.theta(), theta_prime)
    }
}

/// The 4×4 forward-scattering unitary on (flying, static).
///
/// Parallel spins acquire `e^{i(θ+θ′)}`; anti-parallel spins mix as
/// `U|↑↓⟩ = e^{iθ′}(cosθ|↑↓⟩ + i sinθ|↓↑⟩)`.
pub fn forward_unitary(p: &ForwardScatterParams) -> CMatrix {
    let parallel = C64::from_polar(1.0, p.theta + p.theta_prime);
    let global = C64::from_polar(1.0, p.theta_prime);
    let cos = global * libm::cos(p.theta);
    let isin = global * C64::new(0.0, libm::sin(p.theta));
    let mut u = CMatrix::zeros(4, 4);
    u[(0, 0)] = parallel;
    u[(1, 1)] = cos;
    u[(2, 1)] = isin;
    u[(1, 2)] = isin;
    u[(2, 2)] = cos;
    u[(3, 3)] = parallel;
    u
}

/// Transmission and reflection amplitudes for the singlet and triplet sectors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FullScatterParams {
    pub t_s: C64,
    pub r_s: C64,
    pub t_t: C64,
    pub r_t: C64,
}

impl FullScatterParams {
    pub fn new(t_s: C64, r_s: C64, t_t: C64, r_t: C64) -> Result<Self> {
        let p = FullScatterParams { t_s, r_s, t_t, r_t };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if (self.t_s.norm_sqr() + self.r_s.norm_sqr() - 1.0).abs() > EXACT_TOL {
            return Err(Error::Amplitudes("singlet"));
        }
        if (self.t_t.norm_sqr() + self.r_t.norm_sqr() - 1.0).abs() > EXACT_TOL {
            return Err(Error::Amplitudes("triplet"));
        }
        Ok(())
    }

    /// Singlet fully transmitted, triplet fully reflected.
    pub fn singlet_resonance() -> Self {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        FullScatterParams {
            t_s: one,
            r_s: zero,
            t_t: zero,
            r_t: one,
        }
    }

    /// Reflectionless amplitudes `t_S = e^{iθ_S}`, `t_T = e^{iθ_T}`.
    pub fn from_forward(p: &ForwardScatterParams) -> Self {
        let zero = C64::new(0.0, 0.0);
        FullScatterParams {
            t_s: C64::from_polar(1.0, p.theta_singlet()),
            r_s: zero,
            t_t: C64::from_polar(1.0, p.theta_triplet()),
            r_t: zero,
        }
    }
}

/// `|S⟩⟨S|` on two spins.
pub fn singlet_projector() -> CMatrix {
    let h = C64::new(0.5, 0.0);
    let mut m = CMatrix::zeros(4, 4);
    m[(1, 1)] = h;
    m[(2, 2)] = h;
    m[(1, 2)] = -h;
    m[(2, 1)] = -h;
    m
}

/// Unitary on (flying, static, direction) taking `|x⟩|t⟩` to
/// `A_t|x⟩|t⟩ + A_r|x⟩|r⟩`, with `A_t = t_T Π_T + t_S Π_S` and likewise `A_r`.
pub fn scatter_unitary(p: &FullScatterParams) -> Result<CMatrix> {
    p.validate()?;
    let sector = |t: C64, r: C64| CMatrix::from_row_slice(2, 2, &[t, -r.conj(), r, t.conj()]);
    let ps = singlet_projector();
    let pt = CMatrix::identity(4, 4) - &ps;
    Ok(pt.kronecker(&sector(p.t_t, p.r_t)) + ps.kronecker(&sector(p.t_s, p.r_s)))
}

/// Scatters `flying` off `static_qubit` inside a larger register and appends
/// the direction qubit as the new last qubit.
pub fn full_scatter_on(
    state: &DensityMatrix,
    flying: usize,
    static_qubit: usize,
    p: &FullScatterParams,
) -> Result<DensityMatrix> {
    let w = scatter_unitary(p)?;
    let with_mode = state.tensor(&DensityMatrix::basis(1, 0)?)?;
    let mode = state.n_qubits();
    with_mode.apply_unitary(&w, &[flying, static_qubit, mode])
}

/// Scatters a (flying, static) pair; the result lives on (flying, static, direction).
pub fn full_scatter(spin_state: &DensityMatrix, p: &FullScatterParams) -> Result<DensityMatrix> {
    if spin_state.n_qubits() != 2 {
        return Err(Error::Dimension {
            expected: 4,
            found: spin_state.dim(),
        });
    }
    full_scatter_on(spin_state, 0, 1, p)
}

/// Post-selects transmission of the flying electron by charge detection:
/// projects the last (direction) qubit onto "transmitted" and traces it out.
pub fn herald_transmission(state: &DensityMatrix) -> Result<Branch> {
    let n = state.n_qubits();
    if n < 2 {
        return Err(Error::QubitCount(n));
    }
    let mut transmitted = CMatrix::zeros(2, 2);
    transmitted[(0, 0)] = C64::new(1.0, 0.0);
    let branch = state.filter(&transmitted, &[n - 1])?;
    let keep: alloc::vec::Vec<usize> = (0..n - 1).collect();
    let state = match branch.state {
        Some(s) => Some(s.partial_trace(&keep)?),
        None => None,
    };
    Ok(Branch {
        probability: branch.probability,
        state,
    })
}
