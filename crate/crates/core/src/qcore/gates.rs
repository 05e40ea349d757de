//! Fixed one- and two-qubit gates in the crate basis (↑ = |0⟩, ↓ = |1⟩).

use super::{CMatrix, C64};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn identity(qubits: usize) -> CMatrix {
    let dim = 1 << qubits;
    CMatrix::identity(dim, dim)
}

pub fn pauli_x() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO])
}

pub fn pauli_y() -> CMatrix {
    let i = C64::new(0.0, 1.0);
    CMatrix::from_row_slice(2, 2, &[ZERO, -i, i, ZERO])
}

pub fn pauli_z() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE])
}

pub fn hadamard() -> CMatrix {
    let h = c(core::f64::consts::FRAC_1_SQRT_2);
    CMatrix::from_row_slice(2, 2, &[h, h, h, -h])
}

/// `diag(e^{iφ}, 1)`: a phase on the spin-up component.
pub fn phase_up(phi: f64) -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[C64::from_polar(1.0, phi), ZERO, ZERO, ONE])
}

pub fn swap() -> CMatrix {
    let mut m = CMatrix::zeros(4, 4);
    m[(0, 0)] = ONE;
    m[(1, 2)] = ONE;
    m[(2, 1)] = ONE;
    m[(3, 3)] = ONE;
    m
}

/// Controlled-NOT with the first qubit as control: flips the target when the
/// control is ↓ (bit 1).
pub fn cnot() -> CMatrix {
    let mut m = CMatrix::zeros(4, 4);
    m[(0, 0)] = ONE;
    m[(1, 1)] = ONE;
    m[(2, 3)] = ONE;
    m[(3, 2)] = ONE;
    m
}

/// Total spin-z `Σ σ_z` over an `n`-qubit register, diagonal.
pub fn total_z(n: usize) -> CMatrix {
    let dim = 1usize << n;
    let mut m = CMatrix::zeros(dim, dim);
    for i in 0..dim {
        let downs = i.count_ones() as f64;
        m[(i, i)] = c(n as f64 - 2.0 * downs);
    }
    m
}
