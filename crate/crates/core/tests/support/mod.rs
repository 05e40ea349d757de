//! Independent oracles and random-input helpers shared by the integration tests.
//!
//! Everything here is written directly against matrices so that it does not
//! reuse the library code paths it is compared with.

#![allow(dead_code)]

use flyspin_core::qcore::{CMatrix, DensityMatrix, C64};

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Ginibre-style random matrix from a flat list of real/imaginary parts.
pub fn ginibre(dim: usize, parts: &[f64]) -> CMatrix {
    assert!(parts.len() >= 2 * dim * dim);
    CMatrix::from_fn(dim, dim, |i, j| {
        let k = 2 * (i * dim + j);
        c(parts[k], parts[k + 1])
    })
}

/// `G G† / tr(G G†)`, full rank almost surely.
pub fn random_density(n: usize, parts: &[f64]) -> DensityMatrix {
    let dim = 1 << n;
    let g = ginibre(dim, parts);
    let mut m = &g * g.adjoint();
    // Keep a floor so an all-zero draw still yields a state.
    m += CMatrix::identity(dim, dim) * c(1e-3, 0.0);
    let tr = m.trace();
    m /= tr;
    let m = (&m + m.adjoint()) * c(0.5, 0.0);
    DensityMatrix::new(m).expect("random density matrix")
}

/// Unitary from the QR factor of a random matrix, with the phase of R's
/// diagonal removed.
pub fn random_unitary(dim: usize, parts: &[f64]) -> CMatrix {
    let g = ginibre(dim, parts) + CMatrix::identity(dim, dim) * c(1e-3, 0.0);
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            c(1.0, 0.0)
        };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    q
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn hermiticity(m: &CMatrix) -> f64 {
    max_abs_diff(m, &m.adjoint())
}

/// Two-qubit resource state written out by hand from the three-term
/// scattered state: populations on |↓↓⟩ plus the coherent single-excitation
/// part `cosθ₁ sinθ₂|↓↑⟩ + e^{iθ₂} sinθ₁|↑↓⟩`. Basis order ↑↑, ↑↓, ↓↑, ↓↓.
pub fn resource_closed_form(theta1: f64, theta2: f64) -> CMatrix {
    let p1 = 2.0 * theta1.cos().powi(2) * theta2.sin().powi(2);
    let p2 = 2.0 * theta1.sin().powi(2);
    let mut v = CMatrix::zeros(4, 1);
    v[(1, 0)] = C64::from_polar(1.0, theta2) * theta1.sin();
    v[(2, 0)] = c(theta1.cos() * theta2.sin(), 0.0);
    let mut rho = &v * v.adjoint();
    rho[(3, 3)] += c(1.0 - (p1 + p2) / 2.0, 0.0);
    rho
}

/// The resource as written with unsigned amplitudes `√(P/2)` and relative
/// phase `i·e^{iθ₂}` on the |↑↓⟩ term.
pub fn resource_unsigned_form(theta1: f64, theta2: f64) -> CMatrix {
    let p1 = 2.0 * theta1.cos().powi(2) * theta2.sin().powi(2);
    let p2 = 2.0 * theta1.sin().powi(2);
    let mut v = CMatrix::zeros(4, 1);
    v[(1, 0)] = c(0.0, 1.0) * C64::from_polar(1.0, theta2) * (p2 / 2.0).sqrt();
    v[(2, 0)] = c((p1 / 2.0).sqrt(), 0.0);
    let mut rho = &v * v.adjoint();
    rho[(3, 3)] += c(1.0 - (p1 + p2) / 2.0, 0.0);
    rho
}

fn psi(sign: f64) -> CMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut v = CMatrix::zeros(4, 1);
    v[(1, 0)] = c(h, 0.0);
    v[(2, 0)] = c(sign * h, 0.0);
    &v * v.adjoint()
}

/// `F ψ⁺ + (1−F) ψ⁻`.
pub fn psi_mixture(f: f64) -> CMatrix {
    psi(1.0) * c(f, 0.0) + psi(-1.0) * c(1.0 - f, 0.0)
}

fn kron_all(ops: &[&CMatrix]) -> CMatrix {
    ops.iter()
        .skip(1)
        .fold(ops[0].clone(), |acc, m| acc.kronecker(m))
}

fn cnot_4q(control: usize, target: usize) -> CMatrix {
    let mut u = CMatrix::zeros(16, 16);
    for i in 0..16 {
        let cbit = (i >> (3 - control)) & 1;
        let j = if cbit == 1 {
            i ^ (1 << (3 - target))
        } else {
            i
        };
        u[(j, i)] = c(1.0, 0.0);
    }
    u
}

/// One pumping round realized on four qubits (A_s, B_s, A_f, B_f): stored
/// pair `F`, fresh pair `f`, bilateral CNOT from the fresh pair onto the
/// stored pair, X-basis readout of both fresh qubits, and X on B_s to return
/// the stored pair to the ψ± family. Returns
/// `(p_even, F_even, p_odd, F_odd)` with fidelities to ψ⁺.
pub fn pump_oracle(stored: f64, fresh: f64) -> (f64, f64, f64, f64) {
    let rho = psi_mixture(stored).kronecker(&psi_mixture(fresh));
    let bcnot = cnot_4q(3, 1) * cnot_4q(2, 0);
    let rho = &bcnot * rho * bcnot.adjoint();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let had = CMatrix::from_row_slice(2, 2, &[c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0)]);
    let id = CMatrix::identity(2, 2);
    let x = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
    let hh = kron_all(&[&id, &id, &had, &had]);
    let rho = &hh * rho * hh.adjoint();
    let fix = kron_all(&[&id, &x]);
    let target = psi(1.0);

    let mut out = [(0.0, 0.0); 2];
    for (slot, parity) in [(0usize, 0usize), (1, 1)] {
        // Keep fresh-pair outcomes (b2, b3) with b2 ⊕ b3 = parity.
        let mut reduced = CMatrix::zeros(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = c(0.0, 0.0);
                for m in 0..4usize {
                    if ((m >> 1) ^ (m & 1)) == parity {
                        acc += rho[((i << 2) | m, (j << 2) | m)];
                    }
                }
                reduced[(i, j)] = acc;
            }
        }
        let p = reduced.trace().re;
        let state = &fix * (reduced / c(p, 0.0)) * fix.adjoint();
        let fid = (target.adjoint() * &state).trace().re;
        out[slot] = (p, fid);
    }
    (out[0].0, out[0].1, out[1].0, out[1].1)
}
