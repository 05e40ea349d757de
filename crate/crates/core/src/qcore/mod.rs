//! Dense state-vector and density-matrix substrate for registers of up to
//! [`MAX_QUBITS`] qubits.
//!
//! Basis ordering is fixed crate-wide: qubit 0 is the most significant bit of
//! a basis index, spin up is bit 0 and spin down is bit 1. For two qubits the
//! basis therefore runs |↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩.
//!
//! Every value is immutable; operations return new states.

pub mod gates;

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Largest register the engine will build.
pub const MAX_QUBITS: usize = 6;
/// Tolerance for checks on caller-supplied operators and states.
pub const EXACT_TOL: f64 = 1e-12;
/// Tolerance for Hermiticity and trace of states produced by operations.
pub const STATE_TOL: f64 = 1e-10;
/// Smallest eigenvalue a density matrix may have.
pub const POSITIVITY_TOL: f64 = 1e-10;
/// Branches with Born probability at or below this are reported as absent.
pub const ZERO_PROB: f64 = 1e-14;

/// A spin-1/2 basis label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    /// Basis bit for this label (↑ = 0, ↓ = 1).
    pub fn bit(self) -> usize {
        match self {
            Spin::Up => 0,
            Spin::Down => 1,
        }
    }

    /// Spin-z eigenvalue in units of ħ/2.
    pub fn sign(self) -> f64 {
        match self {
            Spin::Up => 1.0,
            Spin::Down => -1.0,
        }
    }
}

fn check_qubits(n: usize) -> Result<usize> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::QubitCount(n));
    }
    Ok(1 << n)
}

fn qubits_for_dim(dim: usize) -> Result<usize> {
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::Dimension {
            expected: 2,
            found: dim,
        });
    }
    let n = dim.trailing_zeros() as usize;
    check_qubits(n)?;
    Ok(n)
}

fn check_targets(targets: &[usize], n: usize) -> Result<()> {
    if targets.is_empty() || targets.len() > n {
        return Err(Error::InvalidTargets);
    }
    for (i, &q) in targets.iter().enumerate() {
        if q >= n || targets[..i].contains(&q) {
            return Err(Error::InvalidTargets);
        }
    }
    Ok(())
}

#[inline]
fn bit_of(index: usize, qubit: usize, n: usize) -> usize {
    (index >> (n - 1 - qubit)) & 1
}

/// Gathers the bits of `index` at `qubits` into a sub-index, `qubits[0]` most significant.
fn gather(index: usize, qubits: &[usize], n: usize) -> usize {
    qubits
        .iter()
        .fold(0, |acc, &q| (acc << 1) | bit_of(index, q, n))
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest entrywise distance between two equally sized matrices.
pub fn max_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// `max |U†U − I|`.
pub fn unitarity_residual(u: &CMatrix) -> f64 {
    if !u.is_square() {
        return f64::INFINITY;
    }
    let prod = u.adjoint() * u;
    max_distance(&prod, &CMatrix::identity(u.nrows(), u.ncols()))
}

fn hermiticity_residual(m: &CMatrix) -> f64 {
    max_distance(m, &m.adjoint())
}

/// Lifts a `k`-qubit operator acting on `targets` into the full `n`-qubit space.
///
/// `targets[0]` corresponds to the most significant qubit of the operator. No
/// unitarity check is made, so this also embeds Kraus operators and projectors.
pub fn embed_operator(op: &CMatrix, targets: &[usize], n: usize) -> Result<CMatrix> {
    let dim = check_qubits(n)?;
    check_targets(targets, n)?;
    let k = targets.len();
    if op.nrows() != 1 << k || op.ncols() != 1 << k {
        return Err(Error::Dimension {
            expected: 1 << k,
            found: op.nrows(),
        });
    }
    let mask = targets.iter().fold(0usize, |m, &q| m | (1 << (n - 1 - q)));
    let mut out = CMatrix::zeros(dim, dim);
    for i in 0..dim {
        let si = gather(i, targets, n);
        for j in 0..dim {
            if (i & !mask) == (j & !mask) {
                out[(i, j)] = op[(si, gather(j, targets, n))];
            }
        }
    }
    Ok(out)
}

/// Lifts a unitary on `targets` to the full register, identity elsewhere.
pub fn embed_unitary(u: &CMatrix, targets: &[usize], n: usize) -> Result<CMatrix> {
    let residual = unitarity_residual(u);
    if residual > EXACT_TOL {
        return Err(Error::NotUnitary(residual));
    }
    embed_operator(u, targets, n)
}

/// A normalized state vector.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    n: usize,
    amps: CVector,
}

impl PureState {
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        let n = qubits_for_dim(amplitudes.len())?;
        let amps = CVector::from_vec(amplitudes);
        let norm = amps.norm_squared();
        if (norm - 1.0).abs() > EXACT_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(PureState { n, amps })
    }

    /// Normalizes `amplitudes` before validating.
    pub fn normalized(amplitudes: Vec<C64>) -> Result<Self> {
        let norm = libm::sqrt(amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>());
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized(norm * norm));
        }
        PureState::new(amplitudes.into_iter().map(|z| z / norm).collect())
    }

    /// Computational basis state with the given index.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        let dim = check_qubits(n)?;
        if index >= dim {
            return Err(Error::Dimension {
                expected: dim,
                found: index,
            });
        }
        let mut amps = CVector::zeros(dim);
        amps[index] = C64::new(1.0, 0.0);
        Ok(PureState { n, amps })
    }

    /// Product of spin eigenstates, e.g. `[Up, Down, Down]` for |↑↓↓⟩.
    pub fn from_spins(spins: &[Spin]) -> Result<Self> {
        let index = spins.iter().fold(0, |acc, s| (acc << 1) | s.bit());
        PureState::basis(spins.len(), index)
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amps
    }

    pub fn tensor(&self, other: &PureState) -> Result<Self> {
        check_qubits(self.n + other.n)?;
        Ok(PureState {
            n: self.n + other.n,
            amps: self.amps.kronecker(&other.amps),
        })
    }

    pub fn apply_unitary(&self, u: &CMatrix, targets: &[usize]) -> Result<Self> {
        let full = embed_unitary(u, targets, self.n)?;
        Ok(PureState {
            n: self.n,
            amps: full * &self.amps,
        })
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &PureState) -> Result<C64> {
        if self.n != other.n {
            return Err(Error::Dimension {
                expected: 1 << self.n,
                found: 1 << other.n,
            });
        }
        Ok(self.amps.dotc(&other.amps))
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix {
            n: self.n,
            m: &self.amps * self.amps.adjoint(),
        }
    }
}

/// Outcome of one projector in a measurement.
#[derive(Clone, Debug)]
pub struct Branch {
    pub probability: f64,
    /// Renormalized post-measurement state; `None` when the branch has zero probability.
    pub state: Option<DensityMatrix>,
}

/// A trace-one positive Hermitian operator on an `n`-qubit register.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    n: usize,
    m: CMatrix,
}

impl DensityMatrix {
    /// Validates a caller-supplied matrix at [`EXACT_TOL`].
    pub fn new(m: CMatrix) -> Result<Self> {
        Self::validated(m, EXACT_TOL)
    }

    fn validated(m: CMatrix, tol: f64) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Dimension {
                expected: m.nrows(),
                found: m.ncols(),
            });
        }
        let n = qubits_for_dim(m.nrows())?;
        let herm = hermiticity_residual(&m);
        if herm > tol {
            return Err(Error::NotHermitian(herm));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > tol || tr.im.abs() > tol {
            return Err(Error::Trace(tr.re));
        }
        let state = DensityMatrix { n, m };
        let min = state.min_eigenvalue();
        if min < -POSITIVITY_TOL {
            return Err(Error::NotPositive(min));
        }
        Ok(state)
    }

    /// Result of an internal operation, checked at [`STATE_TOL`].
    pub(crate) fn from_op(m: CMatrix) -> Result<Self> {
        Self::validated(m, STATE_TOL)
    }

    pub fn basis(n: usize, index: usize) -> Result<Self> {
        Ok(PureState::basis(n, index)?.to_density())
    }

    pub fn from_spins(spins: &[Spin]) -> Result<Self> {
        Ok(PureState::from_spins(spins)?.to_density())
    }

    pub fn maximally_mixed(n: usize) -> Result<Self> {
        let dim = check_qubits(n)?;
        Ok(DensityMatrix {
            n,
            m: CMatrix::identity(dim, dim) / C64::new(dim as f64, 0.0),
        })
    }

    /// Diagonal state from basis populations.
    pub fn diagonal(populations: &[f64]) -> Result<Self> {
        let diag = CVector::from_iterator(
            populations.len(),
            populations.iter().map(|&p| C64::new(p, 0.0)),
        );
        Self::new(CMatrix::from_diagonal(&diag))
    }

    /// Convex combination `Σ wᵢ ρᵢ` of states on the same register.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let first = parts.first().ok_or(Error::Config("empty mixture"))?.1;
        let mut acc = CMatrix::zeros(first.dim(), first.dim());
        for (w, rho) in parts {
            if rho.n != first.n {
                return Err(Error::Dimension {
                    expected: first.dim(),
                    found: rho.dim(),
                });
            }
            acc += rho.m.map(|z| z * *w);
        }
        Self::new(acc)
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.m[(row, col)]
    }

    pub fn trace(&self) -> C64 {
        self.m.trace()
    }

    pub fn purity(&self) -> f64 {
        (&self.m * &self.m).trace().re
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self
            .m
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.m
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    /// `Tr(ρ·op)` for a full-register operator.
    pub fn expectation(&self, op: &CMatrix) -> Result<C64> {
        if op.nrows() != self.dim() || op.ncols() != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                found: op.nrows(),
            });
        }
        Ok((&self.m * op).trace())
    }

    /// `⟨ψ|ρ|ψ⟩`.
    pub fn fidelity_pure(&self, psi: &PureState) -> Result<f64> {
        if psi.n != self.n {
            return Err(Error::Dimension {
                expected: self.dim(),
                found: 1 << psi.n,
            });
        }
        Ok(psi.amps.dotc(&(&self.m * &psi.amps)).re)
    }

    /// Largest entrywise distance to another state on the same register.
    pub fn distance(&self, other: &DensityMatrix) -> f64 {
        if self.n != other.n {
            return f64::INFINITY;
        }
        max_distance(&self.m, &other.m)
    }

    pub fn tensor(&self, other: &DensityMatrix) -> Result<Self> {
        check_qubits(self.n + other.n)?;
        Ok(DensityMatrix {
            n: self.n + other.n,
            m: self.m.kronecker(&other.m),
        })
    }

    /// `ρ → UρU†` with `u` acting on `targets`.
    pub fn apply_unitary(&self, u: &CMatrix, targets: &[usize]) -> Result<Self> {
        let full = embed_unitary(u, targets, self.n)?;
        Self::from_op(&full * &self.m * full.adjoint())
    }

    /// `ρ → Σ KρK†` with each Kraus operator acting on `targets`.
    pub fn apply_channel(&self, ch: &KrausChannel, targets: &[usize]) -> Result<Self> {
        if targets.len() != ch.arity {
            return Err(Error::InvalidTargets);
        }
        let mut acc = CMatrix::zeros(self.dim(), self.dim());
        for k in &ch.ops {
            let full = embed_operator(k, targets, self.n)?;
            acc += &full * &self.m * full.adjoint();
        }
        Self::from_op(acc)
    }

    /// Reduced state on `keep`, in the order given.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::EmptyKeep);
        }
        check_targets(keep, self.n)?;
        let n = self.n;
        let traced: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
        let k = keep.len();
        let place = |sub: usize, qubits: &[usize]| -> usize {
            let len = qubits.len();
            qubits.iter().enumerate().fold(0usize, |acc, (pos, &q)| {
                acc | (((sub >> (len - 1 - pos)) & 1) << (n - 1 - q))
            })
        };
        let kd = 1 << k;
        let td = 1 << traced.len();
        let mut out = CMatrix::zeros(kd, kd);
        for a in 0..kd {
            let ia = place(a, keep);
            for b in 0..kd {
                let ib = place(b, keep);
                let mut sum = C64::new(0.0, 0.0);
                for t in 0..td {
                    let it = place(t, &traced);
                    sum += self.m[(ia | it, ib | it)];
                }
                out[(a, b)] = sum;
            }
        }
        Self::from_op(out)
    }

    /// Unnormalized projection `PρP` and its Born weight.
    fn project(&self, p: &CMatrix) -> Branch {
        let projected = p * &self.m * p;
        let probability = projected.trace().re.max(0.0);
        let state = if probability > ZERO_PROB {
            Self::from_op(projected / C64::new(probability, 0.0)).ok()
        } else {
            None
        };
        Branch { probability, state }
    }

    /// Born-rule measurement against a complete set of full-register projectors.
    pub fn measure(&self, projectors: &[Projector]) -> Result<Vec<Branch>> {
        let mut sum = CMatrix::zeros(self.dim(), self.dim());
        for p in projectors {
            if p.m.nrows() != self.dim() {
                return Err(Error::Dimension {
                    expected: self.dim(),
                    found: p.m.nrows(),
                });
            }
            sum += &p.m;
        }
        let residual = max_distance(&sum, &CMatrix::identity(self.dim(), self.dim()));
        if residual > EXACT_TOL {
            return Err(Error::IncompleteProjectors(residual));
        }
        Ok(projectors.iter().map(|p| self.project(&p.m)).collect())
    }

    /// Computational-basis measurement of `targets`; branch `i` has outcome
    /// bits `i` with `targets[0]` most significant.
    pub fn measure_qubits(&self, targets: &[usize]) -> Result<Vec<Branch>> {
        let projectors = Projector::computational(targets, self.n)?;
        self.measure(&projectors)
    }

    /// Applies a (not necessarily trace-preserving) operator on `targets` and
    /// renormalizes, returning the Born weight. Used for heralded filters.
    pub fn filter(&self, op: &CMatrix, targets: &[usize]) -> Result<Branch> {
        let full = embed_operator(op, targets, self.n)?;
        let out = &full * &self.m * full.adjoint();
        let probability = out.trace().re.max(0.0);
        let state = if probability > ZERO_PROB {
            Some(Self::from_op(out / C64::new(probability, 0.0))?)
        } else {
            None
        };
        Ok(Branch { probability, state })
    }
}

/// A trace-preserving set of Kraus operators on `arity` qubits.
#[derive(Clone, Debug)]
pub struct KrausChannel {
    ops: Vec<CMatrix>,
    arity: usize,
}

impl KrausChannel {
    pub fn new(ops: Vec<CMatrix>) -> Result<Self> {
        let first = ops.first().ok_or(Error::IncompleteKraus(1.0))?;
        let dim = first.nrows();
        let arity = qubits_for_dim(dim)?;
        let mut sum = CMatrix::zeros(dim, dim);
        for k in &ops {
            if k.nrows() != dim || k.ncols() != dim {
                return Err(Error::Dimension {
                    expected: dim,
                    found: k.nrows(),
                });
            }
            sum += k.adjoint() * k;
        }
        let residual = max_distance(&sum, &CMatrix::identity(dim, dim));
        if residual > EXACT_TOL {
            return Err(Error::IncompleteKraus(residual));
        }
        Ok(KrausChannel { ops, arity })
    }

    pub fn identity(arity: usize) -> Result<Self> {
        let dim = check_qubits(arity)?;
        KrausChannel::new(alloc::vec![CMatrix::identity(dim, dim)])
    }

    pub fn ops(&self) -> &[CMatrix] {
        &self.ops
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Channel that applies `self` and then `next` to the same qubits.
    pub fn then(&self, next: &KrausChannel) -> Result<Self> {
        if self.arity != next.arity {
            return Err(Error::InvalidTargets);
        }
        let ops = next
            .ops
            .iter()
            .flat_map(|b| self.ops.iter().map(move |a| b * a))
            .collect();
        KrausChannel::new(ops)
    }
}

/// An orthogonal projector.
#[derive(Clone, Debug)]
pub struct Projector {
    m: CMatrix,
}

impl Projector {
    pub fn new(m: CMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotProjector(f64::INFINITY));
        }
        let herm = hermiticity_residual(&m);
        let idem = max_distance(&(&m * &m), &m);
        let residual = herm.max(idem);
        if residual > EXACT_TOL {
            return Err(Error::NotProjector(residual));
        }
        Ok(Projector { m })
    }

    pub fn from_pure(psi: &PureState) -> Self {
        Projector {
            m: &psi.amps * psi.amps.adjoint(),
        }
    }

    /// `I − P`.
    pub fn complement(&self) -> Self {
        let dim = self.m.nrows();
        Projector {
            m: CMatrix::identity(dim, dim) - &self.m,
        }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    /// Lifts a projector on `targets` to an `n`-qubit register.
    pub fn embed(&self, targets: &[usize], n: usize) -> Result<Self> {
        Ok(Projector {
            m: embed_operator(&self.m, targets, n)?,
        })
    }

    /// The `2^k` computational-basis projectors on `targets`.
    pub fn computational(targets: &[usize], n: usize) -> Result<Vec<Self>> {
        check_qubits(n)?;
        check_targets(targets, n)?;
        let k = targets.len();
        (0..1usize << k)
            .map(|outcome| {
                let mut local = CMatrix::zeros(1 << k, 1 << k);
                local[(outcome, outcome)] = C64::new(1.0, 0.0);
                Ok(Projector {
                    m: embed_operator(&local, targets, n)?,
                })
            })
            .collect()
    }
}
