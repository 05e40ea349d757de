use core::fmt;

/// Errors raised by the simulation engine.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Register size outside `1..=MAX_QUBITS`.
    QubitCount(usize),
    /// Matrix or vector has the wrong dimension for the register.
    Dimension { expected: usize, found: usize },
    /// Target list has duplicates, out-of-range indices, or the wrong arity.
    InvalidTargets,
    /// Keep set passed to a partial trace was empty.
    EmptyKeep,
    /// Operator failed the unitarity check; payload is `max |U†U - I|`.
    NotUnitary(f64),
    /// Matrix failed the Hermiticity check; payload is `max |A - A†|`.
    NotHermitian(f64),
    /// State trace deviates from one; payload is the trace.
    Trace(f64),
    /// Most negative eigenvalue lies below tolerance.
    NotPositive(f64),
    /// Pure state is not normalized; payload is the squared norm.
    NotNormalized(f64),
    /// Kraus set is not trace preserving; payload is `max |ΣK†K - I|`.
    IncompleteKraus(f64),
    /// Matrix is not an orthogonal projector; payload is the residual.
    NotProjector(f64),
    /// Projectors do not sum to identity; payload is the residual.
    IncompleteProjectors(f64),
    /// Transmission/reflection amplitudes are not normalized.
    Amplitudes(&'static str),
    /// A probability-valued parameter lies outside `[0, 1]`.
    Probability { name: &'static str, value: f64 },
    /// A parameter was not a finite number.
    NonFinite(&'static str),
    /// A conditional branch was requested that occurs with probability zero.
    ZeroProbability,
    /// Invalid protocol configuration.
    Config(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::QubitCount(n) => write!(f, "register of {n} qubits is outside 1..=6"),
            Error::Dimension { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::InvalidTargets => f.write_str("target qubits must be distinct and in range"),
            Error::EmptyKeep => f.write_str("partial trace needs at least one kept qubit"),
            Error::NotUnitary(r) => write!(f, "operator is not unitary (residual {r:e})"),
            Error::NotHermitian(r) => write!(f, "matrix is not Hermitian (residual {r:e})"),
            Error::Trace(t) => write!(f, "state trace is {t}, expected 1"),
            Error::NotPositive(e) => write!(f, "state has eigenvalue {e:e} below tolerance"),
            Error::NotNormalized(n) => write!(f, "pure state has squared norm {n}"),
            Error::IncompleteKraus(r) => {
                write!(f, "Kraus operators are incomplete (residual {r:e})")
            }
            Error::NotProjector(r) => write!(f, "matrix is not a projector (residual {r:e})"),
            Error::IncompleteProjectors(r) => {
                write!(f, "projectors do not sum to identity (residual {r:e})")
            }
            Error::Amplitudes(which) => write!(f, "{which} amplitudes are not normalized"),
            Error::Probability { name, value } => write!(f, "{name} = {value} is outside [0, 1]"),
            Error::NonFinite(name) => write!(f, "{name} is not finite"),
            Error::ZeroProbability => f.write_str("branch has zero probability"),
            Error::Config(msg) => f.write_str(msg),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
