use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix data has {got} entries, expected {rows}x{cols}")]
    BadShape { rows: usize, cols: usize, got: usize },
    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("non-finite {0} produced")]
    NonFiniteResult(&'static str),
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("unsupported qubit count {0} (expected 1..=4)")]
    UnsupportedQubitCount(usize),
    #[error("qubit {qubit} out of range for a {n_qubits}-qubit layout")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },
    #[error("qubit {0} listed twice")]
    DuplicateQubit(usize),
    #[error("partial trace needs a non-empty set of kept qubits")]
    EmptyKeepSet,
    #[error("matrix is not Hermitian (max |h - h†| = {0:e})")]
    NotHermitian(f64),
    #[error("Jacobi eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),
    #[error("{what} is not normalized (norm² = {norm_sq})")]
    NotNormalized { what: &'static str, norm_sq: f64 },
    #[error("parameter {name} = {value} outside [0, 1]")]
    ParameterOutOfRange { name: &'static str, value: f64 },
    #[error("Kraus set is empty or has mismatched element shapes")]
    InvalidKrausSet,
    #[error("trace {0:e} too small to renormalize")]
    ZeroTrace(f64),
    #[error("input is not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),
    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),
    #[error("operator is not a projector (max |P² - P| = {0:e})")]
    InvalidProjector(f64),
    #[error("Charlie outcome {charlie} does not belong to the {kind} protocol")]
    KindMismatch { kind: &'static str, charlie: &'static str },
    #[error("formula {what} has imaginary residue {residue:e}")]
    ImaginaryResidue { what: &'static str, residue: f64 },
    #[error("run-file line {line}: {message}")]
    Runfile { line: usize, message: String },
    #[error("invalid sweep: {0}")]
    InvalidSweep(String),
    #[error("at grid point p={p}, gamma={gamma}: {source}")]
    AtGridPoint {
        p: f64,
        gamma: f64,
        #[source]
        source: Box<Error>,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Coarse classification used to pick a process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Validation,
    Io,
    Numerical,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Io(_) => ErrorClass::Io,
            Error::NoConvergence(_)
            | Error::ZeroTrace(_)
            | Error::NotPositive(_)
            | Error::NonFinite { .. }
            | Error::NonFiniteResult(_)
            | Error::ImaginaryResidue { .. } => ErrorClass::Numerical,
            Error::AtGridPoint { source, .. } => source.class(),
            _ => ErrorClass::Validation,
        }
    }
}
