use thiserror::Error;

/// Errors produced by the simulator, the network builders and the SVI pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuganError {
    #[error("basis index {index} out of range for {num_qubits} qubits")]
    IndexOutOfRange { index: usize, num_qubits: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("width of {0} qubits exceeds the dense simulation cap of {max} qubits", max = crate::statevec::MAX_QUBITS)]
    TooManyQubits(usize),

    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),

    #[error("matrix is not unitary (max deviation {0:e})")]
    NotUnitary(f64),

    #[error("invalid wire assignment: {0}")]
    InvalidWires(String),

    #[error("value {value} outside domain {domain}")]
    OutOfDomain { value: f64, domain: &'static str },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("state is not an eigenvector of the unitary (residual {0:e})")]
    NotEigenstate(f64),

    #[error("{ancillas} ancilla qubits cannot disambiguate signed inner products of {inputs} inputs (need {inputs} < 2^ancillas)")]
    AmbiguousPhase { ancillas: usize, inputs: usize },

    #[error("total variance {0} is not positive")]
    NonPositiveVariance(f64),

    #[error("price {price} outside no-arbitrage bounds ({lower}, {upper})")]
    PriceOutOfBounds { price: f64, lower: f64, upper: f64 },

    #[error("invalid config: {0}")]
    Config(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for QuganError {
    fn from(e: std::io::Error) -> Self {
        QuganError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, QuganError>;
