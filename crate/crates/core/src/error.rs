use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomials belong to different ring contexts")]
    ContextMismatch,
    #[error("variable index {index} out of range (ring has {num_vars} variables)")]
    IndexOutOfRange { index: usize, num_vars: usize },
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("no weights configured for this ring")]
    NoWeights,
    #[error("invalid singularity input: {0}")]
    InvalidInput(String),
    #[error("input is not quasihomogeneous for the configured weights")]
    NotQuasihomogeneous,
    #[error("input is not a hypersurface (k = {0})")]
    NotHypersurface(usize),
    #[error("jet order {jet_order} is insufficient: {what} did not stabilize; rerun with --jet {suggested} or larger")]
    InsufficientJet { what: String, jet_order: u32, suggested: u32 },
    #[error("quotient basis is not stabilized; normal forms are not unique")]
    Unstabilized,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("undeclared variable `{name}` at line {line}, column {column}")]
    UndeclaredVariable { name: String, line: usize, column: usize },
    #[error("negative exponent at line {line}, column {column}")]
    NegativeExponent { line: usize, column: usize },
    #[error("{equations} equations exceed {variables} variables")]
    TooManyEquations { equations: usize, variables: usize },
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Name of the module an error originates from, used for CLI provenance.
    pub fn module(&self) -> &'static str {
        match self {
            Error::ContextMismatch | Error::IndexOutOfRange { .. } | Error::InvalidRing(_) | Error::NoWeights => {
                "ring_core"
            }
            Error::Unstabilized => "jet_linalg",
            Error::InvalidInput(_)
            | Error::NotQuasihomogeneous
            | Error::NotHypersurface(_)
            | Error::InsufficientJet { .. } => "cotangent",
            Error::Precondition(_) | Error::Internal(_) => "modular_stratum",
            Error::Parse { .. }
            | Error::UndeclaredVariable { .. }
            | Error::NegativeExponent { .. }
            | Error::TooManyEquations { .. } => "cli_io",
        }
    }
}
