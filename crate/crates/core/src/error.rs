use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dense realization needs {n} sites but the cap is {cap}")]
    SizeCap { n: usize, cap: usize },
    #[error("site {site} lies outside the chain {first}..={last}")]
    SiteOutOfChain { site: i32, first: i32, last: i32 },
    #[error("cannot parse Pauli string {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("operator is not Hermitian (defect {defect:.3e})")]
    NotHermitian { defect: f64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operator does not conserve total magnetization")]
    NotConserving,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("propagator did not converge after {steps} steps (last refinement deltas {prev:.3e}, {last:.3e})")]
    Convergence { steps: usize, prev: f64, last: f64 },
    #[error("realization {index}: {source}")]
    Realization { index: usize, source: Box<Error> },
    #[error("fit failed: {0}")]
    Fit(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
