use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("chain length must be even and at least 4, got {0}")]
    InvalidLength(usize),

    #[error("dimerization delta must lie in [0, 1), got {0}")]
    InvalidDelta(f64),

    #[error("end-bond lambda must lie in (0, 1], got {0}")]
    InvalidLambda(f64),

    #[error("energy scale J must be positive and finite, got {0}")]
    InvalidScale(f64),

    #[error("coupling J_{index} must be positive and finite, got {value}")]
    InvalidCoupling { index: usize, value: f64 },

    #[error("expected {expected} couplings for a chain of {length} sites, got {got}")]
    CouplingCount { length: usize, expected: usize, got: usize },

    #[error("temperature must be finite and non-negative, got {0}")]
    InvalidTemperature(f64),

    #[error("correlation |x| = {0} exceeds 1/2")]
    UnphysicalCorrelation(f64),

    #[error("matrix is not a valid input: {0}")]
    InvalidMatrix(String),

    #[error("eigensolver did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("root finding failed: {0}")]
    RootFinding(String),

    #[error("expected {expected} quasimomenta, found {found}")]
    RootCount { expected: usize, found: usize },

    #[error("surface-order fit needs at least 4 points, got {0}")]
    TooFewPoints(usize),

    #[error("residual x_inf - |x_L| is not positive at L = {length} ({residual:e})")]
    NonPositiveResidual { length: usize, residual: f64 },

    #[error("dense oracle supports at most 12 sites, got {0}")]
    OracleTooLarge(usize),

    #[error("density matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("invalid parameter: {0}")]
    Parameter(String),
}

impl Error {
    /// True for failures of the numerics on valid input, false for
    /// rejected input.
    pub fn is_numerical_fault(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. }
                | Error::RootFinding(_)
                | Error::RootCount { .. }
                | Error::NonPositiveResidual { .. }
                | Error::NotPositive(_)
        )
    }
}
