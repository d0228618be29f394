use thiserror::Error;

/// Errors shared across the workspace.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("ground-set width cap exceeded: requested {requested}, cap {cap}")]
    WidthCapExceeded { requested: usize, cap: usize },

    #[error("no root: weight at p = 1 is below 1")]
    NoRoot,

    #[error("comparison indeterminate at maximum precision ({0} bits)")]
    IndeterminateAtPrecision(u32),

    #[error("witness search inconclusive: {0}")]
    WitnessSearchInconclusive(String),

    #[error("materialization too large: {0}")]
    MaterializationTooLarge(String),

    #[error("empty family: {0}")]
    EmptyFamily(String),

    #[error("degenerate threshold: {0}")]
    DegenerateThreshold(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("retries exhausted after {attempts} attempts ({failures} coverage failures, {weight_failures} weight failures)")]
    RetriesExhausted {
        attempts: usize,
        failures: usize,
        weight_failures: usize,
    },

    #[error("inner certificate invalid: {0}")]
    InnerCertificateInvalid(String),

    #[error("degenerate pivot limit reached after {0} pivots")]
    DegeneratePivotLimit(usize),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
