use thiserror::Error;

/// Errors produced by the series machinery.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid series specification: {0}")]
    InvalidSpec(String),

    #[error("|q| = {modulus} is not inside the unit disk")]
    OutsideUnitDisk { modulus: String },

    /// The requested tail bound was not reached within the term budget.
    #[error("term budget of {terms} exhausted; best certified tail bound {achieved_bound}")]
    BudgetExhausted { terms: u64, achieved_bound: String },

    #[error("coefficient cycle has nonzero mean {mean}")]
    NonzeroMean { mean: String },

    #[error("polynomial coefficients must be integers to twist by a root of unity: {0}")]
    NonIntegerPolynomial(String),

    #[error("least-squares system is singular: {0}")]
    SingularFit(String),

    #[error("evaluation failed at q = {q}: {source}")]
    EvaluationAt {
        q: String,
        #[source]
        source: Box<Error>,
    },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
