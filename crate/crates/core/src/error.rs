use thiserror::Error;

/// Errors shared across the series, polynomial and numeric modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("composition requires inner series with zero constant term")]
    NonzeroInnerConstant,

    #[error("exp requires a series with zero constant term")]
    NonzeroExpConstant,

    #[error("division by a series with zero constant term")]
    NonUnitDivisor,

    #[error("fixed-point iteration did not stabilize at order {0}")]
    NonContraction(usize),

    #[error("coefficient of x^{0} is not divisible by y")]
    NotDivisibleByY(usize),

    #[error("{0}")]
    Domain(String),

    #[error("zero polynomial not allowed")]
    ZeroPolynomial,

    #[error("polynomial degree too small: need {need}, got {got}")]
    DegreeTooSmall { need: usize, got: usize },

    #[error("root finding did not converge within {0} iterations")]
    NoConvergence(usize),

    #[error("Newton iteration diverged from the default seed; override the seed")]
    NewtonDiverged,

    #[error("verification failed in {module}: {invariant} (first failing order {order:?})")]
    VerificationFailed {
        module: String,
        invariant: String,
        order: Option<usize>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
