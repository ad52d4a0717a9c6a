use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid dimension {0}: must be at least 1")]
    InvalidDimension(usize),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("negative coordinate in exponent vector {0}")]
    NegativeCoordinate(String),

    #[error("dilation factor must be a positive integer")]
    ZeroDilation,

    #[error("expected {expected} entries, found {found}")]
    Arity { expected: usize, found: usize },

    #[error("degree {given} is below the support degree {support}")]
    DegreeBelowSupport { given: u64, support: u64 },

    #[error("{0}")]
    OutOfRange(String),

    #[error("enumeration limit exceeded: {0}")]
    LimitExceeded(String),

    #[error("no generic lifting found after {0} attempts")]
    GenericityFailure(u32),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("zero polynomial in input")]
    ZeroPolynomial,

    #[error("invalid coefficient {0:?}: expected an integer or p/q literal")]
    InvalidCoefficient(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),

    #[error("newton mode requires every support to lie inside the common support")]
    NotUnmixed,
}
