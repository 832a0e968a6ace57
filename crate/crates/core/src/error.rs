use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero denominator: invalid series coefficient")]
    ZeroDenominator,

    #[error("not a polynomial in b: {0}")]
    NotPolynomial(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("size mismatch: expected {expected}, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },

    #[error("color count mismatch: {0} vs {1}")]
    ColorMismatch(usize, usize),

    #[error("series truncated at degree {have}, degree {need} requested")]
    Truncation { have: usize, need: usize },

    #[error("non-integral value where a count was expected: {0}")]
    NonIntegral(String),

    #[error("identity violated: {0}")]
    IdentityViolated(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
