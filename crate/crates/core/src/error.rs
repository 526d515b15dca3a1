use thiserror::Error;

use crate::part::Part;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed token {token:?}: {reason}")]
    MalformedToken { token: String, reason: &'static str },

    #[error("part size must be at least 1")]
    ZeroPart,

    #[error("parts out of order: {prev} is followed by the larger part {next}")]
    OrderViolation { prev: String, next: String },

    #[error("overlined part of size {0} occurs more than once")]
    DuplicateOverline(u64),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("window mismatch at t={t}: expected {expected}, found {found}")]
    WindowMismatch {
        t: u64,
        expected: &'static str,
        found: String,
    },

    #[error("overpartition {0} is not in the family {1}")]
    NotInFamily(String, &'static str),

    #[error("partition {0} does not consist of distinct multiples of {1}")]
    NotInDeta(String, u64),

    #[error("invalid band starting at {start} with width {width}: {reason}")]
    InvalidBand {
        start: usize,
        width: usize,
        reason: &'static str,
    },

    #[error("no bands of width {width} in the window at t={t}")]
    NoBandInWindow { t: u64, width: usize },

    #[error("part {0} is not present")]
    MissingPart(Part),

    #[error("internal invariant violated: {0}")]
    InvariantViolated(String),

    #[error("series exponent {0} is not an integer")]
    NonIntegralExponent(String),

    #[error("series exponent {0} is not positive")]
    NonPositiveExponent(String),

    #[error("degenerate zero exponent {0}: the product vanishes identically")]
    DegenerateExponent(&'static str),

    #[error("series constant term is not a unit")]
    NonUnitConstant,

    #[error("series bounds differ: {0} vs {1}")]
    BoundMismatch(usize, usize),

    #[error("coefficient overflow")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, Error>;
