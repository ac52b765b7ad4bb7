use num_bigint::BigInt;
use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{op}: negative input {value}")]
    NegativeInput { op: &'static str, value: BigInt },

    #[error("{digits} significant digits requested, minimum is {min}")]
    DigitsBelowMinimum { digits: u32, min: u32 },

    #[error("{what}: needs at least {needed} significant digits, configured {have}")]
    InsufficientPrecision {
        what: String,
        needed: u32,
        have: u32,
    },

    #[error("value constructed under the wrong arithmetic backend ({expected} expected)")]
    BackendMismatch { expected: &'static str },

    #[error("{what}: need at least {needed} terms, got {got}")]
    TooFewTerms {
        what: &'static str,
        needed: usize,
        got: usize,
    },

    #[error("base sequence must be strictly increasing and positive")]
    NotIncreasing,

    #[error("terms are not consecutive square-triangular numbers (offender: {value})")]
    NotSquareTriangular { value: BigInt },

    #[error("zero denominator in ratio sequence at position {position}")]
    DegenerateSequence { position: usize },

    #[error("geometric tail requires q > 1, got {q}")]
    DivergentTail { q: String },

    #[error("Pell invariant t^2 - 2s^2 = 1 violated for (t, s) = ({t}, {s})")]
    PellInvariant { t: BigInt, s: BigInt },

    #[error("Pell parity violated for (t, s) = ({t}, {s}): t must be odd, s even")]
    PellParity { t: BigInt, s: BigInt },

    #[error("polygonal sides must be at least 3, got {0}")]
    SidesTooSmall(u32),

    #[error("invalid range: from {from} to {to}")]
    InvalidRange { from: u64, to: u64 },

    #[error("cannot parse decimal literal {0:?}")]
    ParseDecimal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
