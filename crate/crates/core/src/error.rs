use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("exponent overflow: {0}")]
    Overflow(String),
    #[error("index out of range: {0}")]
    BadIndex(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("duplicate variable `{0}`")]
    DuplicateVar(String),
    #[error("unknown monomial order `{0}`")]
    BadOrder(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    ParseError {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown variable `{name}` at line {line}, column {column}")]
    UnknownVar {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("bad exponent at line {line}, column {column}: {message}")]
    BadExponent {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("ideal has no cached Groebner basis")]
    NeedsGB,
    #[error("too many variables: {0}")]
    TooManyVars(usize),
    #[error("quotient too large: length {length} exceeds cap {cap}")]
    TooLarge { length: u64, cap: u64 },
    #[error("time budget exceeded")]
    BudgetExceeded,
    #[error("ideal is not zero-dimensional")]
    NotZeroDim,
    #[error("ideal is the unit ideal")]
    UnitIdeal,
    #[error("hypersurface is not F-pure")]
    NotFPure,
    #[error("iteration did not stabilise: {0}")]
    NoStabilize(String),
    #[error("bad witness: {0}")]
    BadWitness(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Short machine-readable code used in reports and CLI diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division-by-zero",
            Error::RingMismatch => "ring-mismatch",
            Error::Overflow(_) => "overflow",
            Error::BadIndex(_) => "bad-index",
            Error::NotPrime(_) => "not-prime",
            Error::DuplicateVar(_) => "duplicate-var",
            Error::BadOrder(_) => "bad-order",
            Error::ParseError { .. } => "parse-error",
            Error::UnknownVar { .. } => "unknown-var",
            Error::BadExponent { .. } => "bad-exponent",
            Error::NeedsGB => "needs-gb",
            Error::TooManyVars(_) => "too-many-vars",
            Error::TooLarge { .. } => "budget",
            Error::BudgetExceeded => "budget",
            Error::NotZeroDim => "not-zero-dim",
            Error::UnitIdeal => "unit-ideal",
            Error::NotFPure => "not-f-pure",
            Error::NoStabilize(_) => "no-stabilize",
            Error::BadWitness(_) => "bad-witness",
            Error::Invalid(_) => "invalid",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
