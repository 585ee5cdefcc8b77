use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("Q(sqrt(-{0})) does not have class number one")]
    UnsupportedField(u64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid range: {0}")]
    Range(String),

    #[error("p = {0} divides the discriminant of the model")]
    BadPrime(u64),

    #[error("p = {0} ramifies in the CM field")]
    Ramified(u64),

    #[error("p = {p} exceeds the point-count ceiling {ceiling}")]
    OverCeiling { p: u64, ceiling: u64 },

    #[error("point is not on the curve modulo {0}")]
    NotOnCurve(u64),

    #[error("invalid representation: {0}")]
    Representation(String),

    #[error("singular model: 4a^3 + 27b^2 = 0")]
    Singular,

    #[error("model y^2 = x^3 + {a}x + {b} fails the CM check at p = {p} (a_p = {a_p})")]
    NotCm { a: i64, b: i64, p: u64, a_p: i64 },

    #[error("no trace candidate at p = {0} matches the group order; the model lacks CM by the given field")]
    Inconsistent(u64),

    #[error("trace at p = {0} is still ambiguous after all sampling rounds")]
    Ambiguous(u64),

    #[error("invalid interval: {0}")]
    Interval(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("{0}")]
    Constraint(ConstraintViolation),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

/// One or more violated window hypotheses, each
/// stated as the inequality that failed.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConstraintViolation {
    pub violations: Vec<String>,
}

impl ConstraintViolation {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, v: impl Into<String>) {
        self.violations.push(v.into());
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_empty() {
            Ok(())
        } else {
            Err(Error::Constraint(self))
        }
    }
}

impl fmt::Display for ConstraintViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "constraint violated: {}", self.violations.join("; "))
    }
}
