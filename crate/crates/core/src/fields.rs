//! The nine imaginary quadratic fields `Q(sqrt(-d))` of class number one.

use std::fmt;
use std::str::FromStr;

use crate::arith::{is_prime, kronecker};
use crate::error::{Error, Result};

/// Squarefree `d` for which `Q(sqrt(-d))` has class number one.
pub const CLASS_NUMBER_ONE: [u64; 9] = [1, 2, 3, 7, 11, 19, 43, 67, 163];

/// One of the nine class-number-one imaginary quadratic fields.
///
/// Only constructible from the catalog; arbitrary `d` is rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ImagQuadField {
    d: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

impl Splitting {
    pub fn as_str(&self) -> &'static str {
        match self {
            Splitting::Split => "split",
            Splitting::Inert => "inert",
            Splitting::Ramified => "ramified",
        }
    }
}

impl fmt::Display for Splitting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl ImagQuadField {
    pub fn new(d: u64) -> Result<Self> {
        if CLASS_NUMBER_ONE.contains(&d) {
            Ok(ImagQuadField { d })
        } else {
            Err(Error::UnsupportedField(d))
        }
    }

    pub fn all() -> impl Iterator<Item = ImagQuadField> {
        CLASS_NUMBER_ONE.iter().map(|&d| ImagQuadField { d })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// Absolute discriminant `D_K`: `d` when `-d ≡ 1 (mod 4)`, else `4d`.
    pub fn abs_discriminant(&self) -> u64 {
        if self.d % 4 == 3 {
            self.d
        } else {
            4 * self.d
        }
    }

    /// Number of roots of unity in the ring of integers.
    pub fn unit_count(&self) -> u32 {
        match self.d {
            1 => 4,
            3 => 6,
            _ => 2,
        }
    }

    /// The Kronecker character `χ_K(n) = (-D_K / n)`.
    pub fn kronecker_chi(&self, n: u64) -> i32 {
        assert!(n >= 1, "kronecker_chi is defined on positive integers");
        kronecker(-(self.abs_discriminant() as i64), n)
    }

    /// Splitting type of the rational prime `p`; rejects non-primes.
    pub fn splitting_type(&self, p: u64) -> Result<Splitting> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(self.splitting_of_prime(p))
    }

    /// As [`splitting_type`](Self::splitting_type) for a caller that already
    /// knows `p` is prime.
    #[inline]
    pub(crate) fn splitting_of_prime(&self, p: u64) -> Splitting {
        match self.kronecker_chi(p) {
            1 => Splitting::Split,
            -1 => Splitting::Inert,
            _ => Splitting::Ramified,
        }
    }
}

impl fmt::Display for ImagQuadField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{}", self.d)
    }
}

/// Parses `d<N>` (as in `d163`) or a bare `N`.
impl FromStr for ImagQuadField {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s.strip_prefix('d').unwrap_or(s);
        let d: u64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("field `{s}`: expected d<N> with N in {CLASS_NUMBER_ONE:?}")))?;
        ImagQuadField::new(d)
    }
}
