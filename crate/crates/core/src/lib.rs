//! Frobenius traces and angles of elliptic curves with complex
//! multiplication by a class-number-one imaginary quadratic field, and the
//! machinery to check how those angles distribute over primes in short
//! intervals.
//!
//! - [`fields`]: the nine fields, the Kronecker character, prime splitting.
//! - [`primes`]: segmented sieve over `(lo, hi]` and the Brun–Titchmarsh check.
//! - [`traces`]: point counting, Cornacchia, the group law, trace resolution.
//! - [`selberg`]: Beurling–Selberg cosine majorants and minorants of an interval.
//! - [`equidist`]: weighted angle sums, character and power sums, sandwich
//!   bounds, parameter validation and sweeps.
//! - [`cli`]: argument parsing and report emission for the `frobangle` binary.

pub mod arith;
pub mod cli;
pub mod equidist;
pub mod error;
pub mod fields;
pub mod primes;
pub mod selberg;
pub mod sum;
pub mod traces;

pub use error::{Error, Result};
pub use fields::{ImagQuadField, Splitting};
pub use traces::{CMCurve, FrobeniusRecord};
