//! Frobenius traces `a_p` and angles `θ_p` of CM elliptic curves.

mod cornacchia;
mod curve;
mod group;
mod resolve;

pub use cornacchia::{cornacchia_4p, trace_candidates};
pub use curve::{CMCurve, CM_CHECK_BOUND};
pub use group::{CurveModP, Point};
pub use resolve::{
    cos_m_theta, frobenius_angle, point_count_oracle, point_count_oracle_with, resolve_trace, resolve_trace_with,
    ChebyshevCosines, FrobeniusRecord, ResolveOptions, DEFAULT_FALLBACK_THRESHOLD, DEFAULT_MAX_POINTS,
    DEFAULT_ORACLE_CEILING, MAX_PRIME,
};

use crate::error::{Error, Result};

/// `k·P` on the reduction of `curve` modulo `p`.
pub fn ec_scalar_mul(curve: &CMCurve, p: u64, point: &Point, k: u64) -> Result<Point> {
    if !crate::arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if curve.is_bad(p) {
        return Err(Error::BadPrime(p));
    }
    if p < 3 {
        return Err(Error::Parameter("short Weierstrass models need p >= 3".into()));
    }
    let e = curve.reduce(p);
    if !e.contains(point) {
        return Err(Error::NotOnCurve(p));
    }
    Ok(e.mul(point, k))
}
