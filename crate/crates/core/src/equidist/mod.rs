//! Frobenius angles of a CM curve over short windows `(x, x + h]`.
//!
//! The angles of split primes equidistribute for `dθ/2π`; inert primes all
//! sit at `π/2` and carry half the mass, giving
//! `μ(I) = |I|/2π + 1/2 · 1_{π/2 ∈ I}`.

mod engine;
mod interval;
mod report;
mod sweep;
mod window;

pub use engine::{character_sum, character_sum_with, Engine, EngineOptions, WindowSums, DEFAULT_PASS_LEN};
pub use interval::{mu_measure, AngleInterval, MEMBERSHIP_TOLERANCE};
pub use report::{fmt_f64, SandwichBracket, VerificationReport, CSV_HEADER};
pub use sweep::{sweep, sweep_csv, SweepEntry, SweepRow};
pub use window::{max_degree_for, WindowConfig, EXPONENT_BUDGET};

use crate::error::{Error, Result};

/// `E(x; c) = exp(-c (log x)^(1/3) (log log x)^(-1/3))`.
///
/// Requires `x >= 16`, where `log log x > 1`.
pub fn error_model(x: u64, c: f64) -> Result<f64> {
    if x <= 15 {
        return Err(Error::Parameter(format!("error model needs x >= 16, got {x}")));
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::Parameter(format!("error model needs c > 0, got {c}")));
    }
    let lx = (x as f64).ln();
    Ok((-c * (lx / lx.ln()).cbrt()).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_model_values() {
        assert!((error_model(10_000_000, 1.0).unwrap() - 0.165_879_308_830_439_33).abs() < 1e-14);
        assert!(error_model(15, 1.0).is_err());
        assert!(error_model(16, 0.0).is_err());
        assert!(error_model(16, 1.0).unwrap() < 1.0);
    }

    #[test]
    fn error_model_decreases_in_x() {
        let mut prev = 1.0;
        for k in 2..19 {
            let e = error_model(10u64.pow(k), 1.0).unwrap();
            assert!(e < prev);
            prev = e;
        }
    }
}
