//! Beurling–Selberg cosine polynomials bracketing the indicator of an
//! interval `I = [α, β] ⊆ [0, π]`.
//!
//! On the circle `R/Z` the interval becomes `J = [α/2π, β/2π]`. Selberg's
//! functions are
//!
//! ```text
//! F±(x) = |J| + V(α/2π - x) + V(x - β/2π) ± (Δ(α/2π - x) + Δ(x - β/2π)) / (2M + 2)
//! ```
//!
//! where `V` is Vaaler's degree-`M` approximation of the sawtooth
//! `ψ(x) = x - ⌊x⌋ - 1/2` and `Δ` the Fejér kernel of order `M + 1`; Vaaler's
//! bound `|ψ - V| <= Δ / (2M + 2)` gives `F- <= 1_J <= F+`. Folding
//! `S(θ) = F(θ/2π) + F(-θ/2π)` keeps only the cosine part:
//!
//! ```text
//! b_0 = |I|/π ± 2/(M+1)
//! b_m = 2 j(m/(M+1)) (sin mβ - sin mα) / (π m) ± 2 (1 - m/(M+1)) (cos mα + cos mβ) / (M+1)
//! ```
//!
//! with Vaaler's weight `j(u) = π u (1 - u) cot(π u) + u`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::equidist::AngleInterval;
use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 1_000_000;

/// Implied constant in `|b_m| <= C (min(|I|, 1/m) + 1/M)`.
///
/// The closed form bounds `|b_m|` by `min(4/(πm), 2|I|/π) + 4/(M+1)`, so 4
/// always suffices; over the test matrix the observed maximum is about 2.3.
pub const DECAY_CONSTANT: f64 = 4.0;

/// Grid values within this distance of `α` or `β` are not checked.
pub const ENDPOINT_EXEMPTION: f64 = 1e-9;
/// Slack allowed when comparing against the indicator on a grid.
pub const EXTREMAL_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Majorant,
    Minorant,
}

impl Sign {
    fn factor(self) -> f64 {
        match self {
            Sign::Majorant => 1.0,
            Sign::Minorant => -1.0,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Majorant => "maj",
            Sign::Minorant => "min",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "maj" | "majorant" | "+" => Ok(Sign::Majorant),
            "min" | "minorant" | "-" => Ok(Sign::Minorant),
            _ => Err(Error::Parse(format!("sign `{s}`: expected maj or min"))),
        }
    }
}

/// `S(θ) = Σ_{m=0}^{M} b_m cos(mθ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SelbergPolynomial {
    sign: Sign,
    interval: AngleInterval,
    coeffs: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremalReport {
    /// Largest signed amount by which the polynomial crosses the indicator.
    pub max_violation: f64,
    pub holds: bool,
}

/// Vaaler's weight `j(u)` for `0 < u < 1`.
fn vaaler_weight(u: f64) -> f64 {
    if u <= 0.5 {
        PI * u * (1.0 - u) / (PI * u).tan() + u
    } else {
        // cot(πu) = -cot(πw), w = 1 - u, avoids cancellation near u = 1
        let w = 1.0 - u;
        u * (1.0 - PI * w / (PI * w).tan())
    }
}

/// Builds the degree-`degree` majorant or minorant of `interval`.
pub fn build_selberg(interval: AngleInterval, degree: usize, sign: Sign) -> Result<SelbergPolynomial> {
    if degree == 0 || degree > MAX_DEGREE {
        return Err(Error::Parameter(format!(
            "degree M = {degree} must lie in [1, {MAX_DEGREE}]"
        )));
    }
    let (alpha, beta) = (interval.alpha(), interval.beta());
    debug_assert!(alpha / (2.0 * PI) >= 0.0 && beta / (2.0 * PI) <= 0.5);
    let s = sign.factor();
    let n1 = (degree + 1) as f64;
    let mut coeffs = Vec::with_capacity(degree + 1);
    coeffs.push((beta - alpha) / PI + s * 2.0 / n1);
    for m in 1..=degree {
        let mf = m as f64;
        let (sa, ca) = (mf * alpha).sin_cos();
        let (sb, cb) = (mf * beta).sin_cos();
        let sawtooth = 2.0 * vaaler_weight(mf / n1) * (sb - sa) / (PI * mf);
        let fejer = 2.0 * (1.0 - mf / n1) * (ca + cb) / n1;
        coeffs.push(sawtooth + s * fejer);
    }
    Ok(SelbergPolynomial { sign, interval, coeffs })
}

impl SelbergPolynomial {
    /// A polynomial with arbitrary coefficients, for checking candidates
    /// that did not come from [`build_selberg`].
    pub fn from_coeffs(sign: Sign, interval: AngleInterval, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::Parameter("need at least b_0 and b_1".into()));
        }
        Ok(SelbergPolynomial { sign, interval, coeffs })
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn interval(&self) -> AngleInterval {
        self.interval
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn evaluate(&self, theta: f64) -> Result<f64> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::Parameter(format!("θ = {theta} lies outside [0, π]")));
        }
        Ok(self.eval(theta))
    }

    /// Clenshaw recurrence for `Σ b_m T_m(cos θ)`.
    fn eval(&self, theta: f64) -> f64 {
        let x = theta.cos();
        let (mut b1, mut b2) = (0.0, 0.0);
        for &c in self.coeffs[1..].iter().rev() {
            let b0 = c + 2.0 * x * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        self.coeffs[0] + x * b1 - b2
    }

    /// Compares against `1_I` on `grid_points` equally spaced angles in `[0, π]`.
    pub fn verify_extremal(&self, grid_points: usize) -> ExtremalReport {
        let n = grid_points.max(100);
        let (alpha, beta) = (self.interval.alpha(), self.interval.beta());
        let mut worst = f64::NEG_INFINITY;
        for i in 0..n {
            let theta = PI * i as f64 / (n - 1) as f64;
            if (theta - alpha).abs() <= ENDPOINT_EXEMPTION || (theta - beta).abs() <= ENDPOINT_EXEMPTION {
                continue;
            }
            let ind = if (alpha..=beta).contains(&theta) { 1.0 } else { 0.0 };
            let value = self.eval(theta);
            let violation = match self.sign {
                Sign::Majorant => ind - value,
                Sign::Minorant => value - ind,
            };
            worst = worst.max(violation);
        }
        ExtremalReport {
            max_violation: worst,
            holds: worst <= EXTREMAL_TOLERANCE,
        }
    }

    /// `b_m · Σ_p cos(mθ_p) log p` summed over `m`, given the power sums.
    pub fn pair_with(&self, power_sums: &[f64]) -> f64 {
        assert!(
            power_sums.len() > self.degree(),
            "need power sums up to m = {}",
            self.degree()
        );
        self.coeffs.iter().zip(power_sums).map(|(b, g)| b * g).sum()
    }
}
