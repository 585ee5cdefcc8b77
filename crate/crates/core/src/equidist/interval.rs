use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Absolute tolerance on `θ_p` when testing closed-interval membership.
pub const MEMBERSHIP_TOLERANCE: f64 = 1e-12;

/// A closed subinterval `[α, β]` of `[0, π]` with `α < β`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleInterval {
    alpha: f64,
    beta: f64,
}

impl AngleInterval {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::Interval("require finite endpoints".into()));
        }
        if alpha >= beta {
            return Err(Error::Interval("require alpha < beta".into()));
        }
        if alpha < 0.0 || beta > PI {
            return Err(Error::Interval("require 0 <= alpha < beta <= pi".into()));
        }
        Ok(AngleInterval { alpha, beta })
    }

    /// `[0, π]`.
    pub fn full() -> Self {
        AngleInterval { alpha: 0.0, beta: PI }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `|I|`.
    pub fn width(&self) -> f64 {
        self.beta - self.alpha
    }

    #[inline]
    pub fn contains(&self, theta: f64) -> bool {
        theta >= self.alpha - MEMBERSHIP_TOLERANCE && theta <= self.beta + MEMBERSHIP_TOLERANCE
    }

    /// `1_{π/2 ∈ I}`, under the same tolerance as [`contains`](Self::contains).
    pub fn contains_half_pi(&self) -> bool {
        self.contains(FRAC_PI_2)
    }

    /// The CM Sato–Tate measure `μ(I) = |I|/2π + 1/2 · 1_{π/2 ∈ I}`.
    pub fn mu(&self) -> f64 {
        mu_measure(self)
    }
}

pub fn mu_measure(interval: &AngleInterval) -> f64 {
    let atom = if interval.contains_half_pi() { 0.5 } else { 0.0 };
    interval.width() / (2.0 * PI) + atom
}

impl fmt::Display for AngleInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.alpha, self.beta)
    }
}

/// Parses `a,b`; each endpoint is a number, `pi`, or `pi/<k>`.
impl FromStr for AngleInterval {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| Error::Interval(format!("`{s}`: expected alpha,beta")))?;
        AngleInterval::new(parse_angle(a)?, parse_angle(b)?)
    }
}

fn parse_angle(t: &str) -> Result<f64> {
    let t = t.trim();
    let bad = || Error::Interval(format!("`{t}` is not a number"));
    if let Some(rest) = t.strip_prefix("pi") {
        if rest.is_empty() {
            return Ok(PI);
        }
        let k: f64 = rest.strip_prefix('/').ok_or_else(bad)?.parse().map_err(|_| bad())?;
        return Ok(PI / k);
    }
    t.parse().map_err(|_| bad())
}
