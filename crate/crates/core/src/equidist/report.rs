use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::engine::WindowSums;
use super::interval::AngleInterval;

/// Column order of [`VerificationReport::csv_row`].
pub const CSV_HEADER: &str = "x,h,alpha,beta,mu,raw_sum,rel_error,n_split,n_inert,char_sum,pnt_deviation";

/// `lower <= direct <= upper` up to rounding, for a correct majorant/minorant pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SandwichBracket {
    pub lower: f64,
    pub direct: f64,
    pub upper: f64,
}

impl SandwichBracket {
    pub fn contains(&self, slack: f64) -> bool {
        self.lower <= self.direct + slack && self.direct <= self.upper + slack
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub x: u64,
    pub h: u64,
    pub alpha: f64,
    pub beta: f64,
    pub raw_sum: f64,
    pub mu: f64,
    /// `μ(I) · h`.
    pub expected: f64,
    /// `raw_sum / expected - 1`.
    pub rel_error: Option<f64>,
    pub n_split: u64,
    pub n_inert: u64,
    pub char_sum: f64,
    /// `Σ_{p split} cos(m θ_p) log p` for `m = 0..=M`; empty unless requested.
    pub grossen_sums: Vec<f64>,
    /// `Σ log p / h - 1` over all primes of the window.
    pub pnt_deviation: f64,
    pub sandwich: Option<SandwichBracket>,
    /// `E(x; c)`.
    pub envelope: Option<f64>,
    /// Set when the configuration violates a hypothesis but was run anyway.
    pub flagged: bool,
}

impl VerificationReport {
    pub(crate) fn from_sums(x: u64, h: u64, interval: &AngleInterval, s: &WindowSums) -> Self {
        let mu = interval.mu();
        let expected = mu * h as f64;
        VerificationReport {
            x,
            h,
            alpha: interval.alpha(),
            beta: interval.beta(),
            raw_sum: s.raw_sum,
            mu,
            expected,
            rel_error: (expected > 0.0).then(|| s.raw_sum / expected - 1.0),
            n_split: s.n_split,
            n_inert: s.n_inert,
            char_sum: s.char_sum,
            grossen_sums: Vec::new(),
            pnt_deviation: s.all_log / h as f64 - 1.0,
            sandwich: None,
            envelope: None,
            flagged: false,
        }
    }

    /// Whether the relative error is within the envelope.
    pub fn within_envelope(&self) -> Option<bool> {
        Some(self.rel_error?.abs() <= self.envelope?)
    }

    /// A JSON object with fixed key order and round-trip float formatting.
    pub fn to_json(&self) -> String {
        let mut o = String::from("{");
        let mut field = |k: &str, v: String| {
            if o.len() > 1 {
                o.push_str(", ");
            }
            let _ = write!(o, "\"{k}\": {v}");
        };
        field("x", self.x.to_string());
        field("h", self.h.to_string());
        field("alpha", fmt_f64(self.alpha));
        field("beta", fmt_f64(self.beta));
        field("raw_sum", fmt_f64(self.raw_sum));
        field("mu", fmt_f64(self.mu));
        field("expected", fmt_f64(self.expected));
        field("rel_error", fmt_opt(self.rel_error));
        field("n_split", self.n_split.to_string());
        field("n_inert", self.n_inert.to_string());
        field("char_sum", fmt_f64(self.char_sum));
        let g: Vec<String> = self.grossen_sums.iter().map(|&v| fmt_f64(v)).collect();
        field("grossen_sums", format!("[{}]", g.join(", ")));
        field("pnt_deviation", fmt_f64(self.pnt_deviation));
        field(
            "sandwich",
            match self.sandwich {
                Some(b) => format!(
                    "{{\"lower\": {}, \"direct\": {}, \"upper\": {}}}",
                    fmt_f64(b.lower),
                    fmt_f64(b.direct),
                    fmt_f64(b.upper)
                ),
                None => "null".into(),
            },
        );
        field("envelope", fmt_opt(self.envelope));
        field("flagged", self.flagged.to_string());
        o.push('}');
        o
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// One line in [`CSV_HEADER`] order.
    pub fn csv_row(&self) -> String {
        [
            self.x.to_string(),
            self.h.to_string(),
            fmt_f64(self.alpha),
            fmt_f64(self.beta),
            fmt_f64(self.mu),
            fmt_f64(self.raw_sum),
            self.rel_error.map_or(String::new(), fmt_f64),
            self.n_split.to_string(),
            self.n_inert.to_string(),
            fmt_f64(self.char_sum),
            fmt_f64(self.pnt_deviation),
        ]
        .join(",")
    }
}

/// Shortest decimal that parses back to the same `f64` (at most 17
/// significant digits); zero is `0`, non-finite values are `null`.
pub fn fmt_f64(v: f64) -> String {
    if !v.is_finite() {
        return "null".into();
    }
    if v == 0.0 {
        return "0".into();
    }
    let a = v.abs();
    if !(1e-5..1e16).contains(&a) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "null".into(), fmt_f64)
}
