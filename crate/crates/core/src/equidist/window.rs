use crate::error::ConstraintViolation;

use super::interval::AngleInterval;

/// `δ + θ` must stay strictly below this.
pub const EXPONENT_BUDGET: f64 = 5.0 / 24.0;

/// Parameters of one short-interval window `(x, x + h]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowConfig {
    pub x: u64,
    pub h: u64,
    /// Shortness exponent: `x^(1-δ) <= h`.
    pub delta: f64,
    /// Interval-size exponent: `|I| >= x^(-θ)`.
    pub theta_exp: f64,
    /// Degree of the Selberg polynomials.
    pub degree: usize,
}

/// `sqrt(x) / log x`, the largest admissible Selberg degree.
pub fn max_degree_for(x: u64) -> f64 {
    let xf = x as f64;
    xf.sqrt() / xf.ln()
}

impl WindowConfig {
    /// The smallest admissible `δ` and `θ` for the given window and interval,
    /// and degree `min(128, ⌊sqrt(x)/log x⌋)`.
    pub fn derived(x: u64, h: u64, interval: &AngleInterval) -> Self {
        let lx = (x as f64).ln();
        let delta = (1.0 - (h as f64).ln() / lx).max(f64::MIN_POSITIVE);
        let theta_exp = ((1.0 / interval.width()).ln() / lx).max(1e-9);
        let degree = (max_degree_for(x).floor() as usize).clamp(1, 128);
        WindowConfig {
            x,
            h,
            delta,
            theta_exp,
            degree,
        }
    }

    /// Every violated inequality among `x >= 3`, `x^(1-δ) <= h <= x`, `δ, θ > 0`,
    /// `δ + θ < 5/24` and `1 <= M <= sqrt(x)/log x`.
    // Negated comparisons so that NaN counts as a violation.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn violations(&self) -> ConstraintViolation {
        let mut v = ConstraintViolation::default();
        if self.x < 3 {
            v.push(format!("x >= 3 (x = {})", self.x));
        }
        if !(self.delta > 0.0) {
            v.push(format!("delta > 0 (delta = {})", self.delta));
        }
        if !(self.theta_exp > 0.0) {
            v.push(format!("theta > 0 (theta = {})", self.theta_exp));
        }
        if !(self.delta + self.theta_exp < EXPONENT_BUDGET) {
            v.push(format!(
                "delta + theta < 5/24 ({} + {} = {} >= {:.6})",
                self.delta,
                self.theta_exp,
                self.delta + self.theta_exp,
                EXPONENT_BUDGET
            ));
        }
        if self.x >= 3 {
            let floor_len = (self.x as f64).powf(1.0 - self.delta).floor();
            if (self.h as f64) < floor_len {
                v.push(format!(
                    "x^(1-delta) <= h (h = {} is too small: x^(1-delta) = {:.1})",
                    self.h,
                    (self.x as f64).powf(1.0 - self.delta)
                ));
            }
            if self.h > self.x {
                v.push(format!("h <= x (h = {}, x = {})", self.h, self.x));
            }
            let cap = max_degree_for(self.x);
            if self.degree < 1 || self.degree as f64 > cap {
                v.push(format!(
                    "1 <= M <= sqrt(x)/log x (M = {}, bound {:.3})",
                    self.degree, cap
                ));
            }
        }
        v
    }

    /// Adds `|I| >= x^(-θ)` to [`violations`](Self::violations).
    pub fn violations_with(&self, interval: &AngleInterval) -> ConstraintViolation {
        let mut v = self.violations();
        let floor = (self.x as f64).powf(-self.theta_exp);
        if interval.width() < floor * (1.0 - 1e-12) {
            v.push(format!(
                "|I| >= x^(-theta) (|I| is too small: {} < {})",
                interval.width(),
                floor
            ));
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(x: u64, h: u64, delta: f64, theta_exp: f64, degree: usize) -> WindowConfig {
        WindowConfig {
            x,
            h,
            delta,
            theta_exp,
            degree,
        }
    }

    #[test]
    fn exponent_budget() {
        let i = AngleInterval::new(0.5, 1.0).unwrap();
        let ok = cfg(10_000_000, 1_000_000, 0.15, 0.05, 128);
        assert!(ok.violations_with(&i).is_empty(), "{:?}", ok.violations_with(&i));
        let bad = cfg(10_000_000, 1_000_000, 0.15, 0.06, 128);
        let v = bad.violations_with(&i);
        assert_eq!(v.violations.len(), 1);
        assert!(v.violations[0].starts_with("delta + theta < 5/24"));
    }

    #[test]
    fn h_too_small_is_named() {
        // x^(0.86) = 10^6.02 exceeds h = 10^6.
        let i = AngleInterval::new(0.5, 1.0).unwrap();
        let v = cfg(10_000_000, 1_000_000, 0.14, 0.05, 128).violations_with(&i);
        assert_eq!(v.violations.len(), 1);
        assert!(v.violations[0].contains("h = 1000000 is too small"));
    }

    #[test]
    fn degree_and_interval_bounds() {
        let narrow = AngleInterval::new(0.5, 0.6).unwrap();
        let v = cfg(10_000_000, 1_000_000, 0.15, 0.05, 500).violations_with(&narrow);
        assert!(v.violations.iter().any(|s| s.starts_with("1 <= M")));
        assert!(v.violations.iter().any(|s| s.starts_with("|I| >= x^(-theta)")));
        let v = cfg(2, 1, 0.1, 0.05, 1).violations();
        assert!(v.violations.iter().any(|s| s.starts_with("x >= 3")));
    }

    #[test]
    fn derived_is_admissible_when_possible() {
        let i = AngleInterval::new(0.5, 1.0).unwrap();
        let c = WindowConfig::derived(10_000_000, 1_000_000, &i);
        assert!((c.delta - 1.0 / 7.0).abs() < 1e-12);
        assert_eq!(c.degree, 128);
        assert!(c.violations_with(&i).is_empty(), "{:?}", c.violations_with(&i));
        // A width-0.02 interval at x = 10^7 needs θ ≈ 0.243, beyond the budget.
        let narrow = AngleInterval::new(1.56, 1.58).unwrap();
        let c = WindowConfig::derived(10_000_000, 1_000_000, &narrow);
        assert!(!c.violations_with(&narrow).is_empty());
    }
}
