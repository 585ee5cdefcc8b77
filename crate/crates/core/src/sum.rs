//! Order-independent summation.
//!
//! Terms are rounded onto a fixed grid of `2^-60` and accumulated in an
//! `i128`, so addition is exact and associative: partial sums computed by any
//! number of workers, merged in any order, give bit-identical totals.
//! Every `log p` with `p >= 2` is a multiple of `2^-53` and is therefore
//! represented without rounding.

use std::iter::Sum;
use std::ops::{Add, AddAssign};

const SCALE_BITS: i32 = 60;
const SCALE: f64 = (1u64 << SCALE_BITS) as f64;
/// Terms stay below 2^20 in magnitude, leaving room for 2^46 of them.
const MAX_TERM: f64 = (1u64 << 20) as f64;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ExactSum {
    acc: i128,
}

impl ExactSum {
    pub const ZERO: ExactSum = ExactSum { acc: 0 };

    #[inline]
    pub fn push(&mut self, term: f64) {
        debug_assert!(term.is_finite() && term.abs() < MAX_TERM, "term {term}");
        self.acc += (term * SCALE).round() as i128;
    }

    #[inline]
    pub fn merge(&mut self, other: &ExactSum) {
        self.acc += other.acc;
    }

    /// The correctly rounded value of the accumulated (grid-rounded) terms.
    pub fn value(&self) -> f64 {
        self.acc as f64 / SCALE
    }
}

impl Add for ExactSum {
    type Output = ExactSum;
    fn add(self, rhs: ExactSum) -> ExactSum {
        ExactSum {
            acc: self.acc + rhs.acc,
        }
    }
}

impl AddAssign for ExactSum {
    fn add_assign(&mut self, rhs: ExactSum) {
        self.acc += rhs.acc;
    }
}

impl Sum<f64> for ExactSum {
    fn sum<I: Iterator<Item = f64>>(iter: I) -> Self {
        let mut s = ExactSum::ZERO;
        for t in iter {
            s.push(t);
        }
        s
    }
}

impl Sum for ExactSum {
    fn sum<I: Iterator<Item = ExactSum>>(iter: I) -> Self {
        iter.fold(ExactSum::ZERO, |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn log_terms_are_exact() {
        let mut s = ExactSum::ZERO;
        for p in [2u64, 3, 5, 7, 1_000_003, 1 << 45] {
            let l = (p as f64).ln();
            s = ExactSum::ZERO;
            s.push(l);
            assert_eq!(s.value(), l);
        }
        s.push(-s.value());
        assert_eq!(s.value(), 0.0);
    }

    #[test]
    fn beats_naive_summation() {
        let terms: Vec<f64> = (0..100_000).map(|i| 0.1 + (i % 7) as f64 * 1e-3).collect();
        let exact: ExactSum = terms.iter().copied().sum();
        let expected = 100_000.0 * 0.1 + (0..100_000).map(|i| (i % 7) as f64).sum::<f64>() * 1e-3;
        assert!((exact.value() - expected).abs() < 1e-9);
    }

    proptest! {
        #[test]
        fn order_independent(mut v in proptest::collection::vec(-40.0f64..40.0, 0..200), split in 0usize..200) {
            let forward: ExactSum = v.iter().copied().sum();
            let k = split.min(v.len());
            let (a, b) = v.split_at(k);
            let halves = a.iter().copied().sum::<ExactSum>() + b.iter().copied().sum::<ExactSum>();
            v.reverse();
            let backward: ExactSum = v.iter().copied().sum();
            prop_assert_eq!(forward, backward);
            prop_assert_eq!(forward, halves);
        }
    }
}
