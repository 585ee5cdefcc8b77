//! Segmented sieve of Eratosthenes over half-open ranges `(lo, hi]`.
//!
//! Each segment stores odd numbers only, one bit apiece, so a default
//! segment of `2^22` integers occupies 256 KiB. Segments are sieved
//! independently on the rayon pool and concatenated in ascending order; the
//! output does not depend on the worker count or on the segment length.

use rayon::prelude::*;

use crate::error::{Error, Result};

pub const DEFAULT_SEGMENT_LEN: u64 = 1 << 22;
pub const DEFAULT_MAX_HI: u64 = 1 << 46;
/// Largest `hi` any configuration may allow.
pub const ABSOLUTE_MAX_HI: u64 = (1 << 63) - 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SieveConfig {
    /// Integers covered by one segment.
    pub segment_len: u64,
    /// Global ceiling on `hi`.
    pub max_hi: u64,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig {
            segment_len: DEFAULT_SEGMENT_LEN,
            max_hi: DEFAULT_MAX_HI,
        }
    }
}

/// The primes in `(lo, hi]`, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSegment {
    lo: u64,
    hi: u64,
    primes: Vec<u64>,
}

impl PrimeSegment {
    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn into_primes(self) -> Vec<u64> {
        self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// `Σ log p` over the segment.
    pub fn log_weighted_count(&self) -> f64 {
        log_weighted_count(self)
    }
}

impl SieveConfig {
    pub fn with_segment_len(segment_len: u64) -> Self {
        SieveConfig {
            segment_len,
            ..SieveConfig::default()
        }
    }

    fn validate(&self, lo: u64, hi: u64) -> Result<()> {
        if self.segment_len < 64 {
            return Err(Error::Range(format!(
                "segment length {} is below the minimum of 64",
                self.segment_len
            )));
        }
        if lo < 2 {
            return Err(Error::Range(format!("lo = {lo} must be at least 2")));
        }
        if lo >= hi {
            return Err(Error::Range(format!("lo = {lo} must be below hi = {hi}")));
        }
        let ceiling = self.max_hi.min(ABSOLUTE_MAX_HI);
        if hi > ceiling {
            return Err(Error::Range(format!(
                "hi = {hi} exceeds the configured maximum {ceiling}"
            )));
        }
        Ok(())
    }

    /// Exactly the primes `p` with `lo < p <= hi`.
    pub fn sieve_range(&self, lo: u64, hi: u64) -> Result<PrimeSegment> {
        self.validate(lo, hi)?;
        let base = simple_primes_up_to(crate::arith::isqrt(hi as u128) as u64);
        let chunks = self.chunk_bounds(lo, hi);
        let parts: Vec<Vec<u64>> = chunks.into_par_iter().map(|(s, e)| sieve_chunk(s, e, &base)).collect();
        let total = parts.iter().map(Vec::len).sum();
        let mut primes = Vec::with_capacity(total);
        for part in parts {
            primes.extend_from_slice(&part);
        }
        Ok(PrimeSegment { lo, hi, primes })
    }

    /// Number of primes in `(lo, hi]` for any `lo < hi`, including `lo < 2`.
    pub fn count_primes(&self, lo: u64, hi: u64) -> Result<u64> {
        if lo >= hi {
            return Err(Error::Range(format!("lo = {lo} must be below hi = {hi}")));
        }
        let mut count = 0;
        let mut start = lo;
        if lo < 2 {
            if hi >= 2 {
                count += 1;
            }
            start = 2;
        }
        if start < hi {
            count += self.sieve_range(start, hi)?.len() as u64;
        }
        Ok(count)
    }

    /// Exactly the primes in `(lo, hi]` for any `lo < hi`, including `lo < 2`.
    pub fn primes_between(&self, lo: u64, hi: u64) -> Result<Vec<u64>> {
        if lo >= hi {
            return Err(Error::Range(format!("lo = {lo} must be below hi = {hi}")));
        }
        if lo >= 2 {
            return Ok(self.sieve_range(lo, hi)?.into_primes());
        }
        let mut out = vec![2];
        if hi > 2 {
            out.extend(self.sieve_range(2, hi)?.into_primes());
        }
        Ok(out)
    }

    /// Inclusive integer bounds `[s, e]` of each segment covering `(lo, hi]`.
    fn chunk_bounds(&self, lo: u64, hi: u64) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        let mut s = lo + 1;
        while s <= hi {
            let e = s.saturating_add(self.segment_len - 1).min(hi);
            out.push((s, e));
            if e == hi {
                break;
            }
            s = e + 1;
        }
        out
    }
}

/// [`SieveConfig::sieve_range`] with the default configuration.
pub fn sieve_range(lo: u64, hi: u64) -> Result<PrimeSegment> {
    SieveConfig::default().sieve_range(lo, hi)
}

/// Sieves the odd integers of `[s, e]` (with `s >= 3`) against `base`.
fn sieve_chunk(s: u64, e: u64, base: &[u64]) -> Vec<u64> {
    debug_assert!(s >= 3);
    let first = s | 1;
    if first > e {
        return Vec::new();
    }
    let nbits = ((e - first) / 2 + 1) as usize;
    let mut composite = vec![0u64; nbits.div_ceil(64)];
    for &q in base.iter().skip(1) {
        let q2 = q * q;
        if q2 > e {
            break;
        }
        let mut m = if q2 >= first { q2 } else { first.div_ceil(q) * q };
        if m % 2 == 0 {
            m += q;
        }
        let mut j = ((m - first) / 2) as usize;
        let step = q as usize;
        while j < nbits {
            composite[j >> 6] |= 1 << (j & 63);
            j += step;
        }
    }
    let mut out = Vec::with_capacity(nbits / 8);
    for (w, &word) in composite.iter().enumerate() {
        let mut free = !word;
        if w == composite.len() - 1 && !nbits.is_multiple_of(64) {
            free &= (1u64 << (nbits % 64)) - 1;
        }
        while free != 0 {
            let bit = free.trailing_zeros() as u64;
            out.push(first + 2 * (w as u64 * 64 + bit));
            free &= free - 1;
        }
    }
    out
}

/// All primes `<= n` by a plain (unsegmented) sieve; used for base primes.
pub fn simple_primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut is_comp = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !is_comp[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                is_comp[j] = true;
                j += i;
            }
        }
    }
    out
}

pub fn log_weighted_count(segment: &PrimeSegment) -> f64 {
    segment
        .primes
        .iter()
        .map(|&p| (p as f64).ln())
        .sum::<crate::sum::ExactSum>()
        .value()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrunTitchmarsh {
    pub count: u64,
    pub bound: f64,
    pub holds: bool,
}

/// Compares `#{X < p <= X + Y}` with `2Y / log Y`.
pub fn brun_titchmarsh_check(x: u64, y: u64) -> Result<BrunTitchmarsh> {
    brun_titchmarsh_check_with(&SieveConfig::default(), x, y)
}

pub fn brun_titchmarsh_check_with(cfg: &SieveConfig, x: u64, y: u64) -> Result<BrunTitchmarsh> {
    if x == 0 {
        return Err(Error::Range("X must be positive".into()));
    }
    if y <= 1 {
        return Err(Error::Range("Y must exceed 1".into()));
    }
    let hi = x.checked_add(y).ok_or_else(|| Error::Range("X + Y overflows".into()))?;
    let count = cfg.count_primes(x, hi)?;
    let bound = 2.0 * y as f64 / (y as f64).ln();
    Ok(BrunTitchmarsh {
        count,
        bound,
        holds: count as f64 <= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trial_division(lo: u64, hi: u64) -> Vec<u64> {
        ((lo + 1)..=hi)
            .filter(|&n| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
            .collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(sieve_range(10, 30).unwrap().primes(), &[11, 13, 17, 19, 23, 29]);
        assert_eq!(sieve_range(2, 10).unwrap().primes(), &[3, 5, 7]);
        assert!(matches!(sieve_range(1, 10), Err(Error::Range(_))));
        assert!(matches!(sieve_range(30, 10), Err(Error::Range(_))));
        assert!(matches!(sieve_range(10, 10), Err(Error::Range(_))));
        assert!(matches!(sieve_range(10, DEFAULT_MAX_HI + 1), Err(Error::Range(_))));
    }

    #[test]
    fn window_count_fixture() {
        // Independent reference sieve: 61,938 primes in (10^7, 10^7 + 10^6].
        let seg = sieve_range(10_000_000, 11_000_000).unwrap();
        assert_eq!(seg.len(), 61_938);
        let per_unit = seg.log_weighted_count() / 1e6;
        assert!((0.95..=1.05).contains(&per_unit));
        assert!((seg.log_weighted_count() - 1_001_317.922_657_196_6).abs() < 1e-6);
    }

    #[test]
    fn log_weighted_examples() {
        let seg = sieve_range(10, 30).unwrap();
        assert!((seg.log_weighted_count() - 17.243_286_999_398_187).abs() < 1e-12);
        let empty = sieve_range(24, 28).unwrap();
        assert!(empty.is_empty());
        assert_eq!(empty.log_weighted_count(), 0.0);
    }

    #[test]
    fn matches_trial_division_on_small_ranges() {
        let cfg = SieveConfig::with_segment_len(64);
        for lo in [2u64, 3, 4, 63, 64, 65, 127, 1000] {
            for hi in [lo + 1, lo + 2, lo + 63, lo + 64, lo + 65, lo + 500] {
                assert_eq!(
                    cfg.sieve_range(lo, hi).unwrap().primes(),
                    trial_division(lo, hi).as_slice()
                );
            }
        }
    }

    #[test]
    fn brun_titchmarsh_examples() {
        let r = brun_titchmarsh_check(100, 100).unwrap();
        assert_eq!(r.count, 21);
        assert!((r.bound - 43.429_448_190_325_18).abs() < 1e-9);
        assert!(r.holds);

        let r = brun_titchmarsh_check(1_000_000, 1000).unwrap();
        assert_eq!(r.count, 75);
        assert!((r.bound - 289.529_654_602_167_9).abs() < 1e-9);
        assert!(r.holds);

        let r = brun_titchmarsh_check(1, 2).unwrap();
        assert_eq!(r.count, 2);
        assert!((r.bound - 4.0 / 2f64.ln()).abs() < 1e-12);
        assert!(r.holds);
        assert!(brun_titchmarsh_check(0, 5).is_err());
        assert!(brun_titchmarsh_check(5, 1).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn segment_length_does_not_change_output(lo in 2u64..200_000, span in 1u64..50_000, seg in 64u64..5000) {
            let a = SieveConfig::with_segment_len(seg).sieve_range(lo, lo + span).unwrap();
            let b = SieveConfig::default().sieve_range(lo, lo + span).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
