use rayon::prelude::*;

use crate::error::{ConstraintViolation, Error, Result};
use crate::fields::{ImagQuadField, Splitting};
use crate::primes::SieveConfig;
use crate::selberg::{build_selberg, Sign};
use crate::sum::ExactSum;
use crate::traces::{resolve_trace_with, CMCurve, ChebyshevCosines, FrobeniusRecord, ResolveOptions};

use super::error_model;
use super::interval::AngleInterval;
use super::report::{SandwichBracket, VerificationReport};
use super::window::{max_degree_for, WindowConfig};

/// Numbers sieved per streaming pass; bounds memory independently of `h`.
pub const DEFAULT_PASS_LEN: u64 = 1 << 24;

/// Primes handed to one rayon task.
const CHUNK: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub struct EngineOptions {
    pub sieve: SieveConfig,
    pub resolve: ResolveOptions,
    /// Reject windows outside `x > 100 N`, `sqrt(x) log x <= h <= x`.
    pub enforce_hypotheses: bool,
    pub pass_len: u64,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            sieve: SieveConfig::default(),
            resolve: ResolveOptions::default(),
            enforce_hypotheses: true,
            pass_len: DEFAULT_PASS_LEN,
        }
    }
}

impl EngineOptions {
    /// Accepts any window with `1 <= h`; useful for toy ranges.
    pub fn relaxed() -> Self {
        EngineOptions {
            enforce_hypotheses: false,
            ..Self::default()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.resolve.seed = seed;
        self
    }
}

/// Every accumulated quantity over one window `(x, x + h]`.
///
/// Bad primes of the model are excluded from every angle sum; `char_sum`
/// depends only on the field and keeps them.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowSums {
    pub n_primes: u64,
    pub n_split: u64,
    pub n_inert: u64,
    /// Ramified primes and bad primes of the model.
    pub n_excluded: u64,
    /// `Σ log p` over all primes.
    pub all_log: f64,
    pub split_log: f64,
    pub inert_log: f64,
    /// Split primes with `θ_p ∈ I` plus, if `π/2 ∈ I`, all inert primes.
    pub raw_sum: f64,
    /// The same set accumulated prime by prime in one pass; equals `raw_sum` exactly.
    pub direct_sum: f64,
    /// Split primes with `θ_p ∈ I`.
    pub split_in_interval: f64,
    pub char_sum: f64,
    /// `Σ_{p split} cos(m θ_p) log p` for `m = 0..=max_m`.
    pub grossen: Vec<f64>,
}

#[derive(Debug, Clone, Default)]
struct Acc {
    n_primes: u64,
    n_split: u64,
    n_inert: u64,
    n_excluded: u64,
    all_log: ExactSum,
    split_log: ExactSum,
    inert_log: ExactSum,
    split_in: ExactSum,
    direct: ExactSum,
    chi: ExactSum,
    grossen: Vec<ExactSum>,
}

impl Acc {
    fn new(len: usize) -> Self {
        Acc {
            grossen: vec![ExactSum::ZERO; len],
            ..Default::default()
        }
    }

    fn merge(&mut self, o: &Acc) {
        self.n_primes += o.n_primes;
        self.n_split += o.n_split;
        self.n_inert += o.n_inert;
        self.n_excluded += o.n_excluded;
        self.all_log.merge(&o.all_log);
        self.split_log.merge(&o.split_log);
        self.inert_log.merge(&o.inert_log);
        self.split_in.merge(&o.split_in);
        self.direct.merge(&o.direct);
        self.chi.merge(&o.chi);
        for (g, h) in self.grossen.iter_mut().zip(&o.grossen) {
            g.merge(h);
        }
    }
}

/// Streams a CM curve's Frobenius angles over short windows.
#[derive(Debug, Clone)]
pub struct Engine {
    curve: CMCurve,
    opts: EngineOptions,
}

impl Engine {
    pub fn new(curve: CMCurve) -> Self {
        Self::with_options(curve, EngineOptions::default())
    }

    pub fn with_options(curve: CMCurve, opts: EngineOptions) -> Self {
        Engine { curve, opts }
    }

    pub fn curve(&self) -> &CMCurve {
        &self.curve
    }

    pub fn options(&self) -> &EngineOptions {
        &self.opts
    }

    /// Violations of `x > 100 N`, `sqrt(x) log x <= h <= x`, with `N` the
    /// conductor proxy.
    pub fn window_violations(&self, x: u64, h: u64) -> ConstraintViolation {
        let mut v = ConstraintViolation::default();
        let n = self.curve.conductor_proxy();
        if (x as u128) <= 100 * n as u128 {
            v.push(format!("x > 100 N (x = {x}, N = {n})"));
        }
        if h > x {
            v.push(format!("h <= x (h = {h}, x = {x})"));
        }
        let xf = x as f64;
        let floor = xf.sqrt() * xf.ln();
        if x >= 2 && (h as f64) < floor {
            v.push(format!("sqrt(x) log x <= h (h = {h}, sqrt(x) log x = {floor:.1})"));
        }
        v
    }

    fn check_window(&self, x: u64, h: u64) -> Result<()> {
        if h == 0 {
            return Err(Error::Range("h must be at least 1".into()));
        }
        if x.checked_add(h).is_none() {
            return Err(Error::Range("x + h must fit in 64 bits".into()));
        }
        if self.opts.enforce_hypotheses {
            self.window_violations(x, h).into_result()?;
        }
        Ok(())
    }

    /// Resolved records for the good primes in `(lo, hi]`, in increasing order.
    pub fn records(&self, lo: u64, hi: u64) -> Result<Vec<FrobeniusRecord>> {
        let mut out = Vec::new();
        for (s, e) in passes(lo, hi, self.opts.pass_len) {
            let primes = self.opts.sieve.primes_between(s, e)?;
            let chunk: Vec<FrobeniusRecord> = primes
                .par_iter()
                .filter(|&&p| !self.curve.is_bad(p))
                .map(|&p| resolve_trace_with(&self.curve, p, &self.opts.resolve))
                .collect::<Result<_>>()?;
            out.extend(chunk);
        }
        Ok(out)
    }

    /// All window sums in one streaming pass. `interval` selects the primes
    /// for `raw_sum`; `max_m` the number of power sums.
    pub fn window_sums(
        &self,
        x: u64,
        h: u64,
        interval: Option<&AngleInterval>,
        max_m: Option<usize>,
    ) -> Result<WindowSums> {
        self.check_window(x, h)?;
        let glen = max_m.map_or(0, |m| m + 1);
        let full = AngleInterval::full();
        let interval = interval.unwrap_or(&full);
        let field = self.curve.field();
        let mut total = Acc::new(glen);
        for (s, e) in passes(x, x + h, self.opts.pass_len) {
            let primes = self.opts.sieve.primes_between(s, e)?;
            let parts: Vec<Acc> = primes
                .par_chunks(CHUNK)
                .map(|ps| self.accumulate(field, ps, interval, glen))
                .collect::<Result<_>>()?;
            for part in &parts {
                total.merge(part);
            }
        }
        let mut raw = total.split_in;
        if interval.contains_half_pi() {
            raw.merge(&total.inert_log);
        }
        Ok(WindowSums {
            n_primes: total.n_primes,
            n_split: total.n_split,
            n_inert: total.n_inert,
            n_excluded: total.n_excluded,
            all_log: total.all_log.value(),
            split_log: total.split_log.value(),
            inert_log: total.inert_log.value(),
            raw_sum: raw.value(),
            direct_sum: total.direct.value(),
            split_in_interval: total.split_in.value(),
            char_sum: total.chi.value(),
            grossen: total.grossen.iter().map(ExactSum::value).collect(),
        })
    }

    fn accumulate(&self, field: ImagQuadField, primes: &[u64], interval: &AngleInterval, glen: usize) -> Result<Acc> {
        let mut acc = Acc::new(glen);
        for &p in primes {
            let lp = (p as f64).ln();
            acc.n_primes += 1;
            acc.all_log.push(lp);
            acc.chi.push(field.kronecker_chi(p) as f64 * lp);
            let splitting = field.splitting_of_prime(p);
            if splitting == Splitting::Ramified || self.curve.is_bad(p) {
                acc.n_excluded += 1;
                continue;
            }
            if splitting == Splitting::Inert {
                acc.n_inert += 1;
                acc.inert_log.push(lp);
                if interval.contains_half_pi() {
                    acc.direct.push(lp);
                }
                continue;
            }
            let rec = resolve_trace_with(&self.curve, p, &self.opts.resolve)?;
            acc.n_split += 1;
            acc.split_log.push(lp);
            if interval.contains(rec.theta_p) {
                acc.split_in.push(lp);
                acc.direct.push(lp);
            }
            for (g, c) in acc.grossen.iter_mut().zip(ChebyshevCosines::for_record(&rec)) {
                g.push(c * lp);
            }
        }
        Ok(acc)
    }

    /// `Σ_{p ∈ (x, x+h], θ_p ∈ I} log p` with `μ(I)`, the relative error and
    /// the split and inert counts.
    pub fn weighted_angle_sum(&self, x: u64, h: u64, interval: &AngleInterval) -> Result<VerificationReport> {
        let s = self.window_sums(x, h, Some(interval), None)?;
        Ok(VerificationReport::from_sums(x, h, interval, &s))
    }

    /// `Σ χ_K(p) log p` over the window; ramified primes contribute zero.
    pub fn character_sum(&self, x: u64, h: u64) -> Result<f64> {
        Ok(self.window_sums(x, h, None, None)?.char_sum)
    }

    /// `Σ_{p split} cos(m θ_p) log p` over the window.
    pub fn grossen_sum(&self, x: u64, h: u64, m: usize) -> Result<f64> {
        Ok(self.grossen_sums(x, h, m)?[m])
    }

    /// The power sums for `m = 0..=max_m` in one pass.
    pub fn grossen_sums(&self, x: u64, h: u64, max_m: usize) -> Result<Vec<f64>> {
        Ok(self.window_sums(x, h, None, Some(max_m))?.grossen)
    }

    /// Brackets the split-prime sum over `I` between the minorant and majorant
    /// pairings of the degree-`degree` Selberg polynomials.
    pub fn sandwich_bracket(&self, x: u64, h: u64, interval: &AngleInterval, degree: usize) -> Result<SandwichBracket> {
        self.check_degree(x, degree)?;
        let s = self.window_sums(x, h, Some(interval), Some(degree))?;
        bracket(&s, interval, degree)
    }

    fn check_degree(&self, x: u64, degree: usize) -> Result<()> {
        if degree == 0 {
            return Err(Error::Parameter("degree M must be at least 1".into()));
        }
        let cap = max_degree_for(x);
        if self.opts.enforce_hypotheses && degree as f64 > cap {
            return Err(Error::Parameter(format!(
                "degree M = {degree} exceeds sqrt(x)/log x = {cap:.3}"
            )));
        }
        Ok(())
    }

    /// Full check of one configuration: the weighted sum, its sandwich, the
    /// character and power sums, and the envelope `E(x; c)` when `c` is given.
    ///
    /// Violated hypotheses are an error when hypotheses are enforced, and
    /// otherwise mark the report as `flagged`.
    pub fn verify(
        &self,
        config: &WindowConfig,
        interval: &AngleInterval,
        c: Option<f64>,
    ) -> Result<VerificationReport> {
        let mut v = config.violations_with(interval);
        v.violations
            .extend(self.window_violations(config.x, config.h).violations);
        let flagged = !v.is_empty();
        if flagged && self.opts.enforce_hypotheses {
            return Err(Error::Constraint(v));
        }
        self.check_degree(config.x, config.degree)?;
        let s = self.window_sums(config.x, config.h, Some(interval), Some(config.degree))?;
        let mut report = VerificationReport::from_sums(config.x, config.h, interval, &s);
        report.sandwich = Some(bracket(&s, interval, config.degree)?);
        report.grossen_sums = s.grossen.clone();
        report.envelope = match c {
            Some(c) => Some(error_model(config.x, c)?),
            None => None,
        };
        report.flagged = flagged;
        Ok(report)
    }
}

fn bracket(s: &WindowSums, interval: &AngleInterval, degree: usize) -> Result<SandwichBracket> {
    let lower = build_selberg(*interval, degree, Sign::Minorant)?.pair_with(&s.grossen);
    let upper = build_selberg(*interval, degree, Sign::Majorant)?.pair_with(&s.grossen);
    Ok(SandwichBracket {
        lower,
        direct: s.split_in_interval,
        upper,
    })
}

/// Splits `(lo, hi]` into consecutive half-open passes of at most `len` numbers.
fn passes(lo: u64, hi: u64, len: u64) -> impl Iterator<Item = (u64, u64)> {
    let len = len.max(1);
    let mut s = lo;
    std::iter::from_fn(move || {
        if s >= hi {
            return None;
        }
        let e = s.saturating_add(len).min(hi);
        let out = (s, e);
        s = e;
        Some(out)
    })
}

/// `Σ χ_K(p) log p` over `(x, x + h]` for a field alone.
pub fn character_sum(field: ImagQuadField, x: u64, h: u64) -> Result<f64> {
    character_sum_with(field, x, h, &SieveConfig::default())
}

pub fn character_sum_with(field: ImagQuadField, x: u64, h: u64, sieve: &SieveConfig) -> Result<f64> {
    if h == 0 {
        return Err(Error::Range("h must be at least 1".into()));
    }
    let hi = x
        .checked_add(h)
        .ok_or_else(|| Error::Range("x + h must fit in 64 bits".into()))?;
    let mut total = ExactSum::ZERO;
    for (s, e) in passes(x, hi, DEFAULT_PASS_LEN) {
        let primes = sieve.primes_between(s, e)?;
        let parts: Vec<ExactSum> = primes
            .par_chunks(CHUNK)
            .map(|ps| {
                ps.iter()
                    .map(|&p| field.kronecker_chi(p) as f64 * (p as f64).ln())
                    .sum::<ExactSum>()
            })
            .collect();
        for part in &parts {
            total.merge(part);
        }
    }
    Ok(total.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::traces::point_count_oracle;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn toy() -> Engine {
        Engine::with_options(CMCurve::catalog(1).unwrap(), EngineOptions::relaxed())
    }

    #[test]
    fn passes_cover_exactly() {
        let v: Vec<_> = passes(10, 35, 10).collect();
        assert_eq!(v, vec![(10, 20), (20, 30), (30, 35)]);
        assert_eq!(passes(5, 5, 3).count(), 0);
    }

    #[test]
    fn toy_window_fixtures() {
        let e = toy();
        let s = e.window_sums(100, 100, None, Some(1)).unwrap();
        assert_eq!(s.n_primes, 21);
        assert!((s.char_sum - -5.011_692_275_821_179).abs() < 1e-9);
        assert!((s.grossen[0] - 49.911_711_798_311_12).abs() < 1e-9);
        assert!((s.grossen[1] - -11.138_623_068_328_65).abs() < 1e-9);
        assert_eq!(s.grossen[0], s.split_log);
    }

    #[test]
    fn toy_window_matches_brute_force() {
        let e = toy();
        let curve = e.curve().clone();
        let i = AngleInterval::new(0.4, 2.0).unwrap();
        let s = e.window_sums(200, 300, Some(&i), Some(3)).unwrap();
        let mut raw = 0.0;
        let mut g3 = 0.0;
        for p in crate::primes::simple_primes_up_to(500).into_iter().filter(|&p| p > 200) {
            if curve.is_bad(p) {
                continue;
            }
            let a = point_count_oracle(&curve, p).unwrap();
            let theta = (a as f64 / (2.0 * (p as f64).sqrt())).acos();
            if (0.4..=2.0).contains(&theta) {
                raw += (p as f64).ln();
            }
            if a != 0 {
                g3 += (3.0 * theta).cos() * (p as f64).ln();
            }
        }
        assert!((s.raw_sum - raw).abs() < 1e-9);
        assert!((s.grossen[3] - g3).abs() < 1e-9);
    }

    #[test]
    fn decomposition_is_exact() {
        let e = toy();
        for i in [
            AngleInterval::full(),
            AngleInterval::new(0.5, 1.0).unwrap(),
            AngleInterval::new(1.0, 2.0).unwrap(),
        ] {
            let s = e.window_sums(1000, 5000, Some(&i), None).unwrap();
            assert_eq!(s.raw_sum, s.direct_sum);
        }
    }

    #[test]
    fn full_interval_counts_every_good_prime() {
        let e = toy();
        let s = e
            .window_sums(10_000, 10_000, Some(&AngleInterval::full()), None)
            .unwrap();
        assert!((s.raw_sum - (s.split_log + s.inert_log)).abs() < 1e-9);
        assert!(s.n_excluded == 0);
    }

    #[test]
    fn excludes_bad_and_ramified() {
        let e = Engine::with_options(CMCurve::catalog(2).unwrap(), EngineOptions::relaxed());
        let s = e.window_sums(1, 9, None, None).unwrap();
        // 2 and 3 are bad for the d = 2 model; 5 and 7 remain.
        assert_eq!((s.n_primes, s.n_excluded), (4, 2));
        // χ(2) = 0, χ(3) = +1, χ(5) = χ(7) = -1 for D = -8.
        let want = 3f64.ln() - 5f64.ln() - 7f64.ln();
        assert!((s.char_sum - want).abs() < 1e-12);
    }

    #[test]
    fn hypotheses_are_checked() {
        let e = Engine::new(CMCurve::catalog(1).unwrap());
        let err = e.weighted_angle_sum(100, 100, &AngleInterval::full()).unwrap_err();
        match err {
            Error::Constraint(v) => assert!(v.violations.iter().any(|s| s.starts_with("x > 100 N"))),
            other => panic!("{other:?}"),
        }
        assert!(e
            .window_violations(1_000_000, 100)
            .violations
            .iter()
            .any(|s| s.starts_with("sqrt(x)")));
        assert!(e.window_violations(1_000_000, 50_000).is_empty());
    }

    #[test]
    fn degree_range() {
        let e = Engine::new(CMCurve::catalog(1).unwrap());
        let i = AngleInterval::full();
        assert!(e.sandwich_bracket(1_000_000, 50_000, &i, 0).is_err());
        // sqrt(10^6)/log(10^6) ≈ 72.4
        assert!(e.sandwich_bracket(1_000_000, 50_000, &i, 73).is_err());
    }

    #[test]
    fn sandwich_contains_direct_sum() {
        let e = Engine::new(CMCurve::catalog(1).unwrap());
        for i in [
            AngleInterval::new(0.5, 1.0).unwrap(),
            AngleInterval::new(FRAC_PI_2, PI).unwrap(),
        ] {
            let b = e.sandwich_bracket(1_000_000, 50_000, &i, 64).unwrap();
            assert!(b.contains(1e-6 * 50_000.0), "{b:?}");
        }
    }

    #[test]
    fn character_sum_agrees_with_engine() {
        let e = toy();
        let f = e.curve().field();
        assert_eq!(character_sum(f, 100, 100).unwrap(), e.character_sum(100, 100).unwrap());
        assert!(character_sum(f, 100, 0).is_err());
    }

    #[test]
    fn records_skip_bad_primes() {
        let e = toy();
        let r = e.records(1, 30).unwrap();
        assert_eq!(r.first().unwrap().p, 3);
        assert!(r.windows(2).all(|w| w[0].p < w[1].p));
        assert_eq!(r.iter().find(|r| r.p == 5).unwrap().a_p, -2);
    }
}
