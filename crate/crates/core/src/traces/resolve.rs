use std::f64::consts::FRAC_PI_2;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{is_prime, mix_seed};
use crate::error::{Error, Result};
use crate::fields::Splitting;

use super::cornacchia::{cornacchia_4p, trace_candidates};
use super::curve::CMCurve;
use super::group::CurveModP;

pub const DEFAULT_FALLBACK_THRESHOLD: u64 = 10_000;
pub const DEFAULT_ORACLE_CEILING: u64 = 1_000_000;
pub const DEFAULT_MAX_POINTS: u32 = 32;
/// Largest prime the resolver accepts.
pub const MAX_PRIME: u64 = 1 << 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResolveOptions {
    /// Split primes up to this bound are counted directly.
    pub fallback_threshold: u64,
    /// Hard ceiling for the `O(p)` point count.
    pub oracle_ceiling: u64,
    /// Points sampled on the curve, and again on its quadratic twist, before
    /// giving up on annihilation.
    pub max_points: u32,
    pub seed: u64,
}

impl Default for ResolveOptions {
    fn default() -> Self {
        ResolveOptions {
            fallback_threshold: DEFAULT_FALLBACK_THRESHOLD,
            oracle_ceiling: DEFAULT_ORACLE_CEILING,
            max_points: DEFAULT_MAX_POINTS,
            seed: 0,
        }
    }
}

impl ResolveOptions {
    pub fn with_seed(seed: u64) -> Self {
        ResolveOptions {
            seed,
            ..Self::default()
        }
    }
}

/// Trace and angle of Frobenius at one prime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrobeniusRecord {
    pub p: u64,
    pub splitting: Splitting,
    pub a_p: i64,
    pub theta_p: f64,
    /// A representation `u^2 + D_K v^2 = 4p` of a generator of a prime above `p`.
    pub generator: Option<(u64, u64)>,
}

impl FrobeniusRecord {
    pub(crate) fn new(p: u64, splitting: Splitting, a_p: i64, generator: Option<(u64, u64)>) -> Self {
        debug_assert!((a_p as i128).pow(2) <= 4 * p as i128, "Hasse bound at p = {p}");
        debug_assert!(splitting != Splitting::Inert || a_p == 0);
        FrobeniusRecord {
            p,
            splitting,
            a_p,
            theta_p: frobenius_angle(p, a_p),
            generator,
        }
    }

    /// `cos θ_p = a_p / (2 sqrt p)`.
    pub fn cos_theta(&self) -> f64 {
        self.a_p as f64 / (2.0 * (self.p as f64).sqrt())
    }
}

/// The angle `θ ∈ [0, π]` with `a = 2 sqrt(p) cos θ`.
///
/// Computed as `atan2(sqrt(4p - a^2), a)` from the exact integer `4p - a^2`,
/// which equals `arccos(a / 2 sqrt p)` and stays accurate where the arccos
/// argument is near `±1`.
pub fn frobenius_angle(p: u64, a: i64) -> f64 {
    if a == 0 {
        return FRAC_PI_2;
    }
    let gap = (4 * p as i128 - (a as i128).pow(2)).max(0);
    (gap as f64).sqrt().atan2(a as f64)
}

/// `a_p = p + 1 - #E(F_p)` by counting points over all of `F_p`.
pub fn point_count_oracle(curve: &CMCurve, p: u64) -> Result<i64> {
    point_count_oracle_with(curve, p, DEFAULT_ORACLE_CEILING)
}

pub fn point_count_oracle_with(curve: &CMCurve, p: u64, ceiling: u64) -> Result<i64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::Parameter("the point-count oracle needs an odd prime".into()));
    }
    if curve.is_bad(p) {
        return Err(Error::BadPrime(p));
    }
    if p > ceiling {
        return Err(Error::OverCeiling { p, ceiling });
    }
    Ok(point_count_oracle_unchecked(&curve.reduce(p), p))
}

/// `-Σ_x legendre(x^3 + ax + b)` using a table of squares mod `p`.
pub(crate) fn point_count_oracle_unchecked(c: &CurveModP, p: u64) -> i64 {
    let f = c.field();
    let mut roots = vec![0u8; p as usize];
    for y in 0..p {
        roots[f.sqr(y) as usize] += 1;
    }
    let mut affine: i64 = 0;
    for x in 0..p {
        affine += roots[c.rhs(x) as usize] as i64;
    }
    // #E = affine + 1
    p as i64 - affine
}

/// Resolves `a_p` and `θ_p` for a good prime with default options.
pub fn resolve_trace(curve: &CMCurve, p: u64) -> Result<FrobeniusRecord> {
    resolve_trace_with(curve, p, &ResolveOptions::default())
}

/// Inert primes give `a_p = 0`. For split primes the unit orbit of the
/// Cornacchia representation supplies the candidates, and a candidate `t`
/// survives only while `(p + 1 - t)·P = O` for sampled points `P` on the
/// curve and `(p + 1 + t)·Q = O` for points `Q` on its quadratic twist.
pub fn resolve_trace_with(curve: &CMCurve, p: u64, opts: &ResolveOptions) -> Result<FrobeniusRecord> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p >= MAX_PRIME {
        return Err(Error::Range(format!("p = {p} is above 2^62")));
    }
    if curve.is_bad(p) {
        return Err(Error::BadPrime(p));
    }
    let field = curve.field();
    match field.splitting_of_prime(p) {
        Splitting::Inert => Ok(FrobeniusRecord::new(p, Splitting::Inert, 0, None)),
        Splitting::Ramified => {
            if p > opts.oracle_ceiling {
                return Err(Error::Ramified(p));
            }
            let a_p = point_count_oracle_with(curve, p, opts.oracle_ceiling)?;
            Ok(FrobeniusRecord::new(p, Splitting::Ramified, a_p, None))
        }
        Splitting::Split => {
            let rep = cornacchia_4p(field, p)?
                .ok_or_else(|| Error::Representation(format!("split prime {p} has no representation")))?;
            let a_p = if p <= opts.fallback_threshold {
                point_count_oracle_with(curve, p, opts.oracle_ceiling)?
            } else {
                let candidates = trace_candidates(field, p, rep)?;
                match eliminate(curve, p, candidates, opts) {
                    Elimination::Unique(t) => t,
                    Elimination::Stalled(_) if p <= opts.oracle_ceiling => {
                        point_count_oracle_with(curve, p, opts.oracle_ceiling)?
                    }
                    Elimination::Stalled(_) => return Err(Error::Ambiguous(p)),
                    Elimination::Empty => return Err(Error::Inconsistent(p)),
                }
            };
            Ok(FrobeniusRecord::new(p, Splitting::Split, a_p, Some(rep)))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Elimination {
    Unique(i64),
    Stalled(Vec<i64>),
    Empty,
}

fn eliminate(curve: &CMCurve, p: u64, mut alive: Vec<i64>, opts: &ResolveOptions) -> Elimination {
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(opts.seed, p));
    let e = curve.reduce(p);
    let order = |t: i64, sign: i64| (p as i64 + 1 - sign * t) as u64;
    for _ in 0..opts.max_points {
        if alive.len() <= 1 {
            break;
        }
        let pt = e.random_point(&mut rng);
        alive.retain(|&t| e.mul(&pt, order(t, 1)).is_infinity());
    }
    if alive.len() > 1 {
        let twist = e.twist(e.field().non_residue());
        for _ in 0..opts.max_points {
            if alive.len() <= 1 {
                break;
            }
            let pt = twist.random_point(&mut rng);
            alive.retain(|&t| twist.mul(&pt, order(t, -1)).is_infinity());
        }
    }
    match alive.len() {
        0 => Elimination::Empty,
        1 => Elimination::Unique(alive[0]),
        _ => Elimination::Stalled(alive),
    }
}

/// `cos(m θ_p)` by the Chebyshev recurrence `c_m = 2 cos θ_p c_{m-1} - c_{m-2}`.
///
/// Only defined for split primes, the ones that enter the power sums.
pub fn cos_m_theta(record: &FrobeniusRecord, m: u64) -> Result<f64> {
    if record.splitting != Splitting::Split {
        return Err(Error::Parameter(format!(
            "cos(m θ_p) is only taken over split primes; p = {} is {}",
            record.p, record.splitting
        )));
    }
    Ok(ChebyshevCosines::for_record(record)
        .nth(m as usize)
        .expect("the iterator is infinite"))
}

/// Yields `cos(0·θ), cos(1·θ), cos(2·θ), …`.
///
/// Runs the Chebyshev recurrence in Reinsch's difference form on
/// `φ = min(θ, π - θ)`, driven by `1 - cos φ` rather than `cos φ`; the plain
/// three-term form loses accuracy like `1/sin θ` near `0` and `π`.
#[derive(Debug, Clone)]
pub struct ChebyshevCosines {
    /// `-2 (1 - cos φ)`
    lambda: f64,
    /// `cos(m φ)`
    u: f64,
    /// `cos((m + 1) φ) - cos(m φ)`
    d: f64,
    /// `-1` when `θ > π/2`, where `cos(m θ) = (-1)^m cos(m φ)`.
    flip: f64,
    sign: f64,
}

impl ChebyshevCosines {
    pub fn new(cos_theta: f64) -> Self {
        Self::from_gap(1.0 - cos_theta.abs(), cos_theta < 0.0)
    }

    /// Takes `1 - |cos θ_p|` from the exact integer `4p - a_p^2`.
    pub fn for_record(record: &FrobeniusRecord) -> Self {
        let gap = (4 * record.p as i128 - (record.a_p as i128).pow(2)) as f64;
        let two_sqrt_p = 2.0 * (record.p as f64).sqrt();
        // 1 - |a|/(2 sqrt p) = (4p - a^2) / (2 sqrt p (2 sqrt p + |a|))
        let one_minus = gap / (two_sqrt_p * (two_sqrt_p + record.a_p.unsigned_abs() as f64));
        Self::from_gap(one_minus, record.a_p < 0)
    }

    fn from_gap(one_minus_cos: f64, obtuse: bool) -> Self {
        let lambda = -2.0 * one_minus_cos;
        ChebyshevCosines {
            lambda,
            u: 1.0,
            d: lambda / 2.0,
            flip: if obtuse { -1.0 } else { 1.0 },
            sign: 1.0,
        }
    }
}

impl Iterator for ChebyshevCosines {
    type Item = f64;

    #[inline]
    fn next(&mut self) -> Option<f64> {
        let out = self.sign * self.u;
        self.u += self.d;
        self.d += self.lambda * self.u;
        self.sign *= self.flip;
        Some(out)
    }
}
