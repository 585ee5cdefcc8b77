//! Representations `4p = u^2 + D_K v^2` and the trace candidates they induce.
//!
//! A pair `(u, v)` stands for the element `(u + v sqrt(-D_K)) / 2` of norm
//! `p`. Multiplying by a unit permutes the representations, so the traces of
//! the unit orbit are the only possible values of `a_p`.

use std::collections::BTreeSet;

use crate::arith::{exact_sqrt, isqrt, Fp};
use crate::error::{Error, Result};
use crate::fields::{ImagQuadField, Splitting};

/// Solves `u^2 + D_K v^2 = 4p` for odd `p` not dividing `D_K`.
///
/// Returns the canonical solution (minimal `u > 0`, then minimal `v >= 0`)
/// when `p` splits and `None` when it is inert.
pub fn cornacchia_4p(field: ImagQuadField, p: u64) -> Result<Option<(u64, u64)>> {
    if p.is_multiple_of(2) || p < 3 {
        return Err(Error::Parameter(format!("cornacchia_4p needs an odd prime, got {p}")));
    }
    if p >= 1 << 62 {
        return Err(Error::Range(format!("p = {p} is above 2^62")));
    }
    match field.splitting_of_prime(p) {
        Splitting::Ramified => return Err(Error::Ramified(p)),
        Splitting::Inert => return Ok(None),
        Splitting::Split => {}
    }
    let disc = field.abs_discriminant();
    let f = Fp::new(p);
    let mut x0 = f
        .sqrt(f.neg(disc % p))
        .ok_or_else(|| Error::Representation(format!("-{disc} has no square root mod {p}")))?;
    if x0 % 2 != disc % 2 {
        x0 = p - x0;
    }
    let four_p = 4 * p as u128;
    let limit = isqrt(four_p);
    let (mut r0, mut r1) = (2 * p as u128, x0 as u128);
    while r1 > limit {
        (r0, r1) = (r1, r0 % r1);
    }
    let rest = four_p - r1 * r1;
    if !rest.is_multiple_of(disc as u128) {
        return Err(Error::Representation(format!(
            "descent for p = {p} ended at u = {r1} with no integral v"
        )));
    }
    let v = exact_sqrt(rest / disc as u128)
        .ok_or_else(|| Error::Representation(format!("descent for p = {p} ended at u = {r1} with no integral v")))?;
    Ok(Some(canonical(field, r1 as i128, v as i128)))
}

/// Absolute values of all representations in the unit orbit of `(u, v)`.
fn orbit(field: ImagQuadField, u: i128, v: i128) -> Vec<(i128, i128)> {
    let mut out = vec![(u.abs(), v.abs())];
    match field.unit_count() {
        // (u/2 + v i) * i = -v + (u/2) i
        4 => out.push(((2 * v).abs(), (u / 2).abs())),
        // multiplication by the two primitive cube roots of unity
        6 => {
            out.push((((-u - 3 * v) / 2).abs(), ((u - v) / 2).abs()));
            out.push((((-u + 3 * v) / 2).abs(), ((-u - v) / 2).abs()));
        }
        _ => {}
    }
    out
}

fn canonical(field: ImagQuadField, u: i128, v: i128) -> (u64, u64) {
    let (u, v) = orbit(field, u, v).into_iter().min().expect("orbit is nonempty");
    (u as u64, v as u64)
}

/// All `t` with `|t| <= 2 sqrt(p)` that arise as `±` the trace of a unit
/// multiple of the element represented by `rep`, ascending.
pub fn trace_candidates(field: ImagQuadField, p: u64, rep: (u64, u64)) -> Result<Vec<i64>> {
    let disc = field.abs_discriminant() as i128;
    let (u, v) = (rep.0 as i128, rep.1 as i128);
    let four_p = 4 * p as i128;
    if u * u + disc * v * v != four_p {
        return Err(Error::Representation(format!(
            "({u}, {v}) does not satisfy u^2 + {disc} v^2 = {four_p}"
        )));
    }
    let mut traces: Vec<i128> = vec![u];
    match field.unit_count() {
        4 => traces.push(2 * v),
        6 if (u + 3 * v) % 2 == 0 => {
            traces.push((u + 3 * v) / 2);
            traces.push((u - 3 * v) / 2);
        }
        _ => {}
    }
    let set: BTreeSet<i64> = traces
        .into_iter()
        .flat_map(|t| [t, -t])
        .filter(|t| t * t <= four_p)
        .map(|t| t as i64)
        .collect();
    Ok(set.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::simple_primes_up_to;
    use proptest::prelude::*;

    fn field(d: u64) -> ImagQuadField {
        ImagQuadField::new(d).unwrap()
    }

    /// All `(u, v)` with `u > 0, v >= 0` and `u^2 + D v^2 = 4p`, ascending.
    fn exhaustive(disc: u64, p: u64) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        let mut v = 0;
        while disc * v * v <= 4 * p {
            let rest = 4 * p - disc * v * v;
            let u = (rest as f64).sqrt().round() as u64;
            if u > 0 && u * u == rest {
                out.push((u, v));
            }
            v += 1;
        }
        out.sort();
        out
    }

    #[test]
    fn examples() {
        assert_eq!(exhaustive(4, 5), vec![(2, 2), (4, 1)]);
        assert_eq!(cornacchia_4p(field(1), 5).unwrap(), Some((2, 2)));
        assert_eq!(cornacchia_4p(field(1), 3).unwrap(), None);
        assert_eq!(exhaustive(3, 7), vec![(1, 3), (4, 2), (5, 1)]);
        assert_eq!(cornacchia_4p(field(3), 7).unwrap(), Some((1, 3)));
        assert_eq!(cornacchia_4p(field(7), 7), Err(Error::Ramified(7)));
        assert!(cornacchia_4p(field(7), 2).is_err());
    }

    #[test]
    fn canonical_is_exhaustive_minimum() {
        for k in ImagQuadField::all() {
            let disc = k.abs_discriminant();
            for p in simple_primes_up_to(5000)
                .into_iter()
                .filter(|&p| p > 2 && disc % p != 0)
            {
                let got = cornacchia_4p(k, p).unwrap();
                let all = exhaustive(disc, p);
                assert_eq!(got, all.first().copied(), "{k} p = {p}");
            }
        }
    }

    #[test]
    fn candidate_examples() {
        assert_eq!(trace_candidates(field(1), 5, (2, 2)).unwrap(), vec![-4, -2, 2, 4]);
        assert_eq!(trace_candidates(field(7), 11, (4, 2)).unwrap(), vec![-4, 4]);
        assert_eq!(
            trace_candidates(field(3), 7, (5, 1)).unwrap(),
            vec![-5, -4, -1, 1, 4, 5]
        );
        assert!(trace_candidates(field(1), 5, (2, 1)).is_err());
    }

    #[test]
    fn candidates_do_not_depend_on_representative() {
        for k in [field(1), field(3)] {
            let disc = k.abs_discriminant();
            for p in simple_primes_up_to(3000)
                .into_iter()
                .filter(|&p| p > 3 && k.kronecker_chi(p) == 1)
            {
                let reps = exhaustive(disc, p);
                let first = trace_candidates(k, p, reps[0]).unwrap();
                for &r in &reps[1..] {
                    assert_eq!(trace_candidates(k, p, r).unwrap(), first, "{k} p = {p}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn solution_satisfies_norm_equation(n in 3u64..(1 << 40), d_idx in 0usize..9) {
            let k = ImagQuadField::all().nth(d_idx).unwrap();
            let p = crate::primes::sieve_range(n, n + 2000).unwrap().primes().first().copied();
            if let Some(p) = p.filter(|&p| k.abs_discriminant() % p != 0) {
                if let Some((u, v)) = cornacchia_4p(k, p).unwrap() {
                    let lhs = (u as u128).pow(2) + k.abs_discriminant() as u128 * (v as u128).pow(2);
                    prop_assert_eq!(lhs, 4 * p as u128);
                } else {
                    prop_assert_eq!(k.kronecker_chi(p), -1);
                }
            }
        }
    }
}
