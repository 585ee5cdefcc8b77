use std::fmt;
use std::str::FromStr;

use crate::arith::{is_prime, Fp};
use crate::error::{Error, Result};
use crate::fields::{ImagQuadField, Splitting};
use crate::primes::simple_primes_up_to;

use super::group::CurveModP;
use super::resolve::point_count_oracle_unchecked;

/// Primes below this bound are checked against the Deuring dichotomy when a
/// curve is constructed.
pub const CM_CHECK_BOUND: u64 = 1000;

const COEFF_LIMIT: i64 = 1 << 40;

/// One short Weierstrass model per class-number-one field.
///
/// The models for `d = 1` and `d = 3` are `y^2 = x^3 - x` and `y^2 = x^3 + 1`;
/// the others are reduced twists of `y^2 = x^3 + 3j(1728 - j)x + 2j(1728 - j)^2`
/// for the CM `j`-invariant of the field.
const CATALOG: [(u64, i64, i64); 9] = [
    (1, -1, 0),
    (2, -30, 56),
    (3, 0, 1),
    (7, -35, -98),
    (11, -264, -1694),
    (19, -152, -722),
    (43, -3440, -77658),
    (67, -29480, -1948226),
    (163, -8697680, -9873093538),
];

/// An elliptic curve `y^2 = x^3 + ax + b` over `Q` with CM by `field`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CMCurve {
    a: i64,
    b: i64,
    field: ImagQuadField,
    bad_primes: Vec<u64>,
}

impl CMCurve {
    /// Builds and validates a model: nonsingular, and for every good prime
    /// `p < 1000`, `a_p = 0` exactly when `p` is inert in `field`.
    pub fn new(a: i64, b: i64, field: ImagQuadField) -> Result<Self> {
        if a.abs() >= COEFF_LIMIT || b.abs() >= COEFF_LIMIT {
            return Err(Error::Parameter(format!(
                "coefficients must stay below 2^40 in absolute value (a = {a}, b = {b})"
            )));
        }
        let disc = 4 * (a as i128).pow(3) + 27 * (b as i128).pow(2);
        if disc == 0 {
            return Err(Error::Singular);
        }
        let bad_primes = prime_factors(2 * disc.unsigned_abs())?;
        let curve = CMCurve {
            a,
            b,
            field,
            bad_primes,
        };
        curve.check_deuring(CM_CHECK_BOUND)?;
        Ok(curve)
    }

    /// The catalog model for `Q(sqrt(-d))`.
    pub fn catalog(d: u64) -> Result<Self> {
        let field = ImagQuadField::new(d)?;
        let &(_, a, b) = CATALOG
            .iter()
            .find(|(k, _, _)| *k == d)
            .expect("catalog covers every field");
        CMCurve::new(a, b, field)
    }

    pub fn catalog_all() -> Result<Vec<Self>> {
        ImagQuadField::all().map(|k| CMCurve::catalog(k.d())).collect()
    }

    fn check_deuring(&self, bound: u64) -> Result<()> {
        for p in simple_primes_up_to(bound) {
            if p == 2 || self.is_bad(p) {
                continue;
            }
            let splitting = self.field.splitting_of_prime(p);
            if splitting == Splitting::Ramified {
                continue;
            }
            let a_p = point_count_oracle_unchecked(&self.reduce(p), p);
            if (a_p == 0) != (splitting == Splitting::Inert) {
                return Err(Error::NotCm {
                    a: self.a,
                    b: self.b,
                    p,
                    a_p,
                });
            }
        }
        Ok(())
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn field(&self) -> ImagQuadField {
        self.field
    }

    /// Primes dividing `2(4a^3 + 27b^2)`.
    pub fn bad_primes(&self) -> &[u64] {
        &self.bad_primes
    }

    pub fn is_bad(&self, p: u64) -> bool {
        self.bad_primes.binary_search(&p).is_ok()
    }

    /// `max(bad_primes ∪ {D_K})`, the scale that window starts must exceed
    /// a hundredfold.
    pub fn conductor_proxy(&self) -> u64 {
        self.bad_primes
            .iter()
            .copied()
            .chain(std::iter::once(self.field.abs_discriminant()))
            .max()
            .unwrap_or(1)
    }

    /// The reduction mod `p`; the caller guarantees `p` is odd and good.
    pub fn reduce(&self, p: u64) -> CurveModP {
        let f = Fp::new(p);
        CurveModP::new(f, f.reduce_i64(self.a), f.reduce_i64(self.b))
    }
}

impl fmt::Display for CMCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 {:+}x {:+} over {}", self.a, self.b, self.field)
    }
}

/// Parses a catalog id (`d1`, `d163`) or a custom model `a,b,d`.
impl FromStr for CMCurve {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.contains(',') {
            let parts: Vec<&str> = s.split(',').map(str::trim).collect();
            if parts.len() != 3 {
                return Err(Error::Parse(format!("curve `{s}`: expected a,b,d")));
            }
            let parse = |t: &str| -> Result<i64> {
                t.parse()
                    .map_err(|_| Error::Parse(format!("curve `{s}`: `{t}` is not an integer")))
            };
            let field: ImagQuadField = parts[2].parse()?;
            CMCurve::new(parse(parts[0])?, parse(parts[1])?, field)
        } else {
            let field: ImagQuadField = s.parse()?;
            CMCurve::catalog(field.d())
        }
    }
}

/// Distinct prime factors, ascending. Trial division to `10^6`, then the
/// cofactor must be 1 or prime.
fn prime_factors(mut n: u128) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for q in simple_primes_up_to(1_000_000) {
        let q128 = q as u128;
        if q128 * q128 > n {
            break;
        }
        if n.is_multiple_of(q128) {
            out.push(q);
            while n.is_multiple_of(q128) {
                n /= q128;
            }
        }
    }
    if n > 1 {
        match u64::try_from(n) {
            Ok(m) if is_prime(m) => out.push(m),
            _ => {
                return Err(Error::Parameter(format!(
                    "discriminant cofactor {n} could not be factored"
                )))
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_valid_and_bad_primes_match() {
        let expected: [(u64, &[u64]); 9] = [
            (1, &[2]),
            (2, &[2, 3]),
            (3, &[2, 3]),
            (7, &[2, 7]),
            (11, &[2, 3, 11]),
            (19, &[2, 19]),
            (43, &[2, 43]),
            (67, &[2, 67]),
            (163, &[2, 163]),
        ];
        for (d, bad) in expected {
            let c = CMCurve::catalog(d).unwrap();
            assert_eq!(c.bad_primes(), bad, "d = {d}");
            assert_eq!(c.field().d(), d);
        }
    }

    #[test]
    fn parse_selectors() {
        let c: CMCurve = "d1".parse().unwrap();
        assert_eq!((c.a(), c.b()), (-1, 0));
        let c: CMCurve = "1,0,d1".parse().unwrap();
        assert_eq!((c.a(), c.b()), (1, 0));
        assert!("d4".parse::<CMCurve>().is_err());
        assert!("1,2".parse::<CMCurve>().is_err());
    }

    #[test]
    fn rejects_singular_and_non_cm() {
        let k = ImagQuadField::new(1).unwrap();
        assert_eq!(CMCurve::new(0, 0, k), Err(Error::Singular));
        assert_eq!(CMCurve::new(-3, 2, k), Err(Error::Singular));
        assert!(matches!(CMCurve::new(1, 1, k), Err(Error::NotCm { .. })));
        // Right j-invariant, wrong field.
        let k3 = ImagQuadField::new(3).unwrap();
        assert!(matches!(CMCurve::new(-1, 0, k3), Err(Error::NotCm { .. })));
    }

    #[test]
    fn conductor_proxy() {
        assert_eq!(CMCurve::catalog(1).unwrap().conductor_proxy(), 4);
        assert_eq!(CMCurve::catalog(163).unwrap().conductor_proxy(), 163);
        assert_eq!(CMCurve::catalog(2).unwrap().conductor_proxy(), 8);
    }
}
