use std::f64::consts::{FRAC_PI_2, PI};

use frobangle::equidist::AngleInterval;
use frobangle::selberg::{build_selberg, SelbergPolynomial, Sign, DECAY_CONSTANT};

const WIDTHS: [f64; 4] = [0.05, 0.5, 2.0, PI];
const DEGREES: [usize; 4] = [8, 32, 128, 1024];

/// Each width at the left end, the middle and the right end of [0, π].
fn placements(width: f64) -> Vec<AngleInterval> {
    if width >= PI {
        return vec![AngleInterval::full()];
    }
    vec![
        AngleInterval::new(0.0, width).unwrap(),
        AngleInterval::new(FRAC_PI_2 - width / 2.0, FRAC_PI_2 + width / 2.0).unwrap(),
        AngleInterval::new(PI - width, PI).unwrap(),
    ]
}

fn matrix() -> impl Iterator<Item = SelbergPolynomial> {
    WIDTHS.into_iter().flat_map(|w| {
        placements(w).into_iter().flat_map(|i| {
            DEGREES
                .into_iter()
                .flat_map(move |m| [Sign::Majorant, Sign::Minorant].map(|s| build_selberg(i, m, s).unwrap()))
        })
    })
}

#[test]
fn extremal_on_every_placement() {
    for poly in matrix() {
        let r = poly.verify_extremal(10_000);
        assert!(
            r.holds,
            "{} of {} at M = {}: {:e}",
            poly.sign(),
            poly.interval(),
            poly.degree(),
            r.max_violation
        );
    }
}

#[test]
fn coefficient_count_and_mass() {
    for poly in matrix() {
        let m = poly.degree();
        assert_eq!(poly.coeffs().len(), m + 1);
        let (centre, radius) = (poly.interval().width() / PI, 2.0 / (m as f64 + 1.0));
        let b0 = poly.coeffs()[0];
        assert!(centre - radius <= b0 && b0 <= centre + radius);
    }
}

#[test]
fn coefficients_decay() {
    for poly in matrix() {
        let w = poly.interval().width();
        let big_m = poly.degree() as f64;
        for (m, b) in poly.coeffs().iter().enumerate().skip(1) {
            let bound = DECAY_CONSTANT * (w.min(1.0 / m as f64) + 1.0 / big_m);
            assert!(b.abs() <= bound, "m = {m}: |b_m| = {} > {bound}", b.abs());
        }
    }
}

#[test]
fn integrals_bracket_the_measure() {
    // (1/π) ∫ S = b_0, since cos(mθ) integrates to zero for m >= 1.
    for poly in matrix() {
        let target = poly.interval().width() / PI;
        match poly.sign() {
            Sign::Majorant => assert!(poly.coeffs()[0] >= target),
            Sign::Minorant => assert!(poly.coeffs()[0] <= target),
        }
    }
}

#[test]
fn integral_by_quadrature() {
    let i = AngleInterval::new(0.5, 1.0).unwrap();
    let poly = build_selberg(i, 32, Sign::Majorant).unwrap();
    let n = 20_000;
    let mean: f64 = (0..n)
        .map(|k| poly.evaluate(PI * (k as f64 + 0.5) / n as f64).unwrap())
        .sum::<f64>()
        / n as f64;
    assert!((mean - poly.coeffs()[0]).abs() < 1e-9);
}

#[test]
fn pointwise_examples() {
    let i = AngleInterval::new(0.5, 1.0).unwrap();
    let maj = build_selberg(i, 32, Sign::Majorant).unwrap();
    let min = build_selberg(i, 32, Sign::Minorant).unwrap();
    assert!(maj.evaluate(0.75).unwrap() >= 1.0);
    assert!(min.evaluate(2.0).unwrap() <= 0.0);
    assert!(maj.evaluate(-0.1).is_err());
    assert!(maj.evaluate(PI + 0.1).is_err());
}

#[test]
fn higher_degree_tightens() {
    let i = AngleInterval::new(0.5, 1.0).unwrap();
    let gap = |m| {
        build_selberg(i, m, Sign::Majorant).unwrap().coeffs()[0]
            - build_selberg(i, m, Sign::Minorant).unwrap().coeffs()[0]
    };
    assert!(gap(128) < gap(32) && gap(32) < gap(8));
}
