use std::f64::consts::{FRAC_PI_2, PI};

use frobangle::equidist::{
    error_model, mu_measure, sweep, sweep_csv, AngleInterval, Engine, EngineOptions, SweepEntry, WindowConfig,
    CSV_HEADER,
};
use frobangle::error::Error;
use frobangle::primes::SieveConfig;
use frobangle::traces::CMCurve;

const X: u64 = 10_000_000;
const H: u64 = 1_000_000;

fn engine() -> Engine {
    Engine::new(CMCurve::catalog(1).unwrap())
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

// Reference values below were computed independently by brute-force point
// counting and direct summation over the window (x, x + h] = (10^7, 1.1·10^7].

#[test]
fn big_window_fixtures() {
    let e = engine();
    let s = e
        .window_sums(X, H, Some(&AngleInterval::new(0.5, 1.0).unwrap()), Some(3))
        .unwrap();
    assert_eq!((s.n_split, s.n_inert, s.n_excluded), (30_899, 31_039, 0));
    assert_eq!(s.n_primes, 61_938);
    assert!(close(s.split_log, 499_527.717_654_359_1, 1e-12));
    assert!(close(s.inert_log, 501_790.205_002_837_47, 1e-12));
    assert!(close(s.all_log, 1_001_317.922_657_196_6, 1e-12));
    assert!(close(s.raw_sum, 79_457.873_977_444_79, 1e-12));
    assert!(close(s.char_sum, -2_262.5, 1e-4));
    assert!(close(s.grossen[1], 1_615.255_726_647_031_7, 1e-9));
    assert!(close(s.grossen[2], -83.628_593_460_499_46, 1e-9));
    assert!(close(s.grossen[3], 1_159.185_421_850_458_2, 1e-9));
}

#[test]
fn relative_error_fixtures() {
    let e = engine();
    let cases = [
        (0.0, PI, 1_001_317.922_657_196_6, 0.001_317_9),
        (0.5, 1.0, 79_457.873_977_444_79, -0.001_502_9),
        (FRAC_PI_2 - 0.01, FRAC_PI_2 + 0.01, 504_975.205_831_916_36, 0.003_561_5),
    ];
    for (a, b, raw, rel) in cases {
        let r = e.weighted_angle_sum(X, H, &AngleInterval::new(a, b).unwrap()).unwrap();
        assert!(close(r.raw_sum, raw, 1e-12), "[{a}, {b}]: {}", r.raw_sum);
        assert!(
            (r.rel_error.unwrap() - rel).abs() < 1e-7,
            "[{a}, {b}]: {:?}",
            r.rel_error
        );
        assert_eq!(r.expected, r.mu * H as f64);
    }
}

#[test]
fn decomposition_is_exact() {
    let e = engine();
    for (a, b) in [(0.0, PI), (0.5, 1.0), (1.0, 2.0), (FRAC_PI_2, PI)] {
        let s = e
            .window_sums(X, H, Some(&AngleInterval::new(a, b).unwrap()), None)
            .unwrap();
        assert_eq!(s.raw_sum, s.direct_sum, "[{a}, {b}]");
    }
}

#[test]
fn additivity_at_a_cut() {
    let e = engine();
    let (a, c, b) = (0.5, 0.8, 1.3);
    let sum = |lo: f64, hi: f64| {
        e.weighted_angle_sum(X, H, &AngleInterval::new(lo, hi).unwrap())
            .unwrap()
    };
    let (left, right, whole) = (sum(a, c), sum(c, b), sum(a, b));
    // Closed intervals count a prime at the cut on both sides.
    let at_cut: f64 = e
        .records(X, X + H)
        .unwrap()
        .iter()
        .filter(|r| (r.theta_p - c).abs() <= 1e-12)
        .map(|r| (r.p as f64).ln())
        .sum();
    assert!((left.raw_sum + right.raw_sum - whole.raw_sum - at_cut).abs() < 1e-6);
    let (ia, ib, i) = (
        AngleInterval::new(a, c).unwrap(),
        AngleInterval::new(c, b).unwrap(),
        AngleInterval::new(a, b).unwrap(),
    );
    assert!((mu_measure(&ia) + mu_measure(&ib) - mu_measure(&i)).abs() < 1e-15);
}

#[test]
fn counts_match_good_primes() {
    let curve = CMCurve::catalog(2).unwrap();
    let e = Engine::with_options(curve.clone(), EngineOptions::relaxed());
    let s = e.window_sums(1, 20_000, None, None).unwrap();
    let good = SieveConfig::default()
        .primes_between(1, 20_001)
        .unwrap()
        .into_iter()
        .filter(|&p| !curve.is_bad(p))
        .count() as u64;
    assert_eq!(s.n_split + s.n_inert, good);
    assert_eq!(s.n_excluded, 2);
}

#[test]
fn total_measure() {
    assert_eq!(mu_measure(&AngleInterval::full()), 1.0);
}

#[test]
fn sandwich_on_several_intervals() {
    let e = engine();
    for (a, b) in [(0.0, PI), (0.5, 1.0), (1.0, 2.0), (2.5, PI)] {
        for m in [8, 64, 128] {
            let br = e.sandwich_bracket(X, H, &AngleInterval::new(a, b).unwrap(), m).unwrap();
            assert!(br.contains(1e-6 * H as f64), "[{a}, {b}] M = {m}: {br:?}");
        }
    }
}

#[test]
fn degree_one_bracket_is_wide() {
    let br = engine()
        .sandwich_bracket(X, H, &AngleInterval::new(0.5, 1.0).unwrap(), 1)
        .unwrap();
    assert!(br.contains(1.0));
    assert!(br.width() > 0.1 * H as f64);
}

fn config(delta: f64, theta_exp: f64) -> WindowConfig {
    WindowConfig {
        x: X,
        h: H,
        delta,
        theta_exp,
        degree: 128,
    }
}

#[test]
fn verify_valid_configuration() {
    let i = AngleInterval::new(0.5, 1.0).unwrap();
    let r = engine().verify(&config(0.15, 0.05), &i, Some(1.0)).unwrap();
    assert!(r.rel_error.unwrap().abs() <= 0.10);
    assert!(!r.flagged);
    assert_eq!(r.grossen_sums.len(), 129);
    assert!(r.sandwich.unwrap().contains(1.0));
    assert!((r.envelope.unwrap() - 0.165_879_308_830_439_33).abs() < 1e-12);
    assert_eq!(r.within_envelope(), Some(true));
}

#[test]
fn verify_rejections() {
    let i = AngleInterval::new(0.5, 1.0).unwrap();
    let e = engine();
    match e.verify(&config(0.15, 0.06), &i, None) {
        Err(Error::Constraint(v)) => assert!(v.violations[0].starts_with("delta + theta < 5/24")),
        other => panic!("{other:?}"),
    }
    // x^(1 - 0.14) ≈ 1.047·10^6 exceeds h = 10^6
    match e.verify(&config(0.14, 0.05), &i, None) {
        Err(Error::Constraint(v)) => assert!(v.violations.iter().any(|s| s.contains("h = 1000000 is too small"))),
        other => panic!("{other:?}"),
    }
    let relaxed = Engine::with_options(CMCurve::catalog(1).unwrap(), EngineOptions::relaxed());
    let r = relaxed.verify(&config(0.15, 0.06), &i, None).unwrap();
    assert!(r.flagged);
}

#[test]
fn error_model_examples() {
    assert!(error_model(1_000_000_000, 1e-12).unwrap() > 1.0 - 1e-10);
    assert!(error_model(100_000_000, 1.0).unwrap() < error_model(1_000_000, 1.0).unwrap());
    assert!((error_model(X, 1.0).unwrap() - 0.1659).abs() < 1e-4);
    assert!(error_model(15, 1.0).is_err());
}

fn entry(x: u64) -> SweepEntry {
    SweepEntry {
        x,
        h: (x as f64).powf(0.85).ceil() as u64,
        alpha: 0.5,
        beta: 1.5,
        delta: Some(0.15),
        theta_exp: Some(0.01),
        degree: Some(16),
    }
}

#[test]
fn sweep_over_decades() {
    let rows = sweep(&engine(), &[entry(100_000), entry(1_000_000), entry(10_000_000)]);
    let csv = sweep_csv(&rows);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], format!("{CSV_HEADER},status"));
    assert_eq!(lines.len(), 4);
    let xs: Vec<u64> = lines[1..]
        .iter()
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert!(xs.windows(2).all(|w| w[0] < w[1]));
    for l in &lines[1..] {
        let cols: Vec<&str> = l.split(',').collect();
        assert_eq!(cols.last(), Some(&"ok"), "{l}");
        let rel: f64 = cols[6].parse().unwrap();
        assert!(rel.abs() < 0.2);
    }
}

#[test]
fn empty_sweep_is_header_only() {
    assert_eq!(sweep_csv(&sweep(&engine(), &[])), format!("{CSV_HEADER},status\n"));
}
