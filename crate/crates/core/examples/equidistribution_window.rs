// One short window: weighted angle sum, sandwich bracket and the verify report.

use frobangle::equidist::{AngleInterval, Engine, WindowConfig};
use frobangle::CMCurve;

pub fn run_example() -> frobangle::Result<()> {
    let engine = Engine::new(CMCurve::catalog(1)?);
    let (x, h) = (1_000_000, 100_000);
    let interval = AngleInterval::new(0.5, 1.5)?;

    let r = engine.weighted_angle_sum(x, h, &interval)?;
    println!(
        "sum over ({x}, {}] of log p [theta_p in {interval}] = {:.3}, expected mu*h = {:.3}, rel error {:+.5}",
        x + h,
        r.raw_sum,
        r.expected,
        r.rel_error.unwrap_or(f64::NAN)
    );

    for m in [4, 16, 64] {
        let b = engine.sandwich_bracket(x, h, &interval, m)?;
        println!("M = {m:>2}: {:.1} <= {:.1} <= {:.1}", b.lower, b.direct, b.upper);
    }

    // Derived exponents; the engine checks every hypothesis before summing.
    let cfg = WindowConfig::derived(x, h, &interval);
    println!(
        "derived: delta = {:.4}, theta = {:.4}, M = {}",
        cfg.delta, cfg.theta_exp, cfg.degree
    );
    let report = engine.verify(&cfg, &interval, Some(1.0))?;
    println!(
        "verify: rel error {:+.5}, sandwich {:?}, E(x; 1) = {:.4}, within envelope: {:?}",
        report.rel_error.unwrap_or(f64::NAN),
        report.sandwich.map(|b| (b.lower.round(), b.upper.round())),
        report.envelope.unwrap_or(f64::NAN),
        report.within_envelope()
    );
    let json = report.to_json();
    println!(
        "JSON report: {} bytes, {} power sums",
        json.len(),
        report.grossen_sums.len()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> frobangle::Result<()> {
    run_example()
}
