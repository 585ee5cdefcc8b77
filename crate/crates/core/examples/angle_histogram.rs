// Histogram of Frobenius angles against the limiting measure.
//
// Inert primes all sit at pi/2, which carries half the mass; split primes
// spread uniformly over [0, pi].

use std::f64::consts::PI;

use frobangle::equidist::{mu_measure, AngleInterval, Engine};
use frobangle::{CMCurve, Splitting};

// Odd, so pi/2 lies inside the middle bin.
const BINS: usize = 11;

pub fn run_example() -> frobangle::Result<()> {
    let engine = Engine::new(CMCurve::catalog(19)?);
    let records = engine.records(3_000_000, 3_300_000)?;
    let total: f64 = records.iter().map(|r| (r.p as f64).ln()).sum();

    let mut mass = [0.0; BINS];
    let mut inert = 0.0;
    for r in &records {
        let w = (r.p as f64).ln();
        if r.splitting == Splitting::Inert {
            inert += w;
        }
        mass[((r.theta_p / PI * BINS as f64) as usize).min(BINS - 1)] += w;
    }
    println!("inert share {:.4} (limit 0.5)", inert / total);
    for (k, m) in mass.iter().enumerate() {
        let bin = AngleInterval::new(PI * k as f64 / BINS as f64, PI * (k + 1) as f64 / BINS as f64)?;
        let (share, mu) = (m / total, mu_measure(&bin));
        let bar = "#".repeat(((share * 200.0) as usize).min(60));
        println!("[{:.3}, {:.3}] {share:.4} vs mu {mu:.4} {bar}", bin.alpha(), bin.beta());
        assert!((share - mu).abs() < 0.01);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> frobangle::Result<()> {
    run_example()
}
