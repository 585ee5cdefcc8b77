// Character sums and power sums of Frobenius angles are small next to h.

use frobangle::equidist::{character_sum, Engine};
use frobangle::{CMCurve, ImagQuadField};

pub fn run_example() -> frobangle::Result<()> {
    let (x, h) = (2_000_000, 200_000);
    for d in [1, 2, 7, 163] {
        let chi = character_sum(ImagQuadField::new(d)?, x, h)?;
        println!(
            "d = {d:>3}: sum chi_K(p) log p = {chi:>10.2}  (/h = {:+.5})",
            chi / h as f64
        );
    }

    let engine = Engine::new(CMCurve::catalog(11)?);
    let sums = engine.grossen_sums(x, h, 6)?;
    // m = 0 is the full weighted count of good primes.
    for (m, s) in sums.iter().enumerate() {
        println!(
            "m = {m}: sum log p cos(m theta_p) = {s:>12.2}  (/h = {:+.5})",
            s / h as f64
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> frobangle::Result<()> {
    run_example()
}
