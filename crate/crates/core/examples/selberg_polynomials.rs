// Beurling–Selberg majorant and minorant of an angle interval.

use frobangle::equidist::AngleInterval;
use frobangle::selberg::{build_selberg, Sign};

pub fn run_example() -> frobangle::Result<()> {
    let interval = AngleInterval::new(0.5, 1.0)?;
    println!(
        "I = {interval}, |I|/pi = {:.6}",
        interval.width() / std::f64::consts::PI
    );
    for m in [8, 32, 128, 512] {
        let maj = build_selberg(interval, m, Sign::Majorant)?;
        let min = build_selberg(interval, m, Sign::Minorant)?;
        let (up, down) = (maj.verify_extremal(4_000), min.verify_extremal(4_000));
        assert!(up.holds && down.holds);
        println!(
            "M = {m:>3}: b0 in [{:.6}, {:.6}], gap {:.2e}, worst crossing {:.1e}",
            min.coeffs()[0],
            maj.coeffs()[0],
            maj.coeffs()[0] - min.coeffs()[0],
            up.max_violation.max(down.max_violation)
        );
    }

    let maj = build_selberg(interval, 16, Sign::Majorant)?;
    for theta in [0.0, 0.4, 0.75, 1.1, 2.0] {
        println!("S+({theta:.2}) = {:+.5}", maj.evaluate(theta)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> frobangle::Result<()> {
    run_example()
}
