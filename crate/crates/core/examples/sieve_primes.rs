// Sieve primes in a window and check the Brun–Titchmarsh bound.
//
// ```text
// cargo run --example sieve_primes
// ```

use frobangle::primes::{brun_titchmarsh_check, SieveConfig};

pub fn run_example() -> frobangle::Result<()> {
    let sieve = SieveConfig::default();
    let small = sieve.primes_between(1, 50)?;
    println!("primes up to 50: {small:?}");

    let (lo, hi) = (1_000_000_000, 1_000_010_000);
    let segment = sieve.sieve_range(lo, hi)?;
    println!(
        "({lo}, {hi}]: {} primes, sum of log p = {:.3}, first {:?}",
        segment.len(),
        segment.log_weighted_count(),
        segment.primes().first()
    );

    for (x, y) in [(10_000, 1_000), (1_000_000, 10_000), (100_000_000, 100_000)] {
        let bt = brun_titchmarsh_check(x, y)?;
        println!(
            "pi({x} + {y}) - pi({x}) = {} <= 2Y/log Y = {:.1}: {}",
            bt.count, bt.bound, bt.holds
        );
        assert!(bt.holds);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> frobangle::Result<()> {
    run_example()
}
