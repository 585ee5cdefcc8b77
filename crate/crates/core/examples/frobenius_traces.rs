// Frobenius traces of a CM curve: fast resolution against point counting.

use frobangle::traces::{point_count_oracle, resolve_trace};
use frobangle::CMCurve;

pub fn run_example() -> frobangle::Result<()> {
    let curve = CMCurve::catalog(3)?;
    println!("E: y^2 = x^3 + {}x + {}, CM by Q(sqrt -3)", curve.a(), curve.b());
    println!("{:>6} {:>9} {:>5} {:>9}  generator", "p", "splitting", "a_p", "theta_p");
    for p in frobangle::primes::simple_primes_up_to(80) {
        if curve.is_bad(p) {
            continue;
        }
        let r = resolve_trace(&curve, p)?;
        assert_eq!(r.a_p, point_count_oracle(&curve, p)?);
        println!(
            "{:>6} {:>9} {:>5} {:>9.6}  {:?}",
            r.p, r.splitting, r.a_p, r.theta_p, r.generator
        );
    }

    // Split primes far beyond naive point counting.
    for p in [999_999_937_u64, 1_000_000_009, 4_611_686_018_427_387_847] {
        let r = resolve_trace(&curve, p)?;
        println!("p = {p}: a_p = {}, theta_p = {:.12}", r.a_p, r.theta_p);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> frobangle::Result<()> {
    run_example()
}
