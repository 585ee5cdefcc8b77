// How small primes split in each of the nine class-number-one fields.

use frobangle::{ImagQuadField, Splitting};

pub fn run_example() -> frobangle::Result<()> {
    let primes = frobangle::primes::simple_primes_up_to(60);
    for field in ImagQuadField::all() {
        let row: String = primes
            .iter()
            .map(|&p| match field.splitting_type(p) {
                Ok(Splitting::Split) => 's',
                Ok(Splitting::Inert) => 'i',
                Ok(Splitting::Ramified) => 'r',
                Err(_) => '?',
            })
            .collect();
        println!(
            "d = {:>3}  D_K = -{:<3}  units {}  {row}",
            field.d(),
            field.abs_discriminant(),
            field.unit_count()
        );
    }
    println!("columns: {primes:?}");

    // chi_K is the splitting behaviour as a character: 1, -1 or 0.
    let k = ImagQuadField::new(7)?;
    for p in [2, 3, 7, 11] {
        println!("chi_K({p}) = {:>2} for Q(sqrt -7)", k.kronecker_chi(p));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> frobangle::Result<()> {
    run_example()
}
