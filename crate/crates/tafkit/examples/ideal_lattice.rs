//! Enumerate the full ideal lattice of a finite ring and read off the
//! structure: primality, maximality, radicals, and minimal primes.
//!
//! Run with: `cargo run --example ideal_lattice`

use tafkit::finring::{construct, enumerate_ideals, min_primes};
use tafkit::report::ideal_repr;
use tafkit::ringspec::parse_ringspec;

const GUARD: u64 = 4096;

fn main() -> Result<(), tafkit::Error> {
    let built = construct(&parse_ringspec("Z/12")?)?;
    let ring = &built.ring;

    println!("ideals of Z/12, in canonical order:");
    println!("{:>12} {:>5} {:>6} {:>8} {:>10}", "ideal", "size", "prime", "maximal", "radical");
    for ideal in enumerate_ideals(ring, GUARD)? {
        let radical = ring.ideal_radical(&ideal);
        println!(
            "{:>12} {:>5} {:>6} {:>8} {:>10}",
            ideal_repr(ring, &ideal).display,
            ideal.len(),
            ring.is_prime_ideal(&ideal),
            ring.is_maximal_ideal(&ideal),
            ideal_repr(ring, &radical).display,
        );
    }

    // Minimal primes over an ideal: the primes that witness its radical.
    let zero = ring.zero_ideal();
    let primes = min_primes(ring, &zero, GUARD)?;
    let names: Vec<String> = primes.iter().map(|p| ideal_repr(ring, p).display.clone()).collect();
    println!();
    println!("minimal primes over (0) in Z/12: {}", names.join(", "));

    // Quotients report their structure: Z/12 / (4) has 4 elements.
    let four = built.parse_gens("4").map(|g| ring.ideal_generate(&g))?;
    let (quotient, _) = ring.quotient_ring(&four);
    println!("Z/12 modulo (4): size {}, additive shape {:?}", quotient.size(), quotient.orders());
    Ok(())
}
