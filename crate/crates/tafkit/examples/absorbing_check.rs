//! Decide whether ideals are two-absorbing: `abc ∈ I` must force one of
//! `ab`, `ac`, `bc` into `I`. Negative answers come with the first
//! refuting triple; positive answers come with the structural reason —
//! the ideal sits between a prime and its square, or above a product of
//! two incomparable primes.
//!
//! Run with: `cargo run --example absorbing_check`

use tafkit::absorbing::{ta_check, ta_structure, TaStructure, TaStructureOutcome};
use tafkit::finring::construct;
use tafkit::report::ideal_repr;
use tafkit::ringspec::parse_ringspec;

const GUARD: u64 = 4096;

fn main() -> Result<(), tafkit::Error> {
    // (4) in Z/8 is two-absorbing; (0) is not, and the scanner returns
    // the canonical counterexample 2 · 2 · 2 = 0 with 4 ∉ (0).
    let built = construct(&parse_ringspec("Z/8")?)?;
    let ring = &built.ring;
    for gens in ["4", "0"] {
        let ideal = ring.ideal_generate(&built.parse_gens(gens)?);
        match ta_check(ring, &ideal, GUARD)? {
            None => println!("({gens}) in Z/8 is two-absorbing"),
            Some(w) => {
                let (a, b, c) = w.elements(ring);
                println!(
                    "({gens}) in Z/8 is not: takes {} · {} · {} but no pair product",
                    ring.elem_string(&a),
                    ring.elem_string(&b),
                    ring.elem_string(&c),
                );
                assert!(w.verify(ring, &ideal));
            }
        }
    }

    // The structure dichotomy, on both shapes. In Z/8, (4) = (2)².
    let four = ring.ideal_generate(&built.parse_gens("4")?);
    if let TaStructureOutcome::Structure(TaStructure::PrimeSquare { p }) =
        ta_structure(ring, &four, GUARD)?
    {
        println!();
        println!("(4) in Z/8 sits between {} and its square", ideal_repr(ring, &p).display);
    }

    // In Z/6, (0) = (2)·(3) is the incomparable-pair shape.
    let built6 = construct(&parse_ringspec("Z/6")?)?;
    let zero = built6.ring.zero_ideal();
    if let TaStructureOutcome::Structure(TaStructure::PrimePair { p1, p2 }) =
        ta_structure(&built6.ring, &zero, GUARD)?
    {
        println!(
            "(0) in Z/6 lies over the incomparable primes {} and {}",
            ideal_repr(&built6.ring, &p1).display,
            ideal_repr(&built6.ring, &p2).display,
        );
    }
    Ok(())
}
