//! Factor proper ideals into products of two-absorbing ideals. The
//! search walks the divisor poset (ideals containing the target) with
//! memoization; results are re-verified by exact re-multiplication, and
//! a `None` means the whole poset was exhausted.
//!
//! Run with: `cargo run --example factorization_search`

use tafkit::factorize::{ta_factorization, ta_factorization_shortest, verify_factorization};
use tafkit::finring::construct;
use tafkit::report::ideal_repr;
use tafkit::ringspec::parse_ringspec;

const GUARD: u64 = 4096;

fn main() -> Result<(), tafkit::Error> {
    // (0) in Z/8 factors: the first factorization found and the
    // shortest one both re-multiply exactly.
    let built = construct(&parse_ringspec("Z/8")?)?;
    let ring = &built.ring;
    let zero = ring.zero_ideal();

    let found = ta_factorization(ring, &zero, GUARD)?.expect("(0) factors in Z/8");
    let shortest = ta_factorization_shortest(ring, &zero, GUARD)?.expect("still factors");
    let names = |fs: &[tafkit::finring::FinIdeal]| -> String {
        fs.iter()
            .map(|f| ideal_repr(ring, f).display.clone())
            .collect::<Vec<_>>()
            .join(" · ")
    };
    println!("(0) in Z/8   first found: {}", names(&found));
    println!("(0) in Z/8   shortest:    {}", names(&shortest));
    assert!(verify_factorization(ring, &zero, &found, GUARD));
    assert!(verify_factorization(ring, &zero, &shortest, GUARD));

    // (x) in Z/8[x]/(x^2,2x) does not factor: the ideal is not
    // two-absorbing itself, and no product of two-absorbing divisors
    // hits it. The search exhausts the divisor poset and says so.
    let built_t = construct(&parse_ringspec("Z/8[x]/(x^2,2x)")?)?;
    let ring_t = &built_t.ring;
    let x = ring_t.ideal_generate(&built_t.parse_gens("x")?);
    match ta_factorization(ring_t, &x, GUARD)? {
        Some(fs) => println!("(x) factored as {} — unexpected!", names(&fs)),
        None => println!("(x) in Z/8[x]/(x^2,2x) admits no factorization (poset exhausted)"),
    }
    Ok(())
}
