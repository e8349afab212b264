//! Exact ideal arithmetic in quadratic orders `Z[√d]`: Hermite normal
//! forms, norms, products, the finite-quotient bridge, and the two
//! reference computations — `(3+w)` factors into two primes over
//! `d = −11` but admits no factorization over `d = −7`.
//!
//! Run with: `cargo run --example quadratic_orders`

use tafkit::quadord::{
    min_primes_quad, quotient_finite, ta_check_quad, ta_factorization_quad, QuadElement,
    QuadOrder,
};

const GUARD: u64 = 4096;

fn main() -> Result<(), tafkit::Error> {
    // Ideals are canonical column pairs [(a, 0), (b, c)]; the norm
    // a·c is the index in the order — exactly the size of the quotient.
    let order = QuadOrder::sqrt_order(-11)?;
    let ideal = order.principal(&QuadElement::new(3, 1))?;
    println!("in {}:", order.describe());
    println!("  (3+w) has normal form {} with norm {}", ideal.display(), ideal.norm());

    let j4 = order.ideal_from_gens(&[QuadElement::new(4, 0), QuadElement::new(3, 1)])?;
    let j5 = order.ideal_from_gens(&[QuadElement::new(5, 0), QuadElement::new(3, 1)])?;
    let product = order.ideal_mul(&j4, &j5);
    println!(
        "  {} · {} = {} (equals (3+w): {})",
        j4.display(),
        j5.display(),
        product.display(),
        product == ideal,
    );

    // The search rediscovers exactly that factorization.
    let factors = ta_factorization_quad(&order, &ideal, GUARD)?.expect("factors over d = -11");
    let shown: Vec<String> = factors.iter().map(|f| f.display()).collect();
    println!("  search finds: {}", shown.join(" · "));

    // Each factor is prime: its quotient is a field of prime order.
    for f in &factors {
        let (ring, _) = quotient_finite(&order, f, GUARD)?;
        println!("  quotient by {} has {} elements", f.display(), ring.size());
    }

    // Over d = -7 the same element behaves differently: (3+w) is not
    // two-absorbing (2·2·4 ∈ I, no pair product lands), and nothing
    // factors it.
    let order7 = QuadOrder::sqrt_order(-7)?;
    let ideal7 = order7.principal(&QuadElement::new(3, 1))?;
    println!();
    println!("in {}:", order7.describe());
    let w = ta_check_quad(&order7, &ideal7, GUARD)?.expect("not two-absorbing");
    println!(
        "  (3+w) = {} rejects the triple {} · {} · {}",
        ideal7.display(),
        tafkit::quadord::format_quad(&w.a),
        tafkit::quadord::format_quad(&w.b),
        tafkit::quadord::format_quad(&w.c),
    );
    println!(
        "  factorization search: {:?}",
        ta_factorization_quad(&order7, &ideal7, GUARD)?.map(|fs| fs.len()),
    );
    let primes = min_primes_quad(&order7, &ideal7, GUARD)?;
    let shown: Vec<String> = primes.iter().map(|p| p.display()).collect();
    println!("  its minimal primes: {}", shown.join(", "));
    Ok(())
}
