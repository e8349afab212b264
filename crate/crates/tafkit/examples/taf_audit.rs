//! Audit whole rings: a ring has the factorization property when every
//! proper ideal is a product of two-absorbing ideals. Failures are
//! certified either by an incomparability obstruction — an ideal `I`
//! whose radical is a maximal `M` with `I` and `M²` incomparable — or by
//! an exhausted search.
//!
//! Run with: `cargo run --example taf_audit`

use tafkit::factorize::{is_taf, TafVerdict};
use tafkit::finring::construct;
use tafkit::report::ideal_repr;
use tafkit::ringspec::parse_ringspec;

const GUARD: u64 = 4096;

fn main() -> Result<(), tafkit::Error> {
    let specs = [
        "Z/4",
        "Z/12",
        "Z/27",
        "Z/2[x]/(x^2+x+1)",
        "Z/8[x]/(x^2,2x)",
        "Z/9[x]/(x^3)",
    ];
    for spec_text in specs {
        let ring = construct(&parse_ringspec(spec_text)?)?.ring;
        match is_taf(&ring, GUARD)? {
            TafVerdict::Taf { factored } => {
                println!("{spec_text:>18}: yes ({factored} proper ideals factored)");
            }
            TafVerdict::NotTafIncomparable(w) => {
                println!(
                    "{spec_text:>18}: no — {} and {}² are incomparable",
                    ideal_repr(&ring, &w.ideal).display,
                    ideal_repr(&ring, &w.maximal).display,
                );
                assert!(w.verify(&ring));
            }
            TafVerdict::NotTafExhausted { ideal } => {
                println!(
                    "{spec_text:>18}: no — {} resists every factorization",
                    ideal_repr(&ring, &ideal).display,
                );
            }
        }
    }

    // The obstruction in Z/8[x]/(x^2,2x) in detail: x ∈ (x) \ (2,x)²
    // and 4 ∈ (2,x)² \ (x).
    let built = construct(&parse_ringspec("Z/8[x]/(x^2,2x)")?)?;
    let ring = &built.ring;
    if let TafVerdict::NotTafIncomparable(w) = is_taf(ring, GUARD)? {
        println!();
        println!(
            "the smallest obstruction: {} holds {} but not {}, while M² holds the reverse",
            ideal_repr(ring, &w.ideal).display,
            ring.elem_string(&w.in_i_not_m2),
            ring.elem_string(&w.in_m2_not_i),
        );
    }
    Ok(())
}
