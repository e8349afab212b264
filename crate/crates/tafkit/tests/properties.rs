//! Randomized cross-checks of the engine's invariants: the fast
//! two-absorbing scanner against its reference implementation, ideal
//! arithmetic laws, quotient sizes, and normal-form stability in
//! quadratic orders.

use proptest::prelude::*;
use tafkit::absorbing::{n_absorbing_check, ta_check, ta_check_naive};
use tafkit::commands::cmd_check_ta;
use tafkit::finring::{construct, enumerate_ideals, FinIdeal, FiniteRing};
use tafkit::quadord::{quotient_finite, QuadElement, QuadIdeal, QuadOrder};
use tafkit::report::{reverify, Report};
use tafkit::ringspec::parse_ringspec;

const GUARD: u64 = 4096;

fn built(spec: &str) -> FiniteRing {
    construct(&parse_ringspec(spec).expect("spec parses"))
        .expect("spec constructs")
        .ring
}

/// A mix of cyclic rings and small polynomial quotients.
fn ring_strategy() -> impl Strategy<Value = FiniteRing> {
    prop_oneof![
        (2u64..=48).prop_map(|n| built(&format!("Z/{n}"))),
        (2u64..=5, 1u64..=4).prop_map(|(n, c)| built(&format!("Z/{n}[x]/(x^2+{c})"))),
        (2u64..=5).prop_map(|n| built(&format!("Z/{n}[x]/(x^2)"))),
        (2u64..=3, 1u64..=2).prop_map(|(n, c)| built(&format!("Z/{n}[x]/(x^3+{c}x)"))),
        Just(built("Z/8[x]/(x^2,2x)")),
        Just(built("Z/9[x]/(3x,x^2)")),
    ]
}

fn ring_and_ideal() -> impl Strategy<Value = (FiniteRing, FinIdeal)> {
    ring_strategy()
        .prop_flat_map(|ring| {
            let size = ring.size();
            (Just(ring), proptest::collection::vec(0..size, 0..=2))
        })
        .prop_map(|(ring, idxs)| {
            let gens: Vec<_> = idxs.iter().map(|&i| ring.elem_at(i)).collect();
            let ideal = ring.ideal_generate(&gens);
            (ring, ideal)
        })
}

fn intersect(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    /// The bitset scanner agrees with the direct triple loop exactly,
    /// canonical witness included.
    #[test]
    fn fast_scan_matches_reference((ring, ideal) in ring_and_ideal()) {
        prop_assume!(!ring.is_unit_ideal(&ideal));
        let fast = ta_check(&ring, &ideal, GUARD).unwrap();
        let slow = ta_check_naive(&ring, &ideal, GUARD).unwrap();
        prop_assert_eq!(fast.is_some(), slow.is_some());
        if let (Some(a), Some(b)) = (&fast, &slow) {
            prop_assert_eq!(a.elements(&ring), b.elements(&ring));
            prop_assert!(a.verify(&ring, &ideal));
        }
    }

    /// Two-absorbing is the `n = 2` case of `n`-absorbing.
    #[test]
    fn two_absorbing_is_n_absorbing_at_two((ring, ideal) in ring_and_ideal()) {
        prop_assume!(!ring.is_unit_ideal(&ideal));
        let ta = ta_check(&ring, &ideal, GUARD).unwrap().is_none();
        let na = n_absorbing_check(&ring, &ideal, 2, GUARD, 10_000_000)
            .unwrap()
            .is_none();
        prop_assert_eq!(ta, na);
    }

    /// In a finite commutative ring, prime ideals are maximal and
    /// two-absorbing.
    #[test]
    fn primes_are_maximal_and_two_absorbing((ring, ideal) in ring_and_ideal()) {
        prop_assume!(!ring.is_unit_ideal(&ideal));
        if ring.is_prime_ideal(&ideal) {
            prop_assert!(ring.is_maximal_ideal(&ideal));
            prop_assert!(ta_check(&ring, &ideal, GUARD).unwrap().is_none());
        }
    }

    /// Everything squeezed between a prime and its square is
    /// two-absorbing.
    #[test]
    fn between_prime_and_square_is_two_absorbing(
        ring in ring_strategy(),
        mask in any::<u64>(),
    ) {
        for p in enumerate_ideals(&ring, GUARD).unwrap() {
            if ring.is_unit_ideal(&p) || !ring.is_prime_ideal(&p) {
                continue;
            }
            let p2 = ring.ideal_product(&p, &p);
            let mut gens: Vec<_> = p2.gens().to_vec();
            for (pos, &idx) in p.elements().iter().enumerate() {
                if mask & (1 << (pos % 64)) != 0 {
                    gens.push(ring.elem_at(idx as u64));
                }
            }
            let squeezed = ring.ideal_generate(&gens);
            prop_assert!(ta_check(&ring, &squeezed, GUARD).unwrap().is_none());
        }
    }

    /// Radical laws: idempotence, extensivity, and
    /// `√(IJ) = √I ∩ √J`.
    #[test]
    fn radical_laws((ring, ideal) in ring_and_ideal(), idxs in proptest::collection::vec(any::<u64>(), 0..=2)) {
        let rad = ring.ideal_radical(&ideal);
        prop_assert!(ideal.elements().iter().all(|e| rad.elements().binary_search(e).is_ok()));
        let rad_again = ring.ideal_radical(&rad);
        prop_assert_eq!(rad_again.elements(), rad.elements());

        let gens: Vec<_> = idxs.iter().map(|&i| ring.elem_at(i % ring.size())).collect();
        let other = ring.ideal_generate(&gens);
        let prod = ring.ideal_product(&ideal, &other);
        let lhs = ring.ideal_radical(&prod);
        let rhs = intersect(rad.elements(), ring.ideal_radical(&other).elements());
        prop_assert_eq!(lhs.elements(), rhs.as_slice());
    }

    /// The quotient map is exact on sizes: `|R| = |R/I| · |I|`.
    #[test]
    fn quotient_sizes_multiply((ring, ideal) in ring_and_ideal()) {
        let (quotient, _) = ring.quotient_ring(&ideal);
        prop_assert_eq!(quotient.size() * ideal.len() as u64, ring.size());
    }

    /// Idempotent decomposition partitions the ring's size
    /// multiplicatively.
    #[test]
    fn decomposition_sizes_multiply(ring in ring_strategy()) {
        let parts = ring.decompose();
        prop_assert!(!parts.is_empty());
        let product: u64 = parts.iter().map(|(r, _)| r.size()).product();
        prop_assert_eq!(product, ring.size());
    }

    /// The ideal lattice is enumerated canonically: the zero ideal
    /// first, the unit ideal present, no duplicates.
    #[test]
    fn lattice_enumeration_is_canonical(ring in ring_strategy()) {
        let ideals = enumerate_ideals(&ring, GUARD).unwrap();
        prop_assert_eq!(ideals[0].len(), 1);
        prop_assert!(ideals.iter().any(|i| ring.is_unit_ideal(i)));
        for w in ideals.windows(2) {
            prop_assert!(w[0] < w[1]);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Reports survive a JSON round trip and still re-verify.
    #[test]
    fn reports_round_trip_through_json(n in 2u64..=48, k in 0u64..48) {
        prop_assume!(k % n != 0 || k == 0);
        let report = match cmd_check_ta(&format!("Z/{n}"), &(k % n).to_string(), GUARD) {
            Ok(r) => r,
            // The generators may span the unit ideal; that is an input
            // error, not a property failure.
            Err(_) => return Ok(()),
        };
        let json = serde_json::to_string(&report).unwrap();
        let back: Report = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&back.verdict, &report.verdict);
        prop_assert!(reverify(&back).unwrap());
    }
}

fn quad_order_strategy() -> impl Strategy<Value = QuadOrder> {
    (-60i128..=60).prop_filter_map("square-free d", |d| QuadOrder::sqrt_order(d).ok())
}

/// Maximal orders only: the half basis when `d ≡ 1 (mod 4)`, the
/// square-root basis when `d ≡ 2, 3 (mod 4)`.
fn maximal_order_strategy() -> impl Strategy<Value = QuadOrder> {
    (-60i128..=60).prop_filter_map("maximal order", |d| match d.rem_euclid(4) {
        1 => QuadOrder::half_order(d).ok(),
        2 | 3 => QuadOrder::sqrt_order(d).ok(),
        _ => None,
    })
}

fn gens_strategy() -> impl Strategy<Value = Vec<QuadElement>> {
    proptest::collection::vec((-15i128..=15, -15i128..=15), 1..=3)
        .prop_map(|coords| coords.into_iter().map(|(x, y)| QuadElement::new(x, y)).collect())
}

fn order_and_ideal(
    orders: impl Strategy<Value = QuadOrder>,
) -> impl Strategy<Value = (QuadOrder, QuadIdeal)> {
    (orders, gens_strategy()).prop_filter_map("nonzero ideal", |(order, gens)| {
        order.ideal_from_gens(&gens).ok().map(|i| (order, i))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// The normal form does not depend on how the generating set is
    /// written: permuting generators or appending a redundant sum
    /// changes nothing.
    #[test]
    fn normal_form_is_generator_independent(
        order in quad_order_strategy(),
        gens in gens_strategy(),
    ) {
        let Ok(ideal) = order.ideal_from_gens(&gens) else { return Ok(()) };
        let mut reversed = gens.clone();
        reversed.reverse();
        prop_assert_eq!(&order.ideal_from_gens(&reversed).unwrap(), &ideal);

        let mut padded = gens.clone();
        let sum = gens.iter().fold(QuadElement::ZERO, |acc, g| order.add(&acc, g));
        padded.push(sum);
        prop_assert_eq!(&order.ideal_from_gens(&padded).unwrap(), &ideal);
    }

    /// The (a, b, c) triple round-trips through validation.
    #[test]
    fn normal_form_round_trips((order, ideal) in order_and_ideal(quad_order_strategy())) {
        let again = order.ideal_from_hnf(ideal.a(), ideal.b(), ideal.c()).unwrap();
        prop_assert_eq!(again, ideal);
    }

    /// In maximal orders the norm is multiplicative. (In non-maximal
    /// orders it provably is not; the unit-test suite freezes a
    /// counterexample.)
    #[test]
    fn norm_is_multiplicative_in_maximal_orders(
        (order, i) in order_and_ideal(maximal_order_strategy()),
        gens in gens_strategy(),
    ) {
        let Ok(j) = order.ideal_from_gens(&gens) else { return Ok(()) };
        let product = order.ideal_mul(&i, &j);
        prop_assert_eq!(product.norm(), i.norm() * j.norm());
    }

    /// Reduction to the fundamental domain is idempotent, detects
    /// membership, and changes elements only by ideal members.
    #[test]
    fn reduction_characterizes_membership(
        (order, ideal) in order_and_ideal(quad_order_strategy()),
        x in -40i128..=40,
        y in -40i128..=40,
    ) {
        let e = QuadElement::new(x, y);
        let r = order.reduce_mod(&ideal, &e);
        prop_assert_eq!(order.reduce_mod(&ideal, &r), r);
        prop_assert_eq!(order.ideal_contains(&ideal, &e), r.is_zero());
        prop_assert!(order.ideal_contains(&ideal, &order.sub(&e, &r)));
    }

    /// Ideals absorb multiplication by ring elements.
    #[test]
    fn ideals_absorb_multiplication(
        (order, ideal) in order_and_ideal(quad_order_strategy()),
        rx in -10i128..=10,
        ry in -10i128..=10,
    ) {
        let (g1, g2) = ideal.gens();
        let r = QuadElement::new(rx, ry);
        for g in [g1, g2] {
            prop_assert!(order.ideal_contains(&ideal, &order.mul(&r, &g)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// The additive quotient by an ideal has exactly `norm` elements —
    /// the finite-ring bridge is size-exact.
    #[test]
    fn quotient_order_equals_norm((order, ideal) in order_and_ideal(quad_order_strategy())) {
        prop_assume!(ideal.norm() <= GUARD as i128);
        let (ring, map) = quotient_finite(&order, &ideal, GUARD).unwrap();
        prop_assert_eq!(ring.size() as i128, ideal.norm());
        // The projection kills ideal members.
        let (g1, g2) = ideal.gens();
        prop_assert_eq!(map.apply(&g1), ring.from_int(0));
        prop_assert_eq!(map.apply(&g2), ring.from_int(0));
    }
}
