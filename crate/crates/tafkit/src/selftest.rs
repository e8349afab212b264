//! Built-in verification suite: a fixed list of criteria, each of which
//! recomputes a known result from scratch and checks it against frozen
//! expectations or an independent oracle. The `selftest` command and the
//! acceptance tests both run through this module so the two can never
//! drift apart.

use std::time::Instant;

use crate::absorbing::{ta_check, ta_structure, TaStructure, TaStructureOutcome};
use crate::factorize::{
    incomparability_witness, is_taf, ta_factorization, verify_factorization,
};
use crate::finring::{construct, enumerate_ideals, Constructed, FinIdeal, FiniteRing};
use crate::quadord::classify::classify_range;
use crate::quadord::{
    min_primes_quad, quotient_finite, ta_check_quad, ta_factorization_quad,
    verify_factorization_quad, QuadElement, QuadOrder,
};
use crate::ringspec::parse_ringspec;

/// Outcome of one criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail(String),
    Skipped(String),
}

/// One executed criterion with its identity and wall time.
#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub id: u32,
    pub name: &'static str,
    pub status: Status,
    pub millis: u64,
}

/// A named check. `min_guard` is the smallest enumeration guard under
/// which the criterion can run at all; below it the criterion is
/// skipped, never failed.
pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub min_guard: u64,
    run: fn(u64) -> Result<(), String>,
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !($cond) {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn build(spec: &str) -> Result<Constructed, String> {
    construct(&parse_ringspec(spec).map_err(err)?).map_err(err)
}

fn gen_ideal(built: &Constructed, gens: &str) -> Result<FinIdeal, String> {
    Ok(built.ring.ideal_generate(&built.parse_gens(gens).map_err(err)?))
}

fn subset(inner: &FinIdeal, outer: &FinIdeal) -> bool {
    inner
        .elements()
        .iter()
        .all(|e| outer.elements().binary_search(e).is_ok())
}

/// Intersection of two sorted element-index lists.
fn intersect(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// The ten-ring corpus the cross-cutting criteria range over.
pub fn corpus_rings() -> Vec<&'static str> {
    vec![
        "Z/4",
        "Z/8",
        "Z/9",
        "Z/16",
        "Z/27",
        "Z/6",
        "Z/2[x]/(x^2)",
        "Z/2[x]/(x^2+x+1)",
        "Z/8[x]/(x^2,2x)",
        "Z/9[x]/(x^3)",
    ]
}

/// Criterion 1: in `Z[√−7]`, the principal ideal `(3+w)` is not
/// two-absorbing — the canonical refuting triple is `(2, 2, 4)` with
/// `2·2·4 = 16 ∈ I` yet no pair product in `I` — and it admits no
/// factorization into two-absorbing ideals. Its unique minimal prime is
/// `(2, 1+w)`.
fn c1_quadratic_counterexample(guard: u64) -> Result<(), String> {
    let order = QuadOrder::sqrt_order(-7).map_err(err)?;
    let ideal = order.principal(&QuadElement::new(3, 1)).map_err(err)?;
    ensure!(ideal.norm() == 16, "expected norm 16, got {}", ideal.norm());

    let w = ta_check_quad(&order, &ideal, guard)
        .map_err(err)?
        .ok_or("expected a refuting triple")?;
    ensure!(w.verify(&order, &ideal), "refuting triple does not verify");
    let xs = [w.a, w.b, w.c].map(|e| (e.x, e.y));
    ensure!(
        xs == [(2, 0), (2, 0), (4, 0)],
        "expected canonical triple (2,2,4), got {xs:?}"
    );
    let two = QuadElement::new(2, 0);
    let product = order.mul(&order.mul(&two, &two), &QuadElement::new(4, 0));
    ensure!(order.ideal_contains(&ideal, &product), "2·2·4 should lie in the ideal");
    ensure!(
        !order.ideal_contains(&ideal, &order.mul(&two, &QuadElement::new(4, 0))),
        "8 should not lie in the ideal"
    );

    let factored = ta_factorization_quad(&order, &ideal, guard).map_err(err)?;
    ensure!(factored.is_none(), "expected no factorization, got {factored:?}");

    let primes = min_primes_quad(&order, &ideal, guard).map_err(err)?;
    ensure!(primes.len() == 1, "expected one minimal prime, got {}", primes.len());
    let p = &primes[0];
    ensure!(
        (p.a(), p.b(), p.c()) == (2, 1, 1),
        "expected minimal prime (2, 1+w), got {}",
        p.display()
    );
    Ok(())
}

/// Criterion 2: `Z/8[x]/(x^2,2x)` has 16 elements, carries the
/// incomparability obstruction `(x)` vs `(2,x)²`, and is not a
/// factorization ring — while every member of a twelve-ring family of
/// small local rings is.
fn c2_smallest_obstruction(guard: u64) -> Result<(), String> {
    let built = build("Z/8[x]/(x^2,2x)")?;
    let ring = &built.ring;
    ensure!(ring.size() == 16, "expected 16 elements, got {}", ring.size());

    let w = incomparability_witness(ring, guard)
        .map_err(err)?
        .ok_or("expected an incomparability obstruction")?;
    ensure!(w.verify(ring), "obstruction does not verify");
    ensure!(
        w.ideal == gen_ideal(&built, "x")?,
        "expected the obstruction at (x), got {:?}",
        w.ideal
    );
    ensure!(
        w.maximal == gen_ideal(&built, "2, x")?,
        "expected the maximal ideal (2, x), got {:?}",
        w.maximal
    );
    ensure!(
        !is_taf(ring, guard).map_err(err)?.is_taf(),
        "the obstruction ring must not be a factorization ring"
    );

    let mut family = Vec::new();
    for p in [2u64, 3] {
        family.push(format!("Z/{}", p * p));
        family.push(format!("Z/{p}[x]/(x^2)"));
        family.push(if p == 2 {
            "Z/2[x]/(x^2+x+1)".to_string()
        } else {
            "Z/3[x]/(x^2+1)".to_string()
        });
        family.push(format!("Z/{}", p * p * p));
        family.push(format!("Z/{p}[x]/(x^3)"));
        family.push(format!("Z/{}[x]/({p}x,x^2)", p * p));
    }
    ensure!(family.len() == 12, "family should have 12 members");
    for spec in &family {
        let member = build(spec)?;
        ensure!(
            is_taf(&member.ring, guard).map_err(err)?.is_taf(),
            "{spec} should be a factorization ring"
        );
    }
    Ok(())
}

/// Criterion 3: in `Z/9[x]/(x^3)` the ideals `(x²+3)` and `(3,x)²` are
/// incomparable, so the ring is not a factorization ring.
fn c3_cubic_quotient(guard: u64) -> Result<(), String> {
    let built = build("Z/9[x]/(x^3)")?;
    let ring = &built.ring;
    ensure!(ring.size() == 729, "expected 729 elements, got {}", ring.size());

    let i = gen_ideal(&built, "x^2+3")?;
    let m = gen_ideal(&built, "3, x")?;
    let m2 = ring.ideal_product(&m, &m);
    ensure!(!subset(&i, &m2), "(x²+3) should not lie inside (3,x)²");
    ensure!(!subset(&m2, &i), "(3,x)² should not lie inside (x²+3)");
    ensure!(ring.is_maximal_ideal(&m), "(3,x) should be maximal");
    ensure!(
        ring.ideal_radical(&i) == m,
        "the radical of (x²+3) should be (3,x)"
    );

    let w = incomparability_witness(ring, guard)
        .map_err(err)?
        .ok_or("expected an incomparability obstruction")?;
    ensure!(w.verify(ring), "obstruction does not verify");
    ensure!(
        !is_taf(ring, guard).map_err(err)?.is_taf(),
        "the cubic quotient must not be a factorization ring"
    );
    Ok(())
}

/// Criterion 4: for every square-free `d ≡ 1 (mod 4)` in `[−200, 200]`,
/// `Z[√d]` is a factorization ring exactly when `d ≡ 5 (mod 8)`, and
/// every certificate re-verifies. Spot values pin the fixed cases.
fn c4_classification_sweep(_guard: u64) -> Result<(), String> {
    let rows = classify_range(-200, 200).map_err(err)?;
    ensure!(!rows.is_empty(), "the sweep should classify at least one d");
    for c in &rows {
        let expected = c.d.rem_euclid(8) == 5;
        ensure!(
            c.is_taf == expected,
            "d = {}: verdict {} disagrees with the residue rule",
            c.d,
            c.is_taf
        );
        ensure!(c.verify(), "d = {}: certificate does not verify", c.d);
    }
    for (d, expected) in [(-11, true), (-7, false), (5, true), (17, false)] {
        let row = rows
            .iter()
            .find(|c| c.d == d)
            .ok_or(format!("d = {d} missing from the sweep"))?;
        ensure!(row.is_taf == expected, "d = {d}: expected is_taf = {expected}");
    }
    Ok(())
}

/// Criterion 5: in `Z[√−11]`, `(3+w)` factors as the product of the
/// primes `(4, 3+w)` and `(5, 3+w)`; the factorization re-multiplies
/// exactly and the quotients are the cyclic rings of orders 4 and 5.
fn c5_worked_factorization(guard: u64) -> Result<(), String> {
    let order = QuadOrder::sqrt_order(-11).map_err(err)?;
    let ideal = order.principal(&QuadElement::new(3, 1)).map_err(err)?;
    let factors = ta_factorization_quad(&order, &ideal, guard)
        .map_err(err)?
        .ok_or("expected a factorization")?;
    let hnfs: Vec<(i128, i128, i128)> = factors.iter().map(|f| (f.a(), f.b(), f.c())).collect();
    ensure!(
        hnfs == vec![(4, 3, 1), (5, 3, 1)],
        "expected factors (4, 3+w) and (5, 3+w), got {hnfs:?}"
    );
    ensure!(
        verify_factorization_quad(&order, &ideal, &factors, guard),
        "factorization does not re-multiply to (3+w)"
    );

    for (factor, expected_order) in factors.iter().zip([4u64, 5]) {
        let (q, _) = quotient_finite(&order, factor, guard).map_err(err)?;
        ensure!(
            q.size() == expected_order,
            "quotient by {} should have {} elements, got {}",
            factor.display(),
            expected_order,
            q.size()
        );
        // Additively cyclic with unity a generator: the quotient is the
        // cyclic ring of its order.
        ensure!(
            q.orders() == [expected_order],
            "quotient by {} should be additively cyclic",
            factor.display()
        );
    }
    Ok(())
}

/// Criterion 6: in `Z/p^n` for `p ∈ {2,3}`, `n ≤ 5`, the proper
/// two-absorbing ideals are exactly `(p)` and `(p²)`, each `(p)`-primary,
/// and `(p²)` is the square of the prime `(p)`.
fn c6_chained_ring_laws(guard: u64) -> Result<(), String> {
    for p in [2u64, 3] {
        for n in 1..=5u32 {
            let spec = format!("Z/{}", p.pow(n));
            let built = build(&spec)?;
            let ring = &built.ring;
            let ip = gen_ideal(&built, &p.to_string())?;
            let ip2 = gen_ideal(&built, &(p * p).to_string())?;

            let mut expected = vec![ip.clone()];
            if ip2 != ip {
                expected.push(ip2.clone());
            }
            expected.sort();

            let mut found = Vec::new();
            for ideal in enumerate_ideals(ring, guard).map_err(err)? {
                if ring.is_unit_ideal(&ideal) {
                    continue;
                }
                if ta_check(ring, &ideal, guard).map_err(err)?.is_none() {
                    found.push(ideal);
                }
            }
            found.sort();
            ensure!(
                found == expected,
                "{spec}: two-absorbing ideals should be exactly (p) and (p²)"
            );
            for ideal in &found {
                ensure!(
                    ring.is_primary_ideal(ideal),
                    "{spec}: a two-absorbing ideal should be primary"
                );
                ensure!(
                    ring.ideal_radical(ideal) == ip,
                    "{spec}: a two-absorbing ideal should have radical (p)"
                );
            }
            ensure!(
                ring.ideal_product(&ip, &ip) == ip2,
                "{spec}: (p)·(p) should equal (p²)"
            );
            ensure!(ring.is_prime_ideal(&ip), "{spec}: (p) should be prime");
        }
    }
    Ok(())
}

/// Criterion 7: the factorization property respects direct products —
/// over all corpus pairs whose product has at most 4096 elements,
/// `is_taf(A×B) = is_taf(A) ∧ is_taf(B)`.
fn c7_product_stability(guard: u64) -> Result<(), String> {
    let mut rings = Vec::new();
    for spec in corpus_rings() {
        let built = build(spec)?;
        let taf = is_taf(&built.ring, guard).map_err(err)?.is_taf();
        rings.push((spec, built.ring, taf));
    }
    let mut pairs = 0;
    for i in 0..rings.len() {
        for j in i..rings.len() {
            let (sa, a, ta) = &rings[i];
            let (sb, b, tb) = &rings[j];
            if a.size().saturating_mul(b.size()) > guard {
                continue;
            }
            let prod = FiniteRing::direct_product(a, b).map_err(err)?;
            let tp = is_taf(&prod, guard).map_err(err)?.is_taf();
            ensure!(
                tp == (*ta && *tb),
                "{sa} × {sb}: product verdict {tp} but factors give {ta} ∧ {tb}"
            );
            pairs += 1;
        }
    }
    ensure!(pairs >= 40, "expected at least 40 product pairs, ran {pairs}");
    Ok(())
}

/// Criterion 8: on every corpus ring with at most 20 ideals, the search
/// verdict agrees with a brute-force oracle (the closure of the proper
/// two-absorbing ideals under products), and every reported
/// factorization re-multiplies to its input.
fn c8_oracle_equivalence(guard: u64) -> Result<(), String> {
    let mut audited = 0;
    for spec in corpus_rings() {
        let built = build(spec)?;
        let ring = &built.ring;
        let ideals = enumerate_ideals(ring, guard).map_err(err)?;
        if ideals.len() > 20 {
            continue;
        }
        audited += 1;

        let mut ta_ideals = Vec::new();
        for ideal in &ideals {
            if !ring.is_unit_ideal(ideal) && ta_check(ring, ideal, guard).map_err(err)?.is_none() {
                ta_ideals.push(ideal.clone());
            }
        }
        // Products of one or more two-absorbing ideals, to a fixpoint.
        let mut closure = ta_ideals.clone();
        loop {
            let mut grew = false;
            for s in closure.clone() {
                for t in &ta_ideals {
                    let prod = ring.ideal_product(&s, t);
                    if !closure.contains(&prod) {
                        closure.push(prod);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }

        for ideal in &ideals {
            if ring.is_unit_ideal(ideal) {
                continue;
            }
            let expected = closure.contains(ideal);
            match ta_factorization(ring, ideal, guard).map_err(err)? {
                Some(factors) => {
                    ensure!(
                        expected,
                        "{spec}: search factored an ideal the oracle says is unfactorable"
                    );
                    ensure!(
                        verify_factorization(ring, ideal, &factors, guard),
                        "{spec}: a reported factorization does not re-multiply"
                    );
                }
                None => {
                    ensure!(
                        !expected,
                        "{spec}: search missed a factorization the oracle found"
                    );
                }
            }
        }
    }
    ensure!(audited >= 8, "expected at least 8 auditable rings, got {audited}");
    Ok(())
}

/// Criterion 9: every two-absorbing ideal in the corpus satisfies the
/// structure dichotomy — `P² ⊆ I ⊆ P` for a prime `P`, or
/// `P₁P₂ ⊆ I ⊆ P₁ ∩ P₂` for incomparable primes with `√I = P₁ ∩ P₂` —
/// with every containment re-checked directly.
fn c9_structure_conformance(guard: u64) -> Result<(), String> {
    let mut examined = 0;
    for spec in corpus_rings() {
        let built = build(spec)?;
        let ring = &built.ring;
        for ideal in enumerate_ideals(ring, guard).map_err(err)? {
            if ring.is_unit_ideal(&ideal) {
                continue;
            }
            let s = match ta_structure(ring, &ideal, guard).map_err(err)? {
                TaStructureOutcome::NotTwoAbsorbing(_) => continue,
                TaStructureOutcome::Structure(s) => s,
            };
            examined += 1;
            match s {
                TaStructure::PrimeSquare { p } => {
                    ensure!(ring.is_prime_ideal(&p), "{spec}: claimed prime is not prime");
                    let p2 = ring.ideal_product(&p, &p);
                    ensure!(subset(&p2, &ideal), "{spec}: P² ⊆ I fails");
                    ensure!(subset(&ideal, &p), "{spec}: I ⊆ P fails");
                    ensure!(
                        ring.ideal_radical(&ideal) == p,
                        "{spec}: radical should equal the prime"
                    );
                }
                TaStructure::PrimePair { p1, p2 } => {
                    ensure!(
                        ring.is_prime_ideal(&p1) && ring.is_prime_ideal(&p2),
                        "{spec}: claimed primes are not prime"
                    );
                    ensure!(
                        !subset(&p1, &p2) && !subset(&p2, &p1),
                        "{spec}: the primes should be incomparable"
                    );
                    let prod = ring.ideal_product(&p1, &p2);
                    ensure!(subset(&prod, &ideal), "{spec}: P₁P₂ ⊆ I fails");
                    ensure!(
                        subset(&ideal, &p1) && subset(&ideal, &p2),
                        "{spec}: I ⊆ P₁ ∩ P₂ fails"
                    );
                    let meet = intersect(p1.elements(), p2.elements());
                    ensure!(
                        ring.ideal_radical(&ideal).elements() == meet.as_slice(),
                        "{spec}: radical should equal P₁ ∩ P₂"
                    );
                }
            }
        }
    }
    ensure!(examined >= 20, "expected at least 20 structured ideals, got {examined}");
    Ok(())
}

/// Criterion 10 (negative control): a multiplication table that breaks
/// associativity — but nothing else — is rejected at construction, so
/// the validator genuinely exercises the axiom.
fn c10_broken_table_rejected(_guard: u64) -> Result<(), String> {
    // Z/2[x]/(x^3) on the basis {1, x, x²}, with the single product
    // x²·x² corrupted from 0 to x. Shape, reduction, order
    // compatibility, commutativity, and unity all still hold.
    let orders = vec![2u64, 2, 2];
    let row = |v: [u64; 3]| v.to_vec();
    let mul = vec![
        row([1, 0, 0]), row([0, 1, 0]), row([0, 0, 1]),
        row([0, 1, 0]), row([0, 0, 1]), row([0, 0, 0]),
        row([0, 0, 1]), row([0, 0, 0]), row([0, 1, 0]),
    ];
    let unity = vec![1u64, 0, 0];
    let labels = vec!["1".to_string(), "x".to_string(), "x^2".to_string()];
    match FiniteRing::from_components(orders, mul, unity, labels) {
        Ok(_) => Err("the corrupted table should have been rejected".to_string()),
        Err(e) => {
            let msg = e.to_string();
            ensure!(
                msg.contains("associative"),
                "rejection should name associativity, said: {msg}"
            );
            Ok(())
        }
    }
}

/// The full criteria list, in execution order.
pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: 1,
            name: "quadratic counterexample (3+w) in Z[sqrt(-7)]",
            min_guard: 16,
            run: c1_quadratic_counterexample,
        },
        Criterion {
            id: 2,
            name: "smallest non-factorization ring and the local family",
            min_guard: 27,
            run: c2_smallest_obstruction,
        },
        Criterion {
            id: 3,
            name: "incomparable ideals in Z/9[x]/(x^3)",
            min_guard: 729,
            run: c3_cubic_quotient,
        },
        Criterion {
            id: 4,
            name: "classification sweep over [-200, 200]",
            min_guard: 16,
            run: c4_classification_sweep,
        },
        Criterion {
            id: 5,
            name: "worked factorization of (3+w) in Z[sqrt(-11)]",
            min_guard: 20,
            run: c5_worked_factorization,
        },
        Criterion {
            id: 6,
            name: "chained-ring laws in Z/p^n",
            min_guard: 243,
            run: c6_chained_ring_laws,
        },
        Criterion {
            id: 7,
            name: "product stability over the corpus",
            min_guard: 4096,
            run: c7_product_stability,
        },
        Criterion {
            id: 8,
            name: "search agrees with the brute-force oracle",
            min_guard: 729,
            run: c8_oracle_equivalence,
        },
        Criterion {
            id: 9,
            name: "structure dichotomy for two-absorbing ideals",
            min_guard: 729,
            run: c9_structure_conformance,
        },
        Criterion {
            id: 10,
            name: "corrupted multiplication table is rejected",
            min_guard: 8,
            run: c10_broken_table_rejected,
        },
    ]
}

/// Runs one criterion under the given guard. A guard below the
/// criterion's minimum yields `Skipped`, never `Fail`.
pub fn run_one(criterion: &Criterion, guard: u64) -> CriterionOutcome {
    if guard < criterion.min_guard {
        return CriterionOutcome {
            id: criterion.id,
            name: criterion.name,
            status: Status::Skipped(format!(
                "needs guard >= {}, have {}",
                criterion.min_guard, guard
            )),
            millis: 0,
        };
    }
    let started = Instant::now();
    let status = match (criterion.run)(guard) {
        Ok(()) => Status::Pass,
        Err(msg) => Status::Fail(msg),
    };
    CriterionOutcome {
        id: criterion.id,
        name: criterion.name,
        status,
        millis: started.elapsed().as_millis() as u64,
    }
}

/// Runs every criterion under the given guard.
pub fn run_all(guard: u64) -> Vec<CriterionOutcome> {
    criteria().iter().map(|c| run_one(c, guard)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_guard_skips_instead_of_failing() {
        let outcomes = run_all(8);
        for o in &outcomes {
            match &o.status {
                Status::Fail(msg) => panic!("criterion {} failed under a low guard: {msg}", o.id),
                Status::Pass | Status::Skipped(_) => {}
            }
        }
        // The negative control needs no enumeration and still runs.
        assert_eq!(outcomes[9].status, Status::Pass);
        assert!(matches!(outcomes[2].status, Status::Skipped(_)));
    }

    #[test]
    fn criteria_are_numbered_in_order() {
        let ids: Vec<u32> = criteria().iter().map(|c| c.id).collect();
        assert_eq!(ids, (1..=10).collect::<Vec<_>>());
    }

    #[test]
    fn negative_control_rejects_only_associativity() {
        assert_eq!(c10_broken_table_rejected(8), Ok(()));
        // The uncorrupted table is accepted: the control isolates the
        // associativity axiom.
        let row = |v: [u64; 3]| v.to_vec();
        let mul = vec![
            row([1, 0, 0]), row([0, 1, 0]), row([0, 0, 1]),
            row([0, 1, 0]), row([0, 0, 1]), row([0, 0, 0]),
            row([0, 0, 1]), row([0, 0, 0]), row([0, 0, 0]),
        ];
        let ring = FiniteRing::from_components(
            vec![2, 2, 2],
            mul,
            vec![1, 0, 0],
            vec!["1".into(), "x".into(), "x^2".into()],
        )
        .expect("the honest table is a ring");
        assert_eq!(ring.size(), 8);
    }
}
