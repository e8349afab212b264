//! Absorbing-ideal decision procedures.
//!
//! A proper ideal `I` is *two-absorbing* when `abc ∈ I` forces one of the
//! pair products `ab`, `ac`, `bc` into `I`. The checker here scans ordered
//! triples `a ≤ b ≤ c` in the canonical element order (the condition is
//! symmetric, so this loses nothing) and reports the first failing triple
//! as a machine-checkable witness; `None` means the ideal is two-absorbing.
//!
//! The scan packs the predicate `x·c ∈ I` into per-element bitsets, which
//! turns the inner `c` loop into word operations: the first admissible `c`
//! for a pair `(a, b)` is the first set bit of `S_{ab} & !S_a & !S_b` at or
//! after `b`. The verdict and the reported witness are bit-for-bit the same
//! as the straightforward triple loop ([`ta_check_naive`]), which is kept
//! as the reference implementation and pitted against the fast path in the
//! test suite.

use serde::{Deserialize, Serialize};

use crate::finring::{FinIdeal, FiniteRing, MulTable, RingElement};
use crate::Error;

/// A triple certifying that an ideal is not two-absorbing:
/// `a·b·c ∈ I` while none of the pair products lies in `I`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaWitness {
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    pub c: Vec<u64>,
}

impl TaWitness {
    fn from_indices(ring: &FiniteRing, (a, b, c): (u32, u32, u32)) -> Self {
        let coeffs = |i: u32| ring.elem_at(i as u64).coeffs().to_vec();
        TaWitness { a: coeffs(a), b: coeffs(b), c: coeffs(c) }
    }

    pub fn elements(&self, ring: &FiniteRing) -> (RingElement, RingElement, RingElement) {
        let e = |v: &[u64]| {
            let ints: Vec<i64> = v.iter().map(|&c| c as i64).collect();
            ring.elem(&ints)
        };
        (e(&self.a), e(&self.b), e(&self.c))
    }

    /// Re-verifies the witness against the ideal it was issued for.
    pub fn verify(&self, ring: &FiniteRing, ideal: &FinIdeal) -> bool {
        let (a, b, c) = self.elements(ring);
        let ab = ring.mul_elem(&a, &b);
        let ac = ring.mul_elem(&a, &c);
        let bc = ring.mul_elem(&b, &c);
        let abc = ring.mul_elem(&ab, &c);
        ring.ideal_contains(ideal, &abc)
            && !ring.ideal_contains(ideal, &ab)
            && !ring.ideal_contains(ideal, &ac)
            && !ring.ideal_contains(ideal, &bc)
    }
}

#[inline]
fn bit(bits: &[u64], i: u32) -> bool {
    bits[(i / 64) as usize] >> (i % 64) & 1 == 1
}

/// Core triple scan over element indices. Returns the first (lexicographic,
/// `a ≤ b ≤ c`) triple with `abc ∈ I` and `ab, ac, bc ∉ I`, or `None`.
pub(crate) fn scan_ta<F: Fn(u32, u32) -> u32>(
    n: usize,
    mul: F,
    in_ideal: &[u64],
) -> Option<(u32, u32, u32)> {
    let words = n.div_ceil(64);
    // s[x] as rows: bit c set iff x*c ∈ I.
    let mut s = vec![0u64; n * words];
    for x in 0..n as u32 {
        let row = &mut s[x as usize * words..(x as usize + 1) * words];
        for c in 0..n as u32 {
            if bit(in_ideal, mul(x, c)) {
                row[(c / 64) as usize] |= 1u64 << (c % 64);
            }
        }
    }

    for a in 0..n as u32 {
        if bit(in_ideal, a) {
            // Every product through a lands in I, so no triple at a works.
            continue;
        }
        let sa = &s[a as usize * words..(a as usize + 1) * words];
        for b in a..n as u32 {
            let ab = mul(a, b);
            if bit(in_ideal, ab) {
                continue;
            }
            let sab = &s[ab as usize * words..(ab as usize + 1) * words];
            let sb = &s[b as usize * words..(b as usize + 1) * words];
            let w0 = (b / 64) as usize;
            for w in w0..words {
                let mut word = sab[w] & !sa[w] & !sb[w];
                if w == w0 {
                    word &= !0u64 << (b % 64);
                }
                if word != 0 {
                    let c = (w as u32) * 64 + word.trailing_zeros();
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// Decides whether `ideal` is two-absorbing. Returns `None` when it is, or
/// the canonical (first-in-order) witness triple when it is not.
pub fn ta_check(
    ring: &FiniteRing,
    ideal: &FinIdeal,
    guard: u64,
) -> Result<Option<TaWitness>, Error> {
    if ring.is_unit_ideal(ideal) {
        return Err(Error::NotProper { op: "ta_check" });
    }
    if ring.size() > guard {
        return Err(Error::GuardExceeded { size: ring.size(), guard });
    }
    let table = MulTable::build(ring)?;
    let hit = scan_ta(ring.size() as usize, |a, b| table.mul(a, b), ideal.bits());
    Ok(hit.map(|t| TaWitness::from_indices(ring, t)))
}

/// Reference implementation of [`ta_check`]: the direct triple loop in the
/// same iteration order. Quadratic memory tricks are absent by design; the
/// fast scanner must agree with this exactly, witness included.
pub fn ta_check_naive(
    ring: &FiniteRing,
    ideal: &FinIdeal,
    guard: u64,
) -> Result<Option<TaWitness>, Error> {
    if ring.is_unit_ideal(ideal) {
        return Err(Error::NotProper { op: "ta_check" });
    }
    if ring.size() > guard {
        return Err(Error::GuardExceeded { size: ring.size(), guard });
    }
    let n = ring.size() as u32;
    for a in 0..n {
        for b in a..n {
            let ab = ring.mul_index(a, b);
            for c in b..n {
                let abc = ring.mul_index(ab, c);
                if ideal.contains_index(abc)
                    && !ideal.contains_index(ab)
                    && !ideal.contains_index(ring.mul_index(a, c))
                    && !ideal.contains_index(ring.mul_index(b, c))
                {
                    return Ok(Some(TaWitness::from_indices(ring, (a, b, c))));
                }
            }
        }
    }
    Ok(None)
}

/// Decides whether `ideal` is `n`-absorbing: every product of `n+1`
/// elements in `I` has a sub-product of `n` of them in `I`. Returns the
/// canonical witness tuple (length `n+1`) if not. The search enumerates
/// non-decreasing tuples, charging one unit of `budget` per tuple, and
/// fails with `BudgetExhausted` rather than running unbounded.
pub fn n_absorbing_check(
    ring: &FiniteRing,
    ideal: &FinIdeal,
    n: u32,
    guard: u64,
    budget: u64,
) -> Result<Option<Vec<RingElement>>, Error> {
    if ring.is_unit_ideal(ideal) {
        return Err(Error::NotProper { op: "n_absorbing_check" });
    }
    if ring.size() > guard {
        return Err(Error::GuardExceeded { size: ring.size(), guard });
    }
    assert!(n >= 1, "absorbing degree must be at least 1");
    let table = MulTable::build(ring)?;
    let size = ring.size() as u32;
    let len = (n + 1) as usize;
    let mut tuple = vec![0u32; len];
    let mut prefix = vec![0u32; len + 1]; // prefix[i] = product of tuple[..i]
    prefix[0] = ring.index_of(&ring.one()) as u32;
    let mut spent: u64 = 0;

    // Depth-first over non-decreasing tuples, maintaining prefix products.
    let mut depth = 0usize;
    'outer: loop {
        if depth == len {
            spent += 1;
            if spent > budget {
                return Err(Error::BudgetExhausted { budget });
            }
            if ideal.contains_index(prefix[len]) {
                // suffix[i] = product of tuple[i..]
                let mut suffix = vec![0u32; len + 1];
                suffix[len] = ring.index_of(&ring.one()) as u32;
                for i in (0..len).rev() {
                    suffix[i] = table.mul(tuple[i], suffix[i + 1]);
                }
                let all_out = (0..len).all(|omit| {
                    let sub = table.mul(prefix[omit], suffix[omit + 1]);
                    !ideal.contains_index(sub)
                });
                if all_out {
                    let witness =
                        tuple.iter().map(|&i| ring.elem_at(i as u64)).collect();
                    return Ok(Some(witness));
                }
            }
            // Backtrack to the deepest position that can still advance.
            loop {
                if depth == 0 {
                    break 'outer;
                }
                depth -= 1;
                if tuple[depth] + 1 < size {
                    tuple[depth] += 1;
                    prefix[depth + 1] = table.mul(prefix[depth], tuple[depth]);
                    depth += 1;
                    break;
                }
            }
            continue;
        }
        // Descend: the next coordinate starts at the previous one.
        tuple[depth] = if depth == 0 { 0 } else { tuple[depth - 1] };
        prefix[depth + 1] = table.mul(prefix[depth], tuple[depth]);
        depth += 1;
    }
    Ok(None)
}

/// The two shapes a two-absorbing ideal can take.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TaStructure {
    /// `√I` is prime and `(√I)² ⊆ I`.
    PrimeSquare { p: FinIdeal },
    /// `√I = P₁ ∩ P₂` for incomparable primes with `P₁P₂ ⊆ I`.
    PrimePair { p1: FinIdeal, p2: FinIdeal },
}

/// Outcome of a structure analysis: either the structural data, or the
/// witness showing the input was not two-absorbing to begin with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TaStructureOutcome {
    Structure(TaStructure),
    NotTwoAbsorbing(TaWitness),
}

/// Computes the structural form of a two-absorbing ideal. If the input is
/// not two-absorbing, the disproving witness is returned instead. An
/// [`Error::StructureViolation`] can only arise from an internal
/// inconsistency and is asserted to be unreachable by the test suite.
pub fn ta_structure(
    ring: &FiniteRing,
    ideal: &FinIdeal,
    guard: u64,
) -> Result<TaStructureOutcome, Error> {
    if let Some(w) = ta_check(ring, ideal, guard)? {
        return Ok(TaStructureOutcome::NotTwoAbsorbing(w));
    }
    let radical = ring.ideal_radical(ideal);
    if ring.is_prime_ideal(&radical) {
        let square = ring.ideal_product(&radical, &radical);
        if !square.is_subset_of(ideal) {
            return Err(Error::StructureViolation(
                "radical is prime but its square escapes the ideal".into(),
            ));
        }
        return Ok(TaStructureOutcome::Structure(TaStructure::PrimeSquare { p: radical }));
    }
    let primes = crate::finring::min_primes(ring, ideal, guard)?;
    if primes.len() != 2 {
        return Err(Error::StructureViolation(format!(
            "two-absorbing ideal with non-prime radical has {} minimal primes, expected 2",
            primes.len()
        )));
    }
    let (p1, p2) = (primes[0].clone(), primes[1].clone());
    if ring.ideal_intersect(&p1, &p2) != radical {
        return Err(Error::StructureViolation(
            "minimal primes do not intersect in the radical".into(),
        ));
    }
    if !ring.ideal_product(&p1, &p2).is_subset_of(ideal) {
        return Err(Error::StructureViolation(
            "product of the minimal primes escapes the ideal".into(),
        ));
    }
    if p1.is_subset_of(&p2) || p2.is_subset_of(&p1) {
        return Err(Error::StructureViolation("minimal primes are comparable".into()));
    }
    Ok(TaStructureOutcome::Structure(TaStructure::PrimePair { p1, p2 }))
}
