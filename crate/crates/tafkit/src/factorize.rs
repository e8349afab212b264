//! Factorization of ideals into products of two-absorbing ideals, and the
//! whole-ring audit for the property that every proper ideal has one.
//!
//! The search runs over an abstract domain of interned ideals (finite-ring
//! lattices here, quadratic-order divisor sets in [`crate::quadord`]): to
//! factor `K`, either `K` is itself two-absorbing, or some proper
//! two-absorbing `J ⊇ K` and cofactor `C ⊇ K` satisfy `J·C = K` with `C`
//! recursively factorable. Every factor and partial product of a
//! factorization of `K` contains `K`, so candidates come only from the
//! ideals above `K`.
//!
//! Failures are memoized. An in-progress mark prunes cycles such as
//! `J·K = K`; this cannot hide a real factorization, because a minimal
//! factorization `K = J₁⋯J_m` has strictly ascending cofactors
//! `C_i = J_{i+1}⋯J_m ⊋ K` (a cofactor equal to `K` would shorten the
//! factorization), while every in-progress node is contained in `K` — so
//! the witness path never meets the pruned set, and a recorded failure is
//! sound regardless of the search context it was recorded under.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::absorbing::ta_check;
use crate::finring::{FinIdeal, FiniteRing, IdealLattice, RingElement};
use crate::Error;

/// An interned poset of candidate ideals for the factorization search.
pub(crate) trait FactorDomain {
    /// Whether node `id` is a proper two-absorbing ideal.
    fn is_ta(&self, id: usize) -> bool;
    /// Product of two nodes, interned (the result may lie below the root).
    fn product(&self, a: usize, b: usize) -> usize;
    /// Proper ideals containing node `id` (including `id`, excluding the
    /// unit ideal), ordered by decreasing cardinality with ties broken by
    /// the canonical ideal order.
    fn divisors_above(&self, id: usize) -> Vec<usize>;
}

#[derive(Clone)]
enum Memo {
    InProgress,
    Fail,
    Done(Vec<usize>),
}

/// Shared memoized search; one instance may serve many roots.
pub(crate) struct FactorSearch<'d, D: FactorDomain> {
    dom: &'d D,
    memo: RefCell<HashMap<usize, Memo>>,
}

impl<'d, D: FactorDomain> FactorSearch<'d, D> {
    pub fn new(dom: &'d D) -> Self {
        FactorSearch { dom, memo: RefCell::new(HashMap::new()) }
    }

    /// Factors of `root` as node ids (first factor first), or `None` when
    /// the exhaustive search proves no factorization exists.
    pub fn run(&self, root: usize) -> Option<Vec<usize>> {
        match self.memo.borrow().get(&root) {
            Some(Memo::InProgress) | Some(Memo::Fail) => return None,
            Some(Memo::Done(f)) => return Some(f.clone()),
            None => {}
        }
        self.memo.borrow_mut().insert(root, Memo::InProgress);
        let result = self.expand(root);
        let state = match &result {
            Some(f) => Memo::Done(f.clone()),
            None => Memo::Fail,
        };
        self.memo.borrow_mut().insert(root, state);
        result
    }

    fn expand(&self, root: usize) -> Option<Vec<usize>> {
        if self.dom.is_ta(root) {
            return Some(vec![root]);
        }
        let candidates = self.dom.divisors_above(root);
        for &j in &candidates {
            if !self.dom.is_ta(j) {
                continue;
            }
            for &c in &candidates {
                if self.dom.product(j, c) != root {
                    continue;
                }
                if let Some(rest) = self.run(c) {
                    let mut factors = Vec::with_capacity(rest.len() + 1);
                    factors.push(j);
                    factors.extend(rest);
                    return Some(factors);
                }
            }
        }
        None
    }

    /// Depth-bounded variant: a factorization with at most `limit` factors,
    /// if one exists. Cycle pruning is unnecessary — the bound decreases on
    /// every recursion.
    fn run_bounded(
        &self,
        root: usize,
        limit: u32,
        memo: &mut HashMap<(usize, u32), Option<Vec<usize>>>,
    ) -> Option<Vec<usize>> {
        if limit == 0 {
            return None;
        }
        if let Some(r) = memo.get(&(root, limit)) {
            return r.clone();
        }
        let result = (|| {
            if self.dom.is_ta(root) {
                return Some(vec![root]);
            }
            if limit == 1 {
                return None;
            }
            let candidates = self.dom.divisors_above(root);
            for &j in &candidates {
                if !self.dom.is_ta(j) {
                    continue;
                }
                for &c in &candidates {
                    if self.dom.product(j, c) != root {
                        continue;
                    }
                    if let Some(rest) = self.run_bounded(c, limit - 1, memo) {
                        let mut factors = Vec::with_capacity(rest.len() + 1);
                        factors.push(j);
                        factors.extend(rest);
                        return Some(factors);
                    }
                }
            }
            None
        })();
        memo.insert((root, limit), result.clone());
        result
    }

    /// A factorization of minimal length, found by iterative deepening
    /// below the length of the unbounded search's result.
    pub fn run_shortest(&self, root: usize) -> Option<Vec<usize>> {
        let unbounded = self.run(root)?;
        let mut memo = HashMap::new();
        for limit in 1..unbounded.len() as u32 {
            if let Some(f) = self.run_bounded(root, limit, &mut memo) {
                return Some(f);
            }
        }
        Some(unbounded)
    }
}

/// Finite-ring domain: the complete ideal lattice with memoized products
/// and two-absorbing verdicts.
pub(crate) struct LatticeDomain<'r> {
    lattice: &'r IdealLattice<'r>,
    divisor_memo: RefCell<HashMap<usize, Vec<usize>>>,
}

impl<'r> LatticeDomain<'r> {
    pub fn new(lattice: &'r IdealLattice<'r>) -> Self {
        LatticeDomain { lattice, divisor_memo: RefCell::new(HashMap::new()) }
    }
}

impl FactorDomain for LatticeDomain<'_> {
    fn is_ta(&self, id: usize) -> bool {
        self.lattice.is_ta(id)
    }

    fn product(&self, a: usize, b: usize) -> usize {
        self.lattice.product(a, b)
    }

    fn divisors_above(&self, id: usize) -> Vec<usize> {
        if let Some(v) = self.divisor_memo.borrow().get(&id) {
            return v.clone();
        }
        let mut ids: Vec<usize> = self
            .lattice
            .ideals_above(id)
            .into_iter()
            .filter(|&j| j != self.lattice.unit_id())
            .collect();
        // Decreasing cardinality, ties by canonical order (= id order).
        ids.sort_by_key(|&j| (std::cmp::Reverse(self.lattice.ideal(j).len()), j));
        self.divisor_memo.borrow_mut().insert(id, ids.clone());
        ids
    }
}

/// Searches for a factorization of `ideal` into proper two-absorbing
/// ideals. `Ok(None)` means the exhaustive search proved none exists.
pub fn ta_factorization(
    ring: &FiniteRing,
    ideal: &FinIdeal,
    guard: u64,
) -> Result<Option<Vec<FinIdeal>>, Error> {
    factorization_impl(ring, ideal, guard, false)
}

/// Like [`ta_factorization`], but returns a factorization of minimal
/// length (found by iterative deepening under the first result's length).
pub fn ta_factorization_shortest(
    ring: &FiniteRing,
    ideal: &FinIdeal,
    guard: u64,
) -> Result<Option<Vec<FinIdeal>>, Error> {
    factorization_impl(ring, ideal, guard, true)
}

fn factorization_impl(
    ring: &FiniteRing,
    ideal: &FinIdeal,
    guard: u64,
    shortest: bool,
) -> Result<Option<Vec<FinIdeal>>, Error> {
    if ring.is_unit_ideal(ideal) {
        return Err(Error::NotProper { op: "ta_factorization" });
    }
    let lattice = IdealLattice::build(ring, guard)?;
    let root = lattice
        .id_of(ideal)
        .expect("ideal of the same ring is enumerated");
    let dom = LatticeDomain::new(&lattice);
    let search = FactorSearch::new(&dom);
    let found = if shortest { search.run_shortest(root) } else { search.run(root) };
    let factors: Option<Vec<FinIdeal>> =
        found.map(|ids| ids.into_iter().map(|id| lattice.ideal(id).clone()).collect());
    if let Some(f) = &factors {
        debug_assert!(verify_factorization(ring, ideal, f, guard));
    }
    Ok(factors)
}

/// Re-verifies a claimed factorization: every factor is proper and
/// two-absorbing, and the factors re-multiply to the ideal.
pub fn verify_factorization(
    ring: &FiniteRing,
    ideal: &FinIdeal,
    factors: &[FinIdeal],
    guard: u64,
) -> bool {
    if factors.is_empty() {
        return false;
    }
    for f in factors {
        if ring.is_unit_ideal(f) {
            return false;
        }
        match ta_check(ring, f, guard) {
            Ok(None) => {}
            _ => return false,
        }
    }
    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        acc = ring.ideal_product(&acc, f);
    }
    acc == *ideal
}

/// An obstruction to factorability: a proper ideal whose radical `M` is
/// maximal while `I` and `M²` are incomparable. No product of
/// two-absorbing ideals can equal such an `I`, so one witness disproves
/// the whole ring. The elements `in_i_not_m2 ∈ I∖M²` and
/// `in_m2_not_i ∈ M²∖I` make the incomparability machine-checkable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncomparabilityWitness {
    pub ideal: FinIdeal,
    pub maximal: FinIdeal,
    pub in_i_not_m2: RingElement,
    pub in_m2_not_i: RingElement,
}

impl IncomparabilityWitness {
    /// Re-verifies every claim in the certificate.
    pub fn verify(&self, ring: &FiniteRing) -> bool {
        let m2 = ring.ideal_product(&self.maximal, &self.maximal);
        ring.ideal_radical(&self.ideal) == self.maximal
            && ring.is_maximal_ideal(&self.maximal)
            && ring.ideal_contains(&self.ideal, &self.in_i_not_m2)
            && !ring.ideal_contains(&m2, &self.in_i_not_m2)
            && ring.ideal_contains(&m2, &self.in_m2_not_i)
            && !ring.ideal_contains(&self.ideal, &self.in_m2_not_i)
    }
}

/// Scans the proper ideals in canonical order for the first
/// incomparability obstruction, if any.
pub fn incomparability_witness(
    ring: &FiniteRing,
    guard: u64,
) -> Result<Option<IncomparabilityWitness>, Error> {
    let lattice = IdealLattice::build(ring, guard)?;
    for id in 0..lattice.ideals().len() {
        if id == lattice.unit_id() {
            continue;
        }
        let ideal = lattice.ideal(id);
        let radical = ring.ideal_radical(ideal);
        let rad_id = lattice.id_of(&radical).expect("radical is enumerated");
        if !lattice.is_maximal(rad_id) {
            continue;
        }
        let m2_id = lattice.product(rad_id, rad_id);
        if lattice.is_subset(id, m2_id) || lattice.is_subset(m2_id, id) {
            continue;
        }
        let m2 = lattice.ideal(m2_id);
        let x = ideal
            .elements()
            .iter()
            .copied()
            .find(|&e| !m2.contains_index(e))
            .expect("incomparability provides an element of I outside M^2");
        let y = m2
            .elements()
            .iter()
            .copied()
            .find(|&e| !ideal.contains_index(e))
            .expect("incomparability provides an element of M^2 outside I");
        return Ok(Some(IncomparabilityWitness {
            ideal: ideal.clone(),
            maximal: radical,
            in_i_not_m2: ring.elem_at(x as u64),
            in_m2_not_i: ring.elem_at(y as u64),
        }));
    }
    Ok(None)
}

/// Verdict of the whole-ring audit, with its certificate.
#[derive(Debug, Clone)]
pub enum TafVerdict {
    /// Every proper ideal admits a factorization; `factored` counts them.
    Taf { factored: usize },
    /// Disproof by an incomparability obstruction.
    NotTafIncomparable(IncomparabilityWitness),
    /// Disproof by exhausted search: the first (canonical order) proper
    /// ideal with no factorization.
    NotTafExhausted { ideal: FinIdeal },
}

impl TafVerdict {
    pub fn is_taf(&self) -> bool {
        matches!(self, TafVerdict::Taf { .. })
    }
}

/// Audits a ring: is every proper ideal a product of two-absorbing ideals?
/// Tries the cheap incomparability disproof first, then factors every
/// proper ideal (sharing one memo table across the whole lattice).
pub fn is_taf(ring: &FiniteRing, guard: u64) -> Result<TafVerdict, Error> {
    if let Some(w) = incomparability_witness(ring, guard)? {
        debug_assert!(w.verify(ring));
        return Ok(TafVerdict::NotTafIncomparable(w));
    }
    let lattice = IdealLattice::build(ring, guard)?;
    let dom = LatticeDomain::new(&lattice);
    let search = FactorSearch::new(&dom);
    let mut factored = 0;
    for id in 0..lattice.ideals().len() {
        if id == lattice.unit_id() {
            continue;
        }
        if search.run(id).is_none() {
            return Ok(TafVerdict::NotTafExhausted { ideal: lattice.ideal(id).clone() });
        }
        factored += 1;
    }
    Ok(TafVerdict::Taf { factored })
}
