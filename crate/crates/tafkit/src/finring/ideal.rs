//! Ideals of finite rings: closure, arithmetic, and classical predicates.
//!
//! Ideals are stored in canonical form — the sorted list of element indices
//! plus a membership bitset — together with a generating list kept for
//! reporting. Equality, hashing, and ordering all use the element list
//! alone, so two ideals with different generator histories compare equal,
//! and sorting a list of ideals is deterministic across runs.
//!
//! All operations here are exhaustive and exact; they are intended for
//! rings whose elements can be enumerated (the CLI enforces a configurable
//! guard before calling them).

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use super::{FiniteRing, RingElement};

/// An ideal of a [`FiniteRing`] in canonical form.
#[derive(Debug, Clone)]
pub struct FinIdeal {
    /// Sorted, duplicate-free element indices. Always contains 0.
    pub(crate) elems: Vec<u32>,
    /// Membership bitset over element indices.
    pub(crate) bits: Vec<u64>,
    /// A generating list (for reporting; the element list is authoritative).
    pub(crate) gens: Vec<RingElement>,
}

impl PartialEq for FinIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.elems == other.elems
    }
}
impl Eq for FinIdeal {}

impl Hash for FinIdeal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.elems.hash(state);
    }
}

/// Canonical ideal order: lexicographic on the sorted element lists.
impl Ord for FinIdeal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.elems.cmp(&other.elems)
    }
}
impl PartialOrd for FinIdeal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FinIdeal {
    pub fn elements(&self) -> &[u32] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        false // an ideal always contains 0
    }

    pub fn gens(&self) -> &[RingElement] {
        &self.gens
    }

    pub fn contains_index(&self, idx: u32) -> bool {
        self.bits[(idx / 64) as usize] >> (idx % 64) & 1 == 1
    }

    pub(crate) fn bits(&self) -> &[u64] {
        &self.bits
    }

    /// `self ⊆ other`, tested wordwise on the bitsets.
    pub fn is_subset_of(&self, other: &FinIdeal) -> bool {
        self.bits
            .iter()
            .zip(&other.bits)
            .all(|(&a, &b)| a & !b == 0)
    }
}

/// Insertion-ordered element set with a bitset for O(1) membership.
pub(crate) struct IndexSet {
    pub bits: Vec<u64>,
    pub elems: Vec<u32>,
}

impl IndexSet {
    pub fn singleton_zero(size: u64) -> Self {
        let words = (size as usize).div_ceil(64);
        let mut s = IndexSet { bits: vec![0; words], elems: Vec::new() };
        s.insert(0);
        s
    }

    pub fn contains(&self, idx: u32) -> bool {
        self.bits[(idx / 64) as usize] >> (idx % 64) & 1 == 1
    }

    pub fn insert(&mut self, idx: u32) {
        debug_assert!(!self.contains(idx));
        self.bits[(idx / 64) as usize] |= 1u64 << (idx % 64);
        self.elems.push(idx);
    }
}

/// Largest ring size for which exhaustive ideal computations are attempted
/// outside the CLI guard (the bitsets and scans stay within memory budget).
const MAX_EXHAUSTIVE: u64 = 1 << 26;

impl FiniteRing {
    fn assert_enumerable(&self) {
        assert!(
            self.size() <= MAX_EXHAUSTIVE,
            "exhaustive ideal computation requires at most {MAX_EXHAUSTIVE} elements, \
             ring has {}",
            self.size()
        );
    }

    /// Extends a subgroup (as an [`IndexSet`]) by one element: appends the
    /// coset chain `S+g, S+2g, ...` until a multiple of `g` falls back into
    /// the existing set. Cosets are pairwise disjoint until that happens, so
    /// every appended index is new.
    pub(crate) fn extend_subgroup(&self, set: &mut IndexSet, g: u32) {
        if set.contains(g) {
            return;
        }
        let base_len = set.elems.len();
        let base: Vec<u32> = set.elems[..base_len].to_vec();
        let mut shift = g;
        while !set.contains(shift) {
            for &s in &base {
                set.insert(self.add_index(s, shift));
            }
            shift = self.add_index(shift, g);
        }
    }

    /// Multiplicative closure pass: scans `set.elems[start..]` (and whatever
    /// gets appended) against the additive basis, extending the subgroup by
    /// each product. On return the set is an ideal, provided `set.elems[..start]`
    /// was already closed under multiplication by basis elements.
    pub(crate) fn close_multiplicatively(
        &self,
        set: &mut IndexSet,
        start: usize,
        mul: &dyn Fn(u32, u32) -> u32,
    ) {
        let basis: Vec<u32> = (0..self.rank())
            .map(|j| self.index_of(&self.basis_element(j)) as u32)
            .collect();
        let mut i = start;
        while i < set.elems.len() {
            let z = set.elems[i];
            for &b in &basis {
                let w = mul(z, b);
                if !set.contains(w) {
                    self.extend_subgroup(set, w);
                }
            }
            i += 1;
        }
    }

    pub(crate) fn ideal_close_with(
        &self,
        seed: &[u32],
        mul: &dyn Fn(u32, u32) -> u32,
    ) -> IndexSet {
        let mut set = IndexSet::singleton_zero(self.size());
        for &g in seed {
            self.extend_subgroup(&mut set, g);
        }
        self.close_multiplicatively(&mut set, 0, mul);
        set
    }

    fn finish_ideal(&self, set: IndexSet, gens: Vec<RingElement>) -> FinIdeal {
        let IndexSet { bits, mut elems } = set;
        elems.sort_unstable();
        FinIdeal { elems, bits, gens }
    }

    /// The zero ideal `(0)`.
    pub fn zero_ideal(&self) -> FinIdeal {
        self.assert_enumerable();
        let set = IndexSet::singleton_zero(self.size());
        self.finish_ideal(set, Vec::new())
    }

    /// The unit ideal `R`.
    pub fn unit_ideal(&self) -> FinIdeal {
        self.ideal_generate(&[self.one()])
    }

    /// Whether the ideal is all of `R`.
    pub fn is_unit_ideal(&self, ideal: &FinIdeal) -> bool {
        ideal.len() as u64 == self.size()
    }

    /// Smallest ideal containing the given elements.
    pub fn ideal_generate(&self, gens: &[RingElement]) -> FinIdeal {
        self.assert_enumerable();
        let seed: Vec<u32> = gens.iter().map(|g| self.index_of(g) as u32).collect();
        let mul = |a, b| self.mul_index(a, b);
        let set = self.ideal_close_with(&seed, &mul);
        self.finish_ideal(set, gens.to_vec())
    }

    /// Membership test for a ring element.
    pub fn ideal_contains(&self, ideal: &FinIdeal, x: &RingElement) -> bool {
        ideal.contains_index(self.index_of(x) as u32)
    }

    /// `I + J`: the ideal generated by the union (no multiplicative pass is
    /// needed — a sum of ideals is already an ideal).
    pub fn ideal_sum(&self, a: &FinIdeal, b: &FinIdeal) -> FinIdeal {
        let mut set = IndexSet::singleton_zero(self.size());
        for &x in &a.elems {
            self.extend_subgroup(&mut set, x);
        }
        for &x in &b.elems {
            self.extend_subgroup(&mut set, x);
        }
        let mut gens = a.gens.clone();
        gens.extend(b.gens.iter().cloned());
        let ideal = self.finish_ideal(set, gens);
        debug_assert!(self.ideal_is_closed(&ideal));
        ideal
    }

    /// `I · J`: generated by the pairwise products of the generators.
    pub fn ideal_product(&self, a: &FinIdeal, b: &FinIdeal) -> FinIdeal {
        debug_assert!(self.gens_span(a) && self.gens_span(b));
        let mut prods = Vec::with_capacity(a.gens.len() * b.gens.len());
        for x in &a.gens {
            for y in &b.gens {
                prods.push(self.mul_elem(x, y));
            }
        }
        let raw = self.ideal_generate(&prods);
        let gens = self.extract_gens(&raw);
        FinIdeal { gens, ..raw }
    }

    /// `I ∩ J`.
    pub fn ideal_intersect(&self, a: &FinIdeal, b: &FinIdeal) -> FinIdeal {
        let bits: Vec<u64> = a.bits.iter().zip(&b.bits).map(|(&x, &y)| x & y).collect();
        let elems: Vec<u32> = a.elems.iter().copied().filter(|&x| b.contains_index(x)).collect();
        let mut ideal = FinIdeal { elems, bits, gens: Vec::new() };
        ideal.gens = self.extract_gens(&ideal);
        debug_assert!(self.ideal_is_closed(&ideal));
        ideal
    }

    /// `√I = { x : x^t ∈ I for some t ≥ 1 }`.
    ///
    /// Membership reduces to a single power: powers of `x` are eventually
    /// periodic with at most `|R|` distinct values, and once some power lies
    /// in `I` all later powers do, so `x ∈ √I  ⟺  x^|R| ∈ I` — computed by
    /// square-and-multiply instead of walking the cycle.
    pub fn ideal_radical(&self, ideal: &FinIdeal) -> FinIdeal {
        self.assert_enumerable();
        let n = self.size();
        let mut set = IndexSet::singleton_zero(n);
        for idx in 0..n {
            let x = self.elem_at(idx);
            let p = self.pow_elem(&x, n);
            if self.ideal_contains(ideal, &p) {
                let i = idx as u32;
                if !set.contains(i) {
                    self.extend_subgroup(&mut set, i);
                }
            }
        }
        let mut rad = self.finish_ideal(set, Vec::new());
        rad.gens = self.extract_gens(&rad);
        debug_assert!(self.ideal_is_closed(&rad));
        debug_assert!(ideal.is_subset_of(&rad));
        rad
    }

    /// Greedy minimal generating list: walk elements in canonical order and
    /// adopt each one not generated by the picks so far. Each pick at least
    /// doubles the ideal, so at most `log2 |R|` closures run.
    pub fn extract_gens(&self, ideal: &FinIdeal) -> Vec<RingElement> {
        let mul = |a, b| self.mul_index(a, b);
        let mut picked: Vec<u32> = Vec::new();
        let mut cur = self.ideal_close_with(&[], &mul);
        for &x in &ideal.elems {
            if !cur.contains(x) {
                picked.push(x);
                cur = self.ideal_close_with(&picked, &mul);
            }
        }
        picked.iter().map(|&x| self.elem_at(x as u64)).collect()
    }

    /// Debug check: the element set is additively and multiplicatively closed.
    pub(crate) fn ideal_is_closed(&self, ideal: &FinIdeal) -> bool {
        let regen = self.ideal_generate(
            &ideal.elems.iter().map(|&x| self.elem_at(x as u64)).collect::<Vec<_>>(),
        );
        regen.elems == ideal.elems
    }

    /// Debug check: the stored generators really generate the element set.
    fn gens_span(&self, ideal: &FinIdeal) -> bool {
        self.ideal_generate(&ideal.gens).elems == ideal.elems
    }

    /// Prime test: `I` proper and `ab ∈ I ⇒ a ∈ I ∨ b ∈ I`.
    pub fn is_prime_ideal(&self, ideal: &FinIdeal) -> bool {
        if self.is_unit_ideal(ideal) {
            return false;
        }
        let n = self.size() as u32;
        let outside: Vec<u32> = (0..n).filter(|&x| !ideal.contains_index(x)).collect();
        for (i, &a) in outside.iter().enumerate() {
            for &b in &outside[i..] {
                if ideal.contains_index(self.mul_index(a, b)) {
                    return false;
                }
            }
        }
        true
    }

    /// Maximality test, independent of primality: `I` proper and adjoining
    /// any outside element generates the unit ideal. (In a finite
    /// commutative ring primes coincide with maximals; keeping the two
    /// implementations separate lets that theorem be tested rather than
    /// assumed.)
    pub fn is_maximal_ideal(&self, ideal: &FinIdeal) -> bool {
        if self.is_unit_ideal(ideal) {
            return false;
        }
        let n = self.size();
        let one = self.index_of(&self.one()) as u32;
        let mul = |a, b| self.mul_index(a, b);
        for idx in 0..n as u32 {
            if ideal.contains_index(idx) {
                continue;
            }
            // Rebuild I ∪ {idx} as a set and close; the original part is
            // already multiplicatively closed, so scanning starts after it.
            let mut set = IndexSet::singleton_zero(n);
            for &x in &ideal.elems {
                if !set.contains(x) {
                    self.extend_subgroup(&mut set, x);
                }
            }
            let start = set.elems.len();
            self.extend_subgroup(&mut set, idx);
            self.close_multiplicatively(&mut set, start, &mul);
            if !set.contains(one) {
                return false;
            }
        }
        true
    }

    /// Primary test: `I` proper and `ab ∈ I ∧ a ∉ I ⇒ b ∈ √I`.
    pub fn is_primary_ideal(&self, ideal: &FinIdeal) -> bool {
        if self.is_unit_ideal(ideal) {
            return false;
        }
        let radical = self.ideal_radical(ideal);
        let n = self.size() as u32;
        for a in 0..n {
            if ideal.contains_index(a) {
                continue;
            }
            for b in 0..n {
                if !radical.contains_index(b) && ideal.contains_index(self.mul_index(a, b)) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use crate::finring::construct;
    use crate::ringspec::parse_ringspec;

    fn ring(text: &str) -> crate::finring::Constructed {
        construct(&parse_ringspec(text).unwrap()).unwrap()
    }

    #[test]
    fn principal_ideals_of_z12() {
        let c = ring("Z/12");
        let r = &c.ring;
        // (d) in Z/12 has 12/gcd... the subgroup generated by d.
        for d in 0..12i64 {
            let ideal = r.ideal_generate(&[r.elem(&[d])]);
            let g = gcd(d as u64, 12);
            assert_eq!(ideal.len() as u64, 12 / g, "principal ideal ({d})");
        }
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 { a.max(1) } else { gcd(b, a % b) }
    }

    #[test]
    fn sum_product_intersect_in_z12() {
        let c = ring("Z/12");
        let r = &c.ring;
        let i4 = r.ideal_generate(&[r.elem(&[4])]);
        let i6 = r.ideal_generate(&[r.elem(&[6])]);
        let sum = r.ideal_sum(&i4, &i6);
        // (4) + (6) = (2)
        assert_eq!(sum.len(), 6);
        let prod = r.ideal_product(&i4, &i6);
        // (4)(6) = (24) = (0) in Z/12
        assert_eq!(prod.len(), 1);
        let cap = r.ideal_intersect(&i4, &i6);
        // (4) = {0,4,8} and (6) = {0,6} meet only in 0.
        assert_eq!(cap.len(), 1);
    }

    #[test]
    fn radical_in_z12_and_z8() {
        let c = ring("Z/12");
        let r = &c.ring;
        let zero = r.zero_ideal();
        let rad = r.ideal_radical(&zero);
        // nilradical of Z/12 = (6)
        assert_eq!(rad.len(), 2);
        assert!(r.ideal_contains(&rad, &r.elem(&[6])));

        let c8 = ring("Z/8");
        let r8 = &c8.ring;
        let rad8 = r8.ideal_radical(&r8.zero_ideal());
        // nilradical of Z/8 = (2)
        assert_eq!(rad8.len(), 4);
    }

    #[test]
    fn primes_and_maximals_in_z12() {
        let c = ring("Z/12");
        let r = &c.ring;
        let i2 = r.ideal_generate(&[r.elem(&[2])]);
        let i3 = r.ideal_generate(&[r.elem(&[3])]);
        let i4 = r.ideal_generate(&[r.elem(&[4])]);
        let i6 = r.ideal_generate(&[r.elem(&[6])]);
        assert!(r.is_prime_ideal(&i2));
        assert!(r.is_prime_ideal(&i3));
        assert!(!r.is_prime_ideal(&i4));
        assert!(!r.is_prime_ideal(&i6));
        assert!(r.is_maximal_ideal(&i2));
        assert!(r.is_maximal_ideal(&i3));
        assert!(!r.is_maximal_ideal(&i4));
        assert!(!r.is_maximal_ideal(&r.unit_ideal()));
        // (4) is primary (radical (2) is prime and the condition holds).
        assert!(r.is_primary_ideal(&i4));
        // (6) = (2) ∩ (3) is not primary: 2*3 ∈ (6), 2 ∉ (6), 3 ∉ √(6)=(6).
        assert!(!r.is_primary_ideal(&i6));
    }

    #[test]
    fn ideals_in_f4_are_trivial() {
        let c = ring("Z/2[x]/(x^2+x+1)");
        let r = &c.ring;
        assert_eq!(r.size(), 4);
        // A field has exactly two ideals; every nonzero element generates R.
        for idx in 1..4 {
            let x = r.elem_at(idx);
            let ideal = r.ideal_generate(&[x]);
            assert_eq!(ideal.len(), 4);
        }
        assert!(r.is_maximal_ideal(&r.zero_ideal()));
        assert!(r.is_prime_ideal(&r.zero_ideal()));
    }

    #[test]
    fn extract_gens_is_small_and_spans() {
        let c = ring("Z/8[x]/(x^2, 2x)");
        let r = &c.ring;
        assert_eq!(r.size(), 16);
        let ideal = r.ideal_generate(&[r.elem(&[2, 0]), r.elem(&[0, 1])]);
        let gens = r.extract_gens(&ideal);
        let regen = r.ideal_generate(&gens);
        assert_eq!(regen.elements(), ideal.elements());
        assert!(gens.len() <= 2);
    }

    #[test]
    fn subset_and_canonical_order() {
        let c = ring("Z/12");
        let r = &c.ring;
        let i2 = r.ideal_generate(&[r.elem(&[2])]);
        let i4 = r.ideal_generate(&[r.elem(&[4])]);
        assert!(i4.is_subset_of(&i2));
        assert!(!i2.is_subset_of(&i4));
        let mut v = vec![i2.clone(), r.zero_ideal(), i4.clone()];
        v.sort();
        assert_eq!(v[0].len(), 1); // (0) = [0] sorts first
        // [0,2,4,...] vs [0,4,8]: 2 < 4 so (2) precedes (4) lexicographically.
        assert_eq!(v[1].elements(), i2.elements());
        assert_eq!(v[2].elements(), i4.elements());
    }
}
