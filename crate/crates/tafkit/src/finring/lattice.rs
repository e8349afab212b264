//! Whole-ring tables: the element-level product table and the complete
//! ideal lattice of a small finite ring.
//!
//! Everything here is bounded by an explicit guard on the element count;
//! within it, products become O(1) lookups and the full set of ideals can
//! be enumerated, which is what the absorbing checks and the factorization
//! search are built on.

use std::cell::RefCell;
use std::collections::HashMap;

use super::ideal::IndexSet;
use super::{FinIdeal, FiniteRing};
use crate::Error;

/// Full `|R| x |R|` multiplication table over element indices.
///
/// Rows are built incrementally: walking `b` through the mixed-radix index
/// order changes exactly one digit (plus a cascade of digits wrapping to
/// zero), and the corresponding change of `a*b` is a fixed vector per digit
/// position, so each entry costs O(rank) instead of a full bilinear product.
pub struct MulTable {
    n: usize,
    tab: Vec<u32>,
}

impl MulTable {
    /// Hard cap on table side length (memory ~ 4 * n^2 bytes).
    const MAX_SIDE: u64 = 16_384;

    pub fn build(ring: &FiniteRing) -> Result<MulTable, Error> {
        let n64 = ring.size();
        if n64 > Self::MAX_SIDE {
            return Err(Error::TableTooLarge { size: n64 });
        }
        let n = n64 as usize;
        let k = ring.rank();
        let orders = ring.orders();
        let mut tab = vec![0u32; n * n];
        if k == 0 {
            return Ok(MulTable { n, tab });
        }

        for a in 0..n {
            let a_elem = ring.elem_at(a as u64);
            // m[j] = a * e_j, as coefficient vectors.
            let m: Vec<Vec<u64>> = (0..k)
                .map(|j| ring.mul_elem(&a_elem, &ring.basis_element(j)).coeffs().to_vec())
                .collect();
            // Incrementing digit p (wrapping all lower digits d_q-1 -> 0)
            // changes a*b by w[p] = m[p] - sum_{q>p} (d_q - 1) * m[q].
            let mut w = vec![vec![0u64; k]; k];
            for p in 0..k {
                for l in 0..k {
                    let mut delta = m[p][l] as i128;
                    for (q, mq) in m.iter().enumerate().skip(p + 1) {
                        delta -= (orders[q] as i128 - 1) * mq[l] as i128;
                    }
                    w[p][l] = delta.rem_euclid(orders[l] as i128) as u64;
                }
            }

            let row = &mut tab[a * n..(a + 1) * n];
            let mut digits = vec![0u64; k];
            let mut sum = vec![0u64; k];
            row[0] = 0; // a * 0 = 0
            for b in 1..n {
                let mut p = k - 1;
                while digits[p] == orders[p] - 1 {
                    digits[p] = 0;
                    p -= 1;
                }
                digits[p] += 1;
                let mut idx = 0u64;
                for l in 0..k {
                    sum[l] = (sum[l] + w[p][l]) % orders[l];
                    idx += sum[l] * ring.weights[l];
                }
                row[b] = idx as u32;
            }
        }
        Ok(MulTable { n, tab })
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.tab[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn row(&self, a: u32) -> &[u32] {
        &self.tab[a as usize * self.n..(a as usize + 1) * self.n]
    }

    pub fn side(&self) -> usize {
        self.n
    }
}

/// The complete ideal lattice of a small ring, with memoized products and
/// two-absorbing verdicts keyed by lattice id.
///
/// Ideal ids index [`IdealLattice::ideals`], which is sorted in the
/// canonical ideal order (lexicographic on element lists), so ids are
/// stable and reports are deterministic.
pub struct IdealLattice<'r> {
    ring: &'r FiniteRing,
    table: MulTable,
    ideals: Vec<FinIdeal>,
    id_by_key: HashMap<Vec<u32>, usize>,
    zero_id: usize,
    unit_id: usize,
    product_memo: RefCell<HashMap<(usize, usize), usize>>,
    ta_memo: RefCell<HashMap<usize, bool>>,
    primes_memo: RefCell<Option<Vec<usize>>>,
}

impl<'r> IdealLattice<'r> {
    /// Enumerates every ideal of `ring`. Fails with `GuardExceeded` when the
    /// ring is bigger than `guard` elements.
    pub fn build(ring: &'r FiniteRing, guard: u64) -> Result<Self, Error> {
        if ring.size() > guard {
            return Err(Error::GuardExceeded { size: ring.size(), guard });
        }
        let table = MulTable::build(ring)?;
        let n = ring.size() as u32;
        let mul = |a, b| table.mul(a, b);

        // Distinct principal ideals; joins with these reach every ideal,
        // since adjoining an element x to I and re-closing is exactly I + (x).
        let mut seen_principal: std::collections::HashSet<Vec<u32>> = Default::default();
        let mut principals: Vec<FinIdeal> = Vec::new();
        for x in 0..n {
            let set = ring.ideal_close_with(&[x], &mul);
            let ideal = finish(ring, set, vec![ring.elem_at(x as u64)]);
            if seen_principal.insert(ideal.elements().to_vec()) {
                principals.push(ideal);
            }
        }

        // Breadth-first closure of the lattice under joins with principals.
        let mut ideals: Vec<FinIdeal> = Vec::new();
        let mut id_by_key: HashMap<Vec<u32>, usize> = HashMap::new();
        let zero = ring.zero_ideal();
        id_by_key.insert(zero.elements().to_vec(), 0);
        ideals.push(zero);
        let mut pos = 0;
        while pos < ideals.len() {
            for p in &principals {
                if p.is_subset_of(&ideals[pos]) {
                    continue;
                }
                let joined = ring.ideal_sum(&ideals[pos], p);
                if !id_by_key.contains_key(joined.elements()) {
                    id_by_key.insert(joined.elements().to_vec(), ideals.len());
                    ideals.push(joined);
                }
            }
            pos += 1;
        }

        ideals.sort();
        let mut id_by_key = HashMap::with_capacity(ideals.len());
        for (i, ideal) in ideals.iter().enumerate() {
            id_by_key.insert(ideal.elements().to_vec(), i);
        }
        // Re-derive minimal generator lists now that the set is final.
        let ideals: Vec<FinIdeal> = ideals
            .into_iter()
            .map(|i| {
                let gens = ring.extract_gens(&i);
                FinIdeal { gens, ..i }
            })
            .collect();
        let zero_id = id_by_key[ring.zero_ideal().elements()];
        let unit_id = ideals
            .iter()
            .position(|i| i.len() as u64 == ring.size())
            .expect("unit ideal is always enumerated");

        Ok(IdealLattice {
            ring,
            table,
            ideals,
            id_by_key,
            zero_id,
            unit_id,
            product_memo: RefCell::new(HashMap::new()),
            ta_memo: RefCell::new(HashMap::new()),
            primes_memo: RefCell::new(None),
        })
    }

    pub fn ring(&self) -> &FiniteRing {
        self.ring
    }

    pub fn table(&self) -> &MulTable {
        &self.table
    }

    pub fn ideals(&self) -> &[FinIdeal] {
        &self.ideals
    }

    pub fn ideal(&self, id: usize) -> &FinIdeal {
        &self.ideals[id]
    }

    pub fn zero_id(&self) -> usize {
        self.zero_id
    }

    pub fn unit_id(&self) -> usize {
        self.unit_id
    }

    /// Lattice id of an ideal (None if it belongs to a different ring).
    pub fn id_of(&self, ideal: &FinIdeal) -> Option<usize> {
        self.id_by_key.get(ideal.elements()).copied()
    }

    pub fn is_subset(&self, a: usize, b: usize) -> bool {
        self.ideals[a].is_subset_of(&self.ideals[b])
    }

    /// Memoized ideal product by lattice id.
    pub fn product(&self, a: usize, b: usize) -> usize {
        let key = if a <= b { (a, b) } else { (b, a) };
        if let Some(&id) = self.product_memo.borrow().get(&key) {
            return id;
        }
        let prod = self.ring.ideal_product(&self.ideals[a], &self.ideals[b]);
        let id = self.id_of(&prod).expect("product of enumerated ideals is enumerated");
        self.product_memo.borrow_mut().insert(key, id);
        id
    }

    /// Memoized two-absorbing verdict by lattice id (false for the unit
    /// ideal, which is not proper).
    pub fn is_ta(&self, id: usize) -> bool {
        if let Some(&v) = self.ta_memo.borrow().get(&id) {
            return v;
        }
        let v = if id == self.unit_id {
            false
        } else {
            let bits = self.ideals[id].bits();
            crate::absorbing::scan_ta(self.table.side(), |a, b| self.table.mul(a, b), bits)
                .is_none()
        };
        self.ta_memo.borrow_mut().insert(id, v);
        v
    }

    /// Ids of all ideals containing the given one (including itself and R),
    /// in canonical order.
    pub fn ideals_above(&self, id: usize) -> Vec<usize> {
        (0..self.ideals.len())
            .filter(|&j| self.is_subset(id, j))
            .collect()
    }

    /// Ids of all prime ideals, memoized, in canonical order.
    pub fn prime_ids(&self) -> Vec<usize> {
        if let Some(ids) = self.primes_memo.borrow().as_ref() {
            return ids.clone();
        }
        let ids: Vec<usize> = (0..self.ideals.len())
            .filter(|&i| self.is_prime_fast(i))
            .collect();
        *self.primes_memo.borrow_mut() = Some(ids.clone());
        ids
    }

    /// Prime test by definition, with table-backed products.
    fn is_prime_fast(&self, id: usize) -> bool {
        if id == self.unit_id {
            return false;
        }
        let ideal = &self.ideals[id];
        let n = self.table.side() as u32;
        let outside: Vec<u32> = (0..n).filter(|&x| !ideal.contains_index(x)).collect();
        for (i, &a) in outside.iter().enumerate() {
            let row = self.table.row(a);
            for &b in &outside[i..] {
                if ideal.contains_index(row[b as usize]) {
                    return false;
                }
            }
        }
        true
    }

    /// Maximality by definition on the complete lattice: proper, with no
    /// ideal strictly between it and `R`.
    pub fn is_maximal(&self, id: usize) -> bool {
        if id == self.unit_id {
            return false;
        }
        !(0..self.ideals.len()).any(|j| {
            j != id && j != self.unit_id && self.is_subset(id, j) && !self.is_subset(j, id)
        })
    }
}

fn finish(_ring: &FiniteRing, set: IndexSet, gens: Vec<super::RingElement>) -> FinIdeal {
    let IndexSet { bits, mut elems } = set;
    elems.sort_unstable();
    FinIdeal { elems, bits, gens }
}

/// All ideals of `ring`, canonically ordered. Errors when the ring exceeds
/// the enumeration guard.
pub fn enumerate_ideals(ring: &FiniteRing, guard: u64) -> Result<Vec<FinIdeal>, Error> {
    Ok(IdealLattice::build(ring, guard)?.ideals)
}

/// Minimal primes over an ideal. In a finite commutative ring with identity
/// every prime is maximal, so the primes containing `I` are pairwise
/// incomparable; the minimality filter still runs as a cheap safety net.
pub fn min_primes(ring: &FiniteRing, ideal: &FinIdeal, guard: u64) -> Result<Vec<FinIdeal>, Error> {
    if ring.is_unit_ideal(ideal) {
        return Err(Error::NotProper { op: "min_primes" });
    }
    let lattice = IdealLattice::build(ring, guard)?;
    let id = lattice
        .id_of(ideal)
        .expect("ideal of the same ring is enumerated");
    let over: Vec<usize> = lattice
        .prime_ids()
        .into_iter()
        .filter(|&p| lattice.is_subset(id, p))
        .collect();
    let minimal: Vec<usize> = over
        .iter()
        .copied()
        .filter(|&p| !over.iter().any(|&q| q != p && lattice.is_subset(q, p)))
        .collect();
    Ok(minimal.into_iter().map(|p| lattice.ideal(p).clone()).collect())
}
