//! Quadratic orders `Z[√d]` and `Z[(1+√d)/2]` with exact ideal arithmetic.
//!
//! Elements are `x + y·w` with integer coordinates, where `w` is the
//! adjoined generator (`√d`, or `(1+√d)/2` when the half-integer basis is
//! in play). Nonzero ideals are stored in Hermite normal form: the column
//! pair `(a, 0), (b, c)` with `a, c ≥ 1`, `0 ≤ b < a`, and `c` dividing
//! both `a` and `b`. That form is unique per ideal, so equality is
//! structural and `(a, b+cw)` is a canonical generating pair. The index
//! `[D : I]` — the ideal's norm here — is `a·c`.
//!
//! Finite questions about an ideal route through its quotient: `D/I` is a
//! finite ring of exactly `norm(I)` elements, built by the same Smith
//! normal form engine as ring presentations. Two-absorbing checks,
//! divisor enumeration, and the factorization search all happen on that
//! side and pull the answers (and witnesses) back through the quotient
//! map. All arithmetic is checked `i128`; overflow aborts loudly rather
//! than wrapping.

pub mod classify;

use std::cell::RefCell;
use std::collections::HashMap;

use crate::absorbing::ta_check;
use crate::factorize::{FactorDomain, FactorSearch};
use crate::finring::{
    enumerate_ideals, min_primes, ring_from_quotient, FiniteRing, QuotientMap, RingElement,
};
use crate::snf::{add_i, mul_i, Mat};
use crate::Error;

/// An order in a quadratic number field, `Z[w]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadOrder {
    d: i128,
    half: bool,
}

/// Element `x + y·w` of a quadratic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadElement {
    pub x: i128,
    pub y: i128,
}

impl QuadElement {
    pub const ZERO: QuadElement = QuadElement { x: 0, y: 0 };

    pub fn new(x: i128, y: i128) -> Self {
        QuadElement { x, y }
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }
}

/// Formats `x + y·w` ("0", "3", "-w", "3+2w", "3-2w", ...).
pub fn format_quad(e: &QuadElement) -> String {
    match (e.x, e.y) {
        (0, 0) => "0".to_string(),
        (x, 0) => x.to_string(),
        (0, y) => format_w(y),
        (x, y) if y < 0 => format!("{x}-{}", format_w(-y).trim_start_matches('-')),
        (x, y) => format!("{x}+{}", format_w(y)),
    }
}

fn format_w(y: i128) -> String {
    match y {
        1 => "w".to_string(),
        -1 => "-w".to_string(),
        y => format!("{y}w"),
    }
}

fn is_square_free(d: i128) -> Result<bool, Error> {
    let n = d.unsigned_abs();
    if n > 1_000_000_000_000 {
        return Err(Error::BadInput(
            "square-free screening for |d| > 10^12 is not supported".into(),
        ));
    }
    let mut p: u128 = 2;
    while p * p <= n {
        if n % (p * p) == 0 {
            return Ok(false);
        }
        p += 1;
    }
    Ok(true)
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    // returns (g, s, t) with s*a + t*b = g ≥ 0
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

impl QuadOrder {
    /// The order `Z[√d]` for square-free `d ∉ {0, 1}`.
    pub fn sqrt_order(d: i128) -> Result<Self, Error> {
        if d == 0 || d == 1 || !is_square_free(d)? {
            return Err(Error::NotSquareFree(d));
        }
        Ok(QuadOrder { d, half: false })
    }

    /// The order `Z[(1+√d)/2]`, defined when `d ≡ 1 (mod 4)` (square-free,
    /// `d ∉ {0, 1}`). This is the maximal order of `Q(√d)` for such `d`.
    pub fn half_order(d: i128) -> Result<Self, Error> {
        if d == 0 || d == 1 || !is_square_free(d)? {
            return Err(Error::NotSquareFree(d));
        }
        if d.rem_euclid(4) != 1 {
            return Err(Error::BadInput(format!(
                "the half-integer basis needs d = 1 (mod 4), got d = {d}"
            )));
        }
        Ok(QuadOrder { d, half: true })
    }

    pub fn d(&self) -> i128 {
        self.d
    }

    pub fn uses_half_basis(&self) -> bool {
        self.half
    }

    /// Human name of the order, with `w` the adjoined generator.
    pub fn describe(&self) -> String {
        if self.half {
            format!("Z[w], w = (1+sqrt({}))/2", self.d)
        } else {
            format!("Z[w], w = sqrt({})", self.d)
        }
    }

    /// `w² = s + t·w`.
    fn w_squared(&self) -> (i128, i128) {
        if self.half {
            ((self.d - 1) / 4, 1)
        } else {
            (self.d, 0)
        }
    }

    pub fn add(&self, p: &QuadElement, q: &QuadElement) -> QuadElement {
        QuadElement { x: add_i(p.x, q.x), y: add_i(p.y, q.y) }
    }

    pub fn neg(&self, p: &QuadElement) -> QuadElement {
        QuadElement { x: -p.x, y: -p.y }
    }

    pub fn sub(&self, p: &QuadElement, q: &QuadElement) -> QuadElement {
        self.add(p, &self.neg(q))
    }

    pub fn mul(&self, p: &QuadElement, q: &QuadElement) -> QuadElement {
        let (s, t) = self.w_squared();
        let yy = mul_i(p.y, q.y);
        let x = add_i(mul_i(p.x, q.x), mul_i(yy, s));
        let y = add_i(add_i(mul_i(p.x, q.y), mul_i(p.y, q.x)), mul_i(yy, t));
        QuadElement { x, y }
    }

    pub fn from_int(&self, n: i128) -> QuadElement {
        QuadElement { x: n, y: 0 }
    }

    /// Field norm of an element: `N(x + y√d) = x² − dy²`, and
    /// `N(x + yω) = x² + xy + y²(1−d)/4` on the half basis.
    pub fn elem_norm(&self, p: &QuadElement) -> i128 {
        if self.half {
            let q = (1 - self.d) / 4;
            add_i(add_i(mul_i(p.x, p.x), mul_i(p.x, p.y)), mul_i(mul_i(p.y, p.y), q))
        } else {
            add_i(mul_i(p.x, p.x), -mul_i(self.d, mul_i(p.y, p.y)))
        }
    }
}

/// Nonzero ideal of a [`QuadOrder`] in Hermite normal form: the lattice
/// spanned by `(a, 0)` and `(b, c)` in `(x, y)` coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadIdeal {
    a: i128,
    b: i128,
    c: i128,
}

impl QuadIdeal {
    pub fn a(&self) -> i128 {
        self.a
    }

    pub fn b(&self) -> i128 {
        self.b
    }

    pub fn c(&self) -> i128 {
        self.c
    }

    /// Index `[D : I] = a·c`.
    pub fn norm(&self) -> i128 {
        mul_i(self.a, self.c)
    }

    /// Canonical generating pair `(a, b + c·w)`.
    pub fn gens(&self) -> (QuadElement, QuadElement) {
        (QuadElement { x: self.a, y: 0 }, QuadElement { x: self.b, y: self.c })
    }

    pub fn is_unit(&self) -> bool {
        self.a == 1 && self.c == 1
    }

    /// Display form: `(a)` for integer-generated ideals, otherwise
    /// `(a, b+cw)`.
    pub fn display(&self) -> String {
        if self.b == 0 && self.c == self.a {
            format!("({})", self.a)
        } else {
            format!("({}, {})", self.a, format_quad(&QuadElement { x: self.b, y: self.c }))
        }
    }
}

impl QuadOrder {
    /// Hermite normal form of the lattice spanned by `vecs` (assumed to be
    /// `w`-stable as a set of generators of an ideal).
    fn hnf(&self, vecs: &[QuadElement]) -> Result<QuadIdeal, Error> {
        let nonzero: Vec<QuadElement> = vecs.iter().copied().filter(|v| !v.is_zero()).collect();
        if nonzero.is_empty() {
            return Err(Error::ZeroQuadIdeal);
        }
        // Pivot with minimal positive y via extended gcd combinations.
        let mut pivot: Option<QuadElement> = None;
        for v in &nonzero {
            if v.y == 0 {
                continue;
            }
            pivot = Some(match pivot {
                None => *v,
                Some(p) => {
                    let (_, s, t) = ext_gcd(p.y, v.y);
                    QuadElement {
                        x: add_i(mul_i(s, p.x), mul_i(t, v.x)),
                        y: add_i(mul_i(s, p.y), mul_i(t, v.y)),
                    }
                }
            });
        }
        let mut pivot = pivot.ok_or_else(|| {
            // A nonzero w-stable lattice always has a vector with y ≠ 0
            // (w times any nonzero integer has one, for square-free d).
            Error::InvalidRing("rank-1 generator span is not an ideal".into())
        })?;
        if pivot.y < 0 {
            pivot = self.neg(&pivot);
        }
        let c = pivot.y;
        let mut a: i128 = 0;
        for v in &nonzero {
            debug_assert_eq!(v.y.rem_euclid(c), 0, "pivot y must divide every y");
            let k = v.y.div_euclid(c);
            let x = add_i(v.x, -mul_i(k, pivot.x));
            a = ext_gcd(a, x).0;
        }
        if a == 0 {
            return Err(Error::InvalidRing("rank-1 generator span is not an ideal".into()));
        }
        let b = pivot.x.rem_euclid(a);
        let ideal = QuadIdeal { a, b, c };
        debug_assert_eq!(a.rem_euclid(c), 0, "w-stability forces c | a");
        debug_assert_eq!(b.rem_euclid(c), 0, "w-stability forces c | b");
        debug_assert!(self.is_stable(&ideal));
        Ok(ideal)
    }

    fn is_stable(&self, i: &QuadIdeal) -> bool {
        let w = QuadElement { x: 0, y: 1 };
        let (g1, g2) = i.gens();
        self.ideal_contains(i, &self.mul(&g1, &w)) && self.ideal_contains(i, &self.mul(&g2, &w))
    }

    /// Smallest ideal containing the given elements. Errors on the zero
    /// ideal (it has no finite-index normal form).
    pub fn ideal_from_gens(&self, gens: &[QuadElement]) -> Result<QuadIdeal, Error> {
        let w = QuadElement { x: 0, y: 1 };
        let mut vecs = Vec::with_capacity(gens.len() * 2);
        for g in gens {
            vecs.push(*g);
            vecs.push(self.mul(g, &w));
        }
        self.hnf(&vecs)
    }

    /// Validates raw HNF data as an ideal of this order.
    pub fn ideal_from_hnf(&self, a: i128, b: i128, c: i128) -> Result<QuadIdeal, Error> {
        let candidate = QuadIdeal { a, b, c };
        let ok = a >= 1
            && c >= 1
            && (0..a).contains(&b)
            && a % c == 0
            && b % c == 0
            && self.is_stable(&candidate);
        if ok {
            Ok(candidate)
        } else {
            Err(Error::BadInput(format!(
                "({a}, {b}, {c}) is not the normal form of an ideal of {}",
                self.describe()
            )))
        }
    }

    pub fn principal(&self, e: &QuadElement) -> Result<QuadIdeal, Error> {
        self.ideal_from_gens(&[*e])
    }

    pub fn unit_ideal(&self) -> QuadIdeal {
        QuadIdeal { a: 1, b: 0, c: 1 }
    }

    pub fn ideal_contains(&self, i: &QuadIdeal, e: &QuadElement) -> bool {
        if e.y.rem_euclid(i.c) != 0 {
            return false;
        }
        let k = e.y.div_euclid(i.c);
        add_i(e.x, -mul_i(k, i.b)).rem_euclid(i.a) == 0
    }

    /// `i ⊆ j`.
    pub fn ideal_subset(&self, i: &QuadIdeal, j: &QuadIdeal) -> bool {
        let (g1, g2) = i.gens();
        self.ideal_contains(j, &g1) && self.ideal_contains(j, &g2)
    }

    /// Ideal product, computed from the four pairwise products of the
    /// canonical generators.
    pub fn ideal_mul(&self, i: &QuadIdeal, j: &QuadIdeal) -> QuadIdeal {
        let (i1, i2) = i.gens();
        let (j1, j2) = j.gens();
        let prods = [
            self.mul(&i1, &j1),
            self.mul(&i1, &j2),
            self.mul(&i2, &j1),
            self.mul(&i2, &j2),
        ];
        self.ideal_from_gens(&prods)
            .expect("product of nonzero ideals is nonzero")
    }

    /// Reduces an element to the canonical representative of its coset
    /// modulo `i`: `y ∈ [0, c)`, then `x ∈ [0, a)`.
    pub fn reduce_mod(&self, i: &QuadIdeal, e: &QuadElement) -> QuadElement {
        let k = e.y.div_euclid(i.c);
        let y = add_i(e.y, -mul_i(k, i.c));
        let x = add_i(e.x, -mul_i(k, i.b)).rem_euclid(i.a);
        QuadElement { x, y }
    }
}

/// Projection `D → D/I` with a canonical lift back.
pub struct QuadQuotientMap {
    order: QuadOrder,
    ideal: QuadIdeal,
    map: QuotientMap,
}

impl QuadQuotientMap {
    pub fn apply(&self, e: &QuadElement) -> RingElement {
        self.map.apply_ints(&[e.x, e.y])
    }

    /// Canonical preimage inside the fundamental domain of the ideal.
    pub fn lift(&self, q: &RingElement) -> QuadElement {
        let v = self.map.lift_ints(q);
        self.order.reduce_mod(&self.ideal, &QuadElement { x: v[0], y: v[1] })
    }
}

/// The finite ring `D/I` together with the projection map. The quotient
/// has exactly `norm(I)` elements; the guard bounds that size.
pub fn quotient_finite(
    order: &QuadOrder,
    ideal: &QuadIdeal,
    guard: u64,
) -> Result<(FiniteRing, QuadQuotientMap), Error> {
    let norm = ideal.norm();
    if norm > guard as i128 {
        return Err(Error::GuardExceeded { size: norm.min(u64::MAX as i128) as u64, guard });
    }
    let cols: Mat = vec![vec![ideal.a, ideal.b], vec![0, ideal.c]];
    let (s, t) = order.w_squared();
    // Ambient basis {1, w}: 1·1, 1·w, w·1, w·w.
    let basis_mul: Vec<Vec<i128>> =
        vec![vec![1, 0], vec![0, 1], vec![0, 1], vec![s, t]];
    let label = |v: &[i128]| format_quad(&QuadElement { x: v[0], y: v[1] });
    let (ring, map) = ring_from_quotient(2, &cols, &basis_mul, &[1, 0], &label)?;
    debug_assert_eq!(ring.size() as i128, norm);
    let qmap = QuadQuotientMap { order: *order, ideal: *ideal, map };
    Ok((ring, qmap))
}

/// Witness that an ideal is not two-absorbing: `abc ∈ I` with every pair
/// product outside `I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadTaWitness {
    pub a: QuadElement,
    pub b: QuadElement,
    pub c: QuadElement,
}

impl QuadTaWitness {
    pub fn verify(&self, order: &QuadOrder, ideal: &QuadIdeal) -> bool {
        let ab = order.mul(&self.a, &self.b);
        let ac = order.mul(&self.a, &self.c);
        let bc = order.mul(&self.b, &self.c);
        let abc = order.mul(&ab, &self.c);
        order.ideal_contains(ideal, &abc)
            && !order.ideal_contains(ideal, &ab)
            && !order.ideal_contains(ideal, &ac)
            && !order.ideal_contains(ideal, &bc)
    }
}

/// Decides whether `ideal` is two-absorbing in the order. The question
/// transfers to the quotient — `I` is two-absorbing in `D` exactly when
/// `(0)` is two-absorbing in `D/I` — and the quotient witness is lifted
/// back through the projection (canonical in the quotient's element
/// order, reduced to the ideal's fundamental domain).
pub fn ta_check_quad(
    order: &QuadOrder,
    ideal: &QuadIdeal,
    guard: u64,
) -> Result<Option<QuadTaWitness>, Error> {
    if ideal.is_unit() {
        return Err(Error::NotProper { op: "ta_check_quad" });
    }
    let (q, map) = quotient_finite(order, ideal, guard)?;
    match ta_check(&q, &q.zero_ideal(), guard)? {
        None => Ok(None),
        Some(w) => {
            let (qa, qb, qc) = w.elements(&q);
            let witness = QuadTaWitness {
                a: map.lift(&qa),
                b: map.lift(&qb),
                c: map.lift(&qc),
            };
            debug_assert!(witness.verify(order, ideal));
            Ok(Some(witness))
        }
    }
}

/// Every ideal of `D` containing `ideal` (including it, excluding the unit
/// ideal is NOT done here — the unit ideal appears too, as the pullback of
/// the whole quotient). Ideals over `I` biject with ideals of `D/I`;
/// each is recovered as the ideal generated by `I` and lifts of the
/// quotient ideal's generators. Sorted by ascending norm (largest ideal
/// first), ties by normal form.
pub fn ideals_above_quad(
    order: &QuadOrder,
    ideal: &QuadIdeal,
    guard: u64,
) -> Result<Vec<QuadIdeal>, Error> {
    let (q, map) = quotient_finite(order, ideal, guard)?;
    let (g1, g2) = ideal.gens();
    let mut out = Vec::new();
    for qi in enumerate_ideals(&q, guard)? {
        let mut gens = vec![g1, g2];
        gens.extend(qi.gens().iter().map(|g| map.lift(g)));
        out.push(order.ideal_from_gens(&gens)?);
    }
    out.sort_by_key(|i| (i.norm(), *i));
    debug_assert!(out.windows(2).all(|w| w[0] != w[1]), "pullbacks are distinct");
    Ok(out)
}

/// Minimal primes over an ideal, as pullbacks of the minimal primes of
/// the quotient. Sorted by ascending norm.
pub fn min_primes_quad(
    order: &QuadOrder,
    ideal: &QuadIdeal,
    guard: u64,
) -> Result<Vec<QuadIdeal>, Error> {
    if ideal.is_unit() {
        return Err(Error::NotProper { op: "min_primes_quad" });
    }
    let (q, map) = quotient_finite(order, ideal, guard)?;
    let (g1, g2) = ideal.gens();
    let mut out = Vec::new();
    for p in min_primes(&q, &q.zero_ideal(), guard)? {
        let mut gens = vec![g1, g2];
        gens.extend(p.gens().iter().map(|g| map.lift(g)));
        out.push(order.ideal_from_gens(&gens)?);
    }
    out.sort_by_key(|i| (i.norm(), *i));
    Ok(out)
}

/// Divisor poset of one root ideal, interned for the generic search.
struct QuadDomain<'o> {
    order: &'o QuadOrder,
    guard: u64,
    nodes: RefCell<Vec<QuadIdeal>>,
    ids: RefCell<HashMap<QuadIdeal, usize>>,
    /// Ids of the proper ideals containing the root, ascending norm.
    divisors: Vec<usize>,
    ta_memo: RefCell<HashMap<usize, bool>>,
}

impl<'o> QuadDomain<'o> {
    fn new(order: &'o QuadOrder, root: &QuadIdeal, guard: u64) -> Result<Self, Error> {
        let mut dom = QuadDomain {
            order,
            guard,
            nodes: RefCell::new(Vec::new()),
            ids: RefCell::new(HashMap::new()),
            divisors: Vec::new(),
            ta_memo: RefCell::new(HashMap::new()),
        };
        let above = ideals_above_quad(order, root, guard)?;
        dom.divisors = above
            .into_iter()
            .filter(|i| !i.is_unit())
            .map(|i| dom.intern(i))
            .collect();
        Ok(dom)
    }

    fn intern(&self, ideal: QuadIdeal) -> usize {
        if let Some(&id) = self.ids.borrow().get(&ideal) {
            return id;
        }
        let mut nodes = self.nodes.borrow_mut();
        let id = nodes.len();
        nodes.push(ideal);
        self.ids.borrow_mut().insert(ideal, id);
        id
    }

    fn node(&self, id: usize) -> QuadIdeal {
        self.nodes.borrow()[id]
    }
}

impl FactorDomain for QuadDomain<'_> {
    fn is_ta(&self, id: usize) -> bool {
        if let Some(&v) = self.ta_memo.borrow().get(&id) {
            return v;
        }
        let ideal = self.node(id);
        let v = !ideal.is_unit()
            && ta_check_quad(self.order, &ideal, self.guard)
                .expect("divisors stay within the root's guard")
                .is_none();
        self.ta_memo.borrow_mut().insert(id, v);
        v
    }

    fn product(&self, a: usize, b: usize) -> usize {
        let prod = self.order.ideal_mul(&self.node(a), &self.node(b));
        self.intern(prod)
    }

    fn divisors_above(&self, id: usize) -> Vec<usize> {
        let node = self.node(id);
        self.divisors
            .iter()
            .copied()
            .filter(|&j| self.order.ideal_subset(&node, &self.node(j)))
            .collect()
    }
}

/// Searches for a factorization of `ideal` into proper two-absorbing
/// ideals of the order. `Ok(None)` means the exhaustive search over the
/// (finite) divisor poset proved none exists.
pub fn ta_factorization_quad(
    order: &QuadOrder,
    ideal: &QuadIdeal,
    guard: u64,
) -> Result<Option<Vec<QuadIdeal>>, Error> {
    quad_factorization_impl(order, ideal, guard, false)
}

/// Like [`ta_factorization_quad`] but of minimal length.
pub fn ta_factorization_quad_shortest(
    order: &QuadOrder,
    ideal: &QuadIdeal,
    guard: u64,
) -> Result<Option<Vec<QuadIdeal>>, Error> {
    quad_factorization_impl(order, ideal, guard, true)
}

fn quad_factorization_impl(
    order: &QuadOrder,
    ideal: &QuadIdeal,
    guard: u64,
    shortest: bool,
) -> Result<Option<Vec<QuadIdeal>>, Error> {
    if ideal.is_unit() {
        return Err(Error::NotProper { op: "ta_factorization_quad" });
    }
    let dom = QuadDomain::new(order, ideal, guard)?;
    let root = dom.intern(*ideal);
    let search = FactorSearch::new(&dom);
    let found = if shortest { search.run_shortest(root) } else { search.run(root) };
    let factors: Option<Vec<QuadIdeal>> =
        found.map(|ids| ids.into_iter().map(|id| dom.node(id)).collect());
    if let Some(f) = &factors {
        debug_assert!(verify_factorization_quad(order, ideal, f, guard));
    }
    Ok(factors)
}

/// Re-verifies a claimed factorization in the order: all factors proper
/// and two-absorbing, product equal to the ideal.
pub fn verify_factorization_quad(
    order: &QuadOrder,
    ideal: &QuadIdeal,
    factors: &[QuadIdeal],
    guard: u64,
) -> bool {
    if factors.is_empty() {
        return false;
    }
    for f in factors {
        if f.is_unit() || !matches!(ta_check_quad(order, f, guard), Ok(None)) {
            return false;
        }
    }
    let mut acc = factors[0];
    for f in &factors[1..] {
        acc = order.ideal_mul(&acc, f);
    }
    acc == *ideal
}

#[cfg(test)]
mod tests {
    use super::*;

    const GUARD: u64 = 4096;

    fn zm11() -> QuadOrder {
        QuadOrder::sqrt_order(-11).unwrap()
    }

    fn zm7() -> QuadOrder {
        QuadOrder::sqrt_order(-7).unwrap()
    }

    #[test]
    fn square_free_screening() {
        assert!(QuadOrder::sqrt_order(12).is_err()); // 4 | 12
        assert!(QuadOrder::sqrt_order(9).is_err());
        assert!(QuadOrder::sqrt_order(0).is_err());
        assert!(QuadOrder::sqrt_order(1).is_err());
        assert!(QuadOrder::sqrt_order(-4).is_err());
        assert!(QuadOrder::sqrt_order(10).is_ok());
        assert!(QuadOrder::sqrt_order(-163).is_ok());
        // Half basis needs d ≡ 1 (mod 4).
        assert!(QuadOrder::half_order(5).is_ok());
        assert!(QuadOrder::half_order(-7).is_ok());
        assert!(QuadOrder::half_order(3).is_err());
        assert!(QuadOrder::half_order(-2).is_err());
    }

    #[test]
    fn element_arithmetic_follows_w_squared() {
        let o = zm11();
        let w = QuadElement::new(0, 1);
        assert_eq!(o.mul(&w, &w), QuadElement::new(-11, 0));
        let e = QuadElement::new(3, 1);
        assert_eq!(o.elem_norm(&e), 9 + 11);

        let h = QuadOrder::half_order(5).unwrap();
        // w = (1+√5)/2: w² = w + 1.
        assert_eq!(h.mul(&w, &w), QuadElement::new(1, 1));
        assert_eq!(h.elem_norm(&QuadElement::new(0, 1)), -1); // N(ω) = (1-5)/4
    }

    #[test]
    fn principal_ideal_normal_forms() {
        let o = zm11();
        // (3+w): norm 20, normal form a=20, b=3, c=1.
        let i = o.principal(&QuadElement::new(3, 1)).unwrap();
        assert_eq!((i.a(), i.b(), i.c()), (20, 3, 1));
        assert_eq!(i.norm(), 20);
        // (2) = 2D: a=2, b=0, c=2.
        let two = o.principal(&QuadElement::new(2, 0)).unwrap();
        assert_eq!((two.a(), two.b(), two.c()), (2, 0, 2));
        assert_eq!(two.norm(), 4);
        // The zero ideal is rejected.
        assert!(matches!(o.principal(&QuadElement::ZERO), Err(Error::ZeroQuadIdeal)));
    }

    #[test]
    fn two_generated_ideals_and_membership() {
        let o = zm11();
        let j4 = o
            .ideal_from_gens(&[QuadElement::new(4, 0), QuadElement::new(3, 1)])
            .unwrap();
        assert_eq!((j4.a(), j4.b(), j4.c()), (4, 3, 1));
        let j5 = o
            .ideal_from_gens(&[QuadElement::new(5, 0), QuadElement::new(3, 1)])
            .unwrap();
        assert_eq!((j5.a(), j5.b(), j5.c()), (5, 3, 1));
        assert!(o.ideal_contains(&j4, &QuadElement::new(3, 1)));
        assert!(o.ideal_contains(&j4, &QuadElement::new(-1, 1))); // 3+w-4
        assert!(!o.ideal_contains(&j4, &QuadElement::new(2, 0)));
        // Generator order does not matter.
        let j4b = o
            .ideal_from_gens(&[QuadElement::new(3, 1), QuadElement::new(4, 0)])
            .unwrap();
        assert_eq!(j4, j4b);
    }

    #[test]
    fn product_of_the_two_primes_is_the_principal_ideal() {
        let o = zm11();
        let j4 = o.ideal_from_hnf(4, 3, 1).unwrap();
        let j5 = o.ideal_from_hnf(5, 3, 1).unwrap();
        let prod = o.ideal_mul(&j4, &j5);
        let principal = o.principal(&QuadElement::new(3, 1)).unwrap();
        assert_eq!(prod, principal);
        assert!(o.ideal_subset(&principal, &j4));
        assert!(o.ideal_subset(&principal, &j5));
        assert!(!o.ideal_subset(&j4, &j5));
    }

    #[test]
    fn hnf_validation_rejects_malformed_data() {
        let o = zm11();
        assert!(o.ideal_from_hnf(4, 3, 1).is_ok());
        assert!(o.ideal_from_hnf(4, 5, 1).is_err()); // b ≥ a
        assert!(o.ideal_from_hnf(4, 3, 2).is_err()); // c does not divide b
        assert!(o.ideal_from_hnf(0, 0, 1).is_err()); // a < 1
        assert!(o.ideal_from_hnf(2, 1, 1).is_ok()); // stable: -11 ≡ 1 (mod 2)
        // In Z[√-10], (2, 1+w) is not w-stable: w(1+w) = -10+w,
        // -10-1 = -11 is odd.
        let o10 = QuadOrder::sqrt_order(-10).unwrap();
        assert!(o10.ideal_from_hnf(2, 1, 1).is_err());
    }

    #[test]
    fn quotients_match_the_expected_rings() {
        let o = zm11();
        let j4 = o.ideal_from_hnf(4, 3, 1).unwrap();
        let (q4, map4) = quotient_finite(&o, &j4, GUARD).unwrap();
        assert_eq!(q4.size(), 4);
        assert_eq!(q4.orders(), &[4]); // D/J4 ≅ Z/4
        // The projection is a homomorphism: (3+w) maps to 0.
        assert_eq!(map4.apply(&QuadElement::new(3, 1)), q4.zero());
        let one = map4.apply(&QuadElement::new(1, 0));
        assert_eq!(one, q4.one());

        let j5 = o.ideal_from_hnf(5, 3, 1).unwrap();
        let (q5, _) = quotient_finite(&o, &j5, GUARD).unwrap();
        assert_eq!(q5.orders(), &[5]); // D/J5 ≅ Z/5

        // D/(3+w) ≅ Z/20.
        let i = o.principal(&QuadElement::new(3, 1)).unwrap();
        let (q20, map20) = quotient_finite(&o, &i, GUARD).unwrap();
        assert_eq!(q20.orders(), &[20]);
        // Round trip: lift then project is the identity on the quotient.
        for idx in 0..20 {
            let e = q20.elem_at(idx);
            assert_eq!(map20.apply(&map20.lift(&e)), e);
        }
    }

    #[test]
    fn guard_applies_to_the_quotient_size() {
        let o = zm11();
        let i = o.principal(&QuadElement::new(3, 1)).unwrap(); // norm 20
        assert!(matches!(
            quotient_finite(&o, &i, 10),
            Err(Error::GuardExceeded { size: 20, guard: 10 })
        ));
    }

    #[test]
    fn prime_ideals_are_two_absorbing() {
        let o = zm11();
        for (a, b, c) in [(4, 3, 1), (5, 3, 1), (2, 1, 1)] {
            let i = o.ideal_from_hnf(a, b, c).unwrap();
            assert_eq!(ta_check_quad(&o, &i, GUARD).unwrap(), None, "({a},{b},{c})");
        }
    }

    #[test]
    fn principal_3_plus_w_is_not_two_absorbing_and_witness_lifts() {
        let o = zm11();
        let i = o.principal(&QuadElement::new(3, 1)).unwrap();
        let w = ta_check_quad(&o, &i, GUARD).unwrap().unwrap();
        assert!(w.verify(&o, &i));
        // Witness elements are reduced to the fundamental domain.
        for e in [&w.a, &w.b, &w.c] {
            assert!((0..20).contains(&e.x) && e.y == 0);
        }
    }

    #[test]
    fn divisors_of_the_principal_ideal() {
        let o = zm11();
        let i = o.principal(&QuadElement::new(3, 1)).unwrap();
        let above = ideals_above_quad(&o, &i, GUARD).unwrap();
        // Ideals of Z/20 pull back to: D, (2,1+w), (4,3+w), (5,3+w),
        // (10,3+w), (3+w).
        let norms: Vec<i128> = above.iter().map(|j| j.norm()).collect();
        assert_eq!(norms, vec![1, 2, 4, 5, 10, 20]);
        assert!(above[0].is_unit());
        assert_eq!((above[2].a(), above[2].b(), above[2].c()), (4, 3, 1));
        // Every entry contains I.
        for j in &above {
            assert!(o.ideal_subset(&i, j));
        }
    }

    #[test]
    fn factorization_recovers_the_prime_pair() {
        let o = zm11();
        let i = o.principal(&QuadElement::new(3, 1)).unwrap();
        let f = ta_factorization_quad(&o, &i, GUARD).unwrap().unwrap();
        let hnf: Vec<(i128, i128, i128)> = f.iter().map(|j| (j.a(), j.b(), j.c())).collect();
        assert_eq!(hnf, vec![(4, 3, 1), (5, 3, 1)]);
        assert!(verify_factorization_quad(&o, &i, &f, GUARD));
        // Already minimal: the shortest search returns the same length.
        let s = ta_factorization_quad_shortest(&o, &i, GUARD).unwrap().unwrap();
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn the_znm7_example_admits_no_factorization() {
        let o = zm7();
        // (3+w) in Z[√-7]: norm 16, D/I ≅ Z/16.
        let i = o.principal(&QuadElement::new(3, 1)).unwrap();
        assert_eq!((i.a(), i.b(), i.c()), (16, 3, 1));
        let (q, _) = quotient_finite(&o, &i, GUARD).unwrap();
        assert_eq!(q.orders(), &[16]);
        // The exhaustive divisor search proves no factorization exists.
        assert_eq!(ta_factorization_quad(&o, &i, GUARD).unwrap(), None);
    }

    #[test]
    fn norm_multiplicativity_fails_in_the_non_maximal_order() {
        // In Z[√-7] (index 2 in the maximal order), M = (2, 1+w) has
        // M² = (4, 2+2w) of norm 8 ≠ norm(M)² = 4.
        let o = zm7();
        let m = o.ideal_from_hnf(2, 1, 1).unwrap();
        let m2 = o.ideal_mul(&m, &m);
        assert_eq!((m2.a(), m2.b(), m2.c()), (4, 2, 2));
        assert_eq!(m2.norm(), 8);
        assert_eq!(m.norm() * m.norm(), 4);
    }

    #[test]
    fn min_primes_over_the_principal_ideal() {
        let o = zm11();
        let i = o.principal(&QuadElement::new(3, 1)).unwrap();
        let primes = min_primes_quad(&o, &i, GUARD).unwrap();
        let hnf: Vec<(i128, i128, i128)> =
            primes.iter().map(|j| (j.a(), j.b(), j.c())).collect();
        assert_eq!(hnf, vec![(2, 1, 1), (5, 3, 1)]);
    }

    #[test]
    fn min_primes_of_six_split_over_two_and_three() {
        // 6 = 2·3 with x² + 11 ≡ (x+1)² (mod 2) and ≡ (x−1)(x+1)
        // (mod 3): one prime over 2, two over 3.
        let o = zm11();
        let i = o.principal(&QuadElement::new(6, 0)).unwrap();
        let primes = min_primes_quad(&o, &i, GUARD).unwrap();
        let hnf: Vec<(i128, i128, i128)> =
            primes.iter().map(|j| (j.a(), j.b(), j.c())).collect();
        assert_eq!(hnf, vec![(2, 1, 1), (3, 1, 1), (3, 2, 1)]);
        for p in &primes {
            let (q, _) = quotient_finite(&o, p, GUARD).unwrap();
            assert!(q.is_maximal_ideal(&q.zero_ideal()));
        }
    }

    #[test]
    fn half_order_quotient_by_two_detects_inert_primes() {
        // d = 5 ≡ 5 (mod 8): X² - X - 1 is irreducible mod 2, so
        // Z[ω]/2Z[ω] is the field with 4 elements.
        let h5 = QuadOrder::half_order(5).unwrap();
        let two = h5.principal(&QuadElement::new(2, 0)).unwrap();
        let (q, _) = quotient_finite(&h5, &two, GUARD).unwrap();
        assert_eq!(q.size(), 4);
        assert!(q.is_maximal_ideal(&q.zero_ideal())); // field

        // d = -7 ≡ 1 (mod 8): X² - X + 2 ≡ X(X-1) splits mod 2, the
        // quotient has zero divisors.
        let hm7 = QuadOrder::half_order(-7).unwrap();
        let two = hm7.principal(&QuadElement::new(2, 0)).unwrap();
        let (q, _) = quotient_finite(&hm7, &two, GUARD).unwrap();
        assert_eq!(q.size(), 4);
        assert!(!q.is_maximal_ideal(&q.zero_ideal()));
    }

    #[test]
    fn display_forms() {
        let o = zm11();
        assert_eq!(format_quad(&QuadElement::new(3, 1)), "3+w");
        assert_eq!(format_quad(&QuadElement::new(3, -2)), "3-2w");
        assert_eq!(format_quad(&QuadElement::new(0, -1)), "-w");
        assert_eq!(format_quad(&QuadElement::new(-4, 0)), "-4");
        assert_eq!(format_quad(&QuadElement::ZERO), "0");
        let i = o.ideal_from_hnf(4, 3, 1).unwrap();
        assert_eq!(i.display(), "(4, 3+w)");
        let two = o.principal(&QuadElement::new(2, 0)).unwrap();
        assert_eq!(two.display(), "(2)");
    }
}
