//! Finite commutative rings with identity, represented exactly.
//!
//! A ring is a finite abelian group `Z/d_1 x ... x Z/d_k` together with a
//! structure-constant table giving the products of additive basis elements.
//! Multiplication extends bilinearly, and every arithmetic step stays in
//! machine integers with explicit reductions, so all downstream decisions
//! (primality, absorbing checks, factorizations) are exact.
//!
//! Rings are built either directly from components (fully validated) or from
//! a textual presentation `Z/n[x]/(f_1,...,f_m)` by quotienting the free
//! module on monomials by the relation sublattice via Smith normal form.

mod ideal;
mod lattice;

pub use ideal::FinIdeal;
pub use lattice::{enumerate_ideals, min_primes, IdealLattice, MulTable};

use std::fmt::Write as _;

use crate::ringspec::{ElementExpr, Poly, RingAtom, RingSpec};
use crate::snf::{add_i, mul_i, smith_normal_form, Mat};
use crate::Error;

/// Element of a [`FiniteRing`]: coefficient vector over the additive basis,
/// each coefficient reduced modulo the corresponding additive order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement {
    coeffs: Vec<u64>,
}

impl RingElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

/// A finite commutative ring with identity.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteRing {
    orders: Vec<u64>,
    weights: Vec<u64>,
    size: u64,
    /// Basis products `e_i * e_j`, row major (`i * rank + j`).
    mul: Vec<RingElement>,
    unity: RingElement,
    labels: Vec<String>,
}

impl std::fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteRing(orders={:?}, size={})", self.orders, self.size)
    }
}

impl FiniteRing {
    /// Builds a ring from raw components and validates every ring axiom that
    /// is not guaranteed by the representation: shape, reduction, order
    /// compatibility, commutativity, unity, and associativity (exhaustively
    /// over basis triples; bilinearity extends the checks to all elements).
    pub fn from_components(
        orders: Vec<u64>,
        mul: Vec<Vec<u64>>,
        unity: Vec<u64>,
        labels: Vec<String>,
    ) -> Result<Self, Error> {
        let k = orders.len();
        for &d in &orders {
            if d < 2 {
                return Err(Error::InvalidRing(format!(
                    "additive order {d} is not allowed; trivial factors must be dropped"
                )));
            }
        }
        if mul.len() != k * k {
            return Err(Error::InvalidRing(format!(
                "multiplication table has {} rows, expected {}",
                mul.len(),
                k * k
            )));
        }
        if unity.len() != k || labels.len() != k {
            return Err(Error::InvalidRing("unity or label vector has wrong length".into()));
        }
        for row in mul.iter().chain(std::iter::once(&unity)) {
            if row.len() != k {
                return Err(Error::InvalidRing("coefficient vector has wrong length".into()));
            }
            for (l, &c) in row.iter().enumerate() {
                if c >= orders[l] {
                    return Err(Error::InvalidRing(format!(
                        "coefficient {c} not reduced modulo {}",
                        orders[l]
                    )));
                }
            }
        }

        let mut size: u64 = 1;
        let mut weights = vec![1u64; k];
        for i in (0..k).rev() {
            weights[i] = size;
            size = size.checked_mul(orders[i]).ok_or(Error::SizeOverflow)?;
        }

        let ring = FiniteRing {
            orders,
            weights,
            size,
            mul: mul.into_iter().map(|coeffs| RingElement { coeffs }).collect(),
            unity: RingElement { coeffs: unity },
            labels,
        };

        let k = ring.rank();
        // d_i * (e_i e_j) must vanish, otherwise bilinear extension is not
        // well defined on Z/d_1 x ... x Z/d_k.
        for i in 0..k {
            for j in 0..k {
                let prod = &ring.mul[i * k + j];
                for l in 0..k {
                    let lifted = (ring.orders[i] as u128) * (prod.coeffs[l] as u128);
                    if lifted % (ring.orders[l] as u128) != 0 {
                        return Err(Error::InvalidRing(format!(
                            "structure constants incompatible with additive orders at ({i},{j},{l})"
                        )));
                    }
                }
            }
        }
        for i in 0..k {
            for j in (i + 1)..k {
                if ring.mul[i * k + j] != ring.mul[j * k + i] {
                    return Err(Error::InvalidRing(format!(
                        "multiplication not commutative at basis pair ({i},{j})"
                    )));
                }
            }
        }
        for j in 0..k {
            let e_j = ring.basis_element(j);
            if ring.mul_elem(&ring.unity, &e_j) != e_j {
                return Err(Error::InvalidRing(format!(
                    "unity fails on basis element {j}"
                )));
            }
        }
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    let e_l = ring.basis_element(l);
                    let e_i = ring.basis_element(i);
                    let left = ring.mul_elem(&ring.mul[i * k + j], &e_l);
                    let right = ring.mul_elem(&e_i, &ring.mul[j * k + l]);
                    if left != right {
                        return Err(Error::InvalidRing(format!(
                            "multiplication not associative at basis triple ({i},{j},{l})"
                        )));
                    }
                }
            }
        }
        Ok(ring)
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Replaces the display labels of the additive basis (count must match).
    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.rank());
        self.labels = labels;
        self
    }

    pub fn zero(&self) -> RingElement {
        RingElement { coeffs: vec![0; self.rank()] }
    }

    pub fn one(&self) -> RingElement {
        self.unity.clone()
    }

    pub fn basis_element(&self, j: usize) -> RingElement {
        let mut coeffs = vec![0; self.rank()];
        coeffs[j] = 1;
        RingElement { coeffs }
    }

    /// Builds an element from arbitrary integer coefficients (reduced here).
    pub fn elem(&self, coeffs: &[i64]) -> RingElement {
        assert_eq!(coeffs.len(), self.rank());
        RingElement {
            coeffs: coeffs
                .iter()
                .zip(&self.orders)
                .map(|(&c, &d)| (c as i128).rem_euclid(d as i128) as u64)
                .collect(),
        }
    }

    /// Scalar embedding `Z -> R`, `n -> n * 1`.
    pub fn from_int(&self, n: i64) -> RingElement {
        self.scale(n, &self.unity)
    }

    pub fn add_elem(&self, a: &RingElement, b: &RingElement) -> RingElement {
        RingElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .zip(&self.orders)
                .map(|((&x, &y), &d)| (x + y) % d)
                .collect(),
        }
    }

    pub fn neg_elem(&self, a: &RingElement) -> RingElement {
        RingElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&self.orders)
                .map(|(&x, &d)| (d - x) % d)
                .collect(),
        }
    }

    pub fn sub_elem(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.add_elem(a, &self.neg_elem(b))
    }

    fn scale(&self, c: i64, a: &RingElement) -> RingElement {
        let c = c as i128;
        RingElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&self.orders)
                .map(|(&x, &d)| ((c * x as i128).rem_euclid(d as i128)) as u64)
                .collect(),
        }
    }

    pub fn mul_elem(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let k = self.rank();
        let mut acc = vec![0u128; k];
        for i in 0..k {
            let ai = a.coeffs[i] as u128;
            if ai == 0 {
                continue;
            }
            for j in 0..k {
                let bj = b.coeffs[j] as u128;
                if bj == 0 {
                    continue;
                }
                let prod = &self.mul[i * k + j];
                let scale = ai * bj;
                for l in 0..k {
                    let c = prod.coeffs[l] as u128;
                    if c != 0 {
                        acc[l] = (acc[l] + scale % self.orders[l] as u128 * c)
                            % self.orders[l] as u128;
                    }
                }
            }
        }
        RingElement { coeffs: acc.into_iter().map(|v| v as u64).collect() }
    }

    /// Semigroup power `a^n` for `n >= 1` by square and multiply.
    pub fn pow_elem(&self, a: &RingElement, n: u64) -> RingElement {
        assert!(n >= 1, "semigroup power needs a positive exponent");
        let mut base = a.clone();
        let mut n = n;
        let mut acc: Option<RingElement> = None;
        while n > 0 {
            if n & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(r) => self.mul_elem(&r, &base),
                });
            }
            n >>= 1;
            if n > 0 {
                base = self.mul_elem(&base, &base);
            }
        }
        acc.unwrap()
    }

    /// Mixed-radix index of an element; indices order elements
    /// lexicographically by coefficient vector (first coordinate most
    /// significant), which is the canonical element order everywhere.
    pub fn index_of(&self, a: &RingElement) -> u64 {
        a.coeffs
            .iter()
            .zip(&self.weights)
            .map(|(&c, &w)| c * w)
            .sum()
    }

    pub fn elem_at(&self, mut idx: u64) -> RingElement {
        debug_assert!(idx < self.size);
        let coeffs = self
            .orders
            .iter()
            .zip(&self.weights)
            .map(|(&d, &w)| {
                let c = idx / w;
                idx %= w;
                debug_assert!(c < d);
                c
            })
            .collect();
        RingElement { coeffs }
    }

    pub(crate) fn add_index(&self, a: u32, b: u32) -> u32 {
        let ea = self.elem_at(a as u64);
        let eb = self.elem_at(b as u64);
        self.index_of(&self.add_elem(&ea, &eb)) as u32
    }

    pub(crate) fn mul_index(&self, a: u32, b: u32) -> u32 {
        let ea = self.elem_at(a as u64);
        let eb = self.elem_at(b as u64);
        self.index_of(&self.mul_elem(&ea, &eb)) as u32
    }

    /// Human-readable form of an element over the basis labels.
    pub fn elem_string(&self, a: &RingElement) -> String {
        let mut out = String::new();
        for (i, &c) in a.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('+');
            }
            let label = &self.labels[i];
            if label == "1" {
                let _ = write!(out, "{c}");
            } else if c == 1 {
                let _ = write!(out, "{label}");
            } else if label.chars().all(|ch| ch.is_ascii_alphanumeric() || ch == '_' || ch == '^')
            {
                let _ = write!(out, "{c}{label}");
            } else {
                let _ = write!(out, "{c}*({label})");
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Direct product `A x B` with componentwise operations.
    pub fn direct_product(a: &FiniteRing, b: &FiniteRing) -> Result<FiniteRing, Error> {
        let ka = a.rank();
        let kb = b.rank();
        let k = ka + kb;
        let mut orders = a.orders.clone();
        orders.extend_from_slice(&b.orders);
        let mut mul = vec![vec![0u64; k]; k * k];
        for i in 0..ka {
            for j in 0..ka {
                let src = &a.mul[i * ka + j];
                mul[i * k + j][..ka].copy_from_slice(&src.coeffs);
            }
        }
        for i in 0..kb {
            for j in 0..kb {
                let src = &b.mul[i * kb + j];
                mul[(ka + i) * k + (ka + j)][ka..].copy_from_slice(&src.coeffs);
            }
        }
        let mut unity = a.unity.coeffs.clone();
        unity.extend_from_slice(&b.unity.coeffs);
        let mut labels: Vec<String> = a.labels.iter().map(|l| format!("({l},0)")).collect();
        labels.extend(b.labels.iter().map(|l| format!("(0,{l})")));
        FiniteRing::from_components(orders, mul, unity, labels)
    }

    /// All idempotent elements, in canonical element order.
    pub fn idempotents(&self) -> Vec<RingElement> {
        let mut out = Vec::new();
        for idx in 0..self.size {
            let x = self.elem_at(idx);
            if self.mul_elem(&x, &x) == x {
                out.push(x);
            }
        }
        out
    }

    /// Splits the ring along its primitive idempotents: returns the local
    /// factors `R/(1-e)R` with their quotient maps, in canonical order of
    /// the idempotents. The componentwise map `x -> (q_1(x), ..., q_m(x))`
    /// is a ring isomorphism onto the product of the factors.
    pub fn decompose(&self) -> Vec<(FiniteRing, QuotientMap)> {
        let idems: Vec<RingElement> = self
            .idempotents()
            .into_iter()
            .filter(|e| *e != self.zero())
            .collect();
        let mut primitive = Vec::new();
        for e in &idems {
            let minimal = idems
                .iter()
                .all(|f| f == e || self.mul_elem(f, e) != *f);
            if minimal {
                primitive.push(e.clone());
            }
        }
        primitive
            .into_iter()
            .map(|e| {
                let complement = self.sub_elem(&self.one(), &e);
                let ann = self.ideal_generate(&[complement]);
                self.quotient_ring(&ann)
            })
            .collect()
    }

    /// Quotient ring `R/I` together with the projection map.
    pub fn quotient_ring(&self, ideal: &FinIdeal) -> (FiniteRing, QuotientMap) {
        let k = self.rank();
        let mut cols: Mat = vec![Vec::new(); k];
        for i in 0..k {
            for j in 0..k {
                cols[i].push(if i == j { self.orders[i] as i128 } else { 0 });
            }
        }
        for &idx in ideal.elements() {
            let e = self.elem_at(idx as u64);
            for i in 0..k {
                cols[i].push(e.coeffs[i] as i128);
            }
        }
        let basis_mul: Vec<Vec<i128>> = (0..k * k)
            .map(|ij| self.mul[ij].coeffs.iter().map(|&c| c as i128).collect())
            .collect();
        let unity: Vec<i128> = self.unity.coeffs.iter().map(|&c| c as i128).collect();
        let data = ring_from_quotient(k, &cols, &basis_mul, &unity, &|v: &[i128]| {
            let coeffs: Vec<i64> = v.iter().map(|&c| c as i64).collect();
            self.elem_string(&self.elem(&coeffs))
        })
        .expect("quotient of a valid ring is a valid ring");
        (data.0, data.1)
    }
}

/// Projection onto a quotient of a free or finite module: `x -> (Ux) mod s`
/// restricted to the nontrivial cyclic factors.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    u: Mat,
    u_inv: Mat,
    kept: Vec<usize>,
    diag: Vec<u64>,
}

impl QuotientMap {
    /// Applies the map to integer source coordinates.
    pub fn apply_ints(&self, x: &[i128]) -> RingElement {
        let coeffs = self
            .kept
            .iter()
            .zip(&self.diag)
            .map(|(&row, &d)| {
                let mut acc: i128 = 0;
                for (j, &xj) in x.iter().enumerate() {
                    acc = add_i(acc, mul_i(self.u[row][j], xj));
                }
                acc.rem_euclid(d as i128) as u64
            })
            .collect();
        RingElement { coeffs }
    }

    /// Applies the map to an element of the source ring.
    pub fn apply(&self, x: &RingElement) -> RingElement {
        let ints: Vec<i128> = x.coeffs.iter().map(|&c| c as i128).collect();
        self.apply_ints(&ints)
    }

    /// One integer preimage of a quotient element in source coordinates
    /// (the canonical lift through `U⁻¹`; any two lifts differ by the
    /// relation lattice).
    pub fn lift_ints(&self, q: &RingElement) -> Vec<i128> {
        let k = self.u_inv.len();
        let mut out = vec![0i128; k];
        for (&col, &coeff) in self.kept.iter().zip(&q.coeffs) {
            for (row, slot) in out.iter_mut().enumerate() {
                *slot = add_i(*slot, mul_i(self.u_inv[row][col], coeff as i128));
            }
        }
        out
    }
}

/// Quotient engine shared by presentation construction, ring quotients, and
/// the quadratic-order bridge: presents `Z^k / span(cols)` as a finite ring,
/// transporting a bilinear basis multiplication through the Smith transform.
///
/// `cols` must span a full-rank sublattice (callers include the additive
/// order columns, so this always holds).
pub(crate) fn ring_from_quotient(
    k: usize,
    cols: &Mat,
    basis_mul: &[Vec<i128>],
    unity: &[i128],
    ambient_label: &dyn Fn(&[i128]) -> String,
) -> Result<(FiniteRing, QuotientMap), Error> {
    let snf = smith_normal_form(cols);
    let mut kept = Vec::new();
    let mut diag = Vec::new();
    for (i, &d) in snf.diag.iter().enumerate() {
        if d == 0 {
            return Err(Error::InvalidRing(
                "relation lattice is not full rank; quotient would be infinite".into(),
            ));
        }
        if d > 1 {
            kept.push(i);
            diag.push(u64::try_from(d).map_err(|_| Error::SizeOverflow)?);
        }
    }
    let map = QuotientMap {
        u: snf.u.clone(),
        u_inv: snf.u_inv.clone(),
        kept: kept.clone(),
        diag: diag.clone(),
    };

    let rank = kept.len();
    // New basis vectors in ambient coordinates.
    let basis: Vec<Vec<i128>> = kept
        .iter()
        .map(|&i| (0..k).map(|row| snf.u_inv[row][i]).collect())
        .collect();

    let mut mul = Vec::with_capacity(rank * rank);
    for s in 0..rank {
        for t in 0..rank {
            let mut acc = vec![0i128; k];
            for p in 0..k {
                let bp = basis[s][p];
                if bp == 0 {
                    continue;
                }
                for q in 0..k {
                    let bq = basis[t][q];
                    if bq == 0 {
                        continue;
                    }
                    let scale = mul_i(bp, bq);
                    for (l, slot) in acc.iter_mut().enumerate() {
                        *slot = add_i(*slot, mul_i(scale, basis_mul[p * k + q][l]));
                    }
                }
            }
            mul.push(map.apply_ints(&acc).coeffs);
        }
    }
    let unity_elem = map.apply_ints(unity);
    let labels: Vec<String> = basis.iter().map(|b| ambient_label(b)).collect();
    let ring = FiniteRing::from_components(diag, mul, unity_elem.coeffs, labels)?;
    Ok((ring, map))
}

// ===== Construction from presentations =====

/// Context for one atom of a constructed ring: how to turn polynomials in
/// the presentation variable into elements of the atom's component.
struct AtomCtx {
    modulus: u64,
    var: Option<String>,
    /// Dense monic relation modulo `n` (length `e + 1`); empty for `Z/n`.
    monic: Vec<u64>,
    /// Ambient monomial count (`e`, the degree of the monic relation).
    ambient: usize,
    map: QuotientMap,
    rank: usize,
    /// Display labels of the atom's own basis (before product relabeling).
    labels: Vec<String>,
}

/// A ring constructed from a [`RingSpec`], remembering enough of the
/// presentation to parse elements written in the presentation's variables.
pub struct Constructed {
    pub spec: RingSpec,
    pub ring: FiniteRing,
    atoms: Vec<AtomCtx>,
    offsets: Vec<usize>,
}

/// Reduces a dense coefficient vector modulo a monic polynomial, mod `n`.
/// `monic` has leading coefficient 1; the result has length `monic.len()-1`.
fn poly_reduce(mut v: Vec<u64>, monic: &[u64], n: u64) -> Vec<u64> {
    let e = monic.len() - 1;
    let mut t = v.len();
    while t > e {
        t -= 1;
        let c = v[t] as u128;
        if c != 0 {
            v[t] = 0;
            for i in 0..e {
                let sub = c * (monic[i] as u128) % (n as u128);
                v[t - e + i] = ((v[t - e + i] as u128 + n as u128 - sub) % n as u128) as u64;
            }
        }
    }
    v.resize(e, 0);
    v
}

/// Multiplies two dense vectors and reduces modulo the monic relation.
fn poly_mul_reduce(a: &[u64], b: &[u64], monic: &[u64], n: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![0; monic.len() - 1];
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] =
                ((prod[i + j] as u128 + ai as u128 * bj as u128) % n as u128) as u64;
        }
    }
    poly_reduce(prod, monic, n)
}

fn construct_atom(atom: &RingAtom) -> Result<(FiniteRing, AtomCtx), Error> {
    let n = atom.modulus;
    if n < 2 {
        return Err(Error::DegenerateModulus(n));
    }
    let Some(var) = &atom.var else {
        // Z/n: one basis element "1".
        let ring = FiniteRing::from_components(
            vec![n],
            vec![vec![1]],
            vec![1],
            vec!["1".to_string()],
        )?;
        let ctx = AtomCtx {
            modulus: n,
            var: None,
            monic: Vec::new(),
            ambient: 1,
            map: QuotientMap {
                u: vec![vec![1]],
                u_inv: vec![vec![1]],
                kept: vec![0],
                diag: vec![n],
            },
            rank: 1,
            labels: vec!["1".to_string()],
        };
        return Ok((ring, ctx));
    };

    let monic_idx = atom
        .monic_relation()
        .ok_or_else(|| Error::InfinitePresentation(atom.to_string()))?;
    let monic = atom.relations[monic_idx].dense_mod(n);
    debug_assert_eq!(monic.last(), Some(&1));
    let e = monic.len() - 1;

    if e == 0 {
        // The relation 1 = 0 collapses the atom to the zero ring.
        let ring = FiniteRing::from_components(vec![], vec![], vec![], vec![])?;
        let ctx = AtomCtx {
            modulus: n,
            var: Some(var.clone()),
            monic,
            ambient: 0,
            map: QuotientMap { u: vec![], u_inv: vec![], kept: vec![], diag: vec![] },
            rank: 0,
            labels: vec![],
        };
        return Ok((ring, ctx));
    }

    // Monomial basis products x^p * x^q reduced modulo the monic relation.
    let mut basis_mul: Vec<Vec<i128>> = Vec::with_capacity(e * e);
    for p in 0..e {
        for q in 0..e {
            let mut xp = vec![0u64; p + 1];
            xp[p] = 1;
            let mut xq = vec![0u64; q + 1];
            xq[q] = 1;
            let red = poly_mul_reduce(&xp, &xq, &monic, n);
            basis_mul.push(red.into_iter().map(|c| c as i128).collect());
        }
    }

    // Relation sublattice: n*e_i plus every shifted relation x^i * f_j.
    let mut cols: Mat = vec![Vec::new(); e];
    for i in 0..e {
        for (row, col) in cols.iter_mut().enumerate() {
            col.push(if row == i { n as i128 } else { 0 });
        }
    }
    for rel in &atom.relations {
        let dense = rel.dense_mod(n);
        for shift in 0..e {
            let mut shifted = vec![0u64; shift];
            shifted.extend_from_slice(&dense);
            let red = poly_reduce(shifted, &monic, n);
            for (row, col) in cols.iter_mut().enumerate() {
                col.push(red[row] as i128);
            }
        }
    }

    let mut unity = vec![0i128; e];
    unity[0] = 1;
    let label = |v: &[i128]| -> String {
        let terms: Vec<(i64, u32)> = v
            .iter()
            .enumerate()
            .map(|(deg, &c)| ((c.rem_euclid(n as i128)) as i64, deg as u32))
            .collect();
        Poly::new(terms).display_with(var).to_string()
    };
    let (ring, map) = ring_from_quotient(e, &cols, &basis_mul, &unity, &label)?;
    let rank = ring.rank();
    let labels = ring.labels().to_vec();
    let ctx = AtomCtx {
        modulus: n,
        var: Some(var.clone()),
        monic,
        ambient: e,
        map,
        rank,
        labels,
    };
    Ok((ring, ctx))
}

/// Builds the ring described by `spec`.
pub fn construct(spec: &RingSpec) -> Result<Constructed, Error> {
    let mut rings = Vec::new();
    let mut atoms = Vec::new();
    for atom in &spec.atoms {
        let (ring, ctx) = construct_atom(atom)?;
        rings.push(ring);
        atoms.push(ctx);
    }
    let mut offsets = Vec::with_capacity(atoms.len());
    let mut acc = 0usize;
    for ctx in &atoms {
        offsets.push(acc);
        acc += ctx.rank;
    }
    let mut iter = rings.into_iter();
    let mut ring = iter.next().expect("parser guarantees at least one atom");
    for next in iter {
        ring = FiniteRing::direct_product(&ring, &next)?;
    }
    // Flat tuple labels for products; single atoms keep their own labels.
    if spec.atoms.len() > 1 {
        let m = spec.atoms.len();
        let mut labels = Vec::with_capacity(ring.rank());
        for (slot, ctx) in atoms.iter().enumerate() {
            for local in 0..ctx.rank {
                let mut parts = vec!["0".to_string(); m];
                parts[slot] = ctx.labels[local].clone();
                labels.push(format!("({})", parts.join(",")));
            }
        }
        ring = ring.with_labels(labels);
    }
    Ok(Constructed { spec: spec.clone(), ring, atoms, offsets })
}

impl Constructed {
    /// Converts a parsed element literal into a ring element.
    pub fn element(&self, expr: &ElementExpr) -> Result<RingElement, Error> {
        if expr.components.len() != self.atoms.len() {
            return Err(Error::BadElement(format!(
                "expected {} components, found {}",
                self.atoms.len(),
                expr.components.len()
            )));
        }
        let mut coeffs = vec![0u64; self.ring.rank()];
        for (slot, (ctx, poly)) in self.atoms.iter().zip(&expr.components).enumerate() {
            let part = self.atom_element(ctx, poly)?;
            let off = self.offsets[slot];
            coeffs[off..off + ctx.rank].copy_from_slice(part.coeffs());
        }
        Ok(RingElement { coeffs })
    }

    fn atom_element(&self, ctx: &AtomCtx, poly: &Poly) -> Result<RingElement, Error> {
        let n = ctx.modulus;
        let dense = poly.dense_mod(n);
        if ctx.var.is_none() {
            if dense.len() > 1 {
                return Err(Error::BadElement(format!(
                    "component of Z/{n} must be constant, found {poly}"
                )));
            }
            let c = dense.first().copied().unwrap_or(0);
            return Ok(ctx.map.apply_ints(&[c as i128]));
        }
        if ctx.ambient == 0 {
            return Ok(RingElement { coeffs: vec![] });
        }
        let mut v = dense;
        if v.len() > ctx.ambient {
            v = poly_reduce(v, &ctx.monic, n);
        }
        v.resize(ctx.ambient, 0);
        let ints: Vec<i128> = v.into_iter().map(|c| c as i128).collect();
        Ok(ctx.map.apply_ints(&ints))
    }

    /// Parses and converts a comma-separated generator list.
    pub fn parse_gens(&self, text: &str) -> Result<Vec<RingElement>, Error> {
        let exprs = crate::ringspec::parse_generators(text, &self.spec)?;
        exprs.iter().map(|e| self.element(e)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ringspec::parse_ringspec;

    fn build(text: &str) -> Constructed {
        construct(&parse_ringspec(text).unwrap()).unwrap()
    }

    #[test]
    fn plain_modular_rings() {
        let c = build("Z/12");
        assert_eq!(c.ring.size(), 12);
        assert_eq!(c.ring.rank(), 1);
        let five = c.ring.elem(&[5]);
        assert_eq!(c.ring.mul_elem(&five, &five), c.ring.elem(&[1]));
        assert_eq!(c.ring.elem_string(&five), "5");
    }

    #[test]
    fn f4_multiplication_follows_the_relation() {
        let c = build("Z/2[x]/(x^2+x+1)");
        let r = &c.ring;
        assert_eq!(r.size(), 4);
        assert_eq!(r.orders(), &[2, 2]);
        let x = c.parse_gens("x").unwrap().remove(0);
        // x^2 = x + 1 and x^3 = 1.
        let x2 = r.mul_elem(&x, &x);
        assert_eq!(x2, r.add_elem(&x, &r.one()));
        assert_eq!(r.mul_elem(&x2, &x), r.one());
        // Every nonzero element is invertible (field of order 4).
        for idx in 1..4 {
            let a = r.elem_at(idx);
            let inv_exists = (1..4).any(|j| r.mul_elem(&a, &r.elem_at(j)) == r.one());
            assert!(inv_exists);
        }
    }

    #[test]
    fn nilpotent_presentation_has_additive_orders_8_2() {
        let c = build("Z/8[x]/(x^2, 2x)");
        let r = &c.ring;
        assert_eq!(r.size(), 16);
        let mut orders = r.orders().to_vec();
        orders.sort_unstable();
        assert_eq!(orders, vec![2, 8]);
        let x = c.parse_gens("x").unwrap().remove(0);
        assert_eq!(r.mul_elem(&x, &x), r.zero());
        assert_eq!(r.add_elem(&x, &x), r.zero());
        // (1+x)^2 = 1 + 2x + x^2 = 1.
        let one_x = r.add_elem(&r.one(), &x);
        assert_eq!(r.mul_elem(&one_x, &one_x), r.one());
    }

    #[test]
    fn high_degree_relations_reduce_modulo_the_monic_one() {
        // Z/4[x]/(x^2 - 2, 2x): x^2 = 2, 2x = 0; elements a + bx with
        // a mod 4, b mod 2 — size 8.
        let c = build("Z/4[x]/(x^2+2, 2x)");
        let r = &c.ring;
        assert_eq!(r.size(), 8);
        let x = c.parse_gens("x").unwrap().remove(0);
        assert_eq!(r.mul_elem(&x, &x), r.from_int(2));
        assert_eq!(r.add_elem(&x, &x), r.zero());
    }

    #[test]
    fn collapsing_presentation_gives_the_zero_ring() {
        // gcd(x, x+1) forces 1 = 0.
        let c = build("Z/5[x]/(x, x+1)");
        assert_eq!(c.ring.size(), 1);
        assert_eq!(c.ring.rank(), 0);
        assert_eq!(c.ring.zero(), c.ring.one());
    }

    #[test]
    fn products_concatenate_components() {
        let c = build("Z/4 x Z/9");
        let r = &c.ring;
        assert_eq!(r.size(), 36);
        let e = c.parse_gens("(1, 0)").unwrap().remove(0);
        assert_eq!(r.mul_elem(&e, &e), e); // idempotent
        let f = c.parse_gens("(0, 1)").unwrap().remove(0);
        assert_eq!(r.add_elem(&e, &f), r.one());
        assert_eq!(r.mul_elem(&e, &f), r.zero());
        assert_eq!(r.elem_string(&e), "(1,0)");
    }

    #[test]
    fn quotient_of_z12_by_4_is_z4() {
        let c = build("Z/12");
        let r = &c.ring;
        let i4 = r.ideal_generate(&[r.elem(&[4])]);
        let (q, map) = r.quotient_ring(&i4);
        assert_eq!(q.size(), 4);
        // The projection is a ring homomorphism.
        for a in 0..12 {
            for b in 0..12 {
                let (ea, eb) = (r.elem_at(a), r.elem_at(b));
                assert_eq!(
                    map.apply(&r.mul_elem(&ea, &eb)),
                    q.mul_elem(&map.apply(&ea), &map.apply(&eb))
                );
                assert_eq!(
                    map.apply(&r.add_elem(&ea, &eb)),
                    q.add_elem(&map.apply(&ea), &map.apply(&eb))
                );
            }
        }
        assert_eq!(map.apply(&r.one()), q.one());
        // Kernel of the projection is exactly the ideal.
        let kernel: Vec<u64> = (0..12)
            .filter(|&i| map.apply(&r.elem_at(i)) == q.zero())
            .collect();
        assert_eq!(kernel.len(), i4.len());
    }

    #[test]
    fn quotient_by_unit_ideal_is_zero_ring() {
        let c = build("Z/6");
        let r = &c.ring;
        let (q, _) = r.quotient_ring(&r.unit_ideal());
        assert_eq!(q.size(), 1);
    }

    #[test]
    fn idempotents_of_z6() {
        let c = build("Z/6");
        let idems: Vec<u64> = c
            .ring
            .idempotents()
            .iter()
            .map(|e| c.ring.index_of(e))
            .collect();
        assert_eq!(idems, vec![0, 1, 3, 4]);
    }

    #[test]
    fn decompose_splits_z6_into_z2_and_z3() {
        let c = build("Z/6");
        let parts = c.ring.decompose();
        let mut sizes: Vec<u64> = parts.iter().map(|(q, _)| q.size()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 3]);
        // The componentwise map is injective (hence an isomorphism by count).
        let mut images = std::collections::HashSet::new();
        for i in 0..6 {
            let x = c.ring.elem_at(i);
            let img: Vec<RingElement> = parts.iter().map(|(_, m)| m.apply(&x)).collect();
            assert!(images.insert(img));
        }
    }

    #[test]
    fn local_rings_do_not_split() {
        for text in ["Z/8", "Z/9", "Z/2[x]/(x^2+x+1)", "Z/8[x]/(x^2, 2x)"] {
            let c = build(text);
            assert_eq!(c.ring.decompose().len(), 1, "{text}");
        }
    }

    #[test]
    fn invalid_tables_are_rejected() {
        // Non-commutative table.
        let bad = FiniteRing::from_components(
            vec![2, 2],
            vec![vec![1, 0], vec![0, 1], vec![0, 0], vec![0, 1]],
            vec![1, 0],
            vec!["1".into(), "t".into()],
        );
        assert!(matches!(bad, Err(Error::InvalidRing(_))));

        // Structure constants incompatible with the additive orders:
        // e_1 has order 2 but e_1*e_1 = e_0 has order 4 (2*(e_1 e_1) ≠ 0).
        let bad = FiniteRing::from_components(
            vec![4, 2],
            vec![vec![1, 0], vec![0, 1], vec![0, 1], vec![1, 0]],
            vec![1, 0],
            vec!["1".into(), "t".into()],
        );
        assert!(matches!(bad, Err(Error::InvalidRing(_))));

        // Unreduced coefficient.
        let bad = FiniteRing::from_components(vec![4], vec![vec![5]], vec![1], vec!["1".into()]);
        assert!(matches!(bad, Err(Error::InvalidRing(_))));
    }

    #[test]
    fn unity_must_act_as_identity() {
        // Claim unity = 2 in Z/4: 2*2 = 0 ≠ 2.
        let bad =
            FiniteRing::from_components(vec![4], vec![vec![1]], vec![2], vec!["1".into()]);
        assert!(matches!(bad, Err(Error::InvalidRing(_))));
    }

    #[test]
    fn element_parsing_respects_relations() {
        let c = build("Z/8[x]/(x^2, 2x)");
        // x^3 + 3x + 10 reduces to x + 2 (x^2 = 0, 2x = 0 so 3x = x).
        let parsed = c.parse_gens("x^3 + 3x + 10").unwrap().remove(0);
        let expected = {
            let x = c.parse_gens("x").unwrap().remove(0);
            c.ring.add_elem(&x, &c.ring.from_int(2))
        };
        assert_eq!(parsed, expected);
    }

    #[test]
    fn from_int_and_pow() {
        let c = build("Z/9");
        let r = &c.ring;
        assert_eq!(r.from_int(-1), r.elem(&[8]));
        assert_eq!(r.pow_elem(&r.elem(&[2]), 6), r.elem(&[64 % 9]));
    }
}
