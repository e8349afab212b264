//! Smith normal form over the integers, with row transforms.
//!
//! Used to present quotients of finitely generated free abelian groups:
//! given a sublattice `L` of `Z^k` spanned by the columns of `A`, the form
//! `S = U * A * V` with `S` diagonal describes `Z^k / L` as a direct sum of
//! cyclic groups `Z/s_i`, where the coordinate map is `x -> U*x mod s`.
//!
//! All arithmetic is exact; any overflow of the fixed-width integers aborts
//! with a panic rather than wrapping.

/// Dense integer matrix, row major.
pub type Mat = Vec<Vec<i128>>;

pub fn mat_identity(k: usize) -> Mat {
    (0..k)
        .map(|i| (0..k).map(|j| i128::from(i == j)).collect())
        .collect()
}

/// Checked multiply; exactness is non-negotiable here.
pub fn mul_i(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("integer overflow in exact lattice arithmetic")
}

/// Checked add.
pub fn add_i(a: i128, b: i128) -> i128 {
    a.checked_add(b).expect("integer overflow in exact lattice arithmetic")
}

/// Outcome of a Smith normal form computation on a `k x m` matrix.
///
/// `diag` holds the invariant factors `s_1 | s_2 | ... | s_r` (all positive;
/// trailing zero rows mean the column span has rank below `k`). `u` is a
/// `k x k` unimodular matrix and `u_inv` its exact inverse, so the quotient
/// map is `x -> (u * x) mod diag` and column `i` of `u_inv` is a preimage of
/// the `i`-th cyclic generator.
pub struct SmithForm {
    pub diag: Vec<i128>,
    pub u: Mat,
    pub u_inv: Mat,
}

impl SmithForm {
    /// Applies the quotient coordinate map to an integer vector. This is
    /// the reference form of the map; production callers go through
    /// `QuotientMap`, which keeps only the rows with `diag > 1`.
    #[cfg(test)]
    pub fn apply(&self, x: &[i128]) -> Vec<i128> {
        let k = self.u.len();
        assert_eq!(x.len(), k);
        (0..k)
            .map(|i| {
                let mut acc: i128 = 0;
                for j in 0..k {
                    acc = add_i(acc, mul_i(self.u[i][j], x[j]));
                }
                if self.diag[i] != 0 {
                    acc.rem_euclid(self.diag[i])
                } else {
                    acc
                }
            })
            .collect()
    }
}

/// Computes the Smith normal form of `a` (dimensions `k x m`, `k >= 1`).
///
/// Column operations are not tracked: every caller only needs the row
/// transform pair `(u, u_inv)` and the invariant factors.
pub fn smith_normal_form(a: &Mat) -> SmithForm {
    let k = a.len();
    let m = if k == 0 { 0 } else { a[0].len() };
    let mut b: Mat = a.clone();
    let mut u = mat_identity(k);
    let mut u_inv = mat_identity(k);

    // Row op: row_i -= q * row_t  (tracked on u; inverse op on u_inv columns).
    fn row_sub(b: &mut Mat, u: &mut Mat, u_inv: &mut Mat, i: usize, t: usize, q: i128) {
        if q == 0 {
            return;
        }
        for col in 0..b[0].len() {
            b[i][col] = add_i(b[i][col], -mul_i(q, b[t][col]));
        }
        for col in 0..u[0].len() {
            u[i][col] = add_i(u[i][col], -mul_i(q, u[t][col]));
        }
        for row in 0..u_inv.len() {
            u_inv[row][t] = add_i(u_inv[row][t], mul_i(q, u_inv[row][i]));
        }
    }

    fn row_swap(b: &mut Mat, u: &mut Mat, u_inv: &mut Mat, i: usize, t: usize) {
        if i == t {
            return;
        }
        b.swap(i, t);
        u.swap(i, t);
        for row in 0..u_inv.len() {
            let tmp = u_inv[row][i];
            u_inv[row][i] = u_inv[row][t];
            u_inv[row][t] = tmp;
        }
    }

    fn row_negate(b: &mut Mat, u: &mut Mat, u_inv: &mut Mat, i: usize) {
        for col in 0..b[0].len() {
            b[i][col] = -b[i][col];
        }
        for col in 0..u[0].len() {
            u[i][col] = -u[i][col];
        }
        for row in 0..u_inv.len() {
            u_inv[row][i] = -u_inv[row][i];
        }
    }

    fn col_sub(b: &mut Mat, j: usize, t: usize, q: i128) {
        if q == 0 {
            return;
        }
        for row in 0..b.len() {
            b[row][j] = add_i(b[row][j], -mul_i(q, b[row][t]));
        }
    }

    fn col_swap(b: &mut Mat, j: usize, t: usize) {
        for row in b.iter_mut() {
            row.swap(j, t);
        }
    }

    let rmax = k.min(m);
    let mut t = 0;
    while t < rmax {
        // Locate a pivot of minimal absolute value in the trailing block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..k {
            for j in t..m {
                if b[i][j] != 0 {
                    let better = match pivot {
                        None => true,
                        Some((pi, pj)) => b[i][j].abs() < b[pi][pj].abs(),
                    };
                    if better {
                        pivot = Some((i, j));
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        row_swap(&mut b, &mut u, &mut u_inv, pi, t);
        col_swap(&mut b, pj, t);
        if b[t][t] < 0 {
            row_negate(&mut b, &mut u, &mut u_inv, t);
        }

        // Clear column t below and row t to the right; restart on remainders.
        let mut dirty = true;
        while dirty {
            dirty = false;
            for i in (t + 1)..k {
                let q = b[i][t].div_euclid(b[t][t]);
                row_sub(&mut b, &mut u, &mut u_inv, i, t, q);
                if b[i][t] != 0 {
                    // Remainder smaller than pivot: promote it and restart.
                    row_swap(&mut b, &mut u, &mut u_inv, i, t);
                    dirty = true;
                }
            }
            for j in (t + 1)..m {
                let q = b[t][j].div_euclid(b[t][t]);
                col_sub(&mut b, j, t, q);
                if b[t][j] != 0 {
                    col_swap(&mut b, j, t);
                    dirty = true;
                }
            }
            if b[t][t] < 0 {
                row_negate(&mut b, &mut u, &mut u_inv, t);
            }
        }

        // Enforce divisibility of the trailing block by the pivot.
        let mut fixed = true;
        'divis: for i in (t + 1)..k {
            for j in (t + 1)..m {
                if b[i][j] % b[t][t] != 0 {
                    // Fold row i into row t and redo this pivot.
                    row_sub(&mut b, &mut u, &mut u_inv, t, i, -1);
                    fixed = false;
                    break 'divis;
                }
            }
        }
        if fixed {
            t += 1;
        }
    }

    let mut diag = vec![0i128; k];
    for (i, d) in diag.iter_mut().enumerate().take(rmax) {
        *d = b[i][i];
    }
    SmithForm { diag, u, u_inv }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat_mul(a: &Mat, b: &Mat) -> Mat {
        let n = a.len();
        let m = b[0].len();
        let inner = b.len();
        (0..n)
            .map(|i| {
                (0..m)
                    .map(|j| (0..inner).map(|t| a[i][t] * b[t][j]).sum())
                    .collect()
            })
            .collect()
    }

    fn check_form(a: &Mat) {
        let k = a.len();
        let f = smith_normal_form(a);
        // u * u_inv = identity.
        assert_eq!(mat_mul(&f.u, &f.u_inv), mat_identity(k));
        // Divisibility chain on nonzero invariant factors.
        for w in f.diag.windows(2) {
            if w[1] != 0 {
                assert!(w[0] != 0 && w[1] % w[0] == 0, "chain broken: {:?}", f.diag);
            }
        }
        // Every lattice column must map to zero in the quotient coordinates.
        for j in 0..a[0].len() {
            let col: Vec<i128> = (0..k).map(|i| a[i][j]).collect();
            let image = f.apply(&col);
            for (i, v) in image.iter().enumerate() {
                if f.diag[i] != 0 {
                    assert_eq!(*v, 0, "column {j} not annihilated");
                }
            }
        }
    }

    #[test]
    fn diagonal_matrix_is_normalized() {
        let a: Mat = vec![vec![6, 0], vec![0, 4]];
        let f = smith_normal_form(&a);
        assert_eq!(f.diag, vec![2, 12]);
        check_form(&a);
    }

    #[test]
    fn full_rank_quotient_size_is_determinant() {
        // |Z^2 / span{(3,1),(-7,3)}| = |det| = 16, cyclic (gcd of entries is 1).
        let a: Mat = vec![vec![3, -7], vec![1, 3]];
        let f = smith_normal_form(&a);
        assert_eq!(f.diag, vec![1, 16]);
        check_form(&a);
    }

    #[test]
    fn rank_deficient_matrix_has_zero_factor() {
        let a: Mat = vec![vec![2, 4], vec![1, 2]];
        let f = smith_normal_form(&a);
        assert_eq!(f.diag, vec![1, 0]);
        check_form(&a);
    }

    #[test]
    fn wide_matrices_with_redundant_columns() {
        let a: Mat = vec![vec![8, 0, 0, 2], vec![0, 8, 2, 0]];
        check_form(&a);
        let f = smith_normal_form(&a);
        assert_eq!(f.diag, vec![2, 2]);
    }

    #[test]
    fn pseudorandom_matrices_keep_invariants() {
        // Small deterministic LCG; no external RNG needed for this check.
        let mut state: u64 = 0x9e3779b97f4a7c15;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 21) as i128 - 10
        };
        for _ in 0..60 {
            let k = 1 + (next().unsigned_abs() as usize % 4);
            let m = 1 + (next().unsigned_abs() as usize % 5);
            let a: Mat = (0..k).map(|_| (0..m).map(|_| next()).collect()).collect();
            check_form(&a);
        }
    }
}
