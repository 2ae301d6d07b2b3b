//! Exact integer matrix and lattice algebra: Hermite and Smith normal forms
//! with unimodular witnesses, kernels, integer solving, row-lattice
//! membership, intersection, and index.
//!
//! All arithmetic is arbitrary precision; normal-form intermediates blow up
//! well past machine words even for small inputs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::{Error, ExtNat};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.entries[r * self.cols + c])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, Error> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Dimension("ragged row lengths".into()));
        }
        Ok(IntMatrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .expect("literal rows are rectangular")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<BigInt> {
        self.entries[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c) + a * other.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c) * &v[c]).sum())
            .collect()
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols, "column count mismatch");
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Place `other` to the right of `self`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "row count mismatch");
        let mut out = IntMatrix::zero(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        out
    }

    pub fn submatrix(&self, row_range: std::ops::Range<usize>, col_range: std::ops::Range<usize>) -> IntMatrix {
        let mut out = IntMatrix::zero(row_range.len(), col_range.len());
        for (ri, r) in row_range.clone().enumerate() {
            for (ci, c) in col_range.clone().enumerate() {
                out.set(ri, ci, self.get(r, c).clone());
            }
        }
        out
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row_j += k * row_i
    fn add_row_multiple(&mut self, j: usize, i: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = self.get(j, c) + k * self.get(i, c);
            self.set(j, c, v);
        }
    }

    /// col_j += k * col_i
    fn add_col_multiple(&mut self, j: usize, i: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = self.get(r, j) + k * self.get(r, i);
            self.set(r, j, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -self.get(i, c);
            self.set(i, c, v);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for r in 0..self.rows {
            let v = -self.get(r, j);
            self.set(r, j, v);
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt, Error> {
        if self.rows != self.cols {
            return Err(Error::Dimension("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
                m.set(i, k, BigInt::zero());
            }
            prev = m.get(k, k).clone();
        }
        Ok(sign * m.get(n - 1, n - 1).clone())
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().map_or(false, |d| d.abs().is_one())
    }
}

/// Smith decomposition A = U·D·V with U, V unimodular and D diagonal with a
/// divisibility chain d1 | d2 | ...; `u_inv` and `v_inv` are carried so that
/// kernels and integer solving need no extra inversions.
#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SnfDecomposition {
    /// Diagonal entries, including zeros, length min(rows, cols).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Row-style Hermite normal form: H = U·A with U unimodular, H in echelon
/// form with positive pivots and entries above each pivot reduced into
/// [0, pivot).
pub fn hermite_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.rows());
    let (m, n) = (a.rows(), a.cols());
    let mut pivot_row = 0;
    for col in 0..n {
        if pivot_row == m {
            break;
        }
        // Clear below (pivot_row, col) by repeated euclidean row steps.
        loop {
            let nonzero: Vec<usize> = (pivot_row..m).filter(|&r| !h.get(r, col).is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let best = *nonzero
                .iter()
                .min_by_key(|&&r| h.get(r, col).abs())
                .expect("nonempty");
            h.swap_rows(pivot_row, best);
            u.swap_rows(pivot_row, best);
            if nonzero.len() == 1 {
                break;
            }
            let pivot = h.get(pivot_row, col).clone();
            for r in pivot_row + 1..m {
                if h.get(r, col).is_zero() {
                    continue;
                }
                let q = -h.get(r, col).div_floor(&pivot);
                h.add_row_multiple(r, pivot_row, &q);
                u.add_row_multiple(r, pivot_row, &q);
            }
        }
        if h.get(pivot_row, col).is_zero() {
            continue;
        }
        if h.get(pivot_row, col).is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        // Reduce entries above the pivot into [0, pivot).
        let pivot = h.get(pivot_row, col).clone();
        for r in 0..pivot_row {
            let q = -h.get(r, col).div_floor(&pivot);
            h.add_row_multiple(r, pivot_row, &q);
            u.add_row_multiple(r, pivot_row, &q);
        }
        pivot_row += 1;
    }
    (h, u)
}

/// Smith normal form with unimodular witnesses, A = U·D·V exactly.
///
/// Pivot selection: smallest nonzero absolute value in the working
/// submatrix, ties broken by lowest (row, col), for deterministic output.
pub fn smith_normal_form(a: &IntMatrix) -> SnfDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut u_inv = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut v_inv = IntMatrix::identity(n);

    // Row op D <- E·D is compensated by U <- U·E^{-1}, U_inv <- E·U_inv;
    // column op D <- D·F by V <- F^{-1}·V, V_inv <- V_inv·F.
    let mut r = 0;
    while r < m && r < n {
        let pivot = pick_pivot(&d, r);
        let (pi, pj) = match pivot {
            Some(p) => p,
            None => break,
        };
        if pi != r {
            d.swap_rows(r, pi);
            u.swap_cols(r, pi);
            u_inv.swap_rows(r, pi);
        }
        if pj != r {
            d.swap_cols(r, pj);
            v.swap_rows(r, pj);
            v_inv.swap_cols(r, pj);
        }
        loop {
            // Clear column r below the pivot.
            let mut dirty = false;
            for i in r + 1..m {
                if d.get(i, r).is_zero() {
                    continue;
                }
                let q = -d.get(i, r).div_floor(&d.get(r, r).clone());
                d.add_row_multiple(i, r, &q);
                u.add_col_multiple(r, i, &(-&q));
                u_inv.add_row_multiple(i, r, &q);
                if !d.get(i, r).is_zero() {
                    // Remainder is strictly smaller; promote it to pivot.
                    d.swap_rows(r, i);
                    u.swap_cols(r, i);
                    u_inv.swap_rows(r, i);
                    dirty = true;
                }
            }
            // Clear row r to the right of the pivot.
            for j in r + 1..n {
                if d.get(r, j).is_zero() {
                    continue;
                }
                let q = -d.get(r, j).div_floor(&d.get(r, r).clone());
                d.add_col_multiple(j, r, &q);
                v.add_row_multiple(r, j, &(-&q));
                v_inv.add_col_multiple(j, r, &q);
                if !d.get(r, j).is_zero() {
                    d.swap_cols(r, j);
                    v.swap_rows(r, j);
                    v_inv.swap_cols(r, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Pivot must divide every remaining entry before we advance,
            // which is what makes the diagonal an invariant-factor chain.
            let offender = (r + 1..m)
                .flat_map(|i| (r + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !d.get(i, j).mod_floor(&d.get(r, r).clone()).is_zero());
            match offender {
                Some((i, _)) => {
                    d.add_row_multiple(r, i, &BigInt::one());
                    u.add_col_multiple(i, r, &BigInt::from(-1));
                    u_inv.add_row_multiple(r, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d.get(r, r).is_negative() {
            d.negate_row(r);
            u.negate_col(r);
            u_inv.negate_row(r);
        }
        r += 1;
    }
    debug_assert_eq!(u.mul(&d).mul(&v), *a);
    SnfDecomposition { u, d, v, u_inv, v_inv }
}

fn pick_pivot(d: &IntMatrix, r: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in r..d.rows() {
        for j in r..d.cols() {
            let val = d.get(i, j).abs();
            if val.is_zero() {
                continue;
            }
            let better = match &best {
                None => true,
                Some((b, _, _)) => val < *b,
            };
            if better {
                best = Some((val, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Basis of the right kernel {x : A·x = 0}, returned as rows of length
/// `a.cols()`. The basis is empty when A is injective.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    let n = a.cols();
    let mut rows = Vec::new();
    for j in rank..n {
        // Column j of V^{-1}.
        rows.push((0..n).map(|i| snf.v_inv.get(i, j).clone()).collect());
    }
    IntMatrix::from_rows(rows).unwrap_or_else(|_| IntMatrix::zero(0, n))
}

/// One integer solution x of A·x = b, if any.
pub fn solve(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len(), "rhs length mismatch");
    let snf = smith_normal_form(a);
    let y = snf.u_inv.mul_vec(b);
    let n = a.cols();
    let mut z = vec![BigInt::zero(); n];
    for (i, yi) in y.iter().enumerate() {
        if i < n && !snf.d.get(i, i).is_zero() {
            let di = snf.d.get(i, i);
            let (q, rem) = yi.div_rem(di);
            if !rem.is_zero() {
                return None;
            }
            z[i] = q;
        } else if !yi.is_zero() {
            return None;
        }
    }
    let x = snf.v_inv.mul_vec(&z);
    debug_assert_eq!(a.mul_vec(&x), b);
    Some(x)
}

/// Does `v` lie in the row lattice of `basis`? Returns the witness
/// coefficients c with c·basis = v when it does.
pub fn lattice_membership(v: &[BigInt], basis: &IntMatrix) -> Result<Option<Vec<BigInt>>, Error> {
    if v.len() != basis.cols() {
        return Err(Error::Dimension(format!(
            "vector length {} does not match lattice dimension {}",
            v.len(),
            basis.cols()
        )));
    }
    Ok(solve(&basis.transpose(), v))
}

/// Index of the row lattice of `sub` in Z^ambient_rank: the product of the
/// Smith invariant factors when the lattice has full rank, INFINITE otherwise.
pub fn lattice_index(sub: &IntMatrix, ambient_rank: usize) -> ExtNat {
    assert_eq!(sub.cols(), ambient_rank, "sublattice lives in Z^ambient_rank");
    if ambient_rank == 0 {
        return ExtNat::finite(1u32);
    }
    let snf = smith_normal_form(sub);
    if snf.rank() < ambient_rank {
        return ExtNat::Infinite;
    }
    let mut idx = BigInt::one();
    for d in snf.diagonal() {
        idx *= d;
    }
    ExtNat::Finite(idx.magnitude().clone())
}

/// Basis (as rows, HNF-canonical) of the intersection of two row lattices
/// in the same ambient Z^n.
pub fn lattice_intersection(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    assert_eq!(a.cols(), b.cols(), "ambient dimension mismatch");
    let n = a.cols();
    // (u, w) with u·A = w·B form the left kernel of stack(A, -B).
    let stacked = a.vstack(&b.neg());
    let left_kernel = kernel_basis(&stacked.transpose());
    let mut rows = Vec::new();
    for k in 0..left_kernel.rows() {
        let coeffs = left_kernel.row(k);
        let gen: Vec<BigInt> = (0..n)
            .map(|c| (0..a.rows()).map(|r| &coeffs[r] * a.get(r, c)).sum())
            .collect();
        rows.push(gen);
    }
    let raw = IntMatrix::from_rows(rows).unwrap_or_else(|_| IntMatrix::zero(0, n));
    canonical_row_basis(&raw)
}

/// HNF with zero rows dropped; canonical generator matrix for a row lattice.
/// Two generator sets span the same lattice iff their canonical bases are
/// equal.
pub fn canonical_row_basis(a: &IntMatrix) -> IntMatrix {
    let (h, _) = hermite_normal_form(a);
    let rows: Vec<Vec<BigInt>> = (0..h.rows())
        .map(|r| h.row(r))
        .filter(|row| row.iter().any(|x| !x.is_zero()))
        .collect();
    if rows.is_empty() {
        IntMatrix::zero(0, a.cols())
    } else {
        IntMatrix::from_rows(rows).expect("HNF rows are rectangular")
    }
}

pub fn rank(a: &IntMatrix) -> usize {
    smith_normal_form(a).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn hnf_already_normal() {
        let a = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(h, a);
        assert_eq!(u, IntMatrix::identity(2));
    }

    #[test]
    fn hnf_zero_matrix() {
        let a = IntMatrix::zero(2, 2);
        let (h, u) = hermite_normal_form(&a);
        assert!(h.is_zero());
        assert_eq!(u, IntMatrix::identity(2));
    }

    #[test]
    fn hnf_gcd_pivot_and_lattice_equality() {
        // Brute-force oracle for the pivot: gcd of the first column of
        // [[4,6],[2,2]] is 2, so H[0][0] must be 2.
        let a = IntMatrix::from_i64(&[&[4, 6], &[2, 2]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(h.get(0, 0), &bi(2));
        assert!(u.is_unimodular());
        assert_eq!(u.mul(&a), h);
        // Row lattices agree: mutual membership.
        for r in 0..2 {
            assert!(lattice_membership(&h.row(r), &a).unwrap().is_some());
            assert!(lattice_membership(&a.row(r), &h).unwrap().is_some());
        }
    }

    #[test]
    fn snf_identity() {
        let a = IntMatrix::identity(3);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.d, IntMatrix::identity(3));
    }

    #[test]
    fn snf_determinantal_divisors() {
        // gcd of entries is 2 and |det| = 8, so the invariant factors are 2, 4.
        let a = IntMatrix::from_i64(&[&[2, 4], &[6, 8]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.diagonal(), vec![bi(2), bi(4)]);
        assert_eq!(snf.u.mul(&snf.d).mul(&snf.v), a);
        assert!(snf.u.is_unimodular());
        assert!(snf.v.is_unimodular());
    }

    #[test]
    fn snf_diag_renormalizes() {
        let a = IntMatrix::from_i64(&[&[6, 0], &[0, 4]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.diagonal(), vec![bi(2), bi(12)]);
    }

    #[test]
    fn snf_inverse_witnesses() {
        let a = IntMatrix::from_i64(&[&[3, 1, -2], &[0, 7, 4]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.u.mul(&snf.u_inv), IntMatrix::identity(2));
        assert_eq!(snf.v.mul(&snf.v_inv), IntMatrix::identity(3));
        assert_eq!(snf.u.mul(&snf.d).mul(&snf.v), a);
    }

    #[test]
    fn membership_examples() {
        let basis = IntMatrix::identity(2);
        let w = lattice_membership(&[bi(2), bi(0)], &basis).unwrap();
        assert_eq!(w, Some(vec![bi(2), bi(0)]));

        let basis = IntMatrix::from_i64(&[&[2, 0]]);
        assert_eq!(lattice_membership(&[bi(1), bi(0)], &basis).unwrap(), None);

        let basis = IntMatrix::from_i64(&[&[1, 2], &[0, 3]]);
        let w = lattice_membership(&[bi(3), bi(3)], &basis).unwrap().unwrap();
        assert_eq!(w, vec![bi(3), bi(-1)]);
    }

    #[test]
    fn membership_dimension_mismatch() {
        let basis = IntMatrix::identity(2);
        assert!(lattice_membership(&[bi(1)], &basis).is_err());
    }

    #[test]
    fn index_examples() {
        let sub = IntMatrix::from_i64(&[&[2, 0], &[0, 2]]);
        assert_eq!(lattice_index(&sub, 2), ExtNat::finite(4u32));
        let sub = IntMatrix::identity(2);
        assert_eq!(lattice_index(&sub, 2), ExtNat::finite(1u32));
        let sub = IntMatrix::from_i64(&[&[1, 0]]);
        assert_eq!(lattice_index(&sub, 2), ExtNat::Infinite);
    }

    #[test]
    fn kernel_of_rank_deficient() {
        let a = IntMatrix::from_i64(&[&[1, 2]]);
        let k = kernel_basis(&a);
        assert_eq!(k.rows(), 1);
        // Kernel generated by +-(-2, 1).
        let v = k.row(0);
        assert!(a.mul_vec(&v).iter().all(Zero::is_zero));
        assert_eq!(v[0].abs(), bi(2));
        assert_eq!(v[1].abs(), bi(1));
    }

    #[test]
    fn solve_and_fail() {
        let a = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        assert_eq!(solve(&a, &[bi(4), bi(9)]), Some(vec![bi(2), bi(3)]));
        assert_eq!(solve(&a, &[bi(1), bi(0)]), None);
    }

    #[test]
    fn intersection_of_lattices() {
        let a = IntMatrix::from_i64(&[&[2, 0], &[0, 1]]);
        let b = IntMatrix::from_i64(&[&[1, 0], &[0, 3]]);
        let i = lattice_intersection(&a, &b);
        assert_eq!(i, IntMatrix::from_i64(&[&[2, 0], &[0, 3]]));
    }
}
