//! Exact linear algebra over the integers, sized for fan computations
//! (matrices are at most a few dozen rows/columns).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A lattice point or dual vector, as plain coordinates.
pub type Vector = Vec<BigInt>;

pub fn vector(coords: &[i64]) -> Vector {
    coords.iter().map(|&c| BigInt::from(c)).collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn neg(a: &[BigInt]) -> Vector {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero_vec(a: &[BigInt]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// gcd of all coordinates, non-negative; 0 only for the zero vector.
pub fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Dense row-major matrix of integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vector]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            debug_assert_eq!(row.len(), c);
            data.extend(row.iter().cloned());
        }
        Mat { rows: r, cols: c, data }
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    /// Row vector times matrix: v · M.
    pub fn mul_row_vec(&self, v: &[BigInt]) -> Vector {
        debug_assert_eq!(v.len(), self.rows);
        (0..self.cols)
            .map(|c| (0..self.rows).map(|r| &v[r] * self.at(r, c)).sum())
            .collect()
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let v = -self.at(r, c).clone();
            *self.at_mut(r, c) = v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.at(r, c).clone();
            *self.at_mut(r, c) = v;
        }
    }

    /// col[dst] += q * col[src]
    fn addmul_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for r in 0..self.rows {
            let v = self.at(r, dst) + self.at(r, src) * q;
            *self.at_mut(r, dst) = v;
        }
    }

    /// row[dst] += q * row[src]
    fn addmul_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for c in 0..self.cols {
            let v = self.at(dst, c) + self.at(src, c) * q;
            *self.at_mut(dst, c) = v;
        }
    }
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &Mat) -> BigInt {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for i in 0..n - 1 {
        if a.at(i, i).is_zero() {
            match (i + 1..n).find(|&r| !a.at(r, i).is_zero()) {
                Some(r) => {
                    a.swap_rows(i, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for r in i + 1..n {
            for c in i + 1..n {
                let v = (a.at(r, c) * a.at(i, i) - a.at(r, i) * a.at(i, c)) / &prev;
                *a.at_mut(r, c) = v;
            }
            *a.at_mut(r, i) = BigInt::zero();
        }
        prev = a.at(i, i).clone();
    }
    sign * a.at(n - 1, n - 1)
}

/// Rank over the rationals, by elimination with full pivoting.
pub fn rank(m: &Mat) -> usize {
    let mut a = m.clone();
    let mut r = 0;
    let mut prev = BigInt::one();
    while r < a.rows && r < a.cols {
        let pivot = (r..a.rows)
            .flat_map(|i| (r..a.cols).map(move |j| (i, j)))
            .find(|&(i, j)| !a.at(i, j).is_zero());
        let Some((pi, pj)) = pivot else { break };
        a.swap_rows(r, pi);
        a.swap_cols(r, pj);
        for i in r + 1..a.rows {
            for j in r + 1..a.cols {
                let v = (a.at(i, j) * a.at(r, r) - a.at(i, r) * a.at(r, j)) / &prev;
                *a.at_mut(i, j) = v;
            }
            *a.at_mut(i, r) = BigInt::zero();
        }
        prev = a.at(r, r).clone();
        r += 1;
    }
    r
}

/// A unimodular matrix whose first rows are a prescribed lattice basis
/// fragment, together with its inverse.
#[derive(Clone, Debug)]
pub struct BasisExt {
    /// d×d unimodular; rows 0..k are exactly the input rows.
    pub basis: Mat,
    /// Inverse of `basis`; column j is the dual vector of basis row j.
    pub inv: Mat,
}

/// Extends k independent rows spanning a saturated sublattice of Z^d to a
/// basis of Z^d. Columns are eliminated left to right, so the result is
/// deterministic in the input order. Returns None when the rows do not form
/// part of a lattice basis (dependent rows or a non-saturated span).
pub fn extend_to_basis(rows: &[Vector], dim: usize) -> Option<BasisExt> {
    let k = rows.len();
    debug_assert!(rows.iter().all(|r| r.len() == dim));
    debug_assert!(k <= dim);
    let mut a = Mat::from_rows(rows);
    if k == 0 {
        a = Mat::zeros(0, dim);
    }
    // Invariants: a = input · v at every step, p = v^{-1}.
    let mut v = Mat::identity(dim);
    let mut p = Mat::identity(dim);
    for r in 0..k {
        // Reduce row r on columns r.. to a single entry by gcd steps.
        loop {
            let best = (r..dim)
                .filter(|&c| !a.at(r, c).is_zero())
                .min_by_key(|&c| a.at(r, c).abs());
            let best = best?; // dependent rows
            if best != r {
                a.swap_cols(r, best);
                v.swap_cols(r, best);
                p.swap_rows(r, best);
            }
            let others: Vec<usize> =
                (r + 1..dim).filter(|&c| !a.at(r, c).is_zero()).collect();
            if others.is_empty() {
                break;
            }
            for c in others {
                let q = -(a.at(r, c) / a.at(r, r));
                a.addmul_col(c, r, &q);
                v.addmul_col(c, r, &q);
                p.addmul_row(r, c, &-q);
            }
        }
        if a.at(r, r).is_negative() {
            a.negate_col(r);
            v.negate_col(r);
            p.negate_row(r);
        }
        if !a.at(r, r).is_one() {
            return None; // span is not saturated
        }
        // Clear the rest of row r; earlier unit rows are unaffected.
        for c in (0..dim).filter(|&c| c != r) {
            if !a.at(r, c).is_zero() {
                let q = -a.at(r, c).clone();
                a.addmul_col(c, r, &q);
                v.addmul_col(c, r, &q);
                p.addmul_row(r, c, &-q);
            }
        }
    }
    debug_assert!((0..k).all(|r| p.row(r) == &rows[r][..]));
    Some(BasisExt { basis: p, inv: v })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Mat {
        Mat::from_rows(&rows.iter().map(|r| vector(r)).collect::<Vec<_>>())
    }

    #[test]
    fn det_small_cases() {
        assert_eq!(det(&mat(&[&[2]])), BigInt::from(2));
        assert_eq!(det(&mat(&[&[1, 2], &[3, 4]])), BigInt::from(-2));
        assert_eq!(
            det(&mat(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]])),
            BigInt::from(-1)
        );
        assert_eq!(det(&mat(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    #[test]
    fn det_bareiss_stays_exact() {
        // A matrix whose naive elimination would leave fractions.
        let m = mat(&[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5]]);
        assert_eq!(det(&m), BigInt::from(-90));
    }

    #[test]
    fn rank_counts_pivots() {
        assert_eq!(rank(&mat(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&mat(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 2]])), 2);
        assert_eq!(rank(&Mat::zeros(3, 5)), 0);
        assert_eq!(rank(&Mat::identity(4)), 4);
    }

    #[test]
    fn extend_identity_fragment() {
        let ext = extend_to_basis(&[vector(&[1, 0, 0])], 3).unwrap();
        assert_eq!(ext.basis.row(0), &vector(&[1, 0, 0])[..]);
        assert_eq!(det(&ext.basis).abs(), BigInt::one());
    }

    #[test]
    fn extend_respects_column_order() {
        // (0,1) extends by the first usable coordinate direction.
        let ext = extend_to_basis(&[vector(&[0, 1])], 2).unwrap();
        assert_eq!(ext.basis.row(0), &vector(&[0, 1])[..]);
        assert_eq!(ext.basis.row(1), &vector(&[1, 0])[..]);
        // Dual of (0,1) under that extension pairs to zero with (1,0).
        assert_eq!(ext.inv.col(0), vector(&[0, 1]));
    }

    #[test]
    fn extend_general_fragment_is_inverse_pair() {
        let rows = vec![vector(&[2, 3, 5]), vector(&[1, 2, 3])];
        let ext = extend_to_basis(&rows, 3).unwrap();
        assert_eq!(ext.basis.row(0), &rows[0][..]);
        assert_eq!(ext.basis.row(1), &rows[1][..]);
        assert_eq!(det(&ext.basis).abs(), BigInt::one());
        // basis · inv = identity
        for i in 0..3 {
            let e = ext.inv.mul_row_vec(ext.basis.row(i));
            for j in 0..3 {
                let want = if i == j { BigInt::one() } else { BigInt::zero() };
                assert_eq!(e[j], want);
            }
        }
    }

    #[test]
    fn extend_rejects_non_saturated_span() {
        assert!(extend_to_basis(&[vector(&[2, 0])], 2).is_none());
        assert!(extend_to_basis(&[vector(&[1, 0]), vector(&[1, 0])], 2).is_none());
    }
}
