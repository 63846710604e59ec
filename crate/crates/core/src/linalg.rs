//! Exact integer matrices.
//!
//! Ranks come from fraction-free (Bareiss) elimination over big integers.
//! Kernel bases come from a rational reduced row echelon form, rescaled to
//! primitive integer vectors so that every basis is deterministic and has
//! integer entries.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense row-major integer matrix. Zero rows or zero columns are allowed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from rows. All rows must have length `cols`.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = Matrix::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix row {i}");
            m.data[i * cols..(i + 1) * cols].copy_from_slice(row);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(l, j)];
                }
            }
        }
        out
    }

    /// Rows `start..end` as a new matrix.
    pub fn row_block(&self, start: usize, end: usize) -> Matrix {
        Matrix {
            rows: end - start,
            cols: self.cols,
            data: self.data[start * self.cols..end * self.cols].to_vec(),
        }
    }

    /// Columns `start..end` as a new matrix.
    pub fn col_block(&self, start: usize, end: usize) -> Matrix {
        let mut m = Matrix::zeros(self.rows, end - start);
        for i in 0..self.rows {
            for j in start..end {
                m[(i, j - start)] = self[(i, j)];
            }
        }
        m
    }

    /// Stacks matrices with equal column count on top of each other.
    pub fn vstack(blocks: &[&Matrix], cols: usize) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            assert_eq!(b.cols, cols);
            data.extend_from_slice(&b.data);
        }
        Matrix { rows, cols, data }
    }

    /// Places matrices with equal row count side by side.
    pub fn hstack(blocks: &[&Matrix], rows: usize) -> Matrix {
        let t: Vec<Matrix> = blocks.iter().map(|b| b.transpose()).collect();
        let refs: Vec<&Matrix> = t.iter().collect();
        Matrix::vstack(&refs, rows).transpose()
    }

    fn to_big(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Rank by Bareiss fraction-free elimination. Every intermediate entry is an
/// exact minor of the input, so no division ever leaves the integers.
pub fn rank(m: &Matrix) -> usize {
    let mut a = m.to_big();
    let (rows, cols) = m.shape();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Reduced row echelon form over the rationals. Returns the pivot columns.
#[allow(clippy::needless_range_loop)]
fn rref(m: &Matrix) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let (rows, cols) = m.shape();
    let mut a: Vec<Vec<BigRational>> = m
        .to_big()
        .into_iter()
        .map(|row| row.into_iter().map(BigRational::from_integer).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in c..cols {
                let d = &f * &a[r][j];
                a[i][j] -= d;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Scales a rational vector to the primitive integer vector on the same ray,
/// with a positive last nonzero entry.
fn primitive(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = match ints.iter().rev().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g * &sign).collect()
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::Internal(format!("entry {x} does not fit in i64")))
}

/// Basis of the right kernel `{x : m x = 0}`, one primitive integer vector per
/// free column, returned as the columns of a `cols × nullity` matrix.
pub fn nullspace(m: &Matrix) -> Result<Matrix> {
    let (a, pivots) = rref(m);
    let cols = m.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Matrix::zeros(cols, free.len());
    for (k, &f) in free.iter().enumerate() {
        let mut v = vec![BigRational::zero(); cols];
        v[f] = BigRational::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -a[r][f].clone();
        }
        for (i, x) in primitive(&v).iter().enumerate() {
            basis[(i, k)] = to_i64(x)?;
        }
    }
    Ok(basis)
}

/// Basis of the left kernel `{y : y m = 0}` as the rows of a
/// `nullity × rows` matrix. Its rows define a cokernel projection of `m`.
pub fn left_nullspace(m: &Matrix) -> Result<Matrix> {
    Ok(nullspace(&m.transpose())?.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank(&Matrix::zeros(3, 2)), 0);
        assert_eq!(rank(&Matrix::zeros(0, 4)), 0);
        assert_eq!(rank(&Matrix::identity(3)), 3);
        let m = Matrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]], 3);
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn nullspace_is_primitive_integer_basis() {
        let m = Matrix::from_rows(&[vec![2, 4, 6]], 3);
        let k = nullspace(&m).unwrap();
        assert_eq!(k.shape(), (3, 2));
        assert!(m.mul(&k).is_zero());
        // free columns 1 and 2: (-2, 1, 0) normalized to a positive last
        // nonzero entry, and (-3, 0, 1)
        assert_eq!(k.col_block(0, 1).transpose().row(0), &[-2, 1, 0]);
        assert_eq!(k.col_block(1, 2).transpose().row(0), &[-3, 0, 1]);
    }

    #[test]
    fn left_nullspace_kills_image() {
        let m = Matrix::from_rows(&[vec![1], vec![1]], 1);
        let c = left_nullspace(&m).unwrap();
        assert_eq!(c.shape(), (1, 2));
        assert!(c.mul(&m).is_zero());
    }

    #[test]
    fn empty_shapes() {
        let m = Matrix::zeros(0, 3);
        assert_eq!(nullspace(&m).unwrap().shape(), (3, 3));
        let m = Matrix::zeros(2, 0);
        assert_eq!(nullspace(&m).unwrap().shape(), (0, 0));
        assert_eq!(left_nullspace(&m).unwrap().shape(), (2, 2));
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (0usize..5, 0usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..=3, r * c).prop_map(move |d| Matrix {
                rows: r,
                cols: c,
                data: d,
            })
        })
    }

    proptest! {
        // Bareiss rank and the rational kernel are two independent routes.
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let k = nullspace(&m).unwrap();
            prop_assert_eq!(rank(&m) + k.cols(), m.cols());
            prop_assert!(m.mul(&k).is_zero());
            prop_assert_eq!(rank(&k), k.cols());
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
        }
    }
}
