//! Dense Gaussian elimination over any [`Scalar`] field.
//!
//! Over [`crate::Rational`] every routine is exact and pivots on the first
//! nonzero entry of a column, so the lowest row index leads. Over floating
//! types the largest-magnitude entry is chosen and entries below a scaled
//! tolerance count as zero.

use std::ops::{Index, IndexMut};

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must share a length; an
    /// empty list gives a `0 x cols` matrix.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(r, c)] = out[(r, c)].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    fn scale(&self) -> f64 {
        self.data.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn pick_pivot(&self, col: usize, from: usize, scale: f64) -> Option<usize> {
        if T::EXACT {
            (from..self.rows).find(|&r| !self[(r, col)].is_zero())
        } else {
            let best = (from..self.rows).max_by(|&a, &b| {
                self[(a, col)]
                    .magnitude()
                    .partial_cmp(&self[(b, col)].magnitude())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })?;
            (!self[(best, col)].negligible(scale)).then_some(best)
        }
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let scale = self.scale();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = m.pick_pivot(col, row, scale) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = T::one() / m[(row, col)].clone();
            for c in col..m.cols {
                m[(row, c)] = m[(row, c)].clone() * inv.clone();
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let f = m[(r, col)].clone();
                if f.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = m[(row, c)].clone();
                    if !v.is_zero() {
                        m[(r, c)] = m[(r, c)].clone() - f.clone() * v;
                    }
                }
                if !T::EXACT {
                    m[(r, col)] = T::zero();
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Nonzero rows of the reduced echelon form: a canonical basis of the
    /// row space.
    pub fn row_space(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
    }

    /// Basis of `{ v : A v = 0 }`, one vector per free column, each with a
    /// unit entry in its free column.
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![T::zero(); self.cols];
            v[free] = T::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[(i, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `A x = b` (free variables set to zero), or `None`
    /// when the system is inconsistent.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, self.cols)] = b[r].clone();
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![T::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = red[(i, self.cols)].clone();
        }
        Some(x)
    }

    /// Determinant by elimination; the matrix must be square.
    pub fn determinant(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let scale = self.scale();
        let mut det = T::one();
        for col in 0..m.cols {
            let Some(p) = m.pick_pivot(col, col, scale) else {
                return T::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let piv = m[(col, col)].clone();
            det = det * piv.clone();
            for r in col + 1..m.rows {
                let f = m[(r, col)].clone() / piv.clone();
                if f.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = m[(col, c)].clone();
                    m[(r, c)] = m[(r, c)].clone() - f.clone() * v;
                }
            }
        }
        det
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.data[r * self.cols + c]
    }
}

/// Canonical (reduced echelon) basis of the span of `vectors`, all of
/// length `dim`.
pub fn span_basis<T: Scalar>(vectors: &[Vec<T>], dim: usize) -> Vec<Vec<T>> {
    Matrix::from_rows(vectors.to_vec(), dim).row_space()
}
