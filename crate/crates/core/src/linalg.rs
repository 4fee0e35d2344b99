//! Dense exact linear algebra: row reduction, kernels, affine solves.
//!
//! Pivoting is deterministic: columns are scanned left to right and the
//! first nonzero entry at or below the current row is taken as pivot.
//! Kernel bases come out ordered by free column index.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: fmt::Display> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self
            .data
            .chunks(self.cols.max(1))
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        f.debug_struct("Matrix")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("data", &rows)
            .finish()
    }
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, S::one())
    }

    pub fn scalar(n: usize, value: S) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = value.clone();
        }
        m
    }

    pub fn diagonal(values: &[S]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Dimension {
                what: "matrix row".into(),
                expected: cols,
                got: bad.len(),
            });
        }
        Ok(Matrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a `rows x cols` matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<S>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (r, v) in col.iter().enumerate() {
                m[(r, c)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<S> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
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

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension");
        let mut out = vec![S::zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let a = &self.data[r * self.cols + c];
                if !a.is_zero() {
                    *o = o.clone() + a.clone() * x.clone();
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, other.rows, "matrix product dimension");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        let cur = out[(r, c)].clone();
                        out[(r, c)] = cur + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix<S>) -> Matrix<S> {
        self.axpy(S::one(), other)
    }

    pub fn sub(&self, other: &Matrix<S>) -> Matrix<S> {
        self.axpy(-S::one(), other)
    }

    /// `self + alpha * other`.
    pub fn axpy(&self, alpha: S, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        if alpha.is_zero() {
            return out;
        }
        for (o, b) in out.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *o = o.clone() + alpha.clone() * b.clone();
            }
        }
        out
    }

    /// In-place `self += alpha * other`.
    pub fn add_assign_scaled(&mut self, alpha: &S, other: &Matrix<S>) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if alpha.is_zero() {
            return;
        }
        for (o, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *o = o.clone() + alpha.clone() * b.clone();
            }
        }
    }

    pub fn scale(&self, alpha: &S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * alpha.clone()).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Matrix<S> {
        assert!(self.is_square());
        (0..k).fold(Self::identity(self.rows), |acc, _| acc.mul(self))
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(r, c)] = self[(r, c)].clone();
            }
            for c in 0..other.cols {
                out[(r, self.cols + c)] = other[(r, c)].clone();
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        rref(self.clone()).pivots.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

impl<S> std::ops::Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (r, c): (usize, usize)) -> &S {
        &self.data[r * self.cols + c]
    }
}

impl<S> std::ops::IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut S {
        &mut self.data[r * self.cols + c]
    }
}

struct Rref<S> {
    m: Matrix<S>,
    pivots: Vec<usize>,
}

fn rref<S: Scalar>(mut m: Matrix<S>) -> Rref<S> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = m[(r, c)].recip();
        for j in c..cols {
            if !m[(r, j)].is_zero() {
                m[(r, j)] = m[(r, j)].clone() * inv.clone();
            }
        }
        for i in 0..rows {
            if i == r || m[(i, c)].is_zero() {
                continue;
            }
            let factor = m[(i, c)].clone();
            for j in c..cols {
                if !m[(r, j)].is_zero() {
                    m[(i, j)] = m[(i, j)].clone() - factor.clone() * m[(r, j)].clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { m, pivots }
}

/// Basis of the right null space. Each vector has a 1 in its free column.
pub fn kernel_basis<S: Scalar>(m: &Matrix<S>) -> Vec<Vec<S>> {
    let Rref { m: red, pivots } = rref(m.clone());
    kernel_from_rref(&red, &pivots, m.cols)
}

fn kernel_from_rref<S: Scalar>(red: &Matrix<S>, pivots: &[usize], cols: usize) -> Vec<Vec<S>> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![S::zero(); cols];
            v[free] = S::one();
            for (row, &p) in pivots.iter().enumerate() {
                let a = &red[(row, free)];
                if !a.is_zero() {
                    v[p] = -a.clone();
                }
            }
            v
        })
        .collect()
}

/// Particular solution (free variables set to zero) plus kernel basis.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineSolution<S> {
    pub particular: Vec<S>,
    pub kernel: Vec<Vec<S>>,
}

/// Solves `m x = b`; `None` when inconsistent.
pub fn solve_affine<S: Scalar>(m: &Matrix<S>, b: &[S]) -> Option<AffineSolution<S>> {
    assert_eq!(b.len(), m.rows, "right-hand side length");
    let cols = m.cols;
    let aug = m.hstack(&Matrix::from_columns(m.rows, &[b.to_vec()]));
    let Rref { m: red, pivots } = rref(aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut particular = vec![S::zero(); cols];
    for (row, &p) in pivots.iter().enumerate() {
        particular[p] = red[(row, cols)].clone();
    }
    let kernel_pivots: Vec<usize> = pivots.clone();
    let mut kernel = kernel_from_rref(&red, &kernel_pivots, cols + 1);
    // drop the augmented column's own free vector and truncate the rest
    kernel.retain(|v| v[cols].is_zero());
    for v in kernel.iter_mut() {
        v.truncate(cols);
    }
    Some(AffineSolution { particular, kernel })
}

/// Incrementally assembled homogeneous system. Rows that are entirely zero
/// are dropped; the column count is fixed up front.
pub struct LinearSystem<S> {
    cols: usize,
    rows: Vec<Vec<S>>,
    rhs: Vec<S>,
}

impl<S: Scalar> LinearSystem<S> {
    pub fn new(cols: usize) -> Self {
        LinearSystem {
            cols,
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn push(&mut self, row: Vec<S>, rhs: S) {
        assert_eq!(row.len(), self.cols);
        if row.iter().all(|x| x.is_zero()) && rhs.is_zero() {
            return;
        }
        self.rows.push(row);
        self.rhs.push(rhs);
    }

    /// Adds one row per output coordinate of a linear map given by its
    /// action on each unknown: `columns[u][r]` is coordinate `r` of the
    /// image of unknown `u`.
    pub fn push_columns(&mut self, columns: &[Vec<S>], rhs: Option<&[S]>) {
        assert_eq!(columns.len(), self.cols);
        let height = columns.first().map_or(rhs.map_or(0, <[S]>::len), Vec::len);
        for r in 0..height {
            let row: Vec<S> = columns.iter().map(|col| col[r].clone()).collect();
            let b = rhs.map_or_else(S::zero, |b| b[r].clone());
            self.push(row, b);
        }
    }

    fn matrix(&self) -> Matrix<S> {
        if self.rows.is_empty() {
            return Matrix::zeros(0, self.cols);
        }
        Matrix::from_rows(self.rows.clone()).expect("rows have fixed width")
    }

    pub fn kernel(&self) -> Vec<Vec<S>> {
        kernel_basis(&self.matrix())
    }

    pub fn solve(&self) -> Option<AffineSolution<S>> {
        solve_affine(&self.matrix(), &self.rhs)
    }
}

/// Linear combination `sum c_i v_i` of equal-length vectors.
pub fn combine<S: Scalar>(len: usize, terms: impl IntoIterator<Item = (S, Vec<S>)>) -> Vec<S> {
    let mut out = vec![S::zero(); len];
    for (c, v) in terms {
        add_scaled(&mut out, &c, &v);
    }
    out
}

/// `acc += c * v`.
pub fn add_scaled<S: Scalar>(acc: &mut [S], c: &S, v: &[S]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = a.clone() + c.clone() * x.clone();
        }
    }
}

pub fn is_zero_vec<S: Scalar>(v: &[S]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn unit<S: Scalar>(len: usize, i: usize) -> Vec<S> {
    let mut v = vec![S::zero(); len];
    v[i] = S::one();
    v
}
