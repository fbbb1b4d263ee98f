//! Dense row-major matrices over an exact ring.

use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::scalar::{Field, Ring};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Operation tag for [`mat_arith`].
#[derive(Clone, Debug)]
pub enum MatOp<T> {
    Add,
    Sub,
    Mul,
    Commutator,
    /// Multiply the left operand by a scalar; the right operand is ignored.
    Scale(T),
}

/// Exact arithmetic between two matrices selected by an operation tag.
pub fn mat_arith<T: Ring>(op: MatOp<T>, a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    match op {
        MatOp::Add => a.try_add(b),
        MatOp::Sub => a.try_sub(b),
        MatOp::Mul => a.try_mul(b),
        MatOp::Commutator => a.commutator(b),
        MatOp::Scale(s) => Ok(a.scale(&s)),
    }
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn scalar(n: usize, s: T) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = s.clone();
        }
        m
    }

    pub fn diag(entries: Vec<T>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds from nested rows; `cols` disambiguates the empty case.
    pub fn from_rows_with_cols(rows: Vec<Vec<T>>, cols: usize) -> Result<Self> {
        let r = rows.len();
        if rows.iter().any(|row| row.len() != cols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(Self { rows: r, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, cols)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn column(v: Vec<T>) -> Self {
        let n = v.len();
        Self { rows: n, cols: 1, data: v }
    }

    pub fn row(v: Vec<T>) -> Self {
        let n = v.len();
        Self { rows: 1, cols: n, data: v }
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn row_slice(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col_vec(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row_slice(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| s.clone() * x.clone())
    }

    fn check_same(&self, o: &Self, what: &str) -> Result<()> {
        if self.shape() != o.shape() {
            return Err(Error::ShapeMismatch(format!(
                "{what}: {:?} vs {:?}",
                self.shape(),
                o.shape()
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check_same(o, "add")?;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.check_same(o, "sub")?;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.clone() - b.clone()).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::ShapeMismatch(format!(
                "mul: {:?} x {:?}",
                self.shape(),
                o.shape()
            )));
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        let v = out[(i, j)].clone() + a.clone() * b.clone();
                        out[(i, j)] = v;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `AB − BA`.
    pub fn commutator(&self, o: &Self) -> Result<Self> {
        self.try_mul(o)?.try_sub(&o.try_mul(self)?)
    }

    /// Panicking arithmetic for internal code where shapes are known.
    pub fn add(&self, o: &Self) -> Self {
        self.try_add(o).expect("conformable shapes")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.try_sub(o).expect("conformable shapes")
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.try_mul(o).expect("conformable shapes")
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    /// Sub-block `[r0, r0+nr) x [c0, c0+nc)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        Self::from_fn(nr, nc, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn hstack(parts: &[&Self]) -> Result<Self> {
        let rows = parts.first().map_or(0, |m| m.rows);
        if parts.iter().any(|m| m.rows != rows) {
            return Err(Error::ShapeMismatch("hstack row counts differ".into()));
        }
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut c0 = 0;
        for m in parts {
            for i in 0..rows {
                for j in 0..m.cols {
                    out[(i, c0 + j)] = m[(i, j)].clone();
                }
            }
            c0 += m.cols;
        }
        Ok(out)
    }

    pub fn vstack(parts: &[&Self]) -> Result<Self> {
        let cols = parts.first().map_or(0, |m| m.cols);
        if parts.iter().any(|m| m.cols != cols) {
            return Err(Error::ShapeMismatch("vstack column counts differ".into()));
        }
        let rows = parts.iter().map(|m| m.rows).sum();
        let data = parts.iter().flat_map(|m| m.data.iter().cloned()).collect();
        Ok(Self { rows, cols, data })
    }

    /// Block-diagonal sum.
    pub fn direct_sum(a: &Self, b: &Self) -> Self {
        let mut out = Self::zeros(a.rows + b.rows, a.cols + b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                out[(i, j)] = a[(i, j)].clone();
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                out[(a.rows + i, a.cols + j)] = b[(i, j)].clone();
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                self.row_slice(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn det2(&self) -> T {
        assert_eq!(self.shape(), (2, 2));
        self[(0, 0)].clone() * self[(1, 1)].clone() - self[(0, 1)].clone() * self[(1, 0)].clone()
    }
}

impl<T: Field> Matrix<T> {
    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("non-zero pivot");
            for j in 0..m.cols {
                let v = m[(r, j)].clone() * inv.clone();
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in 0..m.cols {
                        let v = m[(i, j)].clone() - f.clone() * m[(r, j)].clone();
                        m[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r[(row, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Self::hstack(&[self, &Self::identity(n)]).ok()?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.block(0, n, n, n))
    }
}

impl<T> Matrix<T> {
    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Row-major nested arrays; an `r x 0` matrix serializes as `r` empty rows.
impl<T: Serialize> Serialize for Matrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<&[T]> = (0..self.rows)
            .map(|i| &self.data[i * self.cols..(i + 1) * self.cols])
            .collect();
        rows.serialize(s)
    }
}

impl<'de, T: Ring + Deserialize<'de>> Deserialize<'de> for Matrix<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<T>> = Vec::deserialize(d)?;
        Matrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}
