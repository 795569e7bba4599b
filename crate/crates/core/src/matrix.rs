//! Dense matrices over the max-times semiring `(R+, max, *)`.
//!
//! Indices on [`Matrix`] are 0-based row/column positions. Node-labelled
//! access (1-based) lives on [`crate::MlCoefficientMatrix`].

use std::fmt::Write as _;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::weight::{Tolerance, Weight};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Weight> Matrix<T> {
    /// Builds a matrix from row-major entries, rejecting negative entries.
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::EntryCount { rows, cols, got: data.len() });
        }
        if let Some(pos) = data.iter().position(|x| !x.is_admissible()) {
            return Err(Error::NegativeEntry { row: pos / cols.max(1), col: pos % cols.max(1) });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != m) {
            return Err(Error::Parse(format!("ragged rows: expected {m} columns, found {}", bad.len())));
        }
        Matrix::new(n, m, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(d: usize) -> Self {
        Self::diagonal(vec![T::one(); d])
    }

    pub fn diagonal(diag: Vec<T>) -> Self {
        let d = diag.len();
        let mut m = Self::zeros(d, d);
        for (i, v) in diag.into_iter().enumerate() {
            m.data[i * d + i] = v;
        }
        m
    }

    /// Builds a matrix entry by entry from a closure over `(row, col)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix::new(rows, cols, data)
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

    pub fn get(&self, row: usize, col: usize) -> &T {
        &self.data[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[T] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks(self.cols.max(1)).take(self.rows)
    }

    /// Copy of `self` with a single entry replaced.
    pub fn with_entry(&self, row: usize, col: usize, value: T) -> Result<Self> {
        if !value.is_admissible() {
            return Err(Error::NegativeEntry { row, col });
        }
        let mut out = self.clone();
        out.data[row * self.cols + col] = value;
        Ok(out)
    }

    pub fn map<U: Weight>(&self, f: impl Fn(&T) -> U) -> Result<Matrix<U>> {
        Matrix::new(self.rows, self.cols, self.data.iter().map(f).collect())
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Weight::is_zero)
    }

    /// 0/1 sign pattern.
    pub fn sign(&self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|x| if x.is_zero() { T::zero() } else { T::one() })
                .collect(),
        }
    }

    /// Max-times product: `(F ⊙ G)[i][j] = max_k F[i][k] * G[k][j]`.
    pub fn max_times(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "max_times_product",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let f = self.get(i, k);
                if f.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let g = other.get(k, j);
                    if g.is_zero() {
                        continue;
                    }
                    let p = f.mul(g);
                    let slot = &mut out.data[i * other.cols + j];
                    if p > *slot {
                        *slot = p;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `A^⊙0 = id`, `A^⊙n = A^⊙(n-1) ⊙ A`.
    pub fn max_times_power(&self, n: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..n {
            acc = acc.max_times(self)?;
        }
        Ok(acc)
    }

    /// Entrywise maximum `F ∨ G`.
    pub fn join(&self, other: &Self) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op: "elementwise_max",
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone().max(b.clone()))
                .collect(),
        })
    }

    /// Row vector times matrix: `(z ⊙ M)[j] = max_i z[i] * M[i][j]`.
    pub fn left_apply(&self, z: &[T]) -> Result<Vec<T>> {
        if z.len() != self.rows {
            return Err(Error::DimensionMismatch {
                op: "max_times_vector",
                left: (1, z.len()),
                right: self.shape(),
            });
        }
        if let Some(pos) = z.iter().position(|x| !x.is_admissible()) {
            return Err(Error::NegativeEntry { row: 0, col: pos });
        }
        let mut out = vec![T::zero(); self.cols];
        for (i, zi) in z.iter().enumerate() {
            if zi.is_zero() {
                continue;
            }
            for (j, slot) in out.iter_mut().enumerate() {
                let p = zi.mul(self.get(i, j));
                if p > *slot {
                    *slot = p;
                }
            }
        }
        Ok(out)
    }

    pub fn approx_eq(&self, other: &Self, tol: &Tolerance) -> bool {
        self.shape() == other.shape()
            && self.data.iter().zip(&other.data).all(|(a, b)| a.approx_eq(b, tol))
    }

    /// Entrywise `self <= other`.
    pub fn le(&self, other: &Self) -> bool {
        self.shape() == other.shape() && self.data.iter().zip(&other.data).all(|(a, b)| a <= b)
    }

    /// One row per line, entries separated by commas.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in self.iter_rows() {
            let line = row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            let _ = writeln!(out, "{line}");
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| l.split(',').map(T::parse).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(rows)
    }

    /// Nested JSON arrays, one inner array per row.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.iter_rows()
                .map(|row| Value::Array(row.iter().map(Weight::to_json).collect()))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let rows = v
            .as_array()
            .ok_or_else(|| Error::Schema("matrix must be an array of rows".into()))?;
        let rows = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| Error::Schema("matrix row must be an array".into()))?
                    .iter()
                    .map(T::from_json)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(rows)
    }
}
