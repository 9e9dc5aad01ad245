//! Dense row-major matrices. Entries are exact rationals by default; the
//! same container holds polynomial entries for resolvents and transfer
//! functions.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

use super::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T = Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Matrix with polynomial entries.
pub type PolyMatrix = Matrix<Poly>;

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Ring operations needed by the generic matrix routines.
pub trait Ring:
    Clone + Zero + One + PartialEq + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + Zero
        + One
        + PartialEq
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

impl<T: Clone> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors, all of length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<T>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {cols} columns",
                    r.len()
                )));
            }
            data.extend(r.iter().cloned());
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
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

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Stacks `self` on top of `below`.
    pub fn vstack(&self, below: &Self) -> Result<Self> {
        if self.cols != below.cols {
            return Err(Error::DimensionMismatch("vstack column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend(below.data.iter().cloned());
        Ok(Matrix {
            rows: self.rows + below.rows,
            cols: self.cols,
            data,
        })
    }

    /// Places `right` next to `self`.
    pub fn hstack(&self, right: &Self) -> Result<Self> {
        if self.rows != right.rows {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        Ok(Matrix::from_fn(self.rows, self.cols + right.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                right.get(i, j - self.cols).clone()
            }
        }))
    }
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Matrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).clone() + other.get(i, j).clone()
        }))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Matrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).clone() - other.get(i, j).clone()
        }))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                acc = acc + a.clone() * other.get(k, j).clone();
            }
            acc
        }))
    }

    pub fn trace(&self) -> Result<T> {
        self.check_square()?;
        Ok((0..self.rows).fold(T::zero(), |acc, i| acc + self.get(i, i).clone()))
    }

    /// Determinant by cofactor expansion along the first row. Works over any
    /// commutative ring; intended for small matrices (polynomial entries).
    pub fn det_cofactor(&self) -> Result<T> {
        self.check_square()?;
        let idx: Vec<usize> = (0..self.cols).collect();
        Ok(self.cofactor_rec(0, &idx))
    }

    fn cofactor_rec(&self, row: usize, cols: &[usize]) -> T {
        match cols.len() {
            0 => T::one(),
            1 => self.get(row, cols[0]).clone(),
            _ => {
                let mut acc = T::zero();
                for (k, &c) in cols.iter().enumerate() {
                    let a = self.get(row, c);
                    if a.is_zero() {
                        continue;
                    }
                    let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let term = a.clone() * self.cofactor_rec(row + 1, &rest);
                    acc = if k % 2 == 0 { acc + term } else { acc - term };
                }
                acc
            }
        }
    }

    pub(crate) fn check_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows == other.rows && self.cols == other.cols {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )))
        }
    }
}

impl Matrix<Scalar> {
    pub fn from_ints(rows: usize, cols: usize, v: &[i64]) -> Result<Self> {
        Matrix::from_vec(rows, cols, v.iter().map(|&x| scalar::int(x)).collect())
    }

    pub fn diagonal(d: &[Scalar]) -> Self {
        let n = d.len();
        Matrix::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { Scalar::zero() })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Exact Gauss-Jordan reduction. The pivot in each column is the first
    /// nonzero entry at or below the current row.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: m,
            rank: r,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right null space, one vector per free column: the free
    /// variable set to 1, the others to 0.
    pub fn kernel_vectors(&self) -> Vec<Vec<Scalar>> {
        let Rref { matrix, pivots, .. } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = scalar::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -matrix.get(i, f).clone();
                }
                v
            })
            .collect()
    }

    /// Solves `self * x = b`. Returns a particular solution (free variables
    /// zero) and a basis of the homogeneous solutions, or `None` when the
    /// system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<(Vec<Scalar>, Vec<Vec<Scalar>>)>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let rhs = Matrix::from_fn(self.rows, 1, |i, _| b[i].clone());
        let aug = self.hstack(&rhs)?;
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = matrix.get(i, self.cols).clone();
        }
        Ok(Some((x, self.kernel_vectors())))
    }

    /// Determinant by fraction-exact Gaussian elimination.
    pub fn determinant(&self) -> Result<Scalar> {
        self.check_square()?;
        let mut m = self.clone();
        let n = m.rows;
        let mut det = scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(Scalar::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det *= &piv;
            for i in c + 1..n {
                let f = m.get(i, c) / &piv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j) - &f * m.get(c, j);
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Self> {
        self.check_square()?;
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(n))?;
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular(format!("{n}x{n} matrix is not invertible")));
        }
        Ok(Matrix::from_fn(n, n, |i, j| matrix.get(i, n + j).clone()))
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (i..self.cols).all(|j| *self.get(i, j) == -self.get(j, i).clone()))
    }

    /// Pfaffian of a skew-symmetric matrix of even size, by recursive
    /// expansion along the first row.
    pub fn pfaffian(&self) -> Result<Scalar> {
        if !self.is_skew_symmetric() || !self.rows.is_multiple_of(2) {
            return Err(Error::NotSkewEven);
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.pfaffian_rec(&idx))
    }

    fn pfaffian_rec(&self, idx: &[usize]) -> Scalar {
        if idx.is_empty() {
            return scalar::one();
        }
        let first = idx[0];
        let mut acc = Scalar::zero();
        for k in 1..idx.len() {
            let a = self.get(first, idx[k]);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx[1..]
                .iter()
                .enumerate()
                .filter(|&(j, _)| j + 1 != k)
                .map(|(_, &x)| x)
                .collect();
            let term = a * self.pfaffian_rec(&rest);
            // sign (-1)^(k+1) for the k-th partner, 0-based
            if k % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Matrix<Poly> {
    /// Applies `f` entrywise to coefficients of degree `k`, giving the
    /// scalar matrix of `s^k` coefficients.
    pub fn coefficient(&self, k: usize) -> Matrix {
        self.map(|p| p.coeff(k))
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.data.iter().filter_map(Poly::degree).max()
    }

    pub fn from_scalar(m: &Matrix) -> Self {
        m.map(|x| Poly::constant(x.clone()))
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    #[serde(with = "scalar::serde_scalars")]
    data: Vec<Scalar>,
}

impl Serialize for Matrix<Scalar> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            data: self.data.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix<Scalar> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MatrixJson::deserialize(d)?;
        Matrix::from_vec(j.rows, j.cols, j.data).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize)]
struct PolyMatrixJson<'a> {
    rows: usize,
    cols: usize,
    data: &'a [Poly],
}

impl Serialize for Matrix<Poly> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyMatrixJson {
            rows: self.rows,
            cols: self.cols,
            data: &self.data,
        }
        .serialize(s)
    }
}
