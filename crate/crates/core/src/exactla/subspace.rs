use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::matrix::Matrix;

/// A linear subspace of `Q^n`, stored as the nonzero rows of its reduced
/// row echelon basis. Two subspaces are equal iff these matrices are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(ambient: usize, vectors: &[Vec<Scalar>]) -> Result<Self> {
        Ok(Self::row_space(&Matrix::from_rows(ambient, vectors)?))
    }

    pub fn row_space(m: &Matrix) -> Self {
        let r = m.rref();
        let rows: Vec<Vec<Scalar>> = (0..r.rank).map(|i| r.matrix.row(i).to_vec()).collect();
        Subspace {
            ambient: m.cols(),
            basis: Matrix::from_rows(m.cols(), &rows).expect("rows have matching length"),
            pivots: r.pivots,
        }
    }

    /// Right null space of `m`.
    pub fn kernel(m: &Matrix) -> Self {
        let vs = m.kernel_vectors();
        Self::span(m.cols(), &vs).expect("kernel vectors have matching length")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates outside the pivot columns; these index a fixed complement.
    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// `v` minus its component along the subspace in the pivot directions:
    /// the residual vanishes on every pivot column.
    pub fn reduce(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_len(v)?;
        let mut out = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let f = out[p].clone();
            if f.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(self.basis.row(i)) {
                if !b.is_zero() {
                    *o -= &f * b;
                }
            }
        }
        Ok(out)
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(Zero::is_zero))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        if other.ambient != self.ambient {
            return Err(Error::DimensionMismatch("subspaces in different ambient spaces".into()));
        }
        for v in other.basis_vectors() {
            if !self.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if other.ambient != self.ambient {
            return Err(Error::DimensionMismatch("subspaces in different ambient spaces".into()));
        }
        Ok(Self::row_space(&self.basis.vstack(&other.basis)?))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        // U ∩ W = (U^0 + W^0)^0
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    /// Annihilator in the dual space, in dual-basis coordinates.
    pub fn annihilator(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.ambient);
        }
        Self::kernel(&self.basis)
    }

    fn check_len(&self, v: &[Scalar]) -> Result<()> {
        if v.len() == self.ambient {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "vector of length {} in ambient dimension {}",
                v.len(),
                self.ambient
            )))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SubspaceJson {
    ambient: usize,
    basis: Matrix,
}

impl Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SubspaceJson {
            ambient: self.ambient,
            basis: self.basis.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SubspaceJson::deserialize(d)?;
        if j.basis.cols() != j.ambient {
            return Err(serde::de::Error::custom("basis width differs from ambient dimension"));
        }
        Ok(Subspace::row_space(&j.basis))
    }
}
