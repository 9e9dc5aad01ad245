//! Seeded sampling of small rational data.
//!
//! All randomness goes through PCG32 (`Lcg64Xsh32`: the 64-bit LCG with
//! multiplier 6364136223846793005 and XSH-RR output), so a seed and stream
//! reproduce the same draws in any implementation of that generator.
//! Integers are drawn as `lo + next_u32() % (hi - lo + 1)`.

use rand_core::Rng;
use rand_pcg::Pcg32;

use crate::exactla::{Matrix, Subspace};
use crate::exalg::{subsets, Multivector};
use crate::scalar::{self, Scalar};

pub struct Sampler {
    rng: Pcg32,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self::with_stream(seed, 0)
    }

    /// Independent stream for per-trial sampling.
    pub fn with_stream(seed: u64, stream: u64) -> Self {
        Sampler {
            rng: Pcg32::new(seed, stream),
        }
    }

    /// Uniform-ish integer in `lo..=hi`.
    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo + 1) as u64;
        lo + (self.rng.next_u32() as u64 % span) as i64
    }

    pub fn nonzero_int(&mut self, bound: i64) -> i64 {
        loop {
            let x = self.int(-bound, bound);
            if x != 0 {
                return x;
            }
        }
    }

    pub fn scalar(&mut self, bound: i64) -> Scalar {
        scalar::int(self.int(-bound, bound))
    }

    pub fn nonzero_scalar(&mut self, bound: i64) -> Scalar {
        scalar::int(self.nonzero_int(bound))
    }

    pub fn vector(&mut self, n: usize, bound: i64) -> Vec<Scalar> {
        (0..n).map(|_| self.scalar(bound)).collect()
    }

    pub fn matrix(&mut self, rows: usize, cols: usize, bound: i64) -> Matrix {
        Matrix::from_fn(rows, cols, |_, _| self.scalar(bound))
    }

    /// Random invertible `n x n` integer matrix.
    pub fn gl(&mut self, n: usize, bound: i64) -> Matrix {
        loop {
            let g = self.matrix(n, n, bound);
            if g.rank() == n {
                return g;
            }
        }
    }

    /// Random `k`-dimensional subspace of `Q^n`.
    pub fn subspace(&mut self, k: usize, n: usize, bound: i64) -> Subspace {
        loop {
            let m = self.matrix(k, n, bound);
            if m.rank() == k {
                return Subspace::row_space(&m);
            }
        }
    }

    /// Random element of `∧^k Q^n` with coefficients in `-bound..=bound`.
    pub fn multivector(&mut self, n: usize, k: usize, bound: i64) -> Multivector {
        let coords: Vec<Scalar> = subsets(n, k).iter().map(|_| self.scalar(bound)).collect();
        Multivector::from_coords(n, k, &coords).expect("coordinate count matches")
    }

    /// Random skew matrix with nonzero Pfaffian, returned as a 2-form.
    pub fn symplectic(&mut self, n: usize, bound: i64) -> Multivector {
        loop {
            let s = self.multivector(n, 2, bound);
            if crate::grass::skew_matrix(&s).pfaffian().is_ok_and(|p| p != scalar::zero()) {
                return s;
            }
        }
    }

    /// Random combination of `vectors` with nonzero coefficients.
    pub fn combination(&mut self, vectors: &[Multivector], bound: i64) -> Multivector {
        let mut acc = Multivector::zero(vectors[0].dim(), vectors[0].grade());
        for v in vectors {
            acc = &acc + &v.scale(&self.nonzero_scalar(bound));
        }
        acc
    }
}
