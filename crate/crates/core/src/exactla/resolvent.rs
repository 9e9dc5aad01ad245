//! Adjugate and characteristic polynomial of `sI - A` by the
//! Faddeev-LeVerrier recurrence.

use num_traits::Zero;

use crate::error::Result;
use crate::scalar::{self, Scalar};

use super::matrix::{Matrix, PolyMatrix};
use super::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolvent {
    /// `adj(sI - A)`
    pub adjugate: PolyMatrix,
    /// `det(sI - A)`, monic of degree N
    pub charpoly: Poly,
}

/// With `B_0 = I` and `c_N = 1`:
/// `c_{N-k} = -tr(A B_{k-1}) / k` and `B_k = A B_{k-1} + c_{N-k} I`.
/// Then `adj(sI - A) = sum_k B_k s^{N-1-k}`.
pub fn resolvent(a: &Matrix) -> Result<Resolvent> {
    a.check_square()?;
    let n = a.rows();
    if n == 0 {
        return Ok(Resolvent {
            adjugate: PolyMatrix::zeros(0, 0),
            charpoly: Poly::constant(scalar::one()),
        });
    }
    let mut c = vec![Scalar::zero(); n + 1];
    c[n] = scalar::one();
    let mut bs: Vec<Matrix> = Vec::with_capacity(n);
    bs.push(Matrix::identity(n));
    for k in 1..=n {
        let ab = a.try_mul(&bs[k - 1])?;
        c[n - k] = -ab.trace()? / scalar::int(k as i64);
        if k < n {
            let next = ab.try_add(&Matrix::identity(n).scale(&c[n - k]))?;
            bs.push(next);
        }
    }
    let adjugate = PolyMatrix::from_fn(n, n, |i, j| {
        let mut coeffs = vec![Scalar::zero(); n];
        for (k, b) in bs.iter().enumerate() {
            coeffs[n - 1 - k] = b.get(i, j).clone();
        }
        Poly::new(coeffs)
    });
    Ok(Resolvent {
        adjugate,
        charpoly: Poly::new(c),
    })
}

/// `det(sI - A)`.
pub fn charpoly(a: &Matrix) -> Result<Poly> {
    Ok(resolvent(a)?.charpoly)
}
