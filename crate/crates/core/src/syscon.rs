//! Static output feedback: transfer functions, Hermann–Martin curves and the
//! pole placement map as a linear projection of `Gr_p Q^{m+p}`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{charpoly, resolvent, Matrix, Poly, PolyMatrix, Subspace};
use crate::exalg::{subsets, top_pairing, Multivector};
use crate::grass::{is_decomposable, pluecker, Center};
use crate::rng::Sampler;
use crate::scalar::Scalar;

/// `ẋ = Ax + Bu`, `y = Cx`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Realization {
    #[serde(rename = "A")]
    a: Matrix,
    #[serde(rename = "B")]
    b: Matrix,
    #[serde(rename = "C")]
    c: Matrix,
}

impl Realization {
    pub fn new(a: Matrix, b: Matrix, c: Matrix) -> Result<Self> {
        let n = a.rows();
        if a.cols() != n || b.rows() != n || c.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "A is {}x{}, B is {}x{}, C is {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols(),
                c.rows(),
                c.cols()
            )));
        }
        Ok(Realization { a, b, c })
    }

    /// `(A, B, Bᵀ)`; `A` must be symmetric.
    pub fn symmetric(a: Matrix, b: Matrix) -> Result<Self> {
        if a != a.transpose() {
            return Err(Error::Inconsistent("A is not symmetric".into()));
        }
        let c = b.transpose();
        Self::new(a, b, c)
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &Matrix {
        &self.b
    }

    pub fn c(&self) -> &Matrix {
        &self.c
    }

    /// State dimension `N`.
    pub fn states(&self) -> usize {
        self.a.rows()
    }

    pub fn inputs(&self) -> usize {
        self.b.cols()
    }

    pub fn outputs(&self) -> usize {
        self.c.rows()
    }

    /// Rank of `[B, AB, ..., A^{N-1}B]`.
    pub fn controllability_rank(&self) -> usize {
        krylov_rank(&self.a, &self.b)
    }

    /// Rank of `[C; CA; ...; CA^{N-1}]`.
    pub fn observability_rank(&self) -> usize {
        krylov_rank(&self.a.transpose(), &self.c.transpose())
    }

    pub fn is_minimal(&self) -> bool {
        let n = self.states();
        self.controllability_rank() == n && self.observability_rank() == n
    }
}

fn krylov_rank(a: &Matrix, b: &Matrix) -> usize {
    let mut blocks = b.clone();
    let mut cur = b.clone();
    for _ in 1..a.rows() {
        cur = a.try_mul(&cur).expect("compatible");
        blocks = blocks.hstack(&cur).expect("same rows");
    }
    blocks.rank()
}

impl<'de> Deserialize<'de> for Realization {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            #[serde(rename = "A")]
            a: Matrix,
            #[serde(rename = "B")]
            b: Matrix,
            #[serde(rename = "C")]
            c: Matrix,
        }
        let r = Raw::deserialize(d)?;
        Realization::new(r.a, r.b, r.c).map_err(serde::de::Error::custom)
    }
}

/// `G(s) = num(s) / den(s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferFunction {
    /// `C adj(sI - A) B`
    pub num: PolyMatrix,
    /// `det(sI - A)`
    pub den: Poly,
}

pub fn transfer_function(s: &Realization) -> Result<TransferFunction> {
    let r = resolvent(&s.a)?;
    let num = PolyMatrix::from_scalar(&s.c)
        .try_mul(&r.adjugate)?
        .try_mul(&PolyMatrix::from_scalar(&s.b))?;
    Ok(TransferFunction { num, den: r.charpoly })
}

/// A primitive polynomial curve in `∧^m Q^{m+p}`, stored by coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HermannMartinCurve {
    pub dim: usize,
    pub grade: usize,
    /// One polynomial per lexicographic `m`-subset.
    pub coords: Vec<Poly>,
}

impl HermannMartinCurve {
    fn from_coords(dim: usize, grade: usize, coords: Vec<Poly>) -> Result<Self> {
        let g = coords.iter().try_fold(Poly::zero(), |g, c| {
            if c.is_zero() {
                Ok(g)
            } else {
                g.gcd(c)
            }
        })?;
        if g.is_zero() {
            return Err(Error::ZeroInput);
        }
        let coords = coords
            .iter()
            .map(|c| c.exact_div(&g).map(|q| q.expect("content divides")))
            .collect::<Result<_>>()?;
        Ok(HermannMartinCurve { dim, grade, coords })
    }

    pub fn degree(&self) -> usize {
        self.coords.iter().filter_map(Poly::degree).max().unwrap_or(0)
    }

    /// The coefficient of `s^k` as a multivector.
    pub fn coefficient(&self, k: usize) -> Multivector {
        let c: Vec<Scalar> = self.coords.iter().map(|p| p.coeff(k)).collect();
        Multivector::from_coords(self.dim, self.grade, &c).expect("coordinate count")
    }

    pub fn coefficients(&self) -> Vec<Multivector> {
        (0..=self.degree()).map(|k| self.coefficient(k)).collect()
    }

    /// `(∧^m g) · curve`, content removed again.
    pub fn transform(&self, g: &Matrix) -> Result<Self> {
        let coeffs = self
            .coefficients()
            .iter()
            .map(|c| c.transform(g))
            .collect::<Result<Vec<_>>>()?;
        let coords = (0..self.coords.len())
            .map(|i| Poly::new(coeffs.iter().map(|c| c.coords()[i].clone()).collect()))
            .collect();
        Self::from_coords(self.dim, self.grade, coords)
    }

    /// Whether the two curves agree up to a nonzero constant.
    pub fn is_proportional(&self, other: &Self) -> bool {
        if (self.dim, self.grade) != (other.dim, other.grade) {
            return false;
        }
        proportional_polys(&self.coords, &other.coords)
    }

    /// `s ↦ <curve(s), w>` under the top pairing, for `w ∈ ∧^p Q^{m+p}`.
    pub fn pair(&self, w: &Multivector) -> Result<Poly> {
        let cs = self
            .coefficients()
            .iter()
            .map(|c| top_pairing(c, w))
            .collect::<Result<_>>()?;
        Ok(Poly::new(cs))
    }
}

fn proportional_polys(a: &[Poly], b: &[Poly]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some(i) = a.iter().position(|p| !p.is_zero()) else {
        return false;
    };
    let Some(r) = b[i].leading().map(|lb| lb / a[i].leading().expect("nonzero")) else {
        return false;
    };
    a.iter().zip(b).all(|(x, y)| &x.scale(&r) == y)
}

/// Plücker curve of the column span of `[den·I_m; num]`.
pub fn hermann_martin(s: &Realization) -> Result<HermannMartinCurve> {
    let tf = transfer_function(s)?;
    let (m, p) = (s.inputs(), s.outputs());
    let top = PolyMatrix::identity(m).scale(&tf.den);
    let stacked = top.vstack(&tf.num)?;
    let cols: Vec<usize> = (0..m).collect();
    let coords = subsets(m + p, m)
        .iter()
        .map(|rows| {
            let r: Vec<usize> = rows.as_slice().iter().map(|i| i - 1).collect();
            stacked.submatrix(&r, &cols).det_cofactor()
        })
        .collect::<Result<_>>()?;
    HermannMartinCurve::from_coords(m + p, m, coords)
}

/// `X_Σ ⊂ ∧^m` and its top-pairing annihilator `Z ⊂ ∧^p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoleCenter {
    pub dim: usize,
    pub inputs: usize,
    pub outputs: usize,
    pub x: Subspace,
    pub z: Subspace,
    /// `Z ≠ 0` and no sampled element of `Z` is decomposable.
    pub proper: bool,
}

impl PoleCenter {
    pub fn center(&self) -> Result<Center> {
        Center::from_subspace(self.dim, self.outputs, self.z.clone())
    }
}

const SAMPLES: usize = 20;

pub fn pp_center(s: &Realization, seed: u64) -> Result<PoleCenter> {
    let curve = hermann_martin(s)?;
    let (m, p) = (s.inputs(), s.outputs());
    let n = m + p;
    let coeffs: Vec<Vec<Scalar>> = curve.coefficients().iter().map(Multivector::coords).collect();
    let x = Subspace::span(coeffs[0].len(), &coeffs)?;
    let duals: Vec<Multivector> = subsets(n, p).iter().map(|t| Multivector::e(n, t.as_slice())).collect();
    let rows: Vec<Vec<Scalar>> = x
        .basis_vectors()
        .iter()
        .map(|v| {
            let xv = Multivector::from_coords(n, m, v)?;
            duals.iter().map(|d| top_pairing(&xv, d)).collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let z = if rows.is_empty() {
        Subspace::full(duals.len())
    } else {
        Subspace::kernel(&Matrix::from_rows(duals.len(), &rows)?)
    };
    let proper = !z.is_zero() && {
        let basis: Vec<Multivector> = z
            .basis_vectors()
            .iter()
            .map(|v| Multivector::from_coords(n, p, v))
            .collect::<Result<_>>()?;
        let mut rng = Sampler::new(seed);
        let samples: Vec<Multivector> = (0..SAMPLES).map(|_| rng.combination(&basis, 5)).collect();
        basis
            .iter()
            .chain(&samples)
            .all(|w| w.is_zero() || is_decomposable(w).is_none())
    };
    Ok(PoleCenter {
        dim: n,
        inputs: m,
        outputs: p,
        x,
        z,
        proper,
    })
}

/// `P_Σ(K) = det(sI - (A + BKC))`.
pub fn pole_placement_poly(s: &Realization, k: &Matrix) -> Result<Poly> {
    if k.rows() != s.inputs() || k.cols() != s.outputs() {
        return Err(Error::DimensionMismatch(format!(
            "K must be {}x{}, got {}x{}",
            s.inputs(),
            s.outputs(),
            k.rows(),
            k.cols()
        )));
    }
    charpoly(&s.a.try_add(&s.b.try_mul(k)?.try_mul(&s.c)?)?)
}

/// Plücker vector of the column span of `[K; I_p]` in `∧^p Q^{m+p}`.
pub fn gain_point(k: &Matrix) -> Result<Multivector> {
    let stacked = k.vstack(&Matrix::identity(k.cols()))?;
    Ok(pluecker(&stacked.transpose().row_vecs())?.vector().clone())
}

/// `(R^{-1}(A + BQT^{-1}C)R, R^{-1}BW, T^{-1}CR)`.
pub fn feedback_transform(
    s: &Realization,
    r: &Matrix,
    w: &Matrix,
    t: &Matrix,
    q: &Matrix,
) -> Result<Realization> {
    let (ri, ti) = (r.inverse()?, t.inverse()?);
    w.inverse()?;
    let inner = s.a.try_add(&s.b.try_mul(q)?.try_mul(&ti)?.try_mul(&s.c)?)?;
    Realization::new(
        ri.try_mul(&inner)?.try_mul(r)?,
        ri.try_mul(&s.b)?.try_mul(w)?,
        ti.try_mul(&s.c)?.try_mul(r)?,
    )
}

/// The element of `GL_{m+p}` carrying the Hermann–Martin curve of `Σ` to
/// that of its feedback transform: the inverse of `[[W, Q], [0, T]]`, since
/// `(u, y) = (Wũ + Qỹ, Tỹ)`.
pub fn curve_equivalence(w: &Matrix, t: &Matrix, q: &Matrix) -> Result<Matrix> {
    let (wi, ti) = (w.inverse()?, t.inverse()?);
    let upper_right = wi.try_mul(q)?.try_mul(&ti)?.scale(&-Scalar::one());
    let top = wi.hstack(&upper_right)?;
    let bottom = Matrix::zeros(t.rows(), w.cols()).hstack(&ti)?;
    top.vstack(&bottom)
}

/// `Aᵀ = A` and `C = Bᵀ`.
pub fn is_symmetric(s: &Realization) -> Result<bool> {
    if s.inputs() != s.outputs() {
        return Err(Error::DimensionMismatch(format!(
            "symmetry needs m = p, got m = {}, p = {}",
            s.inputs(),
            s.outputs()
        )));
    }
    Ok(s.a == s.a.transpose() && s.c == s.b.transpose())
}

/// A symmetric realization with `A = diag(1, ..., N)` and seeded integer
/// `B`; resampled until minimal.
pub fn symmetric_fixture(n: usize, m: usize, seed: u64) -> Realization {
    let mut rng = Sampler::new(seed);
    let a = Matrix::diagonal(&(1..=n as i64).map(crate::scalar::int).collect::<Vec<_>>());
    loop {
        let s = Realization::symmetric(a.clone(), rng.matrix(n, m, 3)).expect("symmetric by construction");
        if s.is_minimal() {
            return s;
        }
    }
}
