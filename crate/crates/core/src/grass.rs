//! Grassmannians in the Plücker embedding: decomposability, symplectic
//! complements, linear projections and their fibres along secant lines.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{Matrix, Poly, Subspace};
use crate::exalg::{binomial, contract, subsets, Covector, IndexSet, Multivector};
use crate::scalar::{self, Scalar};

/// A nonzero multivector up to scale, stored with its lexicographically
/// first coefficient equal to 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct PluckerPoint(Multivector);

impl PluckerPoint {
    pub fn new(w: &Multivector) -> Result<Self> {
        if w.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(PluckerPoint(w.normalized()))
    }

    /// The Plücker vector of the row space of `basis`.
    pub fn of_subspace(l: &Subspace) -> Self {
        pluecker(&l.basis_vectors()).expect("canonical basis rows are independent")
    }

    pub fn vector(&self) -> &Multivector {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn grade(&self) -> usize {
        self.0.grade()
    }
}

impl<'de> Deserialize<'de> for PluckerPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = Multivector::deserialize(d)?;
        PluckerPoint::new(&w).map_err(serde::de::Error::custom)
    }
}

/// Normalized wedge of independent vectors.
pub fn pluecker(basis: &[Vec<Scalar>]) -> Result<PluckerPoint> {
    let Some(first) = basis.first() else {
        return Err(Error::DimensionMismatch("empty basis".into()));
    };
    let n = first.len();
    let m = Matrix::from_rows(n, basis)?;
    if m.rank() < basis.len() {
        return Err(Error::DependentVectors);
    }
    let mut w = Multivector::unit(n);
    for v in basis {
        w = w.wedge(&Multivector::vector(v))?;
    }
    PluckerPoint::new(&w)
}

/// Matrix of `v ↦ v ∧ w` from `V` to `∧^{k+1} V` (lexicographic basis).
pub fn wedge_matrix(w: &Multivector) -> Matrix {
    let n = w.dim();
    let rows = binomial(n, w.grade() + 1);
    let mut out = Matrix::zeros(rows, n);
    for j in 0..n {
        let col = Multivector::e(n, &[j + 1]).wedge(w).expect("same dimension").coords();
        for (i, c) in col.into_iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            out.set(i, j, c);
        }
    }
    out
}

/// Matrix of `φ ↦ φ ⌟ w` from `V^*` to `∧^{k-1} V`.
pub fn contraction_matrix(w: &Multivector) -> Matrix {
    let n = w.dim();
    let rows = binomial(n, w.grade().saturating_sub(1));
    let mut out = Matrix::zeros(rows, n);
    for j in 0..n {
        let col = contract(&Covector::basis(n, j + 1), w).expect("same dimension").coords();
        for (i, c) in col.into_iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            out.set(i, j, c);
        }
    }
    out
}

/// `{v ∈ V : v ∧ w = 0}`.
pub fn wedge_kernel(w: &Multivector) -> Subspace {
    Subspace::kernel(&wedge_matrix(w))
}

/// `{φ ∈ V^* : φ ⌟ w = 0}`.
pub fn contraction_kernel(w: &Multivector) -> Subspace {
    Subspace::kernel(&contraction_matrix(w))
}

/// The subspace whose Plücker vector is `w`, if `w` is decomposable.
///
/// A nonzero `w` of grade `m` is decomposable iff the kernel of `v ↦ v ∧ w`
/// has dimension `m`; that kernel is then the subspace.
pub fn is_decomposable(w: &Multivector) -> Option<Subspace> {
    if w.is_zero() {
        return None;
    }
    let k = wedge_kernel(w);
    (k.dim() == w.grade()).then_some(k)
}

/// Skew matrix `S` of a 2-form: `S[i][j]` is the coefficient of `e_i ∧ e_j`.
pub fn skew_matrix(sigma: &Multivector) -> Matrix {
    let n = sigma.dim();
    let mut s = Matrix::zeros(n, n);
    for (idx, c) in sigma.terms() {
        let (i, j) = (idx.as_slice()[0] - 1, idx.as_slice()[1] - 1);
        s.set(i, j, c.clone());
        s.set(j, i, -c.clone());
    }
    s
}

/// The 2-form with skew matrix `s` (upper triangle is read).
pub fn form_from_skew(s: &Matrix) -> Multivector {
    let n = s.rows();
    let terms = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| (vec![i + 1, j + 1], s.get(i, j).clone()));
    Multivector::from_terms(n, 2, terms).expect("indices in range")
}

/// A nondegenerate `σ ∈ ∧²V` together with the induced form `σ*` on `V`,
/// whose matrix is the inverse of the skew matrix of `σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticForm {
    sigma: Multivector,
    matrix: Matrix,
    dual: Matrix,
}

impl SymplecticForm {
    pub fn new(sigma: &Multivector) -> Result<Self> {
        if sigma.grade() != 2 {
            return Err(Error::GradeMismatch(format!("symplectic form of grade {}", sigma.grade())));
        }
        let matrix = skew_matrix(sigma);
        if !sigma.dim().is_multiple_of(2) || matrix.pfaffian()?.is_zero() {
            return Err(Error::DegenerateForm);
        }
        let dual = matrix.inverse()?;
        Ok(SymplecticForm {
            sigma: sigma.clone(),
            matrix,
            dual,
        })
    }

    pub fn sigma(&self) -> &Multivector {
        &self.sigma
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Matrix of `σ*` on `V`.
    pub fn dual_matrix(&self) -> &Matrix {
        &self.dual
    }

    /// `σ*(u, v)`.
    pub fn pair(&self, u: &[Scalar], v: &[Scalar]) -> Result<Scalar> {
        let dv = self.dual.mul_vec(v)?;
        Ok(u.iter().zip(&dv).fold(Scalar::zero(), |acc, (a, b)| acc + a * b))
    }
}

/// `{w ∈ V : σ*(w, v) = 0 for all v ∈ L}`.
pub fn skew_complement(l: &Subspace, sigma: &SymplecticForm) -> Result<Subspace> {
    let n = sigma.dual.rows();
    if l.ambient() != n {
        return Err(Error::DimensionMismatch(format!(
            "subspace of Q^{} with a form on Q^{n}",
            l.ambient()
        )));
    }
    if l.is_zero() {
        return Ok(Subspace::full(n));
    }
    // rows v^T S^{-1}
    let rows = l.basis().try_mul(&sigma.dual)?;
    Ok(Subspace::kernel(&rows))
}

/// A linear center of projection: a nonzero subspace of `∧^m V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Center {
    dim: usize,
    grade: usize,
    space: Subspace,
}

impl Center {
    pub fn new(dim: usize, grade: usize, generators: &[Multivector]) -> Result<Self> {
        for g in generators {
            if g.dim() != dim || g.grade() != grade {
                return Err(Error::GradeMismatch(format!(
                    "generator in ∧^{} Q^{} for a center in ∧^{grade} Q^{dim}",
                    g.grade(),
                    g.dim()
                )));
            }
        }
        let coords: Vec<Vec<Scalar>> = generators.iter().map(Multivector::coords).collect();
        Self::from_subspace(dim, grade, Subspace::span(binomial(dim, grade), &coords)?)
    }

    pub fn from_subspace(dim: usize, grade: usize, space: Subspace) -> Result<Self> {
        if space.ambient() != binomial(dim, grade) {
            return Err(Error::DimensionMismatch("center coordinates do not match ∧^m V".into()));
        }
        if space.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(Center { dim, grade, space })
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    /// Linear dimension of the center (projective dimension plus one).
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    /// Canonical basis as multivectors.
    pub fn basis(&self) -> Vec<Multivector> {
        self.space
            .basis_vectors()
            .iter()
            .map(|v| Multivector::from_coords(self.dim, self.grade, v).expect("coordinate count"))
            .collect()
    }

    pub fn contains(&self, w: &Multivector) -> Result<bool> {
        self.check(w)?;
        self.space.contains(&w.coords())
    }

    fn check(&self, w: &Multivector) -> Result<()> {
        if w.dim() != self.dim || w.grade() != self.grade {
            return Err(Error::GradeMismatch(format!(
                "element of ∧^{} Q^{} against a center in ∧^{} Q^{}",
                w.grade(),
                w.dim(),
                self.grade,
                self.dim
            )));
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CenterJson {
    dim: usize,
    grade: usize,
    basis: Vec<Multivector>,
}

impl Serialize for Center {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CenterJson {
            dim: self.dim,
            grade: self.grade,
            basis: self.basis(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Center {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = CenterJson::deserialize(d)?;
        Center::new(j.dim, j.grade, &j.basis).map_err(serde::de::Error::custom)
    }
}

/// Coordinates in `(∧^m V)/Z` on the complement spanned by the non-pivot
/// coordinates of the center's canonical basis, scaled so the first nonzero
/// entry is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuotientPoint(#[serde(with = "scalar::serde_scalars")] pub Vec<Scalar>);

/// Unnormalized quotient coordinates, linear in `w`.
pub fn quotient_coords(w: &Multivector, z: &Center) -> Result<Vec<Scalar>> {
    z.check(w)?;
    let r = z.space.reduce(&w.coords())?;
    Ok(z.space.non_pivots().into_iter().map(|c| r[c].clone()).collect())
}

pub fn project(w: &Multivector, z: &Center) -> Result<QuotientPoint> {
    let q = quotient_coords(w, z)?;
    let Some(lead) = q.iter().find(|c| !c.is_zero()).cloned() else {
        return Err(Error::CenterHit);
    };
    Ok(QuotientPoint(q.into_iter().map(|c| c / &lead).collect()))
}

/// How the projective line through two points meets a center.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "point", rename_all = "snake_case")]
pub enum SecantMeet {
    Disjoint,
    Point(PluckerPoint),
    LineInCenter,
}

pub fn secant_meets_center(l1: &PluckerPoint, l2: &PluckerPoint, z: &Center) -> Result<SecantMeet> {
    if l1 == l2 {
        return Err(Error::Proportional);
    }
    let r1 = quotient_coords(l1.vector(), z)?;
    let r2 = quotient_coords(l2.vector(), z)?;
    // (a, b) with a r1 + b r2 = 0
    let m = Matrix::from_fn(r1.len(), 2, |i, j| if j == 0 { r1[i].clone() } else { r2[i].clone() });
    let ker = m.kernel_vectors();
    Ok(match ker.len() {
        0 => SecantMeet::Disjoint,
        1 => {
            let (a, b) = (&ker[0][0], &ker[0][1]);
            let p = &l1.vector().scale(a) + &l2.vector().scale(b);
            SecantMeet::Point(PluckerPoint::new(&p)?)
        }
        _ => SecantMeet::LineInCenter,
    })
}

/// Decomposable points other than `base` on the line through `base` and `w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberPartners {
    pub partners: Vec<PluckerPoint>,
    /// Common roots of the restricted Plücker relations that are not rational.
    pub nonrational: usize,
    /// Multiplicity of the base point as a root (2 when the line is tangent).
    pub base_multiplicity: usize,
}

/// `ξ ⌟ w` for the monomial `ξ = e*_{i1} ∧ ... ∧ e*_{ik}`, contracting
/// `e*_{i1}` first.
fn contract_monomial(idx: &IndexSet, w: &Multivector) -> Multivector {
    let n = w.dim();
    idx.as_slice().iter().fold(w.clone(), |acc, &i| {
        contract(&Covector::basis(n, i), &acc).expect("same dimension")
    })
}

/// Partners of `base` under projection from the point `w`: the decomposable
/// points on the line `{base + t w}` other than `base`.
///
/// Each quadratic relation `(ξ ⌟ x) ∧ x = 0`, `ξ ∈ ∧^{m-1} V^*`, restricted
/// to the line is `t (b + t q)` with `b` the polarization at `(base, w)` and
/// `q` the value at `w`. The partners are the common roots of the deflated
/// polynomials.
pub fn fiber_partners(base: &PluckerPoint, w: &PluckerPoint) -> Result<FiberPartners> {
    if base.dim() != w.dim() || base.grade() != w.grade() {
        return Err(Error::GradeMismatch("base and center point differ in shape".into()));
    }
    if is_decomposable(base.vector()).is_none() {
        return Err(Error::NotDecomposable);
    }
    if is_decomposable(w.vector()).is_some() {
        return Err(Error::Decomposable);
    }
    if base == w {
        return Err(Error::Proportional);
    }
    let (n, m) = (base.dim(), base.grade());
    let (l, x) = (base.vector(), w.vector());
    let mut g: Option<Poly> = None;
    for xi in subsets(n, m - 1) {
        let al = contract_monomial(&xi, l);
        let ax = contract_monomial(&xi, x);
        let b = (&al.wedge(x)? + &ax.wedge(l)?).coords();
        let q = ax.wedge(x)?.coords();
        for (bj, qj) in b.into_iter().zip(q) {
            let p = Poly::new(vec![bj, qj]);
            if p.is_zero() {
                continue;
            }
            g = Some(match g {
                None => p.monic(),
                Some(acc) => acc.gcd(&p)?,
            });
        }
    }
    let g = g.ok_or(Error::Decomposable)?;
    let roots = g.rational_roots()?;
    let mut partners = Vec::new();
    let mut base_multiplicity = 1;
    for (t, mult) in &roots.roots {
        if t.is_zero() {
            base_multiplicity += mult;
            continue;
        }
        partners.push(PluckerPoint::new(&(l + &x.scale(t)))?);
    }
    Ok(FiberPartners {
        partners,
        nonrational: roots.nonrational,
        base_multiplicity,
    })
}
