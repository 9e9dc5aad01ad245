//! Orbits of `GL_6` on 3-forms in six variables and the data attached to
//! the codimension-5 orbit.
//!
//! Classification by kernel dimension of `v ↦ v ∧ ω`:
//! 3 gives O10 (decomposable), 1 gives O5, and 0 splits into O0 / O1 by
//! the quartic invariant `λ` with `K² = λ I`, where `K` is the endomorphism
//! `φ ↦ (φ ⌟ ω) ∧ ω` read back through `∧⁵V ≅ V^*`.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{Matrix, Subspace};
use crate::exalg::{contract, subsets, top_pairing, Covector, Multivector};
use crate::grass::{contraction_kernel, form_from_skew, skew_complement, wedge_kernel, SymplecticForm};
use crate::scalar::{self, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OrbitLabel {
    O0,
    O1,
    O5,
    O10,
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HitchinData {
    pub k: Matrix,
    #[serde(with = "scalar::serde_scalar")]
    pub lambda: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub label: OrbitLabel,
    /// `ker(∧ω) ⊂ V`
    pub wedge_kernel: Subspace,
    /// `ker(⌟ω) ⊂ V^*`, in dual-basis coordinates
    pub contraction_kernel: Subspace,
    pub hitchin: HitchinData,
}

/// The flag `α ⊂ A` of an O5 form together with `σ` such that `ω = α ∧ σ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct O5Data {
    pub alpha: Subspace,
    pub hyperplane: Subspace,
    /// The covector cutting out `hyperplane`.
    pub hyperplane_form: Covector,
    /// Contains no term with the pivot index of `alpha`.
    pub sigma: Multivector,
}

impl O5Data {
    /// The canonical generator of `alpha` (pivot entry 1); `ω = α ∧ σ` holds
    /// exactly for this vector.
    pub fn alpha_vector(&self) -> Vec<Scalar> {
        self.alpha.basis().row(0).to_vec()
    }
}

fn check_trivector(w: &Multivector) -> Result<()> {
    if w.dim() != 6 || w.grade() != 3 {
        return Err(Error::GradeMismatch(format!(
            "expected a 3-form on Q^6, got grade {} in dimension {}",
            w.grade(),
            w.dim()
        )));
    }
    Ok(())
}

pub fn hitchin(w: &Multivector) -> Result<HitchinData> {
    check_trivector(w)?;
    let n = 6;
    let mut k = Matrix::zeros(n, n);
    for i in 0..n {
        let c = contract(&Covector::basis(n, i + 1), w)?;
        let five = c.wedge(w)?;
        for j in 0..n {
            let v = top_pairing(&Multivector::e(n, &[j + 1]), &five)?;
            k.set(j, i, v);
        }
    }
    let k2 = k.try_mul(&k)?;
    let lambda = k2.get(0, 0).clone();
    if k2 != Matrix::identity(n).scale(&lambda) {
        return Err(Error::Inconsistent("K^2 is not scalar".into()));
    }
    Ok(HitchinData { k, lambda })
}

pub fn classify_orbit(w: &Multivector) -> Result<OrbitReport> {
    check_trivector(w)?;
    if w.is_zero() {
        return Err(Error::ZeroInput);
    }
    let wk = wedge_kernel(w);
    let ck = contraction_kernel(w);
    let h = hitchin(w)?;
    let label = match wk.dim() {
        3 => OrbitLabel::O10,
        1 => OrbitLabel::O5,
        0 if !h.lambda.is_zero() => OrbitLabel::O0,
        0 => OrbitLabel::O1,
        d => {
            return Err(Error::Inconsistent(format!(
                "wedge kernel of dimension {d} for a nonzero 3-form"
            )))
        }
    };
    Ok(OrbitReport {
        label,
        wedge_kernel: wk,
        contraction_kernel: ck,
        hitchin: h,
    })
}

pub fn o5_decompose(w: &Multivector) -> Result<O5Data> {
    let report = classify_orbit(w)?;
    if report.label != OrbitLabel::O5 {
        return Err(Error::NotInO5(report.label.to_string()));
    }
    let alpha = report.wedge_kernel;
    let a = alpha.basis().row(0).to_vec();
    let pivot = alpha.pivots()[0] + 1;
    let phi = report.contraction_kernel.basis().row(0).to_vec();
    let hyperplane = Subspace::kernel(&Matrix::from_rows(6, std::slice::from_ref(&phi))?);

    // σ = Σ s_ij e_ij over pairs avoiding the pivot, α ∧ σ = ω
    let pairs: Vec<Vec<usize>> = subsets(6, 2)
        .into_iter()
        .map(|s| s.as_slice().to_vec())
        .filter(|p| !p.contains(&pivot))
        .collect();
    let av = Multivector::vector(&a);
    let cols: Vec<Vec<Scalar>> = pairs
        .iter()
        .map(|p| av.wedge(&Multivector::e(6, p)).map(|x| x.coords()))
        .collect::<Result<_>>()?;
    let m = Matrix::from_rows(20, &cols)?.transpose();
    let (x, _) = m
        .solve(&w.coords())?
        .ok_or_else(|| Error::Inconsistent("ω is not divisible by its kernel vector".into()))?;
    let sigma = Multivector::from_terms(6, 2, pairs.into_iter().zip(x))?;
    Ok(O5Data {
        alpha,
        hyperplane,
        hyperplane_form: Covector::new(phi),
        sigma,
    })
}

/// Whether `α ⊆ L ⊆ A`.
pub fn in_schubert(l: &Subspace, alpha: &Subspace, a: &Subspace) -> Result<bool> {
    if !a.contains_subspace(alpha)? {
        return Err(Error::Inconsistent("alpha is not contained in A".into()));
    }
    Ok(l.contains_subspace(alpha)? && a.contains_subspace(l)?)
}

/// The partner of `L ∈ Ω(α, A)` under projection from `ω = α ∧ σ`:
/// the 3-plane `L'` with `L'/α = (L/α)^∠` for the form induced by `σ` on
/// `A/α`.
pub fn o5_partner(data: &O5Data, l: &Subspace) -> Result<Subspace> {
    if !in_schubert(l, &data.alpha, &data.hyperplane)? {
        return Err(Error::Inconsistent("3-plane is not in the Schubert variety".into()));
    }
    // basis a1 = α, a2..a5 of A
    let mut basis = vec![data.alpha_vector()];
    for row in data.hyperplane.basis_vectors() {
        let mut trial = basis.clone();
        trial.push(row);
        if Matrix::from_rows(6, &trial)?.rank() == trial.len() {
            basis = trial;
        }
    }
    let to_a = Matrix::from_rows(6, &basis)?.transpose();

    let idx_pairs: Vec<(usize, usize)> = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect();
    let cols: Vec<Vec<Scalar>> = idx_pairs
        .iter()
        .map(|&(i, j)| {
            Multivector::vector(&basis[i])
                .wedge(&Multivector::vector(&basis[j]))
                .map(|x| x.coords())
        })
        .collect::<Result<_>>()?;
    let (s, _) = Matrix::from_rows(15, &cols)?
        .transpose()
        .solve(&data.sigma.coords())?
        .ok_or_else(|| Error::Inconsistent("σ does not lie in ∧²A".into()))?;
    let mut bar = Matrix::zeros(4, 4);
    for (&(i, j), c) in idx_pairs.iter().zip(&s) {
        if i > 0 {
            bar.set(i - 1, j - 1, c.clone());
            bar.set(j - 1, i - 1, -c.clone());
        }
    }
    let form = SymplecticForm::new(&form_from_skew(&bar))?;

    let mut quotient = Vec::new();
    for v in l.basis_vectors() {
        let (c, _) = to_a
            .solve(&v)?
            .ok_or_else(|| Error::Inconsistent("vector of L outside A".into()))?;
        quotient.push(c[1..].to_vec());
    }
    let lq = Subspace::span(4, &quotient)?;
    let comp = skew_complement(&lq, &form)?;
    let mut lifted = vec![data.alpha_vector()];
    for w in comp.basis_vectors() {
        let mut v = vec![Scalar::zero(); 6];
        for (k, c) in w.iter().enumerate() {
            for (x, b) in v.iter_mut().zip(&basis[k + 1]) {
                *x += c * b;
            }
        }
        lifted.push(v);
    }
    Subspace::span(6, &lifted)
}

/// Which case of the line trichotomy holds for a line inside O5.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type")]
pub enum LineType {
    /// Both forms share the kernel line `alpha`.
    Type1 { alpha: Subspace },
    /// Independent kernel vectors and a common `sigma`:
    /// `alphas[i] ∧ sigma = w_i` exactly.
    Type2 {
        #[serde(with = "scalar::serde_scalar_rows")]
        alphas: Vec<Vec<Scalar>>,
        sigma: Multivector,
    },
    /// Independent kernel vectors and a shared hyperplane.
    Type3 { hyperplane: Subspace },
}

/// Pencil parameters `(λ, µ)` checked to lie in O5 before classifying.
pub const LINE_SAMPLES: [(i64, i64); 10] = [
    (1, 0),
    (0, 1),
    (1, 1),
    (1, -1),
    (1, 2),
    (2, 1),
    (1, -2),
    (3, 1),
    (2, -3),
    (1, 3),
];

/// Classifies the line through `w1` and `w2`. The trichotomy is only
/// guaranteed when the whole line lies in O5; that is checked on
/// [`LINE_SAMPLES`] only.
pub fn classify_line(w1: &Multivector, w2: &Multivector) -> Result<LineType> {
    check_trivector(w1)?;
    check_trivector(w2)?;
    if Matrix::from_rows(20, &[w1.coords(), w2.coords()])?.rank() < 2 {
        return Err(Error::DependentVectors);
    }
    for &(l, m) in &LINE_SAMPLES {
        let p = &w1.scale(&scalar::int(l)) + &w2.scale(&scalar::int(m));
        let label = classify_orbit(&p)?.label;
        if label != OrbitLabel::O5 {
            return Err(Error::NotInO5(format!("{label} at ({l}:{m})")));
        }
    }
    let d1 = o5_decompose(w1)?;
    let d2 = o5_decompose(w2)?;
    if d1.alpha == d2.alpha {
        return Ok(LineType::Type1 { alpha: d1.alpha });
    }
    if d1.hyperplane == d2.hyperplane {
        return Ok(LineType::Type3 {
            hyperplane: d1.hyperplane,
        });
    }
    // unknowns: 15 coefficients of σ, then c with α2 ∧ σ = c w2
    let (a1, a2) = (Multivector::vector(&d1.alpha_vector()), Multivector::vector(&d2.alpha_vector()));
    let basis2 = subsets(6, 2);
    let mut cols = Vec::with_capacity(16);
    for s in &basis2 {
        let e = Multivector::e(6, s.as_slice());
        let mut col = a1.wedge(&e)?.coords();
        col.extend(a2.wedge(&e)?.coords());
        cols.push(col);
    }
    let mut last = vec![Scalar::zero(); 20];
    last.extend((-w2).coords());
    cols.push(last);
    let m = Matrix::from_rows(40, &cols)?.transpose();
    let mut rhs = w1.coords();
    rhs.extend(vec![Scalar::zero(); 20]);
    let (x, _) = m
        .solve(&rhs)?
        .ok_or_else(|| Error::Inconsistent("no common σ for a line of type 2".into()))?;
    let c = x[15].clone();
    if c.is_zero() {
        return Err(Error::Inconsistent("degenerate scale in type 2 solve".into()));
    }
    let sigma = Multivector::from_coords(6, 2, &x[..15])?;
    let alpha2: Vec<Scalar> = d2.alpha_vector().iter().map(|v| v / &c).collect();
    Ok(LineType::Type2 {
        alphas: vec![d1.alpha_vector(), alpha2],
        sigma,
    })
}
