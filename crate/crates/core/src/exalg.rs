//! Exterior algebra over the rationals.
//!
//! A [`Multivector`] is a homogeneous element of `∧^k V` with `V = Q^n`,
//! stored sparsely as a map from strictly increasing index sets (1-based) to
//! nonzero coefficients. Iteration, and hence serialization, follows the
//! lexicographic order of index sets.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::scalar::{self, Scalar};

/// Strictly increasing list of 1-based indices labelling a basis monomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    /// Validates strict increase.
    pub fn new(idx: Vec<usize>) -> Result<Self> {
        if idx.windows(2).any(|w| w[0] >= w[1]) || idx.first() == Some(&0) {
            return Err(Error::Parse(format!("index set {idx:?} is not strictly increasing from 1")));
        }
        Ok(IndexSet(idx))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Complement in `1..=n`.
    pub fn complement(&self, n: usize) -> IndexSet {
        IndexSet((1..=n).filter(|i| !self.0.contains(i)).collect())
    }
}

/// Sorts `idx`, returning the sorted set and the sign of the sorting
/// permutation, or `None` when an index repeats.
pub fn sort_with_sign(idx: &[usize]) -> Option<(IndexSet, i32)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    // insertion sort, counting transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((IndexSet(v), sign))
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All `k`-subsets of `1..=n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<IndexSet> {
    let mut out = Vec::with_capacity(binomial(n, k));
    let mut cur: Vec<usize> = (1..=k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(IndexSet(cur.clone()));
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - (k - 1 - i)) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

/// Position of `idx` in [`subsets`]`(n, idx.len())`.
pub fn subset_rank(n: usize, idx: &IndexSet) -> usize {
    let k = idx.len();
    let mut rank = 0;
    let mut prev = 0;
    for (i, &c) in idx.0.iter().enumerate() {
        for j in prev + 1..c {
            rank += binomial(n - j, k - i - 1);
        }
        prev = c;
    }
    rank
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multivector {
    dim: usize,
    grade: usize,
    terms: BTreeMap<IndexSet, Scalar>,
}

impl Multivector {
    pub fn zero(dim: usize, grade: usize) -> Self {
        Multivector {
            dim,
            grade,
            terms: BTreeMap::new(),
        }
    }

    /// The scalar `1` in `∧^0 V`.
    pub fn unit(dim: usize) -> Self {
        Self::zero(dim, 0).with_term(IndexSet(vec![]), scalar::one())
    }

    /// The monomial `e_{i1} ∧ ... ∧ e_{ik}` for indices in any order (sign
    /// applied; zero on repeats).
    pub fn e(dim: usize, idx: &[usize]) -> Self {
        assert!(idx.iter().all(|&i| (1..=dim).contains(&i)), "index out of range");
        let mut out = Self::zero(dim, idx.len());
        if let Some((set, sign)) = sort_with_sign(idx) {
            out.terms.insert(set, scalar::int(sign as i64));
        }
        out
    }

    /// The grade-1 element with the given coordinates.
    pub fn vector(v: &[Scalar]) -> Self {
        let mut out = Self::zero(v.len(), 1);
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out.terms.insert(IndexSet(vec![i + 1]), c.clone());
            }
        }
        out
    }

    pub fn from_terms(
        dim: usize,
        grade: usize,
        terms: impl IntoIterator<Item = (Vec<usize>, Scalar)>,
    ) -> Result<Self> {
        let mut out = Self::zero(dim, grade);
        for (idx, c) in terms {
            if idx.len() != grade || idx.iter().any(|&i| i == 0 || i > dim) {
                return Err(Error::GradeMismatch(format!(
                    "index {idx:?} in a grade-{grade} element of dimension {dim}"
                )));
            }
            if let Some((set, sign)) = sort_with_sign(&idx) {
                out.add_term(set, c * scalar::int(sign as i64));
            }
        }
        Ok(out)
    }

    /// Inverse of [`Multivector::coords`].
    pub fn from_coords(dim: usize, grade: usize, coords: &[Scalar]) -> Result<Self> {
        let basis = subsets(dim, grade);
        if coords.len() != basis.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates for ∧^{grade} Q^{dim}",
                coords.len()
            )));
        }
        let mut out = Self::zero(dim, grade);
        for (set, c) in basis.into_iter().zip(coords) {
            if !c.is_zero() {
                out.terms.insert(set, c.clone());
            }
        }
        Ok(out)
    }

    fn with_term(mut self, set: IndexSet, c: Scalar) -> Self {
        self.add_term(set, c);
        self
    }

    fn add_term(&mut self, set: IndexSet, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(set);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IndexSet, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, idx: &[usize]) -> Scalar {
        match sort_with_sign(idx) {
            Some((set, sign)) => self
                .terms
                .get(&set)
                .map(|c| c * scalar::int(sign as i64))
                .unwrap_or_else(Scalar::zero),
            None => Scalar::zero(),
        }
    }

    /// Dense coordinates in the lexicographic monomial basis.
    pub fn coords(&self) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); binomial(self.dim, self.grade)];
        for (set, c) in &self.terms {
            out[subset_rank(self.dim, set)] = c.clone();
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim, self.grade);
        }
        Multivector {
            dim: self.dim,
            grade: self.grade,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// First nonzero coefficient in lexicographic order.
    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.terms.values().next()
    }

    /// Rescaled so the lexicographically first coefficient is 1.
    pub fn normalized(&self) -> Self {
        match self.leading_coeff() {
            Some(c) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    pub fn is_proportional(&self, other: &Multivector) -> bool {
        self.dim == other.dim
            && self.grade == other.grade
            && !self.is_zero()
            && !other.is_zero()
            && self.normalized() == other.normalized()
    }

    pub fn try_add(&self, other: &Multivector) -> Result<Self> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Multivector) -> Result<Self> {
        self.try_add(&-other)
    }

    /// Exterior product. When the grades sum past the dimension the result
    /// is the zero element of that grade.
    pub fn wedge(&self, other: &Multivector) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "wedge of elements of dimension {} and {}",
                self.dim, other.dim
            )));
        }
        let mut out = Self::zero(self.dim, self.grade + other.grade);
        if out.grade > self.dim {
            return Ok(out);
        }
        let mut buf = Vec::with_capacity(out.grade);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if b.0.iter().any(|i| a.0.contains(i)) {
                    continue;
                }
                buf.clear();
                buf.extend_from_slice(&a.0);
                buf.extend_from_slice(&b.0);
                let (set, sign) = sort_with_sign(&buf).expect("disjoint");
                let c = ca * cb;
                out.add_term(set, if sign < 0 { -c } else { c });
            }
        }
        Ok(out)
    }

    /// Image under the linear map `g` acting on `V`: each `e_i` goes to the
    /// `i`-th column of `g`.
    pub fn transform(&self, g: &Matrix) -> Result<Self> {
        if g.rows() != self.dim || g.cols() != self.dim {
            return Err(Error::DimensionMismatch("transform matrix must be n x n".into()));
        }
        let cols: Vec<Multivector> = (0..self.dim).map(|j| Multivector::vector(&g.column(j))).collect();
        let mut out = Self::zero(self.dim, self.grade);
        for (set, c) in &self.terms {
            let mut w = Multivector::unit(self.dim);
            for &i in &set.0 {
                w = w.wedge(&cols[i - 1])?;
            }
            out = out.try_add(&w.scale(c))?;
        }
        Ok(out)
    }

    fn check_same_space(&self, other: &Multivector) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.dim, other.dim)));
        }
        if self.grade != other.grade {
            return Err(Error::GradeMismatch(format!("{} vs {}", self.grade, other.grade)));
        }
        Ok(())
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(&-scalar::one())
    }
}

impl Add for &Multivector {
    type Output = Multivector;
    /// Panics on a dimension or grade mismatch; see [`Multivector::try_add`].
    fn add(self, rhs: &Multivector) -> Multivector {
        self.try_add(rhs).expect("adding multivectors of different shape")
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        self.try_sub(rhs).expect("subtracting multivectors of different shape")
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (set, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            if !a.is_one() || set.is_empty() {
                write!(f, "{a}")?;
            }
            if !set.is_empty() {
                let label: Vec<String> = set.0.iter().map(|i| i.to_string()).collect();
                let sep = if self.dim >= 10 { "," } else { "" };
                write!(f, "e{}", label.join(sep))?;
            }
        }
        Ok(())
    }
}

/// A linear form on `V`, given by its coordinates in the dual basis `e_i^*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Covector {
    #[serde(with = "scalar::serde_scalars")]
    coeffs: Vec<Scalar>,
}

impl Covector {
    pub fn new(coeffs: Vec<Scalar>) -> Self {
        Covector { coeffs }
    }

    /// `e_i^*` (1-based).
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); dim];
        coeffs[i - 1] = scalar::one();
        Covector { coeffs }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn eval(&self, v: &[Scalar]) -> Scalar {
        self.coeffs.iter().zip(v).fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
    }
}

/// Interior product `φ ⌟ w`, with
/// `φ ⌟ (v1 ∧ ... ∧ vk) = Σ_i (-1)^(i-1) φ(v_i) v1 ∧ ..v̂_i.. ∧ vk`.
pub fn contract(phi: &Covector, w: &Multivector) -> Result<Multivector> {
    if phi.dim() != w.dim {
        return Err(Error::DimensionMismatch(format!(
            "covector of dimension {} against multivector of dimension {}",
            phi.dim(),
            w.dim
        )));
    }
    if w.grade == 0 {
        return Ok(Multivector::zero(w.dim, 0));
    }
    let mut out = Multivector::zero(w.dim, w.grade - 1);
    for (set, c) in &w.terms {
        for (pos, &i) in set.0.iter().enumerate() {
            let p = &phi.coeffs[i - 1];
            if p.is_zero() {
                continue;
            }
            let mut rest = set.0.clone();
            rest.remove(pos);
            let v = p * c;
            out.add_term(IndexSet(rest), if pos % 2 == 1 { -v } else { v });
        }
    }
    Ok(out)
}

/// Coefficient of `e_{1..n}` in `a ∧ b`, for complementary grades.
pub fn top_pairing(a: &Multivector, b: &Multivector) -> Result<Scalar> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch(format!("{} vs {}", a.dim, b.dim)));
    }
    if a.grade + b.grade != a.dim {
        return Err(Error::GradeMismatch(format!(
            "grades {} and {} are not complementary in dimension {}",
            a.grade, b.grade, a.dim
        )));
    }
    let mut acc = Scalar::zero();
    for (set, ca) in &a.terms {
        let comp = set.complement(a.dim);
        if let Some(cb) = b.terms.get(&comp) {
            let mut idx = set.0.clone();
            idx.extend_from_slice(&comp.0);
            let (_, sign) = sort_with_sign(&idx).expect("disjoint");
            let v = ca * cb;
            acc += if sign < 0 { -v } else { v };
        }
    }
    Ok(acc)
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    idx: Vec<usize>,
    #[serde(with = "scalar::serde_scalar")]
    coef: Scalar,
}

#[derive(Serialize, Deserialize)]
struct MultivectorJson {
    dim: usize,
    grade: usize,
    terms: Vec<TermJson>,
}

impl Serialize for Multivector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MultivectorJson {
            dim: self.dim,
            grade: self.grade,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| TermJson {
                    idx: k.0.clone(),
                    coef: v.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Multivector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MultivectorJson::deserialize(d)?;
        Multivector::from_terms(j.dim, j.grade, j.terms.into_iter().map(|t| (t.idx, t.coef)))
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn e(idx: &[usize]) -> Multivector {
        Multivector::e(6, idx)
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(e(&[1]).wedge(&e(&[2, 3])).unwrap(), e(&[1, 2, 3]));
        let s = &Multivector::e(4, &[1, 2]) + &Multivector::e(4, &[3, 4]);
        assert_eq!(s.wedge(&s).unwrap(), Multivector::e(4, &[1, 2, 3, 4]).scale(&int(2)));
        let w5 = e(&[1]).wedge(&(&e(&[2, 3]) + &e(&[4, 5]))).unwrap();
        assert_eq!(w5, &e(&[1, 2, 3]) + &e(&[1, 4, 5]));
    }

    #[test]
    fn wedge_overflow_and_mismatch() {
        let a = Multivector::e(3, &[1, 2]);
        let z = a.wedge(&a).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.grade(), 4);
        assert!(matches!(a.wedge(&e(&[1])), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn contract_examples() {
        let c = |i, w: &Multivector| contract(&Covector::basis(6, i), w).unwrap();
        assert_eq!(c(1, &e(&[1, 2, 3])), e(&[2, 3]));
        assert!(c(6, &(&e(&[1, 2, 3]) + &e(&[1, 4, 5]))).is_zero());
        assert_eq!(c(3, &e(&[1, 2, 3])), e(&[1, 2]));
        assert_eq!(c(2, &e(&[1, 2, 3])), -&e(&[1, 3]));
    }

    #[test]
    fn top_pairing_examples() {
        assert_eq!(top_pairing(&e(&[1, 2, 3]), &e(&[4, 5, 6])).unwrap(), int(1));
        assert_eq!(top_pairing(&e(&[1, 2, 3]), &e(&[1, 2, 3])).unwrap(), int(0));
        assert_eq!(top_pairing(&e(&[1, 2, 4]), &e(&[3, 5, 6])).unwrap(), int(-1));
        assert!(top_pairing(&e(&[1, 2]), &e(&[3, 4, 5])).is_err());
    }

    #[test]
    fn unsorted_monomial_carries_sign() {
        assert_eq!(e(&[1, 5, 3]), -&e(&[1, 3, 5]));
        assert!(e(&[2, 2, 3]).is_zero());
    }

    #[test]
    fn subset_rank_matches_enumeration() {
        for (n, k) in [(6, 3), (5, 2), (7, 4), (4, 0), (4, 4)] {
            for (r, s) in subsets(n, k).iter().enumerate() {
                assert_eq!(subset_rank(n, s), r);
            }
            assert_eq!(subsets(n, k).len(), binomial(n, k));
        }
    }

    #[test]
    fn json_is_sorted_and_roundtrips() {
        let w = &e(&[4, 5, 6]) + &e(&[1, 2, 3]).scale(&crate::scalar::ratio(-1, 2));
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(
            s,
            r#"{"dim":6,"grade":3,"terms":[{"idx":[1,2,3],"coef":"-1/2"},{"idx":[4,5,6],"coef":"1/1"}]}"#
        );
        let back: Multivector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn display() {
        let w = &e(&[1, 2, 3]) - &e(&[4, 5, 6]).scale(&int(2));
        assert_eq!(w.to_string(), "e123 - 2e456");
    }
}
