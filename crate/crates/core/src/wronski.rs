//! Linear ordinary differential operators with polynomial data: Wronskians,
//! formal adjoints, and the Wronski center `Z = X_L^⊥`.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{Matrix, Poly, PolyMatrix, RatFunc, Subspace};
use crate::exalg::{binomial, subsets, Multivector};
use crate::grass::Center;
use crate::scalar::{self, Scalar};

/// Wronskian `det (f_j^{(i)})` of the given polynomials.
pub fn wronskian(fs: &[Poly]) -> Poly {
    derivative_matrix(fs, fs.len())
        .det_cofactor()
        .expect("square by construction")
}

/// The `m x n` matrix `(f_j^{(i)})`.
fn derivative_matrix(fs: &[Poly], m: usize) -> PolyMatrix {
    PolyMatrix::from_fn(m, fs.len(), |i, j| fs[j].nth_derivative(i))
}

/// A basis `f_1..f_n` of the solution space of an order-`n` operator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FundamentalSystem {
    polys: Vec<Poly>,
}

impl FundamentalSystem {
    pub fn new(polys: Vec<Poly>) -> Result<Self> {
        if polys.is_empty() {
            return Err(Error::ZeroInput);
        }
        if wronskian(&polys).is_zero() {
            return Err(Error::DependentVectors);
        }
        Ok(FundamentalSystem { polys })
    }

    /// `1, t, ..., t^{n-1}`: the solutions of `x^{(n)} = 0`.
    pub fn monomials(n: usize) -> Self {
        Self::new((0..n).map(|k| Poly::monomial(scalar::one(), k)).collect()).expect("independent")
    }

    /// Solutions of `D q_1^{-1} D q_2^{-1} ... D q_k^{-1} D`: the iterated
    /// integrals `1, ∫q_1, ∫q_1∫q_2, ...`. A palindromic `q` gives a formally
    /// self-adjoint operator of even order `k + 1`.
    pub fn iterated_integrals(qs: &[Poly]) -> Result<Self> {
        let mut polys = vec![Poly::one()];
        for k in 1..=qs.len() {
            let f = qs[..k]
                .iter()
                .rev()
                .fold(Poly::one(), |f, q| (q * &f).integral());
            polys.push(f);
        }
        Self::new(polys)
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn order(&self) -> usize {
        self.polys.len()
    }
}

impl<'de> Deserialize<'de> for FundamentalSystem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            polys: Vec<Poly>,
        }
        FundamentalSystem::new(Raw::deserialize(d)?.polys).map_err(serde::de::Error::custom)
    }
}

/// Monic operator `x^{(n)} + a_{n-1} x^{(n-1)} + ... + a_0 x`; `coeffs[i] = a_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Odo {
    coeffs: Vec<RatFunc>,
}

impl Odo {
    pub fn new(coeffs: Vec<RatFunc>) -> Self {
        Odo { coeffs }
    }

    /// `x^{(n)}`.
    pub fn pure(n: usize) -> Self {
        Odo::new(vec![RatFunc::zero(); n])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    /// `a_i` including the implicit `a_n = 1`.
    fn a(&self, i: usize) -> RatFunc {
        if i == self.order() {
            RatFunc::one()
        } else {
            self.coeffs[i].clone()
        }
    }

    /// Applies the operator to a polynomial.
    pub fn apply(&self, x: &Poly) -> RatFunc {
        (0..=self.order()).fold(RatFunc::zero(), |acc, i| {
            &acc + &(&self.a(i) * &RatFunc::from(x.nth_derivative(i)))
        })
    }
}

/// `L^* = sign * op` with `op` monic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Adjoint {
    pub op: Odo,
    pub sign: i8,
}

/// `L^* x = Σ_i (-1)^i (a_i x)^{(i)}`, expanded by Leibniz.
pub fn formal_adjoint(l: &Odo) -> Adjoint {
    let n = l.order();
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    let coeffs = (0..n)
        .map(|j| {
            (j..=n).fold(RatFunc::zero(), |acc, i| {
                let c = scalar::int((binomial(i, i - j) as i64) * if (i + n).is_multiple_of(2) { 1 } else { -1 });
                &acc + &l.a(i).nth_derivative(i - j).scale(&c)
            })
        })
        .collect();
    Adjoint {
        op: Odo::new(coeffs),
        sign,
    }
}

/// `(1/µ) L(µ x)`.
pub fn mu_conjugate(l: &Odo, mu: &RatFunc) -> Result<Odo> {
    if mu.is_zero() {
        return Err(Error::ZeroInput);
    }
    let n = l.order();
    let coeffs = (0..n)
        .map(|j| {
            let s = (j..=n).fold(RatFunc::zero(), |acc, i| {
                let c = scalar::int(binomial(i, i - j) as i64);
                &acc + &(&l.a(i) * &mu.nth_derivative(i - j)).scale(&c)
            });
            s.try_div(mu)
        })
        .collect::<Result<_>>()?;
    Ok(Odo::new(coeffs))
}

/// `L^* = L`; never true in odd order, where `L^*` has leading sign `-1`.
pub fn is_self_adjoint_op(l: &Odo) -> bool {
    let adj = formal_adjoint(l);
    adj.sign == 1 && &adj.op == l
}

/// `1!2!...(n-m-1)! (m(n-m))! / (m!(m+1)!...(n-1)!)`, the degree of
/// `Gr_m Q^n` in its Plücker embedding.
pub fn schubert_degree(m: usize, n: usize) -> Result<BigUint> {
    if m == 0 || m >= n {
        return Err(Error::OutOfRange(format!("need 1 <= m <= n - 1, got m = {m}, n = {n}")));
    }
    let fact = |k: usize| (1..=k).fold(BigUint::one(), |acc, i| acc * BigUint::from(i));
    let num = (1..n - m).fold(fact(m * (n - m)), |acc, i| acc * fact(i));
    let den = (m..n).fold(BigUint::one(), |acc, i| acc * fact(i));
    Ok(num / den)
}

/// `X_L ⊂ ∧^m V^*` and its annihilator `Z ⊂ ∧^m V`, both in lexicographic
/// subset coordinates, for `V` the solution space with basis `fs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WronskiCenter {
    pub n: usize,
    pub m: usize,
    /// Row `k` holds the coefficient of `t^k` in each `m x m` minor of the
    /// derivative matrix.
    pub curve: Matrix,
    pub x: Subspace,
    pub z: Subspace,
}

impl WronskiCenter {
    /// `Z` as a center; fails when `Z = 0`.
    pub fn center(&self) -> Result<Center> {
        Center::from_subspace(self.n, self.m, self.z.clone())
    }

    /// Wronskian coefficients from a Plücker vector: `curve · p`.
    pub fn wronskian_of(&self, p: &Multivector) -> Result<Poly> {
        Ok(Poly::new(self.curve.mul_vec(&p.coords())?))
    }

    /// Wronskian coefficients from quotient coordinates of `(∧^m V)/Z`,
    /// read on the non-pivot columns of `Z`.
    pub fn wronskian_of_quotient(&self, q: &[Scalar]) -> Result<Poly> {
        let cols = self.z.non_pivots();
        if q.len() != cols.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} quotient coordinates for a quotient of dimension {}",
                q.len(),
                cols.len()
            )));
        }
        let rows = (0..self.curve.rows())
            .map(|k| cols.iter().zip(q).map(|(&c, x)| self.curve.get(k, c) * x).sum())
            .collect();
        Ok(Poly::new(rows))
    }
}

pub fn build_center(fs: &FundamentalSystem, m: usize) -> Result<WronskiCenter> {
    let n = fs.order();
    if m == 0 || m >= n {
        return Err(Error::OutOfRange(format!("need 1 <= m <= n - 1, got m = {m}, n = {n}")));
    }
    let d = derivative_matrix(fs.polys(), m);
    let rows: Vec<usize> = (0..m).collect();
    let minors: Vec<Poly> = subsets(n, m)
        .iter()
        .map(|s| {
            let cols: Vec<usize> = s.as_slice().iter().map(|i| i - 1).collect();
            d.submatrix(&rows, &cols).det_cofactor().expect("square")
        })
        .collect();
    let deg = minors.iter().filter_map(Poly::degree).max().unwrap_or(0);
    let curve = Matrix::from_fn(deg + 1, binomial(n, m), |k, s| minors[s].coeff(k));
    let x = Subspace::row_space(&curve);
    let z = Subspace::kernel(&curve);
    Ok(WronskiCenter { n, m, curve, x, z })
}

/// Wronskian of the solutions picked out by the rows of `plane`, given in
/// coordinates with respect to `fs`.
pub fn wronski_map(fs: &FundamentalSystem, m: usize, plane: &Subspace) -> Result<Poly> {
    if plane.ambient() != fs.order() || plane.dim() != m {
        return Err(Error::DimensionMismatch(format!(
            "plane of dimension {} in Q^{} for m = {m}, n = {}",
            plane.dim(),
            plane.ambient(),
            fs.order()
        )));
    }
    let sols: Vec<Poly> = plane
        .basis_vectors()
        .iter()
        .map(|row| {
            row.iter()
                .zip(fs.polys())
                .fold(Poly::zero(), |acc, (c, f)| &acc + &f.scale(c))
        })
        .collect();
    Ok(wronskian(&sols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grass::{pluecker, project};
    use crate::scalar::int;

    fn p(cs: &[i64]) -> Poly {
        Poly::from_ints(cs)
    }

    fn rf(cs: &[i64]) -> RatFunc {
        p(cs).into()
    }

    #[test]
    fn wronskian_examples() {
        assert_eq!(wronskian(&[p(&[1]), p(&[0, 1]), p(&[0, 0, 1])]), p(&[2]));
        assert_eq!(wronskian(&[p(&[0, 1]), p(&[0, 0, 1])]), p(&[0, 0, 1]));
        // basis change multiplies by det g
        let fs = [p(&[1, 2]), p(&[0, 1, 3])];
        let w0 = wronskian(&fs);
        let mixed = [&fs[0].scale(&int(2)) + &fs[1], &fs[0].scale(&int(-1)) + &fs[1].scale(&int(3))];
        assert_eq!(wronskian(&mixed), w0.scale(&int(7)));
    }

    #[test]
    fn adjoint_examples() {
        let l = Odo::pure(2);
        assert_eq!(formal_adjoint(&l).op, l);
        assert!(is_self_adjoint_op(&l));

        let l = Odo::new(vec![rf(&[0]), rf(&[0, 1])]);
        let adj = formal_adjoint(&l);
        assert_eq!(adj.sign, 1);
        assert_eq!(adj.op, Odo::new(vec![rf(&[-1]), rf(&[0, -1])]));
        assert!(!is_self_adjoint_op(&l));

        assert!(is_self_adjoint_op(&Odo::pure(4)));
        assert!(is_self_adjoint_op(&Odo::pure(6)));
        assert!(!is_self_adjoint_op(&Odo::pure(3)));
        assert_eq!(formal_adjoint(&Odo::pure(3)).sign, -1);
    }

    #[test]
    fn adjoint_is_an_involution() {
        let l = Odo::new(vec![rf(&[1, 2]), rf(&[0, 0, 3]), rf(&[-1, 1]), rf(&[0, 5])]);
        let adj = formal_adjoint(&l);
        let back = formal_adjoint(&adj.op);
        assert_eq!(back.op, l);
    }

    #[test]
    fn mu_conjugate_examples() {
        let l = Odo::new(vec![rf(&[2]), rf(&[0, 1])]);
        assert_eq!(mu_conjugate(&l, &rf(&[5])).unwrap(), l);
        let l = Odo::pure(1);
        let c = mu_conjugate(&l, &rf(&[0, 1])).unwrap();
        assert_eq!(c, Odo::new(vec![RatFunc::new(p(&[1]), p(&[0, 1])).unwrap()]));
        assert_eq!(mu_conjugate(&l, &RatFunc::zero()), Err(Error::ZeroInput));
    }

    #[test]
    fn mu_conjugate_acts_on_solutions() {
        // x solves (1/µ)(µx)'' = 0 iff µx is linear
        let mu = rf(&[1, 1]);
        let c = mu_conjugate(&Odo::pure(2), &mu).unwrap();
        let x = RatFunc::new(p(&[3, 2]), p(&[1, 1])).unwrap();
        let applied = (0..=2).fold(RatFunc::zero(), |acc, i| {
            let a = if i == 2 { RatFunc::one() } else { c.coeffs()[i].clone() };
            &acc + &(&a * &x.nth_derivative(i))
        });
        assert!(applied.is_zero());
    }

    #[test]
    fn schubert_degrees() {
        let d = |m, n| schubert_degree(m, n).unwrap();
        assert_eq!(d(2, 4), BigUint::from(2u32));
        assert_eq!(d(3, 6), BigUint::from(42u32));
        assert_eq!(d(2, 5), BigUint::from(5u32));
        for n in 2..=10 {
            assert_eq!(d(1, n), BigUint::one());
            assert_eq!(d(n - 1, n), BigUint::one());
        }
        assert!(schubert_degree(0, 4).is_err());
        assert!(schubert_degree(4, 4).is_err());
    }

    #[test]
    fn center_of_x4() {
        let w = build_center(&FundamentalSystem::monomials(4), 2).unwrap();
        assert_eq!(w.x.dim(), 5);
        assert_eq!(w.z.dim(), 1);
        let gen = w.center().unwrap().basis()[0].clone();
        let pf = crate::grass::skew_matrix(&gen).pfaffian().unwrap();
        assert!(!pf.is_zero());
    }

    #[test]
    fn center_of_x6_is_ten_dimensional() {
        let w = build_center(&FundamentalSystem::monomials(6), 3).unwrap();
        assert_eq!(w.x.dim(), 10);
        assert_eq!(w.z.dim(), 10);
    }

    fn nested(qs: &[&[i64]]) -> FundamentalSystem {
        let qs: Vec<Poly> = qs.iter().map(|q| p(q)).collect();
        FundamentalSystem::iterated_integrals(&qs).unwrap()
    }

    #[test]
    fn iterated_integrals_solve_the_operator() {
        let fs = nested(&[&[1, 1], &[1, 0, 1], &[1, 1]]);
        assert_eq!(fs.polys()[1], Poly::new(vec![int(0), int(1), crate::scalar::ratio(1, 2)]));
        assert_eq!(fs.order(), 4);
    }

    #[test]
    fn palindromic_order_six_center_is_self_adjoint() {
        let w = build_center(&nested(&[&[1, 1], &[1], &[1, 0, 1], &[1], &[1, 1]]), 3).unwrap();
        assert_eq!((w.x.dim(), w.z.dim()), (14, 6));
        let v = crate::selfadj::recover_symplectic(&w.center().unwrap(), 0).unwrap();
        let sigma = &(&Multivector::e(6, &[1, 6]) - &Multivector::e(6, &[2, 5])) + &Multivector::e(6, &[3, 4]);
        assert_eq!(v.sigma(), Some(&sigma));
    }

    #[test]
    fn asymmetric_order_six_center_is_refuted() {
        use crate::selfadj::{recover_symplectic, VerdictStatus};
        let w = build_center(&nested(&[&[1, 1], &[1], &[1, 0, 1], &[1], &[1, 2]]), 3).unwrap();
        assert_eq!(w.z.dim(), 6);
        let v = recover_symplectic(&w.center().unwrap(), 0).unwrap();
        assert!(matches!(v.status, VerdictStatus::RefutedByOrbit { .. }));

        let w = build_center(&nested(&[&[1, 1], &[1], &[1, 0, 1], &[1, 2], &[1]]), 3).unwrap();
        assert_eq!(w.z.dim(), 5);
        let v = recover_symplectic(&w.center().unwrap(), 0).unwrap();
        assert!(matches!(v.status, VerdictStatus::DegreeOneEvidence(_)));
    }

    #[test]
    fn order_four_pipeline() {
        let w = build_center(&nested(&[&[1, 1], &[1, 0, 1], &[1, 1]]), 2).unwrap();
        assert_eq!(w.z.dim(), 1);
        assert!(crate::selfadj::recover_symplectic(&w.center().unwrap(), 0)
            .unwrap()
            .is_self_adjoint());
        let w = build_center(&nested(&[&[1, 1], &[1, 0, 1], &[1, 2]]), 2).unwrap();
        assert!(w.z.is_zero());
    }

    #[test]
    fn m_one_has_no_center() {
        let w = build_center(&FundamentalSystem::monomials(5), 1).unwrap();
        assert_eq!(w.x.dim(), 5);
        assert!(w.z.is_zero());
        assert_eq!(w.center(), Err(Error::ZeroInput));
        assert!(build_center(&FundamentalSystem::monomials(5), 5).is_err());
    }

    #[test]
    fn wronski_map_examples() {
        let fs = FundamentalSystem::monomials(4);
        let unit = |i: usize| (0..4).map(|j| if i == j { int(1) } else { int(0) }).collect::<Vec<_>>();
        let plane = Subspace::span(4, &[unit(0), unit(1)]).unwrap();
        assert_eq!(wronski_map(&fs, 2, &plane).unwrap(), p(&[1]));
        let plane = Subspace::span(4, &[unit(2), unit(3)]).unwrap();
        assert_eq!(wronski_map(&fs, 2, &plane).unwrap(), p(&[0, 0, 0, 0, 1]));
        assert!(wronski_map(&fs, 3, &plane).is_err());
    }

    #[test]
    fn wronski_map_factors_through_projection() {
        let fs = FundamentalSystem::monomials(4);
        let w = build_center(&fs, 2).unwrap();
        let z = w.center().unwrap();
        let rows = vec![
            vec![int(1), int(2), int(0), int(-1)],
            vec![int(0), int(3), int(1), int(1)],
        ];
        let plane = Subspace::span(4, &rows).unwrap();
        let pt = pluecker(&rows).unwrap();
        let direct = wronski_map(&fs, 2, &plane).unwrap();
        let via_p = w.wronskian_of(pt.vector()).unwrap();
        let q = project(pt.vector(), &z).unwrap();
        let via_q = w.wronskian_of_quotient(&q.0).unwrap();
        assert_eq!(direct.monic(), via_p.monic());
        assert_eq!(direct.monic(), via_q.monic());
    }

    #[test]
    fn fs_json_roundtrip() {
        let fs = FundamentalSystem::monomials(3);
        let s = serde_json::to_string(&fs).unwrap();
        assert_eq!(serde_json::from_str::<FundamentalSystem>(&s).unwrap(), fs);
        let bad = r#"{"polys":[{"coeffs":["1/1"]},{"coeffs":["2/1"]}]}"#;
        assert!(serde_json::from_str::<FundamentalSystem>(bad).is_err());
    }
}
