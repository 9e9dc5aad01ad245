//! Algebraic identities checked on generated data.

use grassproj::exactla::{resolvent, Matrix, Poly, PolyMatrix, Subspace};
use grassproj::exalg::{binomial, contract, top_pairing, Covector, Multivector};
use grassproj::grass::{pluecker, project, skew_complement, skew_matrix, Center, PluckerPoint, SymplecticForm};
use grassproj::orbits::{classify_orbit, o5_decompose};
use grassproj::scalar::{int, Scalar};
use grassproj::wronski::{formal_adjoint, wronskian, Odo};
use num_traits::Zero;
use proptest::prelude::*;

fn scalars(n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(-4i64..=4, n).prop_map(|v| v.into_iter().map(int).collect())
}

fn multivector(n: usize, k: usize) -> impl Strategy<Value = Multivector> {
    scalars(binomial(n, k)).prop_map(move |c| Multivector::from_coords(n, k, &c).unwrap())
}

fn square(n: usize) -> impl Strategy<Value = Matrix> {
    scalars(n * n).prop_map(move |d| Matrix::from_vec(n, n, d).unwrap())
}

fn poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    scalars(max_deg + 1).prop_map(Poly::new)
}

fn sign(k: usize) -> Scalar {
    if k.is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn wedge_graded_commutative(a in multivector(5, 2), b in multivector(5, 1)) {
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        prop_assert_eq!(ab, ba.scale(&sign(2)));
        let c = b.wedge(&b).unwrap();
        prop_assert!(c.is_zero());
    }

    #[test]
    fn wedge_associative(a in multivector(6, 1), b in multivector(6, 2), c in multivector(6, 2)) {
        let l = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let r = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn contraction_is_a_derivation(
        phi in scalars(5), a in multivector(5, 2), b in multivector(5, 1)
    ) {
        let phi = Covector::new(phi);
        let lhs = contract(&phi, &a.wedge(&b).unwrap()).unwrap();
        let rhs = &contract(&phi, &a).unwrap().wedge(&b).unwrap()
            + &a.wedge(&contract(&phi, &b).unwrap()).unwrap().scale(&sign(2));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn top_pairing_is_graded_symmetric(a in multivector(5, 2), b in multivector(5, 3)) {
        let ab = top_pairing(&a, &b).unwrap();
        let ba = top_pairing(&b, &a).unwrap();
        prop_assert_eq!(ab, ba * sign(2 * 3));
    }

    #[test]
    fn pfaffian_squares_to_determinant(s in multivector(6, 2)) {
        let m = skew_matrix(&s);
        let pf = m.pfaffian().unwrap();
        prop_assert_eq!(&pf * &pf, m.determinant().unwrap());
    }

    #[test]
    fn determinant_is_multiplicative(a in square(4), b in square(4)) {
        let ab = a.try_mul(&b).unwrap();
        prop_assert_eq!(ab.determinant().unwrap(), a.determinant().unwrap() * b.determinant().unwrap());
        prop_assert_eq!(a.determinant().unwrap(), a.det_cofactor().unwrap());
    }

    #[test]
    fn rank_nullity(m in scalars(12)) {
        let m = Matrix::from_vec(3, 4, m).unwrap();
        let k = m.kernel_vectors();
        prop_assert_eq!(m.rank() + k.len(), 4);
        for v in k {
            prop_assert!(m.mul_vec(&v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn resolvent_identity(a in square(4)) {
        let r = resolvent(&a).unwrap();
        let s = Poly::from_ints(&[0, 1]);
        let si_a = PolyMatrix::identity(4).scale(&s).try_sub(&PolyMatrix::from_scalar(&a)).unwrap();
        let prod = si_a.try_mul(&r.adjugate).unwrap();
        prop_assert_eq!(prod, PolyMatrix::identity(4).scale(&r.charpoly));
    }

    #[test]
    fn gcd_divides_and_division_reconstructs(a in poly(4), b in poly(3)) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let g = a.gcd(&b).unwrap();
        prop_assert!(a.exact_div(&g).unwrap().is_some());
        prop_assert!(b.exact_div(&g).unwrap().is_some());
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.degree() < b.degree() || r.is_zero());
    }

    #[test]
    fn subspace_dimension_formula(a in scalars(12), b in scalars(12)) {
        let u = Subspace::row_space(&Matrix::from_vec(2, 6, a).unwrap());
        let v = Subspace::row_space(&Matrix::from_vec(2, 6, b).unwrap());
        let sum = u.sum(&v).unwrap();
        let cap = u.intersection(&v).unwrap();
        prop_assert_eq!(sum.dim() + cap.dim(), u.dim() + v.dim());
        prop_assert!(u.contains_subspace(&cap).unwrap() && v.contains_subspace(&cap).unwrap());
    }

    #[test]
    fn pluecker_is_basis_independent(rows in scalars(8), g in square(2)) {
        let basis = vec![rows[..4].to_vec(), rows[4..].to_vec()];
        prop_assume!(Matrix::from_rows(4, &basis).unwrap().rank() == 2 && g.rank() == 2);
        let mixed = g.try_mul(&Matrix::from_rows(4, &basis).unwrap()).unwrap().row_vecs();
        prop_assert_eq!(pluecker(&basis).unwrap(), pluecker(&mixed).unwrap());
    }

    #[test]
    fn skew_complement_is_an_involution(rows in scalars(18)) {
        let l = Subspace::row_space(&Matrix::from_vec(3, 6, rows).unwrap());
        prop_assume!(l.dim() == 3);
        let sigma = &(&Multivector::e(6, &[1, 2]) + &Multivector::e(6, &[3, 4])) + &Multivector::e(6, &[5, 6]);
        let f = SymplecticForm::new(&sigma).unwrap();
        let lc = skew_complement(&l, &f).unwrap();
        prop_assert_eq!(lc.dim(), 3);
        prop_assert_eq!(skew_complement(&lc, &f).unwrap(), l);
    }

    #[test]
    fn projection_is_projective(w in multivector(6, 3), c in 1i64..5) {
        let z = Center::new(6, 3, &[&Multivector::e(6, &[1, 2, 3]) + &Multivector::e(6, &[4, 5, 6])]).unwrap();
        prop_assume!(!z.contains(&w).unwrap());
        prop_assert_eq!(project(&w, &z).unwrap(), project(&w.scale(&int(-c)), &z).unwrap());
    }

    #[test]
    fn orbit_is_gl_invariant(g in square(6)) {
        prop_assume!(g.rank() == 6);
        let w5 = &Multivector::e(6, &[1, 2, 3]) + &Multivector::e(6, &[1, 4, 5]);
        let wg = w5.transform(&g).unwrap();
        prop_assert_eq!(classify_orbit(&wg).unwrap().label, classify_orbit(&w5).unwrap().label);
        let d = o5_decompose(&wg).unwrap();
        prop_assert_eq!(Multivector::vector(&d.alpha_vector()).wedge(&d.sigma).unwrap(), wg);
    }

    #[test]
    fn wronskian_scales_by_det(cs in scalars(16), g in square(4)) {
        let fs: Vec<Poly> = cs.chunks(4).map(|c| Poly::new(c.to_vec())).collect();
        let mixed: Vec<Poly> = (0..4)
            .map(|i| (0..4).fold(Poly::zero(), |acc, j| &acc + &fs[j].scale(g.get(i, j))))
            .collect();
        prop_assert_eq!(wronskian(&mixed), wronskian(&fs).scale(&g.determinant().unwrap()));
    }

    #[test]
    fn adjoint_is_involutive(cs in prop::collection::vec(poly(2), 1..5)) {
        let l = Odo::new(cs.into_iter().map(Into::into).collect());
        let adj = formal_adjoint(&l);
        let back = formal_adjoint(&adj.op);
        prop_assert_eq!(back.op, l);
    }

    #[test]
    fn decomposable_points_round_trip(rows in scalars(18)) {
        let m = Matrix::from_vec(3, 6, rows).unwrap();
        prop_assume!(m.rank() == 3);
        let l = Subspace::row_space(&m);
        let p = PluckerPoint::of_subspace(&l);
        prop_assert_eq!(grassproj::grass::is_decomposable(p.vector()), Some(l));
    }
}
