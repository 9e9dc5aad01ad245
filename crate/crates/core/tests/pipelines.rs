//! Cross-module behavior: detectors against constructed centers, Wronski
//! maps against projections, and syscon fixtures through `selfadj`.

use grassproj::exactla::{Poly, Subspace};
use grassproj::exalg::{binomial, Multivector};
use grassproj::grass::{
    fiber_partners, is_decomposable, pluecker, project, secant_meets_center, Center, PluckerPoint, SecantMeet,
};
use grassproj::orbits::{classify_line, LineType};
use grassproj::rng::Sampler;
use grassproj::scalar::int;
use grassproj::selfadj::{recover_symplectic, sigma_wedge_center, vertex_maps, VerdictStatus};
use grassproj::syscon::{hermann_martin, pp_center, symmetric_fixture};
use grassproj::wronski::{build_center, wronski_map, FundamentalSystem};
use num_traits::One;

fn e(idx: &[usize]) -> Multivector {
    Multivector::e(6, idx)
}

fn transform_center(z: &Center, g: &grassproj::exactla::Matrix) -> Center {
    let gens: Vec<Multivector> = z.basis().iter().map(|w| w.transform(g).unwrap()).collect();
    Center::new(z.ambient_dim(), z.grade(), &gens).unwrap()
}

#[test]
fn self_adjointness_is_gl_equivariant() {
    let mut rng = Sampler::new(11);
    let sigma = rng.symplectic(6, 3);
    let z = sigma_wedge_center(&sigma, 3).unwrap();
    let mut gens = z.basis();
    gens[2] = &gens[2] + &e(&[1, 2, 3]).scale(&int(2));
    let zp = Center::new(6, 3, &gens).unwrap();
    for seed in 0..10 {
        let g = rng.gl(6, 2);
        assert!(recover_symplectic(&transform_center(&z, &g), seed).unwrap().is_self_adjoint());
        assert!(!recover_symplectic(&transform_center(&zp, &g), seed).unwrap().is_self_adjoint());
    }
}

#[test]
fn vertex_maps_are_a_point_or_spanning() {
    let mut rng = Sampler::new(5);
    for i in 0..20 {
        let sigma = rng.symplectic(6, 3);
        let mut gens = sigma_wedge_center(&sigma, 3).unwrap().basis();
        if i % 2 == 1 {
            gens[0] = &gens[0] + &rng.multivector(6, 3, 1);
        }
        let z = Center::new(6, 3, &gens).unwrap();
        let vm = vertex_maps(&z, i).unwrap();
        if vm.refutation.is_some() {
            continue;
        }
        assert!(vm.e_rank == 1 || vm.e_rank == 6, "E_Z of rank {}", vm.e_rank);
    }
}

#[test]
fn constant_vertex_confines_partners() {
    // every element of Z has kernel line <e1>
    let gens = [
        e(&[1]).wedge(&(&e(&[2, 3]) + &e(&[4, 5]))).unwrap(),
        e(&[1]).wedge(&(&e(&[2, 4]) + &e(&[3, 6]))).unwrap(),
    ];
    let z = Center::new(6, 3, &gens).unwrap();
    let vm = vertex_maps(&z, 0).unwrap();
    assert_eq!(vm.e_rank, 1);
    let alpha = Subspace::span(6, &[vm.alphas[0].clone()]).unwrap();
    let mut rng = Sampler::new(9);
    for w in vm.samples.iter().take(6) {
        let wp = PluckerPoint::new(w).unwrap();
        for _ in 0..10 {
            let l = rng.subspace(3, 6, 3);
            let fp = fiber_partners(&PluckerPoint::of_subspace(&l), &wp).unwrap();
            if !fp.partners.is_empty() {
                assert!(l.contains_subspace(&alpha).unwrap());
                for p in &fp.partners {
                    assert!(is_decomposable(p.vector()).unwrap().contains_subspace(&alpha).unwrap());
                }
            }
        }
    }
}

#[test]
fn partner_pairs_span_secants_through_the_center_point() {
    let w0 = &e(&[1, 2, 3]) + &e(&[4, 5, 6]);
    let z = Center::new(6, 3, std::slice::from_ref(&w0)).unwrap();
    let mut rng = Sampler::new(2);
    for _ in 0..10 {
        let l = PluckerPoint::of_subspace(&rng.subspace(3, 6, 3));
        let fp = fiber_partners(&l, &PluckerPoint::new(&w0).unwrap()).unwrap();
        for p in &fp.partners {
            assert_eq!(
                secant_meets_center(&l, p, &z).unwrap(),
                SecantMeet::Point(PluckerPoint::new(&w0).unwrap())
            );
            assert_eq!(project(l.vector(), &z).unwrap(), project(p.vector(), &z).unwrap());
        }
    }
}

#[test]
fn line_type_survives_gl_action() {
    let w1 = &e(&[1, 3, 4]) + &e(&[1, 5, 6]);
    let w2 = &e(&[2, 3, 4]) + &e(&[2, 5, 6]);
    let mut rng = Sampler::new(4);
    for _ in 0..5 {
        let g = rng.gl(6, 2);
        let t = classify_line(&w1.transform(&g).unwrap(), &w2.transform(&g).unwrap()).unwrap();
        assert!(matches!(t, LineType::Type2 { .. }));
    }
}

fn palindromic_six() -> FundamentalSystem {
    let q = [Poly::from_ints(&[1, 1]), Poly::one(), Poly::from_ints(&[1, 0, 1])];
    FundamentalSystem::iterated_integrals(&[q[0].clone(), q[1].clone(), q[2].clone(), q[1].clone(), q[0].clone()])
        .unwrap()
}

#[test]
fn wronski_duality_dimensions() {
    for (fs, m) in [
        (FundamentalSystem::monomials(4), 2),
        (FundamentalSystem::monomials(5), 2),
        (FundamentalSystem::monomials(6), 3),
        (palindromic_six(), 3),
        (palindromic_six(), 2),
    ] {
        let w = build_center(&fs, m).unwrap();
        assert_eq!(w.x.dim() + w.z.dim(), binomial(fs.order(), m));
    }
}

#[test]
fn wronski_map_is_the_linear_projection() {
    let fs = palindromic_six();
    let w = build_center(&fs, 3).unwrap();
    let z = w.center().unwrap();
    let mut rng = Sampler::new(8);
    for _ in 0..50 {
        let plane = rng.subspace(3, 6, 3);
        let direct = wronski_map(&fs, 3, &plane).unwrap();
        let pt = pluecker(&plane.basis_vectors()).unwrap();
        let q = project(pt.vector(), &z).unwrap();
        assert_eq!(direct.monic(), w.wronskian_of_quotient(&q.0).unwrap().monic());
    }
}

#[test]
fn wronski_centers_miss_the_grassmannian_on_samples() {
    for (fs, m) in [(FundamentalSystem::monomials(4), 2), (palindromic_six(), 3)] {
        let z = build_center(&fs, m).unwrap().center().unwrap();
        let basis = z.basis();
        let mut rng = Sampler::new(3);
        for w in basis.iter().cloned().chain((0..20).map(|_| rng.combination(&basis, 4))) {
            assert!(is_decomposable(&w).is_none(), "{w} is decomposable");
        }
    }
}

#[test]
fn small_wronski_centers_report_degree_one() {
    let q: Vec<Poly> = [&[1, 1][..], &[1], &[1, 0, 1], &[1, 2], &[1]].iter().map(|c| Poly::from_ints(c)).collect();
    let w = build_center(&FundamentalSystem::iterated_integrals(&q).unwrap(), 3).unwrap();
    assert!(w.z.dim() <= 5);
    let v = recover_symplectic(&w.center().unwrap(), 0).unwrap();
    assert!(matches!(v.status, VerdictStatus::DegreeOneEvidence(_)));
}

#[test]
fn symmetric_fixtures_have_mcmillan_degree_and_self_adjoint_centers() {
    for (n, m) in [(4, 2), (13, 3)] {
        let s = symmetric_fixture(n, m, 1);
        assert!(s.is_minimal());
        assert_eq!(hermann_martin(&s).unwrap().degree(), n);
        let pc = pp_center(&s, 1).unwrap();
        assert!(pc.proper);
        assert!(recover_symplectic(&pc.center().unwrap(), 1).unwrap().is_self_adjoint());
    }
}

#[test]
fn nine_states_are_too_few_for_a_six_dimensional_center() {
    let s = symmetric_fixture(9, 3, 1);
    let pc = pp_center(&s, 1).unwrap();
    assert_eq!(pc.x.dim(), 10);
    assert_eq!(pc.z.dim(), 10);
}
