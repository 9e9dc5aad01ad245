//! Built-in fixtures, one per property the library is checked against.

use anyhow::Result;
use clap::ValueEnum;
use grassproj::exactla::{Matrix, Poly, Subspace};
use grassproj::exalg::Multivector;
use grassproj::grass::{fiber_partners, PluckerPoint, SymplecticForm};
use grassproj::orbits::{classify_line, classify_orbit};
use grassproj::rng::Sampler;
use grassproj::scalar::{int, Scalar};
use grassproj::selfadj::{recover_symplectic, sigma_wedge_center, verify_double_cover};
use grassproj::syscon::{
    curve_equivalence, feedback_transform, hermann_martin, pole_placement_poly, pp_center, symmetric_fixture,
};
use grassproj::wronski::{build_center, schubert_degree, FundamentalSystem};
use serde_json::{json, Value};

use crate::Report;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Demo {
    SegreNormalForms,
    SchubertDegrees,
    DoubleCover,
    FiberPartners,
    LineTypes,
    SelfAdjointDetection,
    WronskiCenters,
    PolePlacement,
    StateFeedback,
}

fn e(idx: &[usize]) -> Multivector {
    Multivector::e(6, idx)
}

fn sigma0() -> Multivector {
    &(&e(&[1, 2]) + &e(&[3, 4])) + &e(&[5, 6])
}

fn span(idx: &[usize]) -> Subspace {
    let rows: Vec<Vec<Scalar>> = idx
        .iter()
        .map(|&i| (1..=6).map(|j| if i == j { int(1) } else { int(0) }).collect())
        .collect();
    Subspace::span(6, &rows).expect("coordinate vectors")
}

pub fn run(which: Demo, seed: u64) -> Result<Report> {
    let value = match which {
        Demo::SegreNormalForms => {
            let forms = [
                ("O0", &e(&[1, 2, 3]) + &e(&[4, 5, 6])),
                ("O1", &(&e(&[1, 2, 6]) - &e(&[1, 5, 3])) + &e(&[2, 3, 4])),
                ("O5", &e(&[1, 2, 3]) + &e(&[1, 4, 5])),
                ("O10", e(&[1, 2, 3])),
            ];
            let reports = forms
                .iter()
                .map(|(name, w)| Ok(json!({ "normal_form": name, "form": w.to_string(), "report": classify_orbit(w)? })))
                .collect::<Result<Vec<Value>>>()?;
            Value::Array(reports)
        }
        Demo::SchubertDegrees => {
            let mut rows = Vec::new();
            for n in 2..=8 {
                for m in 1..n {
                    rows.push(json!({ "m": m, "n": n, "degree": schubert_degree(m, n)?.to_string() }));
                }
            }
            Value::Array(rows)
        }
        Demo::DoubleCover => {
            let z = sigma_wedge_center(&sigma0(), 3)?;
            let r = verify_double_cover(&z, &SymplecticForm::new(&sigma0())?, 100, seed)?;
            json!({ "sigma": sigma0().to_string(), "passes": r.passes, "failures": r.failures, "lagrangian": r.lagrangian })
        }
        Demo::FiberPartners => {
            let base = PluckerPoint::of_subspace(&span(&[1, 2, 3]));
            let w0 = PluckerPoint::new(&(&e(&[1, 2, 3]) + &e(&[4, 5, 6])))?;
            let w1 = PluckerPoint::new(&(&(&e(&[1, 2, 6]) - &e(&[1, 5, 3])) + &e(&[2, 3, 4])))?;
            json!({
                "through_O0": fiber_partners(&base, &w0)?,
                "through_O1": fiber_partners(&base, &w1)?,
            })
        }
        Demo::LineTypes => {
            let w = |a: &Multivector, b: &Multivector| a + b;
            let e1 = e(&[1]);
            let pairs = [
                (e1.wedge(&w(&e(&[2, 3]), &e(&[4, 5])))?, e1.wedge(&w(&e(&[2, 4]), &e(&[3, 6])))?),
                (w(&e(&[1, 3, 4]), &e(&[1, 5, 6])), w(&e(&[2, 3, 4]), &e(&[2, 5, 6]))),
                (w(&e(&[1, 2, 5]), &e(&[1, 3, 4])), w(&-&e(&[1, 2, 4]), &e(&[2, 3, 5]))),
            ];
            let out = pairs
                .iter()
                .map(|(a, b)| Ok(json!({ "first": a.to_string(), "second": b.to_string(), "line": classify_line(a, b)? })))
                .collect::<Result<Vec<Value>>>()?;
            Value::Array(out)
        }
        Demo::SelfAdjointDetection => {
            let mut rng = Sampler::new(seed);
            let mut out = Vec::new();
            for i in 0..4 {
                let sigma = rng.symplectic(6, 3);
                let mut gens = sigma_wedge_center(&sigma, 3)?.basis();
                if i % 2 == 1 {
                    gens[0] = &gens[0] + &rng.multivector(6, 3, 2);
                }
                let z = grassproj::grass::Center::new(6, 3, &gens)?;
                let v = recover_symplectic(&z, seed)?;
                out.push(json!({ "sigma": sigma.to_string(), "perturbed": i % 2 == 1, "status": v.status }));
            }
            Value::Array(out)
        }
        Demo::WronskiCenters => {
            let palindromic = FundamentalSystem::iterated_integrals(&[
                Poly::from_ints(&[1, 1]),
                Poly::from_ints(&[1]),
                Poly::from_ints(&[1, 0, 1]),
                Poly::from_ints(&[1]),
                Poly::from_ints(&[1, 1]),
            ])?;
            let cases = [
                ("x''''", FundamentalSystem::monomials(4), 2),
                ("x^(6)", FundamentalSystem::monomials(6), 3),
                ("D(1+t)^-1 D^2 (1+t^2)^-1 D^2 (1+t)^-1 D", palindromic, 3),
            ];
            let mut out = Vec::new();
            for (name, fs, m) in cases {
                let w = build_center(&fs, m)?;
                let verdict = match w.center() {
                    Ok(z) => match recover_symplectic(&z, seed) {
                        Ok(v) => serde_json::to_value(v.status)?,
                        Err(err) => json!({ "error": err.to_string() }),
                    },
                    Err(_) => Value::Null,
                };
                out.push(json!({ "operator": name, "m": m, "dim_x": w.x.dim(), "dim_z": w.z.dim(), "verdict": verdict }));
            }
            Value::Array(out)
        }
        Demo::PolePlacement => {
            let s = symmetric_fixture(4, 2, seed);
            let mut rng = Sampler::new(seed);
            let k = rng.matrix(2, 2, 3);
            json!({
                "realization": s,
                "gain": k,
                "open_loop": pole_placement_poly(&s, &Matrix::zeros(2, 2))?,
                "closed_loop": pole_placement_poly(&s, &k)?,
                "closed_loop_transposed_gain": pole_placement_poly(&s, &k.transpose())?,
                "curve_degree": hermann_martin(&s)?.degree(),
            })
        }
        Demo::StateFeedback => {
            let s = symmetric_fixture(4, 2, seed);
            let mut rng = Sampler::new(seed);
            let (r, w, t, q) = (rng.gl(4, 2), rng.gl(2, 2), rng.gl(2, 2), rng.matrix(2, 2, 2));
            let st = feedback_transform(&s, &r, &w, &t, &q)?;
            let g = curve_equivalence(&w, &t, &q)?;
            let related = hermann_martin(&s)?.transform(&g)?.is_proportional(&hermann_martin(&st)?);
            let v = recover_symplectic(&pp_center(&st, seed)?.center()?, seed)?;
            json!({ "curves_related_by_g": related, "transformed_status": v.status })
        }
    };
    Report::ok(value)
}
