//! Self-adjoint centers: does `Z` contain `σ ∧ ∧^{m-2} V` for a
//! nondegenerate `σ`, and if so, which `σ`.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{Matrix, Subspace};
use crate::exalg::{subsets, Multivector};
use crate::grass::{pluecker, project, skew_complement, skew_matrix, Center, SymplecticForm};
use crate::orbits::{classify_orbit, o5_decompose, OrbitLabel, OrbitReport};
use crate::rng::Sampler;
use crate::scalar::{self, Scalar};

/// Number of random combinations drawn on top of a basis.
pub const SAMPLES: usize = 20;
/// Random recombinations tried when choosing a basis adapted to the vertex maps.
pub const BASIS_TRIES: usize = 50;
const BOUND: i64 = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum DegreeOneReason {
    SmallCenter { dim: usize },
    VertexDegenerate { e_rank: usize, f_rank: usize },
    BasisPattern,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum VerdictStatus {
    SelfAdjoint { sigma: Multivector },
    /// An element of `Z` outside O5. O10 witnesses land here too: such a
    /// center meets the Grassmannian.
    RefutedByOrbit { witness: Multivector, orbit: OrbitLabel },
    RefutedBySolve,
    DegreeOneEvidence(DegreeOneReason),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    pub basis_reports: Vec<OrbitReport>,
    pub e_spans: Option<bool>,
    pub f_spans: Option<bool>,
    /// Dimension of the affine solution space of the `σ` system.
    pub solution_dim: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfAdjointVerdict {
    #[serde(flatten)]
    pub status: VerdictStatus,
    pub diagnostics: Diagnostics,
}

impl SelfAdjointVerdict {
    fn new(status: VerdictStatus, diagnostics: Diagnostics) -> Self {
        SelfAdjointVerdict { status, diagnostics }
    }

    pub fn sigma(&self) -> Option<&Multivector> {
        match &self.status {
            VerdictStatus::SelfAdjoint { sigma } => Some(sigma),
            _ => None,
        }
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.sigma().is_some()
    }
}

fn pfaffian_nonzero(sigma: &Multivector) -> bool {
    sigma.dim().is_multiple_of(2) && skew_matrix(sigma).pfaffian().is_ok_and(|p| !p.is_zero())
}

/// Whether `σ ∧ b ∈ Z` for every basis monomial `b` of `∧^{m-2} V`.
pub fn contains_sigma_wedge(z: &Center, sigma: &Multivector, m: usize) -> Result<bool> {
    if sigma.grade() != 2 || sigma.dim() != z.ambient_dim() || m != z.grade() || m < 2 {
        return Err(Error::GradeMismatch(format!(
            "σ in ∧^{} Q^{} with m = {m} against a center in ∧^{} Q^{}",
            sigma.grade(),
            sigma.dim(),
            z.grade(),
            z.ambient_dim()
        )));
    }
    let n = z.ambient_dim();
    for b in subsets(n, m - 2) {
        if !z.contains(&sigma.wedge(&Multivector::e(n, b.as_slice()))?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The linear space `{σ ∈ ∧²V : σ ∧ ∧^{m-2}V ⊆ Z}` in coordinates of `∧²V`.
pub fn sigma_wedge_space(z: &Center) -> Result<Subspace> {
    let (n, m) = (z.ambient_dim(), z.grade());
    if m < 2 {
        return Err(Error::GradeMismatch("centers of grade < 2 contain no σ ∧ ∧^{m-2}V".into()));
    }
    let perp = z.space().annihilator();
    let pairs = subsets(n, 2);
    let mut rows = Vec::new();
    for b in subsets(n, m - 2) {
        let images: Vec<Vec<Scalar>> = pairs
            .iter()
            .map(|p| {
                Multivector::e(n, p.as_slice())
                    .wedge(&Multivector::e(n, b.as_slice()))
                    .map(|x| x.coords())
            })
            .collect::<Result<_>>()?;
        for phi in perp.basis_vectors() {
            rows.push(
                images
                    .iter()
                    .map(|img| img.iter().zip(&phi).map(|(a, b)| a * b).sum())
                    .collect(),
            );
        }
    }
    if rows.is_empty() {
        return Ok(Subspace::full(pairs.len()));
    }
    Ok(Subspace::kernel(&Matrix::from_rows(pairs.len(), &rows)?))
}

/// Searches [`sigma_wedge_space`] for a nondegenerate form: its basis first,
/// then seeded random combinations. Independent of the vertex-map route.
pub fn find_symplectic_in(z: &Center, seed: u64) -> Result<Option<Multivector>> {
    let n = z.ambient_dim();
    let space = sigma_wedge_space(z)?;
    if space.is_zero() || !n.is_multiple_of(2) {
        return Ok(None);
    }
    let forms: Vec<Multivector> = space
        .basis_vectors()
        .iter()
        .map(|v| Multivector::from_coords(n, 2, v))
        .collect::<Result<_>>()?;
    let mut rng = Sampler::new(seed);
    let candidates = forms
        .clone()
        .into_iter()
        .chain((0..SAMPLES).map(|_| rng.combination(&forms, BOUND)));
    for s in candidates {
        if pfaffian_nonzero(&s) {
            return Ok(Some(s.normalized()));
        }
    }
    Ok(None)
}

/// Kernel lines `α_ω` and hyperplanes `A_ω` over a basis of `Z` and
/// [`SAMPLES`] seeded combinations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexMaps {
    pub samples: Vec<Multivector>,
    #[serde(with = "scalar::serde_scalar_rows")]
    pub alphas: Vec<Vec<Scalar>>,
    #[serde(with = "scalar::serde_scalar_rows")]
    pub hyperplanes: Vec<Vec<Scalar>>,
    pub e_rank: usize,
    pub f_rank: usize,
    /// First sample found outside O5, if any; the maps are then partial.
    pub refutation: Option<(Multivector, OrbitLabel)>,
    #[serde(skip)]
    pub basis_reports: Vec<OrbitReport>,
}

impl VertexMaps {
    pub fn e_spans(&self) -> bool {
        self.e_rank == 6
    }

    pub fn f_spans(&self) -> bool {
        self.f_rank == 6
    }
}

fn check_36(z: &Center) -> Result<()> {
    if z.ambient_dim() != 6 || z.grade() != 3 {
        return Err(Error::GradeMismatch(format!(
            "expected a center in ∧^3 Q^6, got ∧^{} Q^{}",
            z.grade(),
            z.ambient_dim()
        )));
    }
    Ok(())
}

fn rank_of(vs: &[Vec<Scalar>], n: usize) -> Result<usize> {
    if vs.is_empty() {
        return Ok(0);
    }
    Ok(Matrix::from_rows(n, vs)?.rank())
}

pub fn vertex_maps(z: &Center, seed: u64) -> Result<VertexMaps> {
    check_36(z)?;
    let basis = z.basis();
    let mut rng = Sampler::new(seed);
    let mut samples = basis.clone();
    samples.extend((0..SAMPLES).map(|_| rng.combination(&basis, BOUND)));

    let mut vm = VertexMaps {
        samples: Vec::new(),
        alphas: Vec::new(),
        hyperplanes: Vec::new(),
        e_rank: 0,
        f_rank: 0,
        refutation: None,
        basis_reports: Vec::new(),
    };
    for (i, w) in samples.into_iter().enumerate() {
        if w.is_zero() {
            continue;
        }
        let report = classify_orbit(&w)?;
        if i < basis.len() {
            vm.basis_reports.push(report.clone());
        }
        if report.label != OrbitLabel::O5 {
            vm.refutation = Some((w, report.label));
            break;
        }
        let d = o5_decompose(&w)?;
        vm.alphas.push(d.alpha_vector());
        vm.hyperplanes.push(d.hyperplane_form.coeffs().to_vec());
        vm.samples.push(w);
    }
    vm.e_rank = rank_of(&vm.alphas, 6)?;
    vm.f_rank = rank_of(&vm.hyperplanes, 6)?;
    Ok(vm)
}

/// Greedy choice of six elements of `Z` whose kernel lines, hyperplanes and
/// selves are each independent.
fn adapted_basis(z: &Center, seed: u64) -> Result<Option<Vec<(Multivector, Vec<Scalar>)>>> {
    let basis = z.basis();
    let mut rng = Sampler::with_stream(seed, 1);
    let pool = basis
        .clone()
        .into_iter()
        .chain((0..BASIS_TRIES).map(|_| rng.combination(&basis, BOUND)));
    let mut chosen: Vec<(Multivector, Vec<Scalar>)> = Vec::new();
    let (mut ws, mut alphas, mut forms) = (Vec::new(), Vec::new(), Vec::new());
    for w in pool {
        let d = o5_decompose(&w)?;
        let (a, f) = (d.alpha_vector(), d.hyperplane_form.coeffs().to_vec());
        let k = chosen.len() + 1;
        let extend = |acc: &Vec<Vec<Scalar>>, v: Vec<Scalar>, n: usize| -> Result<Option<Vec<Vec<Scalar>>>> {
            let mut t = acc.clone();
            t.push(v);
            Ok((rank_of(&t, n)? == k).then_some(t))
        };
        let (Some(ws2), Some(al2), Some(fs2)) = (
            extend(&ws, w.coords(), 20)?,
            extend(&alphas, a.clone(), 6)?,
            extend(&forms, f, 6)?,
        ) else {
            continue;
        };
        (ws, alphas, forms) = (ws2, al2, fs2);
        chosen.push((w, a));
        if chosen.len() == 6 {
            return Ok(Some(chosen));
        }
    }
    Ok(None)
}

/// Decides whether a center in `∧³Q⁶` (or `∧²Q⁴`) is self-adjoint and
/// recovers `σ` when it is.
///
/// In `∧³Q⁶` a six-dimensional center is handled by solving
/// `α_i ∧ σ = c_i ω_i` over a basis adapted to the vertex maps. Smaller
/// centers already give a degree-one projection and short-circuit.
pub fn recover_symplectic(z: &Center, seed: u64) -> Result<SelfAdjointVerdict> {
    match (z.ambient_dim(), z.grade()) {
        (4, 2) => recover_point_center(z, seed),
        (6, 3) => recover_36(z, seed),
        (n, m) => Err(Error::OutOfRange(format!(
            "self-adjointness verdicts cover ∧^2 Q^4 and ∧^3 Q^6, got ∧^{m} Q^{n}"
        ))),
    }
}

fn recover_point_center(z: &Center, seed: u64) -> Result<SelfAdjointVerdict> {
    let status = match find_symplectic_in(z, seed)? {
        Some(sigma) => VerdictStatus::SelfAdjoint { sigma },
        None => VerdictStatus::RefutedBySolve,
    };
    Ok(SelfAdjointVerdict::new(status, Diagnostics::default()))
}

fn recover_36(z: &Center, seed: u64) -> Result<SelfAdjointVerdict> {
    let mut diag = Diagnostics::default();
    if z.dim() > 6 {
        return Err(Error::OutOfRange(format!(
            "centers of dimension {} > 6 are outside the detector's scope",
            z.dim()
        )));
    }
    if z.dim() <= 5 {
        let reason = DegreeOneReason::SmallCenter { dim: z.dim() };
        return Ok(SelfAdjointVerdict::new(VerdictStatus::DegreeOneEvidence(reason), diag));
    }

    let vm = vertex_maps(z, seed)?;
    diag.basis_reports = vm.basis_reports.clone();
    if let Some((witness, orbit)) = vm.refutation.clone() {
        return Ok(SelfAdjointVerdict::new(
            VerdictStatus::RefutedByOrbit { witness, orbit },
            diag,
        ));
    }
    diag.e_spans = Some(vm.e_spans());
    diag.f_spans = Some(vm.f_spans());
    if !vm.e_spans() || !vm.f_spans() {
        let reason = DegreeOneReason::VertexDegenerate {
            e_rank: vm.e_rank,
            f_rank: vm.f_rank,
        };
        return Ok(SelfAdjointVerdict::new(VerdictStatus::DegreeOneEvidence(reason), diag));
    }
    let Some(chosen) = adapted_basis(z, seed)? else {
        return Ok(SelfAdjointVerdict::new(
            VerdictStatus::DegreeOneEvidence(DegreeOneReason::BasisPattern),
            diag,
        ));
    };

    // unknowns: 15 coordinates of σ, then c_2..c_6; c_1 = 1
    let pairs = subsets(6, 2);
    let mut m = Matrix::zeros(120, 20);
    let mut rhs = vec![Scalar::zero(); 120];
    for (i, (w, a)) in chosen.iter().enumerate() {
        let av = Multivector::vector(a);
        for (j, p) in pairs.iter().enumerate() {
            let img = av.wedge(&Multivector::e(6, p.as_slice()))?.coords();
            for (r, x) in img.into_iter().enumerate() {
                m.set(20 * i + r, j, x);
            }
        }
        for (r, x) in w.coords().into_iter().enumerate() {
            if i == 0 {
                rhs[r] = x;
            } else {
                m.set(20 * i + r, 14 + i, -x);
            }
        }
    }
    let Some((particular, kernel)) = m.solve(&rhs)? else {
        return Ok(SelfAdjointVerdict::new(VerdictStatus::RefutedBySolve, diag));
    };
    diag.solution_dim = Some(kernel.len());

    let to_sigma = |x: &[Scalar]| Multivector::from_coords(6, 2, &x[..15]);
    let mut candidates = vec![particular.clone()];
    for k in &kernel {
        candidates.push(particular.iter().zip(k).map(|(p, q)| p + q).collect());
    }
    if !kernel.is_empty() {
        let mut rng = Sampler::with_stream(seed, 2);
        for _ in 0..SAMPLES {
            let mut x = particular.clone();
            for k in &kernel {
                let c = rng.scalar(BOUND);
                for (xi, ki) in x.iter_mut().zip(k) {
                    *xi += &c * ki;
                }
            }
            candidates.push(x);
        }
    }
    for x in candidates {
        let sigma = to_sigma(&x)?;
        if pfaffian_nonzero(&sigma) && contains_sigma_wedge(z, &sigma, 3)? {
            return Ok(SelfAdjointVerdict::new(
                VerdictStatus::SelfAdjoint {
                    sigma: sigma.normalized(),
                },
                diag,
            ));
        }
    }
    Ok(SelfAdjointVerdict::new(VerdictStatus::RefutedBySolve, diag))
}

/// `span(V ∧ σ ∧ ... )`: the center `σ ∧ ∧^{m-2} V`.
pub fn sigma_wedge_center(sigma: &Multivector, m: usize) -> Result<Center> {
    let n = sigma.dim();
    let gens: Vec<Multivector> = subsets(n, m - 2)
        .iter()
        .map(|b| sigma.wedge(&Multivector::e(n, b.as_slice())))
        .collect::<Result<_>>()?;
    Center::new(n, m, &gens)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialOutcome {
    pub passed: bool,
    pub lagrangian: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleCoverReport {
    pub trials: Vec<TrialOutcome>,
    pub passes: usize,
    pub failures: usize,
    pub lagrangian: usize,
}

/// Checks `π_Z(Λ) = π_Z(Λ^∠)` on seeded random `Λ ∈ Gr_m Q^{2m}`. Trial `i`
/// draws from its own stream, so trials are independent of each other.
pub fn verify_double_cover(
    z: &Center,
    sigma: &SymplecticForm,
    trials: usize,
    seed: u64,
) -> Result<DoubleCoverReport> {
    let (n, m) = (z.ambient_dim(), z.grade());
    if sigma.sigma().dim() != n || n != 2 * m {
        return Err(Error::DimensionMismatch(format!(
            "double cover needs a center in ∧^m Q^2m and σ on the same space, got m = {m}, n = {n}, σ on Q^{}",
            sigma.sigma().dim()
        )));
    }
    let mut out = Vec::with_capacity(trials);
    for t in 0..trials {
        let mut rng = Sampler::with_stream(seed, t as u64);
        let l = rng.subspace(m, n, BOUND);
        let lc = skew_complement(&l, sigma)?;
        let p = project(pluecker(&l.basis_vectors())?.vector(), z)?;
        let q = project(pluecker(&lc.basis_vectors())?.vector(), z)?;
        out.push(TrialOutcome {
            passed: p == q,
            lagrangian: l == lc,
        });
    }
    let passes = out.iter().filter(|t| t.passed).count();
    Ok(DoubleCoverReport {
        passes,
        failures: out.len() - passes,
        lagrangian: out.iter().filter(|t| t.lagrangian).count(),
        trials: out,
    })
}
