//! Checks around two-dimensional brackets with surjective β.
//!
//! Antisymmetry and both bracket identities are linear in β, so for a fixed
//! braiding the candidates form a subspace of Hom(V⊗V, V); only Jacobi is
//! quadratic and is tested element by element. Families are enumerated over a
//! small prime field and each one is expected to have no surviving β.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::braided::{slot_lift_map, BraidedSpace};
use crate::classify::table::row_matrices;
use crate::classify::ClassifyError;
use crate::linalg::{Mat, Subspace};
use crate::qlie::{verify_lifted, LiftedQLie};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AppendixScope {
    Udu,
    CaseFamilies,
    RandomSurvey,
}

impl std::str::FromStr for AppendixScope {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "udu" => Ok(AppendixScope::Udu),
            "case_families" | "case-families" => Ok(AppendixScope::CaseFamilies),
            "random_survey" | "random-survey" => Ok(AppendixScope::RandomSurvey),
            _ => Err(format!("unknown scope {s:?} (expected udu, case_families or random_survey)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UduReport {
    pub trials: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyReport {
    pub name: &'static str,
    /// Braidings of the family's shape.
    pub braidings: usize,
    /// Of those: Yang–Baxter holds and f = (X+1)h with h(-1) != 0.
    pub admitted: usize,
    /// β in the linear solution spaces that satisfy the branch predicate.
    pub beta_checked: usize,
    /// β that also satisfy Jacobi and have the family's rank; expected to be none.
    pub survivors: Vec<LiftedQLie>,
}

impl FamilyReport {
    pub fn is_empty(&self) -> bool {
        self.survivors.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SurveyReport {
    pub samples: usize,
    pub admitted: usize,
    pub verified: usize,
    pub rank_two: usize,
    /// Rank-two instances with dim Im(c+Id) != 2.
    pub image_failures: usize,
    /// Rank-two instances where ker β = Im(c+Id) ⊕ (ker β ∩ Im h(c)) fails.
    pub kernel_failures: usize,
}

impl SurveyReport {
    pub fn holds(&self) -> bool {
        self.image_failures == 0 && self.kernel_failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AppendixReport {
    pub udu: Option<UduReport>,
    pub families: Vec<FamilyReport>,
    pub survey: Option<SurveyReport>,
}

impl AppendixReport {
    pub fn holds(&self) -> bool {
        self.udu.as_ref().is_none_or(|u| u.failures == 0)
            && self.families.iter().all(FamilyReport::is_empty)
            && self.survey.as_ref().is_none_or(SurveyReport::holds)
    }
}

fn flatten(m: &Mat) -> Vec<Scalar> {
    m.to_rows().into_iter().flatten().collect()
}

fn unflatten(field: Field, n: usize, v: &[Scalar]) -> Mat {
    Mat::from_fn(field, n, n * n, |i, j| v[i * n * n + j].clone())
}

/// β (flattened row-major, n·n² coordinates) satisfying antisymmetry and both
/// bracket identities for the braiding `b`.
pub fn bracket_solution_space(b: &BraidedSpace) -> Subspace {
    let (f, n) = (b.field(), b.dim());
    let c = b.c();
    let cpi = c.add(&b.identity(2));
    let (c1, c2) = (b.c_slot(1, 3), b.c_slot(2, 3));
    let (c12, c21) = (c1.mul(&c2), c2.mul(&c1));
    let unknowns = n * n * n;
    let cols: Vec<Vec<Scalar>> = (0..unknowns)
        .map(|k| {
            let mut e = vec![f.zero(); unknowns];
            e[k] = f.one();
            let beta = unflatten(f, n, &e);
            let b1 = slot_lift_map(&beta, n, 1, 3).expect("fits");
            let b2 = slot_lift_map(&beta, n, 2, 3).expect("fits");
            let mut col = flatten(&beta.mul(&cpi));
            col.extend(flatten(&c.mul(&b1).sub(&b2.mul(&c12))));
            col.extend(flatten(&c.mul(&b2).sub(&b1.mul(&c21))));
            col
        })
        .collect();
    let m = Mat::from_fn(f, cols[0].len(), unknowns, |i, j| cols[j][i].clone());
    m.kernel()
}

/// Jacobi on Ē₂ for a β already satisfying the linear identities.
struct JacobiTester {
    n: usize,
    e2bar: Vec<Vec<Scalar>>,
}

impl JacobiTester {
    fn new(b: &BraidedSpace) -> JacobiTester {
        JacobiTester { n: b.dim(), e2bar: b.e2bar().basis().to_vec() }
    }

    fn holds(&self, beta: &Mat) -> bool {
        if self.e2bar.is_empty() {
            return true;
        }
        let b1 = slot_lift_map(beta, self.n, 1, 3).expect("fits");
        let b2 = slot_lift_map(beta, self.n, 2, 3).expect("fits");
        let m = beta.mul(&b1.sub(&b2));
        self.e2bar.iter().all(|z| m.apply(z).iter().all(Scalar::is_zero))
    }
}

/// All elements of a subspace over a finite field.
fn enumerate(s: &Subspace, elems: &[Scalar]) -> Vec<Vec<Scalar>> {
    let f = s.field();
    let mut out = vec![vec![f.zero(); s.ambient()]];
    for v in s.basis() {
        let mut next = Vec::with_capacity(out.len() * elems.len());
        for base in &out {
            for a in elems {
                next.push(base.iter().zip(v).map(|(x, y)| x + &(a * y)).collect());
            }
        }
        out = next;
    }
    out
}

fn parse_split(b: &BraidedSpace) -> bool {
    b.require_split().is_ok()
}

type BetaPredicate = fn(&Mat) -> bool;

struct Family {
    name: &'static str,
    braidings: Vec<Mat>,
    beta_rank: usize,
    predicate: BetaPredicate,
}

fn run_family(field: Field, fam: Family) -> FamilyReport {
    let elems = field.elements().expect("finite field");
    let total = fam.braidings.len();
    let results: Vec<(bool, usize, Vec<LiftedQLie>)> = fam
        .braidings
        .into_par_iter()
        .map(|c| {
            let Ok(space) = BraidedSpace::new(2, c) else { return (false, 0, vec![]) };
            if !parse_split(&space) {
                return (false, 0, vec![]);
            }
            let sol = bracket_solution_space(&space);
            let jac = JacobiTester::new(&space);
            let mut checked = 0;
            let mut surv = Vec::new();
            for v in enumerate(&sol, &elems) {
                let beta = unflatten(field, 2, &v);
                if !(fam.predicate)(&beta) {
                    continue;
                }
                checked += 1;
                if beta.rank() == fam.beta_rank && jac.holds(&beta) {
                    let q = LiftedQLie::new(space.clone(), beta).expect("shape");
                    // Confirm through the generic verifier before reporting.
                    if verify_lifted(&q).all() {
                        surv.push(q);
                    }
                }
            }
            (true, checked, surv)
        })
        .collect();
    let mut rep = FamilyReport { name: fam.name, braidings: total, admitted: 0, beta_checked: 0, survivors: vec![] };
    for (adm, checked, surv) in results {
        rep.admitted += adm as usize;
        rep.beta_checked += checked;
        rep.survivors.extend(surv);
    }
    rep
}

fn product(elems: &[Scalar], k: usize) -> Vec<Vec<Scalar>> {
    let mut out: Vec<Vec<Scalar>> = vec![vec![]];
    for _ in 0..k {
        out = out.into_iter().flat_map(|p| elems.iter().map(move |e| [p.clone(), vec![e.clone()]].concat())).collect();
    }
    out
}

/// c = -Id + v·wᵀ with v normalized (first nonzero entry 1) and w ≠ 0: each
/// braiding with rank(c + Id) = 1 appears exactly once.
fn rank_one_perturbations(field: Field) -> Vec<Mat> {
    let elems = field.elements().expect("finite field");
    let vecs: Vec<Vec<Scalar>> = product(&elems, 4).into_iter().filter(|v| v.iter().any(|x| !x.is_zero())).collect();
    let normalized: Vec<&Vec<Scalar>> = vecs.iter().filter(|v| v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_one())).collect();
    let minus_id = Mat::identity(field, 4).neg();
    let mut out = Vec::new();
    for v in &normalized {
        for w in &vecs {
            out.push(minus_id.add(&Mat::from_fn(field, 4, 4, |i, j| &v[i] * &w[j])));
        }
    }
    out
}

/// c = [[-1,a,b,0],[0,d,e,0],[0,g,h,0],[0,k,l,-1]]: x₁⊗x₁ and x₂⊗x₂ are
/// eigenvectors for -1, restricted to rank(c + Id) = 1.
fn diagonal_minus_one_shape(field: Field) -> Vec<Mat> {
    let elems = field.elements().expect("finite field");
    let (z, m1) = (field.zero(), field.int(-1));
    product(&elems, 8)
        .into_iter()
        .map(|p| {
            Mat::from_rows(
                field,
                vec![
                    vec![m1.clone(), p[0].clone(), p[1].clone(), z.clone()],
                    vec![z.clone(), p[2].clone(), p[3].clone(), z.clone()],
                    vec![z.clone(), p[4].clone(), p[5].clone(), z.clone()],
                    vec![z.clone(), p[6].clone(), p[7].clone(), m1.clone()],
                ],
            )
            .expect("4x4")
        })
        .filter(|c| c.add(&Mat::identity(field, 4)).rank() == 1)
        .collect()
}

/// Braidings stabilizing L = Kx₁ with c¹¹₁₁ = 0, i.e. upper shape
/// [[0,p,q,r],[0,0,s,t],[0,u,0,v],[0,0,0,w]], restricted by `keep(w)`.
fn image_line_shape(field: Field, keep: impl Fn(&Scalar) -> bool) -> Vec<Mat> {
    let elems = field.elements().expect("finite field");
    let z = field.zero();
    product(&elems, 8)
        .into_iter()
        .filter(|p| keep(&p[7]))
        .map(|p| {
            Mat::from_rows(
                field,
                vec![
                    vec![z.clone(), p[0].clone(), p[1].clone(), p[2].clone()],
                    vec![z.clone(), z.clone(), p[3].clone(), p[4].clone()],
                    vec![z.clone(), p[5].clone(), z.clone(), p[6].clone()],
                    vec![z.clone(), z.clone(), z.clone(), p[7].clone()],
                ],
            )
            .expect("4x4")
        })
        .collect()
}

fn b(m: &Mat, i: usize, col: usize) -> &Scalar {
    m.get(i, col)
}

fn line_beta(m: &Mat) -> bool {
    b(m, 0, 0).is_zero() && m.row(1).iter().all(Scalar::is_zero)
}

/// The exhaustive families over `field`, each expected to admit no β.
pub fn case_families(field: Field) -> Result<Vec<FamilyReport>, ClassifyError> {
    field.require_odd().map_err(|_| ClassifyError::CharTwo)?;
    if !field.is_finite() {
        return Err(ClassifyError::UnsupportedField(field.to_string()));
    }
    let shape = diagonal_minus_one_shape(field);
    let fams = vec![
        Family { name: "surjective beta, c = -Id", braidings: vec![Mat::identity(field, 4).neg()], beta_rank: 2, predicate: |_| true },
        Family { name: "surjective beta, rank(c+Id) = 1", braidings: rank_one_perturbations(field), beta_rank: 2, predicate: |_| true },
        Family {
            name: "surjective beta, xi xi in Im h(c), beta2_11 != 0",
            braidings: shape.clone(),
            beta_rank: 2,
            predicate: |m| !b(m, 1, 0).is_zero(),
        },
        Family {
            name: "surjective beta, xi xi in Im h(c), beta2_11 = 0, beta1_22 != 0",
            braidings: shape.clone(),
            beta_rank: 2,
            predicate: |m| b(m, 1, 0).is_zero() && !b(m, 0, 3).is_zero(),
        },
        Family {
            name: "surjective beta, xi xi in Im h(c), beta2_11 = beta1_22 = 0, beta2_21 != 0",
            braidings: shape.clone(),
            beta_rank: 2,
            predicate: |m| b(m, 1, 0).is_zero() && b(m, 0, 3).is_zero() && !b(m, 1, 1).is_zero(),
        },
        Family {
            name: "surjective beta, xi xi in Im h(c), beta2_11 = beta1_22 = beta2_21 = 0",
            braidings: shape,
            beta_rank: 2,
            predicate: |m| b(m, 1, 0).is_zero() && b(m, 0, 3).is_zero() && b(m, 1, 1).is_zero(),
        },
        Family {
            name: "line image, c11_11 = 0, c22_22 != 1, beta21 = 0",
            braidings: image_line_shape(field, |w| !w.is_one()),
            beta_rank: 1,
            predicate: |m| line_beta(m) && b(m, 0, 1).is_zero(),
        },
        Family {
            name: "line image, c11_11 = 0, c22_22 != 1, beta21 != 0",
            braidings: image_line_shape(field, |w| !w.is_one()),
            beta_rank: 1,
            predicate: |m| line_beta(m) && !b(m, 0, 1).is_zero(),
        },
        Family {
            name: "line image, c11_11 = 0, c22_22 = 1, beta22 != 0, beta12 = -beta21",
            braidings: image_line_shape(field, |w| w.is_one()),
            beta_rank: 1,
            predicate: |m| line_beta(m) && !b(m, 0, 3).is_zero() && (b(m, 0, 1) + b(m, 0, 2)).is_zero(),
        },
    ];
    Ok(fams.into_iter().map(|f| run_family(field, f)).collect())
}

/// 𝒰·D·𝒰 = Tr(D)·𝒰 for random diagonal D, 𝒰 the all-ones 4×4 matrix.
pub fn udu_check(field: Field, trials: usize, seed: u64) -> UduReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = Mat::from_fn(field, 4, 4, |_, _| field.one());
    let failures = (0..trials)
        .filter(|_| {
            let d: Vec<Scalar> = (0..4).map(|_| random_scalar(field, &mut rng)).collect();
            let dm = Mat::from_fn(field, 4, 4, |i, j| if i == j { d[i].clone() } else { field.zero() });
            u.mul(&dm).mul(&u) != u.scale(&dm.trace())
        })
        .count();
    UduReport { trials, failures }
}

pub fn random_scalar(field: Field, rng: &mut impl Rng) -> Scalar {
    match field {
        Field::Prime(p) => field.int(rng.gen_range(0..p as i64)),
        Field::Rationals => field.ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3)).expect("nonzero denominator"),
    }
}

fn random_nonzero(field: Field, rng: &mut impl Rng) -> Scalar {
    loop {
        let s = random_scalar(field, rng);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn random_invertible(field: Field, n: usize, rng: &mut impl Rng) -> Mat {
    loop {
        let m = Mat::from_fn(field, n, n, |_, _| random_scalar(field, rng));
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// A random braiding from structured families, conjugated by a random basis change.
pub fn random_braiding(field: Field, rng: &mut impl Rng) -> BraidedSpace {
    let c = match rng.gen_range(0..4) {
        0 => {
            // Diagonal type: c(xi⊗xj) = q_ij xj⊗xi.
            let q: Vec<Scalar> = (0..4).map(|_| random_nonzero(field, rng)).collect();
            let mut m = Mat::zeros(field, 4, 4);
            for (i, j) in [(0usize, 0usize), (1, 0), (0, 1), (1, 1)] {
                let (src, dst) = (i + 2 * j, j + 2 * i);
                m.set(dst, src, q[src].clone());
            }
            m
        }
        1 => {
            let row = rng.gen_range(1..=8u8);
            let g = random_scalar(field, rng);
            match row_matrices(row, Some(&g), field) {
                Ok(q) => q.space.c().clone(),
                Err(_) => Mat::identity(field, 4).neg(),
            }
        }
        k => {
            let mut m = Mat::identity(field, 4).neg();
            for _ in 0..(k - 1) {
                let v: Vec<Scalar> = (0..4).map(|_| random_scalar(field, rng)).collect();
                let w: Vec<Scalar> = (0..4).map(|_| random_scalar(field, rng)).collect();
                m = m.add(&Mat::from_fn(field, 4, 4, |i, j| &v[i] * &w[j]));
            }
            m
        }
    };
    let b = BraidedSpace::new_unchecked(2, c).expect("4x4");
    b.transform(&random_invertible(field, 2, rng)).expect("invertible")
}

/// Elements of `sol` to test: all of them when there are at most `cap`, else `cap` random ones.
fn candidates(sol: &Subspace, field: Field, cap: usize, rng: &mut impl Rng) -> Vec<Vec<Scalar>> {
    if let Some(elems) = field.elements() {
        let total = (elems.len() as f64).powi(sol.dim() as i32);
        if total <= cap as f64 {
            return enumerate(sol, &elems);
        }
    }
    (0..cap)
        .map(|_| {
            let mut v = vec![field.zero(); sol.ambient()];
            for bvec in sol.basis() {
                let a = random_scalar(field, rng);
                for (x, y) in v.iter_mut().zip(bvec) {
                    *x = &*x + &(&a * y);
                }
            }
            v
        })
        .collect()
}

/// Samples braidings, solves for β and checks every verified surjective β.
pub fn random_survey(field: Field, samples: usize, seed: u64) -> Result<SurveyReport, ClassifyError> {
    field.require_odd().map_err(|_| ClassifyError::CharTwo)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = SurveyReport { samples, ..Default::default() };
    for _ in 0..samples {
        let space = random_braiding(field, &mut rng);
        if !space.check_yang_baxter() {
            continue;
        }
        let Ok(split) = space.require_split() else { continue };
        rep.admitted += 1;
        let sol = bracket_solution_space(&space);
        let jac = JacobiTester::new(&space);
        let cpi = space.c().add(&space.identity(2));
        let im_cpi = cpi.image();
        let im_h = split.h_at_c.image();
        for v in candidates(&sol, field, 4096, &mut rng) {
            let beta = unflatten(field, 2, &v);
            if !jac.holds(&beta) {
                continue;
            }
            rep.verified += 1;
            if beta.rank() != 2 {
                continue;
            }
            rep.rank_two += 1;
            if im_cpi.dim() != 2 {
                rep.image_failures += 1;
            }
            let ker = beta.kernel();
            let meet = ker.intersect(&im_h);
            let ok = im_cpi.is_subspace_of(&ker) && im_cpi.intersect(&meet).dim() == 0 && im_cpi.sum(&meet) == ker;
            if !ok {
                rep.kernel_failures += 1;
            }
        }
    }
    Ok(rep)
}

/// `count` verified lifted brackets with β ≠ 0 from random structured braidings.
pub fn random_lifted_qlies(field: Field, count: usize, seed: u64) -> Vec<LiftedQLie> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 200 * count.max(1) {
        attempts += 1;
        let space = random_braiding(field, &mut rng);
        if !space.check_yang_baxter() || space.require_split().is_err() {
            continue;
        }
        let sol = bracket_solution_space(&space);
        if sol.dim() == 0 {
            continue;
        }
        let jac = JacobiTester::new(&space);
        for v in candidates(&sol, field, 16, &mut rng) {
            let beta = unflatten(field, 2, &v);
            if !beta.is_zero() && jac.holds(&beta) {
                out.push(LiftedQLie::new(space.clone(), beta).expect("shape"));
                break;
            }
        }
    }
    out
}

pub fn appendix_checks(field: Field, scope: AppendixScope, seed: u64) -> Result<AppendixReport, ClassifyError> {
    field.require_odd().map_err(|_| ClassifyError::CharTwo)?;
    let mut rep = AppendixReport::default();
    match scope {
        AppendixScope::Udu => rep.udu = Some(udu_check(field, 100, seed)),
        AppendixScope::CaseFamilies => rep.families = case_families(field)?,
        AppendixScope::RandomSurvey => rep.survey = Some(random_survey(field, 200, seed)?),
    }
    Ok(rep)
}
