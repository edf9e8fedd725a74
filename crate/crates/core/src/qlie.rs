//! Lifted brackets β: V⊗V → V and brackets β̄: E₂ → V.
//!
//! Both forms are related through the minimal polynomial f = (X+1)·h of c:
//! Im h(c) = ker(c+Id) = E₂, so β = β̄∘h(c) and β̄ is recovered by solving
//! that equation. β̄ is stored as an n×dim E₂ matrix in the canonical basis of E₂.

use thiserror::Error;

use crate::braided::{kron, slot_lift_map, BraidError, BraidedSpace};
use crate::linalg::{Mat, Subspace};
use crate::scalar::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QlieError {
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error("β̄ is not expressed in the canonical basis of E₂")]
    BasisMismatch,
    #[error("no bracket on E₂ lifts to this β")]
    Inconsistent,
    #[error("shape error: {0}")]
    Shape(String),
    #[error("Im β is not stable under the braiding")]
    NotCategorical,
}

/// (V, c, β) with β: V⊗V → V given as an n×n² matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedQLie {
    pub space: BraidedSpace,
    pub beta: Mat,
}

/// Outcome of every axiom check on a lifted bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedReport {
    pub yang_baxter: bool,
    pub antisymmetry: bool,
    pub bracket_left: bool,
    pub bracket_right: bool,
    pub jacobi: bool,
}

impl LiftedReport {
    pub fn all(&self) -> bool {
        self.failures().is_empty()
    }

    /// Names of the failed axioms.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        for (ok, name) in [
            (self.yang_baxter, "yang_baxter"),
            (self.antisymmetry, "antisymmetry"),
            (self.bracket_left, "bracket_left"),
            (self.bracket_right, "bracket_right"),
            (self.jacobi, "jacobi"),
        ] {
            if !ok {
                v.push(name);
            }
        }
        v
    }
}

/// β̄: E₂ → V with columns indexed by the canonical basis of E₂.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QBracketData {
    pub space: BraidedSpace,
    pub e2_basis: Subspace,
    pub bar_beta: Mat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QBracketReport {
    pub bracket_left: bool,
    pub bracket_right: bool,
    pub jacobi: bool,
    /// (β̄1 − β̄2)(Ē₂) ⊆ E₂, which makes the Jacobi identity well posed.
    pub correctness: bool,
}

impl QBracketReport {
    pub fn all(&self) -> bool {
        self.bracket_left && self.bracket_right && self.jacobi && self.correctness
    }
}

impl LiftedQLie {
    pub fn new(space: BraidedSpace, beta: Mat) -> Result<LiftedQLie, QlieError> {
        let n = space.dim();
        if beta.rows() != n || beta.cols() != n * n || beta.field() != space.field() {
            return Err(QlieError::Shape(format!("β must be {n}x{} over {}", n * n, space.field())));
        }
        Ok(LiftedQLie { space, beta })
    }

    pub fn field(&self) -> Field {
        self.space.field()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    fn beta_slot(&self, i: usize) -> Mat {
        slot_lift_map(&self.beta, self.dim(), i, 3).expect("β fits in V^{⊗3}")
    }

    /// Structure transported along α: c ↦ (α⊗α)c(α⊗α)⁻¹, β ↦ αβ(α⊗α)⁻¹.
    pub fn transform(&self, alpha: &Mat) -> Result<LiftedQLie, QlieError> {
        let inv = alpha.inverse().ok_or_else(|| QlieError::Shape("α is not invertible".into()))?;
        let space = self.space.transform(alpha)?;
        let beta = alpha.mul(&self.beta).mul(&kron(&inv, &inv));
        LiftedQLie::new(space, beta)
    }

    /// Rank of β, i.e. dim Im β.
    pub fn image(&self) -> Subspace {
        self.beta.image()
    }
}

/// f: a → b is a morphism: (f⊗f)c_a = c_b(f⊗f) and f∘β_a = β_b∘(f⊗f).
pub fn is_morphism(f: &Mat, a: &LiftedQLie, b: &LiftedQLie) -> bool {
    let ff = kron(f, f);
    ff.mul(a.space.c()) == b.space.c().mul(&ff) && f.mul(&a.beta) == b.beta.mul(&ff)
}

pub fn verify_lifted(q: &LiftedQLie) -> LiftedReport {
    let b = &q.space;
    let c = b.c();
    let id2 = b.identity(2);
    let (c1, c2) = (b.c_slot(1, 3), b.c_slot(2, 3));
    let (beta1, beta2) = (q.beta_slot(1), q.beta_slot(2));
    let antisymmetry = q.beta.mul(&c.add(&id2)).is_zero();
    let bracket_left = c.mul(&beta1) == beta2.mul(&c1).mul(&c2);
    let bracket_right = c.mul(&beta2) == beta1.mul(&c2).mul(&c1);
    let jac = q.beta.mul(&beta1.sub(&beta2));
    let jacobi = b.e2bar().basis().iter().all(|z| jac.apply(z).iter().all(Scalar::is_zero));
    LiftedReport { yang_baxter: b.check_yang_baxter(), antisymmetry, bracket_left, bracket_right, jacobi }
}

/// β(β1 + β2) vanishes on Ē₂.
pub fn derived_antisym_plus(q: &LiftedQLie) -> bool {
    let m = q.beta.mul(&q.beta_slot(1).add(&q.beta_slot(2)));
    q.space.e2bar().basis().iter().all(|z| m.apply(z).iter().all(Scalar::is_zero))
}

/// Selects the pivot coordinates: restricted to E₂ it is the coordinate map.
fn e2_coordinates(e2: &Subspace) -> Mat {
    let f = e2.field();
    Mat::from_fn(f, e2.dim(), e2.ambient(), |i, j| if e2.pivots()[i] == j { f.one() } else { f.zero() })
}

/// Tensor products of subspace bases with the standard basis of V.
fn tensor_with_v(s: &Subspace, n: usize, left: bool) -> Vec<Vec<Scalar>> {
    let f = s.field();
    let mut out = Vec::new();
    for b in s.basis() {
        for j in 0..n {
            let mut v = vec![f.zero(); b.len() * n];
            for (i, x) in b.iter().enumerate() {
                let idx = if left { i + b.len() * j } else { j + n * i };
                v[idx] = x.clone();
            }
            out.push(v);
        }
    }
    out
}

pub fn verify_qbracket(qb: &QBracketData) -> Result<QBracketReport, QlieError> {
    let b = &qb.space;
    let n = b.dim();
    let e2 = b.e2();
    if qb.e2_basis != e2 || qb.bar_beta.cols() != e2.dim() || qb.bar_beta.rows() != n {
        return Err(QlieError::BasisMismatch);
    }
    let ext = qb.bar_beta.mul(&e2_coordinates(&e2));
    let ext1 = slot_lift_map(&ext, n, 1, 3)?;
    let ext2 = slot_lift_map(&ext, n, 2, 3)?;
    let (c1, c2) = (b.c_slot(1, 3), b.c_slot(2, 3));
    let c = b.c();
    let e2_v = tensor_with_v(&e2, n, true);
    let v_e2 = tensor_with_v(&e2, n, false);
    let e2_v_space = Subspace::span(b.field(), n * n * n, e2_v.clone());
    let v_e2_space = Subspace::span(b.field(), n * n * n, v_e2.clone());
    let c12 = c1.mul(&c2);
    let c21 = c2.mul(&c1);
    let (l_lhs, l_rhs) = (c.mul(&ext1), ext2.mul(&c12));
    let bracket_left = e2_v.iter().all(|z| v_e2_space.contains(&c12.apply(z)) && l_lhs.apply(z) == l_rhs.apply(z));
    let (r_lhs, r_rhs) = (c.mul(&ext2), ext1.mul(&c21));
    let bracket_right = v_e2.iter().all(|z| e2_v_space.contains(&c21.apply(z)) && r_lhs.apply(z) == r_rhs.apply(z));
    let diff = ext1.sub(&ext2);
    let bar = b.e2bar();
    let correctness = bar.basis().iter().all(|z| e2.contains(&diff.apply(z)));
    let jac = ext.mul(&diff);
    let jacobi = correctness && bar.basis().iter().all(|z| jac.apply(z).iter().all(Scalar::is_zero));
    Ok(QBracketReport { bracket_left, bracket_right, jacobi, correctness })
}

/// β = β̄∘h(c).
pub fn lift_bracket(qb: &QBracketData) -> Result<LiftedQLie, QlieError> {
    let split = qb.space.require_split()?;
    let e2 = qb.space.e2();
    if qb.e2_basis != e2 || qb.bar_beta.cols() != e2.dim() || qb.bar_beta.rows() != qb.space.dim() {
        return Err(QlieError::BasisMismatch);
    }
    let beta = qb.bar_beta.mul(&e2_coordinates(&e2)).mul(&split.h_at_c);
    LiftedQLie::new(qb.space.clone(), beta)
}

/// Solves β̄∘h(c) = β; fails when β does not vanish on Im(c+Id) = ker h(c).
pub fn restrict_bracket(q: &LiftedQLie) -> Result<QBracketData, QlieError> {
    let split = q.space.require_split()?;
    let e2 = q.space.e2();
    let a = e2_coordinates(&e2).mul(&split.h_at_c);
    let bar_beta = if e2.dim() == 0 {
        if !q.beta.is_zero() {
            return Err(QlieError::Inconsistent);
        }
        Mat::zeros(q.field(), q.dim(), 0)
    } else {
        a.solve_left(&q.beta).ok_or(QlieError::Inconsistent)?
    };
    Ok(QBracketData { space: q.space.clone(), e2_basis: e2, bar_beta })
}

/// `X` with `a·X = b`, column by column.
pub fn solve_columns(a: &Mat, b: &Mat) -> Option<Mat> {
    let cols: Option<Vec<Vec<Scalar>>> = (0..b.cols()).map(|j| a.solve(&b.col(j))).collect();
    let cols = cols?;
    Some(Mat::from_fn(a.field(), a.cols(), b.cols(), |i, j| cols[j][i].clone()))
}

/// L = Im β with the restricted structure, in the canonical basis of L.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageSubalgebra {
    pub subspace: Subspace,
    /// n×r matrix whose columns are the basis of L.
    pub embedding: Mat,
    /// `None` when β = 0.
    pub algebra: Option<LiftedQLie>,
}

pub fn image_subalgebra(q: &LiftedQLie) -> Result<ImageSubalgebra, QlieError> {
    let l = q.image();
    let e = l.as_columns_matrix();
    if l.is_zero() {
        return Ok(ImageSubalgebra { subspace: l, embedding: e, algebra: None });
    }
    let ee = kron(&e, &e);
    let c_l = solve_columns(&ee, &q.space.c().mul(&ee)).ok_or(QlieError::NotCategorical)?;
    let beta_l = solve_columns(&e, &q.beta.mul(&ee)).ok_or(QlieError::NotCategorical)?;
    let space = BraidedSpace::new(l.dim(), c_l)?;
    let algebra = LiftedQLie::new(space, beta_l)?;
    Ok(ImageSubalgebra { subspace: l, embedding: e, algebra: Some(algebra) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dim1Report {
    pub field: Field,
    pub pairs_checked: usize,
    /// (γ, λ) passing every axiom with λ ≠ 0.
    pub nonzero_survivors: Vec<(Scalar, Scalar)>,
}

impl Dim1Report {
    pub fn holds(&self) -> bool {
        self.nonzero_survivors.is_empty()
    }
}

/// One-dimensional lifted brackets c = (γ), β = (λ): every valid one has λ = 0.
/// Finite fields are enumerated completely; over ℚ a fixed grid is sampled.
pub fn check_dim1_rigidity(field: Field) -> Result<Dim1Report, QlieError> {
    field.require_odd().map_err(BraidError::from)?;
    let values: Vec<Scalar> = match field.elements() {
        Some(v) => v,
        None => {
            let mut v = Vec::new();
            for num in -6..=6 {
                for den in 1..=3 {
                    let s = field.ratio(num, den).expect("nonzero denominator");
                    if !v.contains(&s) {
                        v.push(s);
                    }
                }
            }
            v
        }
    };
    let mut report = Dim1Report { field, pairs_checked: 0, nonzero_survivors: Vec::new() };
    for g in &values {
        let space = BraidedSpace::new(1, Mat::from_fn(field, 1, 1, |_, _| g.clone()))?;
        for l in &values {
            let q = LiftedQLie::new(space.clone(), Mat::from_fn(field, 1, 1, |_, _| l.clone()))?;
            report.pairs_checked += 1;
            if !l.is_zero() && verify_lifted(&q).all() {
                report.nonzero_survivors.push((g.clone(), l.clone()));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row1() -> LiftedQLie {
        let q = Field::Rationals;
        let c = Mat::from_ints(q, &[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]);
        let beta = Mat::from_ints(q, &[&[0, 1, -1, 0], &[0, 0, 0, 0]]);
        LiftedQLie::new(BraidedSpace::new(2, c).unwrap(), beta).unwrap()
    }

    #[test]
    fn row1_passes() {
        assert!(verify_lifted(&row1()).all());
    }

    #[test]
    fn corrupted_second_component_fails_antisymmetry_only() {
        // The flip is natural, so both bracket identities hold for every β;
        // β²₂₁ = 1 alone breaks β∘c = -β.
        let mut q = row1();
        q.beta.set(1, 1, Field::Rationals.one());
        let r = verify_lifted(&q);
        assert_eq!(r.failures(), vec!["antisymmetry"]);
    }

    #[test]
    fn restrict_lift_roundtrip() {
        let q = row1();
        let qb = restrict_bracket(&q).unwrap();
        assert_eq!(qb.bar_beta, Mat::from_ints(Field::Rationals, &[&[-1], &[0]]));
        assert_eq!(lift_bracket(&qb).unwrap(), q);
        assert!(verify_qbracket(&qb).unwrap().all());
    }

    #[test]
    fn restrict_detects_inconsistency() {
        let mut q = row1();
        q.beta.set(0, 0, Field::Rationals.one());
        assert_eq!(restrict_bracket(&q), Err(QlieError::Inconsistent));
    }

    #[test]
    fn dim1_minus_one_fails_bracket() {
        let q = Field::Rationals;
        let space = BraidedSpace::new(1, Mat::from_ints(q, &[&[-1]])).unwrap();
        let l = LiftedQLie::new(space, Mat::from_ints(q, &[&[1]])).unwrap();
        let r = verify_lifted(&l);
        assert!(r.antisymmetry && !r.bracket_left);
    }
}
