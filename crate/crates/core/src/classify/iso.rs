//! Isomorphism search between two-dimensional lifted brackets.
//!
//! An isomorphism a → b is an invertible α with (α⊗α)c_a = c_b(α⊗α) and
//! α∘β_a = β_b∘(α⊗α).

use rayon::prelude::*;

use crate::classify::canonical::canonical_form;
use crate::classify::ClassifyError;
use crate::linalg::Mat;
use crate::qlie::{is_morphism, LiftedQLie};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoMode {
    /// All invertible 2×2 matrices over GF(p), in lexicographic order.
    FiniteExhaustive,
    /// Over any field: reduce both sides to normal form, then try diagonal
    /// rescalings between equal rows. Different rows are never isomorphic;
    /// within a row a miss is only as strong as the candidate list.
    RationalStructured,
}

/// Every invertible 2×2 matrix over GF(p), entries (a₁₁, a₁₂, a₂₁, a₂₂) in lexicographic order.
pub fn invertible_2x2(field: Field) -> Result<Vec<Mat>, ClassifyError> {
    let elems = field.elements().ok_or_else(|| ClassifyError::UnsupportedField(field.to_string()))?;
    let mut out = Vec::new();
    for a in &elems {
        for b in &elems {
            for c in &elems {
                for d in &elems {
                    if !(&(a * d) - &(b * c)).is_zero() {
                        out.push(Mat::from_rows(field, vec![vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]]).expect("2x2"));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// All isomorphisms a → b over a finite field, lexicographically ordered.
pub fn all_isomorphisms(a: &LiftedQLie, b: &LiftedQLie) -> Result<Vec<Mat>, ClassifyError> {
    check_pair(a, b)?;
    let cands = invertible_2x2(a.field())?;
    Ok(cands.into_par_iter().filter(|m| is_morphism(m, a, b)).collect())
}

fn check_pair(a: &LiftedQLie, b: &LiftedQLie) -> Result<(), ClassifyError> {
    if a.dim() != 2 || b.dim() != 2 {
        return Err(ClassifyError::PreconditionViolated("both sides must be two-dimensional".into()));
    }
    if a.field() != b.field() {
        return Err(ClassifyError::PreconditionViolated(format!("fields differ: {} vs {}", a.field(), b.field())));
    }
    Ok(())
}

pub fn iso_bruteforce(a: &LiftedQLie, b: &LiftedQLie, mode: IsoMode) -> Result<Option<Mat>, ClassifyError> {
    check_pair(a, b)?;
    match mode {
        IsoMode::FiniteExhaustive => {
            let cands = invertible_2x2(a.field())?;
            Ok(cands.into_par_iter().find_first(|m| is_morphism(m, a, b)))
        }
        IsoMode::RationalStructured => structured(a, b),
    }
}

/// Candidate rescalings relating γ_a to γ_b = γ_a·s².
fn scale_candidates(ga: &Scalar, gb: &Scalar) -> Vec<Scalar> {
    let f = ga.field();
    let mut base = vec![f.one()];
    if !ga.is_zero() && !gb.is_zero() {
        let r = gb.div(ga).expect("nonzero");
        base.push(r.clone());
        if let Some(s) = r.sqrt() {
            base.push(s);
        }
    }
    let mut out: Vec<Scalar> = Vec::new();
    for s in base {
        for t in [s.clone(), -&s, s.inv().expect("nonzero"), -&s.inv().expect("nonzero")] {
            if !out.contains(&t) {
                out.push(t);
            }
        }
    }
    out
}

fn structured(a: &LiftedQLie, b: &LiftedQLie) -> Result<Option<Mat>, ClassifyError> {
    let (ca, cb) = (canonical_form(a)?, canonical_form(b)?);
    if ca.row != cb.row {
        return Ok(None);
    }
    let f = a.field();
    let back = cb.alpha.inverse().expect("basis change is invertible");
    let (ga, gb) = (ca.gamma.clone().unwrap_or_else(|| f.zero()), cb.gamma.clone().unwrap_or_else(|| f.zero()));
    let ta = a.transform(&ca.alpha).map_err(|e| ClassifyError::NotClassifiable(e.to_string()))?;
    let tb = b.transform(&cb.alpha).map_err(|e| ClassifyError::NotClassifiable(e.to_string()))?;
    // Normal forms only admit maps with a₂₁ = 0; try the diagonal ones.
    let cands = scale_candidates(&ga, &gb);
    for s in &cands {
        for t in &cands {
            let d = Mat::from_rows(f, vec![vec![s.clone(), f.zero()], vec![f.zero(), t.clone()]]).expect("2x2");
            if is_morphism(&d, &ta, &tb) {
                let alpha = back.mul(&d).mul(&ca.alpha);
                debug_assert!(is_morphism(&alpha, a, b));
                return Ok(Some(alpha));
            }
        }
    }
    Ok(None)
}
