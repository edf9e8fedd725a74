//! Braided vector spaces (V, c) with c: V⊗V → V⊗V.
//!
//! Basis of V^{⊗k}: the word (i₁,…,i_k) (letters 0-based) sits at index
//! Σ i_t·n^(t-1), so the first tensor factor is the least significant digit.
//! For n = 2 and k = 2 the order is x1x1, x2x1, x1x2, x2x2. Column j of an
//! operator matrix is the image of basis vector j.

use thiserror::Error;

use crate::linalg::{LinalgError, Mat, Poly, Subspace};
use crate::scalar::{Field, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("Yang–Baxter equation fails")]
    NotYangBaxter,
    #[error("shape error: {0}")]
    Shape(String),
    #[error("-1 is a multiple root of the minimal polynomial {0}")]
    MinusOneNotSimple(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub fn pow(n: usize, k: usize) -> usize {
    n.checked_pow(k as u32).expect("tensor power overflows usize")
}

/// Index of a word (0-based letters) in the basis of V^{⊗len}.
pub fn word_index(word: &[u8], n: usize) -> usize {
    word.iter().rev().fold(0, |acc, &l| acc * n + l as usize)
}

/// Inverse of [`word_index`].
pub fn index_word(mut idx: usize, n: usize, len: usize) -> Vec<u8> {
    let mut w = Vec::with_capacity(len);
    for _ in 0..len {
        w.push((idx % n) as u8);
        idx /= n;
    }
    w
}

/// log_n of a power of n.
fn tensor_degree(size: usize, n: usize) -> Option<usize> {
    let mut k = 0;
    let mut s = 1;
    while s < size {
        s *= n;
        k += 1;
    }
    (s == size).then_some(k)
}

/// Id^{⊗(i-1)} ⊗ op ⊗ Id on V^{⊗k}, where op: V^{⊗l_in} → V^{⊗l_out} acts on
/// factors i..i+l_in-1 (1-based). The result maps V^{⊗k} → V^{⊗(k-l_in+l_out)}.
pub fn slot_lift_map(op: &Mat, n: usize, i: usize, k: usize) -> Result<Mat, BraidError> {
    let l_in = tensor_degree(op.cols(), n).ok_or_else(|| BraidError::Shape("operator width is not a power of n".into()))?;
    let l_out = tensor_degree(op.rows(), n).ok_or_else(|| BraidError::Shape("operator height is not a power of n".into()))?;
    if i == 0 || i + l_in > k + 1 {
        return Err(BraidError::Shape(format!("slot {i} with width {l_in} does not fit in {k} factors")));
    }
    let low = pow(n, i - 1);
    let high = pow(n, k + 1 - i - l_in);
    let (src_mid, dst_mid) = (pow(n, l_in), pow(n, l_out));
    let field = op.field();
    let mut m = Mat::zeros(field, low * dst_mid * high, low * src_mid * high);
    for h in 0..high {
        for s in 0..src_mid {
            for d in 0..dst_mid {
                let v = op.get(d, s);
                if v.is_zero() {
                    continue;
                }
                for lo in 0..low {
                    m.set(lo + low * (d + dst_mid * h), lo + low * (s + src_mid * h), v.clone());
                }
            }
        }
    }
    Ok(m)
}

/// Square-operator form of [`slot_lift_map`].
pub fn slot_lift(op: &Mat, n: usize, i: usize, k: usize) -> Result<Mat, BraidError> {
    if !op.is_square() {
        return Err(BraidError::Shape("slot_lift needs a square operator".into()));
    }
    slot_lift_map(op, n, i, k)
}

/// `a ⊗ b` in the fixed basis order (first factor least significant).
pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let (ar, ac, br, bc) = (a.rows(), a.cols(), b.rows(), b.cols());
    Mat::from_fn(a.field(), ar * br, ac * bc, |i, j| a.get(i % ar, j % ac) * b.get(i / ar, j / ac))
}

/// Splitting f = (X+1)·h of the minimal polynomial, with h(-1) ≠ 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinpolySplit {
    pub f: Poly,
    pub h: Poly,
    /// h(c) as an operator on V⊗V.
    pub h_at_c: Mat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinpolyOutcome {
    Split(MinpolySplit),
    /// -1 is not a root; then E₂ = 0.
    NoMinusOneRoot(Poly),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidedSpace {
    field: Field,
    dim: usize,
    c: Mat,
}

impl BraidedSpace {
    /// Checks the shape and the Yang–Baxter equation c1c2c1 = c2c1c2.
    pub fn new(dim: usize, c: Mat) -> Result<BraidedSpace, BraidError> {
        let b = BraidedSpace::new_unchecked(dim, c)?;
        if !b.check_yang_baxter() {
            return Err(BraidError::NotYangBaxter);
        }
        Ok(b)
    }

    /// Checks only the shape.
    pub fn new_unchecked(dim: usize, c: Mat) -> Result<BraidedSpace, BraidError> {
        if dim == 0 || c.rows() != dim * dim || c.cols() != dim * dim {
            return Err(BraidError::Shape(format!("c must be {0}x{0} for dim {dim}", dim * dim)));
        }
        Ok(BraidedSpace { field: c.field(), dim, c })
    }

    /// The flip c(x⊗y) = y⊗x.
    pub fn flip(field: Field, dim: usize) -> BraidedSpace {
        let n2 = dim * dim;
        let c = Mat::from_fn(field, n2, n2, |i, j| if i == (j % dim) * dim + j / dim { field.one() } else { field.zero() });
        BraidedSpace { field, dim, c }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn c(&self) -> &Mat {
        &self.c
    }

    /// c_i on V^{⊗k}.
    pub fn c_slot(&self, i: usize, k: usize) -> Mat {
        slot_lift(&self.c, self.dim, i, k).expect("slot within range")
    }

    pub fn identity(&self, k: usize) -> Mat {
        Mat::identity(self.field, pow(self.dim, k))
    }

    pub fn check_yang_baxter(&self) -> bool {
        let c1 = self.c_slot(1, 3);
        let c2 = self.c_slot(2, 3);
        c1.mul(&c2).mul(&c1) == c2.mul(&c1).mul(&c2)
    }

    /// E₂ = ker(c + Id).
    pub fn e2(&self) -> Subspace {
        self.c.add(&self.identity(2)).kernel()
    }

    /// Ē₂ = ker(c1 + Id) ∩ ker(c2 + Id) in V^{⊗3}.
    pub fn e2bar(&self) -> Subspace {
        let id = self.identity(3);
        self.c_slot(1, 3).add(&id).vstack(&self.c_slot(2, 3).add(&id)).kernel()
    }

    pub fn minimal_polynomial(&self) -> Poly {
        self.c.minimal_polynomial().expect("c is square")
    }

    /// f = (X+1)·h with h(-1) ≠ 0, or the report that -1 is not a root.
    pub fn split_minpoly(&self) -> Result<MinpolyOutcome, BraidError> {
        self.field.require_odd()?;
        let f = self.minimal_polynomial();
        let minus_one = self.field.int(-1);
        if !f.eval(&minus_one).is_zero() {
            return Ok(MinpolyOutcome::NoMinusOneRoot(f));
        }
        let (h, r) = f.div_rem(&Poly::from_ints(self.field, &[1, 1]))?;
        debug_assert!(r.is_zero());
        if h.eval(&minus_one).is_zero() {
            return Err(BraidError::MinusOneNotSimple(f.to_string()));
        }
        let h_at_c = h.eval_mat(&self.c);
        Ok(MinpolyOutcome::Split(MinpolySplit { f, h, h_at_c }))
    }

    /// The split, failing when -1 is not a root.
    pub fn require_split(&self) -> Result<MinpolySplit, BraidError> {
        match self.split_minpoly()? {
            MinpolyOutcome::Split(s) => Ok(s),
            MinpolyOutcome::NoMinusOneRoot(f) => Err(BraidError::MinusOneNotSimple(format!("-1 is not a root of {f}"))),
        }
    }

    /// c(L⊗V) ⊆ V⊗L and c(V⊗L) ⊆ L⊗V.
    pub fn is_categorical(&self, l: &Subspace) -> bool {
        let n = self.dim;
        let zero = self.field.zero();
        let tensor = |a: &[Scalar], b: &[Scalar]| -> Vec<Scalar> {
            let mut v = vec![zero.clone(); n * n];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    v[i + n * j] = x * y;
                }
            }
            v
        };
        let unit = |j: usize| -> Vec<Scalar> {
            (0..n).map(|i| if i == j { self.field.one() } else { zero.clone() }).collect()
        };
        let l_v: Vec<Vec<Scalar>> = l.basis().iter().flat_map(|b| (0..n).map(move |j| (b.clone(), j))).map(|(b, j)| tensor(&b, &unit(j))).collect();
        let v_l: Vec<Vec<Scalar>> = l.basis().iter().flat_map(|b| (0..n).map(move |j| (b.clone(), j))).map(|(b, j)| tensor(&unit(j), &b)).collect();
        let l_v_space = Subspace::span(self.field, n * n, l_v.clone());
        let v_l_space = Subspace::span(self.field, n * n, v_l.clone());
        l_v.iter().all(|w| v_l_space.contains(&self.c.apply(w))) && v_l.iter().all(|w| l_v_space.contains(&self.c.apply(w)))
    }

    /// Braiding after the change of basis α (columns of α⁻¹ are the new basis):
    /// (α⊗α)·c·(α⊗α)⁻¹.
    pub fn transform(&self, alpha: &Mat) -> Result<BraidedSpace, BraidError> {
        let inv = alpha.inverse().ok_or_else(|| BraidError::Shape("α is not invertible".into()))?;
        let c = kron(alpha, alpha).mul(&self.c).mul(&kron(&inv, &inv));
        BraidedSpace::new_unchecked(self.dim, c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_indexing_matches_basis_order() {
        assert_eq!(word_index(&[0, 0], 2), 0);
        assert_eq!(word_index(&[1, 0], 2), 1);
        assert_eq!(word_index(&[0, 1], 2), 2);
        assert_eq!(word_index(&[1, 1], 2), 3);
        for i in 0..27 {
            assert_eq!(word_index(&index_word(i, 3, 3), 3), i);
        }
    }

    #[test]
    fn flip_matches_table_convention() {
        let q = Field::Rationals;
        let flip = BraidedSpace::flip(q, 2);
        let expected = Mat::from_ints(q, &[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]);
        assert_eq!(flip.c(), &expected);
        assert!(flip.check_yang_baxter());
    }

    #[test]
    fn kron_agrees_with_slot_lift() {
        let q = Field::Rationals;
        let a = Mat::from_ints(q, &[&[1, 2], &[3, 4]]);
        let id = Mat::identity(q, 2);
        assert_eq!(kron(&a, &id), slot_lift(&a, 2, 1, 2).unwrap());
        assert_eq!(kron(&id, &a), slot_lift(&a, 2, 2, 2).unwrap());
    }
}
