//! Quantum symmetrizers, primitive elements of truncated quotients, and the
//! closed coproduct formulas for the diagonal-type rows and for row 8.

use std::collections::BTreeMap;

use crate::braided::{pow, BraidedSpace};
use crate::classify::table::{row_instance, row_matrices};
use crate::classify::ClassifyError;
use crate::envelope::{ideal_truncation, sq_graded_dims, sq_presentation, EnvelopeError, FilteredEchelon, Presentation, DEFAULT_BUFFER};
use crate::linalg::{Mat, Subspace};
use crate::scalar::{Field, Scalar};
use crate::tensor::{SplitTensorElem, TensorAlgebra, TensorElem, Word};

/// Σ_{σ ∈ S_n} of the braid lifts, via
/// Sym_n = (Sym_{n-1} ⊗ Id)·(Id + c_{n-1} + c_{n-1}c_{n-2} + … + c_{n-1}⋯c_1).
pub fn quantum_symmetrizer(b: &BraidedSpace, n: usize) -> Mat {
    let mut sym = b.identity(n.min(1));
    for k in 2..=n {
        let mut coset = b.identity(k);
        let mut chain = b.identity(k);
        for j in (1..k).rev() {
            chain = chain.mul(&b.c_slot(j, k));
            coset = coset.add(&chain);
        }
        let lifted = crate::braided::kron(&sym, &Mat::identity(b.field(), b.dim()));
        sym = lifted.mul(&coset);
    }
    sym
}

/// Reduced word of a permutation (one-line notation, 0-based) by bubble sort.
/// `leftmost` picks the leftmost descent at each step, otherwise the rightmost.
/// The permutation equals s_{w[0]} s_{w[1]} ⋯ (1-based generator indices).
pub fn reduced_word(perm: &[usize], leftmost: bool) -> Vec<usize> {
    let mut p = perm.to_vec();
    let mut swaps = Vec::new();
    loop {
        let descents: Vec<usize> = (0..p.len().saturating_sub(1)).filter(|&i| p[i] > p[i + 1]).collect();
        let Some(&i) = (if leftmost { descents.first() } else { descents.last() }) else { break };
        p.swap(i, i + 1);
        swaps.push(i + 1);
    }
    swaps.reverse();
    swaps
}

/// T_w = c_{w[0]} ⋯ c_{w[last]} on V^{⊗n}.
pub fn braid_lift(b: &BraidedSpace, word: &[usize], n: usize) -> Mat {
    word.iter().fold(b.identity(n), |acc, &i| acc.mul(&b.c_slot(i, n)))
}

/// rank Sym_n = dim S_Q^n for every n ≤ N, i.e. the Nichols algebra is
/// quadratic up to degree N.
pub fn nichols_quadratic_at(b: &BraidedSpace, degree_cap: usize) -> bool {
    let graded = sq_graded_dims(b, degree_cap);
    (0..=degree_cap).all(|n| quantum_symmetrizer(b, n).rank() == graded[n])
}

/// Ranks of the quantum symmetrizers for n = 0..=N.
pub fn nichols_dims(b: &BraidedSpace, degree_cap: usize) -> Vec<usize> {
    (0..=degree_cap).map(|n| quantum_symmetrizer(b, n).rank()).collect()
}

/// Primitive elements of a truncated quotient T(V)/I.
#[derive(Clone, Debug)]
pub struct PrimitiveReport {
    pub degree_cap: usize,
    /// Basis of P ∩ U'_N in normal form, echelon with respect to the degree order.
    pub basis: Vec<TensorElem>,
    /// dim(P ∩ U'_n) for n = 0..=N.
    pub level_dims: Vec<usize>,
    /// Rank of the image of V in the quotient.
    pub image_of_v: usize,
}

impl PrimitiveReport {
    /// P coincides with the image of V up to degree N.
    pub fn equals_image_of_v(&self) -> bool {
        self.basis.len() == self.image_of_v
    }

    pub fn contains(&self, t: &TensorElem) -> bool {
        let n = t.dim();
        let cap = self.degree_cap;
        let rows: Vec<Vec<Scalar>> = self.basis.iter().map(|b| b.filtered_vector(cap)).collect();
        let span = Subspace::span(t.field(), crate::tensor::degree_offset(n, cap + 1), rows);
        span.contains(&t.filtered_vector(cap))
    }
}

/// Solves Δ(z) = z⊗1 + 1⊗z on the standard monomials of degree ≤ N, with both
/// legs reduced to normal form.
pub fn primitives_of_quotient(p: &Presentation, degree_cap: usize) -> Result<PrimitiveReport, EnvelopeError> {
    let trunc = ideal_truncation(p, degree_cap, DEFAULT_BUFFER)?;
    let (field, n) = (p.space.field(), p.space.dim());
    let t = TensorAlgebra::new(&p.space);
    let std = trunc.standard_monomials(degree_cap);
    let one = Word::empty();
    let mut rows: BTreeMap<(Word, Word), Vec<Scalar>> = BTreeMap::new();
    for (j, m) in std.iter().enumerate() {
        let d = t.coproduct_word(m).sub(&SplitTensorElem::pure(field, n, m.clone(), one.clone())).sub(&SplitTensorElem::pure(field, n, one.clone(), m.clone()));
        for (k, c) in trunc.reduce_split(&d).terms() {
            rows.entry(k.clone()).or_insert_with(|| vec![field.zero(); std.len()])[j] = c.clone();
        }
    }
    let kernel = if rows.is_empty() {
        Subspace::full(field, std.len())
    } else {
        Mat::from_rows(field, rows.into_values().collect()).expect("rectangular").kernel()
    };
    let mut ech = FilteredEchelon::new(field, n);
    for v in kernel.basis() {
        let sparse: Vec<(usize, Scalar)> = v.iter().zip(&std).filter(|(c, _)| !c.is_zero()).map(|(c, w)| (w.filtered_index(n), c.clone())).collect();
        ech.insert(&sparse);
    }
    let level_dims = (0..=degree_cap).map(|d| ech.count_up_to_degree(d)).collect();
    let basis = kernel
        .basis()
        .iter()
        .map(|v| TensorElem::from_terms(field, n, v.iter().zip(&std).map(|(c, w)| (w.clone(), c.clone()))))
        .collect();
    let image: Vec<Vec<Scalar>> = (0..n).map(|x| trunc.normal_form_word(&Word::letter(x as u8)).filtered_vector(degree_cap)).collect();
    let image_of_v = Subspace::span(field, crate::tensor::degree_offset(n, degree_cap + 1), image).dim();
    Ok(PrimitiveReport { degree_cap, basis, level_dims, image_of_v })
}

/// Gaussian binomial by binom(n,t) = binom(n-1,t-1) + q^t·binom(n-1,t).
pub fn q_binomial(n: usize, t: usize, q: &Scalar) -> Scalar {
    let f = q.field();
    if t > n {
        return f.zero();
    }
    let mut row = vec![f.one()];
    for m in 1..=n {
        let mut next = vec![f.zero(); m + 1];
        for k in 0..=m {
            let a = if k >= 1 && k - 1 < row.len() { row[k - 1].clone() } else { f.zero() };
            let b = if k < row.len() { &q.pow(k as u64) * &row[k] } else { f.zero() };
            next[k] = &a + &b;
        }
        row = next;
    }
    row[t].clone()
}

fn power_word(letters: &[(u8, usize)]) -> Word {
    Word(letters.iter().flat_map(|&(l, k)| std::iter::repeat_n(l, k)).collect())
}

/// Entries (q1, q12, q2) of a braiding with c(x1⊗x1) = q1·x1⊗x1,
/// c(x1⊗x2) = q12·x2⊗x1 and c(x2⊗x2) = q2·x2⊗x2.
pub fn diagonal_entries(b: &BraidedSpace) -> Option<(Scalar, Scalar, Scalar)> {
    if b.dim() != 2 {
        return None;
    }
    let c = b.c();
    let only = |col: usize, row: usize| (0..4).all(|i| i == row || c.get(i, col).is_zero());
    (only(0, 0) && only(2, 1) && only(3, 3)).then(|| (c.get(0, 0).clone(), c.get(1, 2).clone(), c.get(3, 3).clone()))
}

/// Outcome of the closed-form coproduct check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormReport {
    /// Agreement in T(V)⊗T(V).
    pub in_tensor_algebra: bool,
    /// Agreement after reducing both legs in S_Q.
    pub in_quotient: bool,
    pub monomials_checked: usize,
}

impl ClosedFormReport {
    pub fn holds(&self) -> bool {
        self.in_tensor_algebra && self.in_quotient
    }
}

/// Δ(x1^{n1}x2^{n2}) = Σ binom(n1,t1)_{q1} binom(n2,t2)_{q2} q12^{(n1-t1)t2}
/// x1^{t1}x2^{t2} ⊗ x1^{n1-t1}x2^{n2-t2} for n1 + n2 ≤ n_max.
pub fn verify_qpower_coproduct(b: &BraidedSpace, n_max: usize) -> Result<ClosedFormReport, EnvelopeError> {
    let Some((q1, q12, q2)) = diagonal_entries(b) else {
        return Ok(ClosedFormReport { in_tensor_algebra: false, in_quotient: false, monomials_checked: 0 });
    };
    let (field, n) = (b.field(), b.dim());
    let t = TensorAlgebra::new(b);
    let trunc = ideal_truncation(&sq_presentation(b), n_max, DEFAULT_BUFFER)?;
    let mut report = ClosedFormReport { in_tensor_algebra: true, in_quotient: true, monomials_checked: 0 };
    for total in 0..=n_max {
        for n1 in 0..=total {
            let n2 = total - n1;
            let direct = t.coproduct_word(&power_word(&[(0, n1), (1, n2)]));
            let mut closed = SplitTensorElem::zero(field, n);
            for t1 in 0..=n1 {
                for t2 in 0..=n2 {
                    let coef = &(&q_binomial(n1, t1, &q1) * &q_binomial(n2, t2, &q2)) * &q12.pow(((n1 - t1) * t2) as u64);
                    closed.add_term(power_word(&[(0, t1), (1, t2)]), power_word(&[(0, n1 - t1), (1, n2 - t2)]), coef);
                }
            }
            report.monomials_checked += 1;
            report.in_tensor_algebra &= direct == closed;
            report.in_quotient &= trunc.reduce_split(&direct) == trunc.reduce_split(&closed);
        }
    }
    Ok(report)
}

/// α_t(n) for 0 ≤ n ≤ n_max, 0 ≤ t ≤ n_max/2:
/// α_t(n+1) = α_t(n) + α_{t-1}(n)(n+2-2t), α_t(0) = δ_{t0}.
pub fn alpha_table(n_max: usize) -> Vec<Vec<u128>> {
    let tmax = n_max / 2 + 1;
    let mut a = vec![vec![0u128; tmax + 1]; n_max + 1];
    a[0][0] = 1;
    for m in 0..n_max {
        for t in 0..=tmax {
            let prev = if t >= 1 {
                let w = (m + 2).saturating_sub(2 * t) as u128;
                a[m][t - 1].checked_mul(w).expect("α overflow")
            } else {
                0
            };
            a[m + 1][t] = a[m][t].checked_add(prev).expect("α overflow");
        }
    }
    a
}

/// Checks of the row-8 identities up to degree n_max.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row8Report {
    /// c(x2⊗x2^n) = x2^n⊗x2 + nγ·x1x2^{n-1}⊗x1 in S_Q⊗S_Q.
    pub braiding: bool,
    /// Δ(x2^n) = Σ_t α_t(n)γ^t (x1^t⊗x1^t)Δ0(x2^{n-2t}) in S_Q⊗S_Q.
    pub coproduct: bool,
    /// (1⊗x2)Δ0(x2^m) = (1⊗x2)·0 Δ0(x2^m) + mγ(x1⊗x1)Δ0(x2^{m-1}).
    pub bridge: bool,
    /// α_0(n) = 1 and α_t(n) = 0 for n < 2t.
    pub alpha_boundary: bool,
    pub alpha_1_3: u128,
}

impl Row8Report {
    pub fn holds(&self) -> bool {
        self.braiding && self.coproduct && self.bridge && self.alpha_boundary && self.alpha_1_3 == 3
    }
}

fn int_scalar(field: Field, v: u128) -> Scalar {
    field.from_bigint(&num_bigint::BigInt::from(v))
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Δ0(x2^m) = Σ_i binom(m,i) x2^i ⊗ x2^{m-i}.
fn delta0_x2(field: Field, m: usize) -> SplitTensorElem {
    let mut s = SplitTensorElem::zero(field, 2);
    for i in 0..=m {
        s.add_term(power_word(&[(1, i)]), power_word(&[(1, m - i)]), int_scalar(field, binomial(m, i)));
    }
    s
}

pub fn verify_cx2_and_alpha(field: Field, gamma: &Scalar, n_max: usize) -> Result<Row8Report, ClassifyError> {
    let q = row_instance(8, Some(gamma), field)?;
    // γ = 0 falls outside row 8, but the braiding itself is defined (it is the flip).
    let q0 = row_matrices(8, Some(&field.zero()), field)?;
    let b = &q.space;
    let t = TensorAlgebra::new(b);
    let t0 = TensorAlgebra::new(&q0.space);
    let trunc = ideal_truncation(&sq_presentation(b), n_max + 1, DEFAULT_BUFFER).map_err(|e| ClassifyError::NotClassifiable(e.to_string()))?;
    let alpha = alpha_table(n_max);
    let x2 = |k: usize| power_word(&[(1, k)]);

    let mut braiding = true;
    for n in 1..=n_max {
        let mut lhs = SplitTensorElem::zero(field, 2);
        for (a, y, c) in t.braid_words(&x2(1), &x2(n)) {
            lhs.add_term(a, y, c);
        }
        let mut rhs = SplitTensorElem::pure(field, 2, x2(n), x2(1));
        rhs.add_term(power_word(&[(0, 1), (1, n - 1)]), Word::letter(0), &field.int(n as i64) * gamma);
        braiding &= trunc.reduce_split(&lhs) == trunc.reduce_split(&rhs);
    }

    let mut coproduct = true;
    for n in 0..=n_max {
        let direct = t.coproduct_word(&x2(n));
        let mut closed = SplitTensorElem::zero(field, 2);
        for tt in 0..=n / 2 {
            let coef = &int_scalar(field, alpha[n][tt]) * &gamma.pow(tt as u64);
            let d0 = delta0_x2(field, n - 2 * tt);
            let pre = SplitTensorElem::pure(field, 2, power_word(&[(0, tt)]), power_word(&[(0, tt)]));
            closed = closed.add(&t.braided_mul_split(&pre, &d0).scale(&coef));
        }
        coproduct &= trunc.reduce_split(&direct) == trunc.reduce_split(&closed);
    }

    let mut bridge = true;
    let one_x2 = SplitTensorElem::pure(field, 2, Word::empty(), Word::letter(1));
    let x1x1 = SplitTensorElem::pure(field, 2, Word::letter(0), Word::letter(0));
    for m in 1..n_max {
        let lhs = t.braided_mul_split(&one_x2, &delta0_x2(field, m));
        let rhs = t0
            .braided_mul_split(&one_x2, &delta0_x2(field, m))
            .add(&t.braided_mul_split(&x1x1, &delta0_x2(field, m - 1)).scale(&(&field.int(m as i64) * gamma)));
        bridge &= trunc.reduce_split(&lhs) == trunc.reduce_split(&rhs);
    }

    let alpha_boundary = (0..=n_max).all(|n| alpha[n][0] == 1 && (0..alpha[n].len()).all(|tt| 2 * tt <= n || alpha[n][tt] == 0));
    let alpha_1_3 = if n_max >= 3 { alpha[3][1] } else { alpha_table(3)[3][1] };
    Ok(Row8Report { braiding, coproduct, bridge, alpha_boundary, alpha_1_3 })
}

/// dim V^{⊗n}, for reporting.
pub fn tensor_dim(b: &BraidedSpace, n: usize) -> usize {
    pow(b.dim(), n)
}
