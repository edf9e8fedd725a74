//! Enveloping algebra U_Q = T(V)/(h(c)(z) − β(z) : z ∈ V⊗V), symmetric algebra
//! S_Q = T(V)/(E₂), and their truncated ideals.
//!
//! Ideal slices are computed by sparse elimination on T^{≤M} with coordinates
//! ordered by degree, then by word index; pivots sit on the largest coordinate.
//! A vector lies in T^{≤n} exactly when its leading coordinate does, so the
//! echelon rows with leading degree ≤ n span I_{≤M} ∩ T^{≤n}.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::braided::{pow, BraidError, BraidedSpace, MinpolyOutcome};
use crate::linalg::{Mat, Subspace};
use crate::qlie::LiftedQLie;
use crate::scalar::{Field, Scalar};
use crate::tensor::{degree_offset, word_at_filtered_index, words_of_degree, SplitTensorElem, TensorAlgebra, TensorElem, Word};

/// Default truncation buffer above the requested degree.
pub const DEFAULT_BUFFER: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnvelopeError {
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error("ideal slice dimensions did not stabilize: {0:?}")]
    Unstabilized(Vec<Vec<usize>>),
    #[error("relation {0} has degree above 2")]
    RelationDegree(String),
}

/// Quotient T(V)/(relations) of the tensor algebra of a braided space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub space: BraidedSpace,
    pub relations: Vec<TensorElem>,
}

/// Row-reduces relations on T^{≤2} with top-degree coordinates first.
pub fn canonicalize_relations(field: Field, n: usize, rels: &[TensorElem]) -> Vec<TensorElem> {
    let size = degree_offset(n, 3);
    if rels.is_empty() {
        return Vec::new();
    }
    let rows: Vec<Vec<Scalar>> = rels
        .iter()
        .map(|r| {
            let v = r.filtered_vector(2);
            v.into_iter().rev().collect()
        })
        .collect();
    let (m, piv) = Mat::from_rows(field, rows).expect("equal lengths").rref();
    (0..piv.len())
        .map(|i| {
            let mut v = m.row(i);
            v.reverse();
            TensorElem::from_filtered(field, n, &v[..size])
        })
        .collect()
}

/// Relations h(c)(z) − β(z) for z running over the words of length 2.
/// When -1 is not a root of the minimal polynomial, E₂ = 0 and there are none.
pub fn uq_relations(q: &LiftedQLie) -> Result<Presentation, EnvelopeError> {
    let b = &q.space;
    let (field, n) = (b.field(), b.dim());
    let split = match b.split_minpoly()? {
        MinpolyOutcome::Split(s) => s,
        MinpolyOutcome::NoMinusOneRoot(_) => return Ok(Presentation { space: b.clone(), relations: Vec::new() }),
    };
    let rels: Vec<TensorElem> = (0..n * n)
        .map(|j| {
            let top = TensorElem::from_vector(field, n, 2, &split.h_at_c.col(j));
            let low = TensorElem::from_vector(field, n, 1, &q.beta.col(j));
            top.sub(&low)
        })
        .collect();
    Ok(Presentation { space: b.clone(), relations: canonicalize_relations(field, n, &rels) })
}

/// S_Q = T(V)/(E₂).
pub fn sq_presentation(b: &BraidedSpace) -> Presentation {
    let (field, n) = (b.field(), b.dim());
    let rels: Vec<TensorElem> = b.e2().basis().iter().map(|v| TensorElem::from_vector(field, n, 2, v)).collect();
    Presentation { space: b.clone(), relations: canonicalize_relations(field, n, &rels) }
}

type SparseVec = Vec<(usize, Scalar)>;

/// Echelon basis over coordinates of T^{≤M}, keyed by leading coordinate.
#[derive(Clone, Debug)]
pub struct FilteredEchelon {
    field: Field,
    n: usize,
    /// Leading coefficient normalized to 1; entries ascending.
    rows: BTreeMap<usize, SparseVec>,
}

impl FilteredEchelon {
    pub fn new(field: Field, n: usize) -> FilteredEchelon {
        FilteredEchelon { field, n, rows: BTreeMap::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Full reduction; the remainder only involves non-pivot coordinates.
    fn reduce_map(&self, mut work: BTreeMap<usize, Scalar>) -> BTreeMap<usize, Scalar> {
        let mut rest = BTreeMap::new();
        while let Some((lead, coef)) = work.pop_last() {
            match self.rows.get(&lead) {
                None => {
                    rest.insert(lead, coef);
                }
                Some(row) => {
                    for (i, c) in &row[..row.len() - 1] {
                        let e = work.entry(*i).or_insert_with(|| self.field.zero());
                        *e = &*e - &(&coef * c);
                        if e.is_zero() {
                            work.remove(i);
                        }
                    }
                }
            }
        }
        rest
    }

    pub fn reduce(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let work: BTreeMap<usize, Scalar> = v.iter().filter(|(_, c)| !c.is_zero()).cloned().collect();
        self.reduce_map(work).into_iter().collect()
    }

    /// Inserts the reduction of `v`; returns its leading coordinate when new.
    pub fn insert(&mut self, v: &[(usize, Scalar)]) -> Option<usize> {
        let r = self.reduce(v);
        let (lead, coef) = r.last()?.clone();
        let inv = coef.inv().expect("nonzero leading coefficient");
        let row: SparseVec = r.into_iter().map(|(i, c)| (i, &c * &inv)).collect();
        self.rows.insert(lead, row);
        Some(lead)
    }

    pub fn row(&self, lead: usize) -> Option<&SparseVec> {
        self.rows.get(&lead)
    }

    pub fn is_pivot(&self, idx: usize) -> bool {
        self.rows.contains_key(&idx)
    }

    /// Number of rows whose leading coordinate has degree ≤ d.
    pub fn count_up_to_degree(&self, d: usize) -> usize {
        self.rows.range(..degree_offset(self.n, d + 1)).count()
    }
}

fn to_sparse(t: &TensorElem) -> SparseVec {
    t.terms().iter().map(|(w, c)| (w.filtered_index(t.dim()), c.clone())).collect()
}

fn from_sparse(field: Field, n: usize, v: &[(usize, Scalar)]) -> TensorElem {
    TensorElem::from_terms(field, n, v.iter().map(|(i, c)| (word_at_filtered_index(n, *i), c.clone())))
}

/// Index helpers for left/right multiplication by a letter.
struct FilteredIndex {
    n: usize,
    offsets: Vec<usize>,
}

impl FilteredIndex {
    fn new(n: usize, max_deg: usize) -> FilteredIndex {
        FilteredIndex { n, offsets: (0..=max_deg + 1).map(|d| degree_offset(n, d)).collect() }
    }

    fn split(&self, idx: usize) -> (usize, usize) {
        let d = self.offsets.partition_point(|&o| o <= idx) - 1;
        (d, idx - self.offsets[d])
    }

    fn left(&self, x: usize, idx: usize) -> usize {
        let (d, i) = self.split(idx);
        self.offsets[d + 1] + x + self.n * i
    }

    fn right(&self, idx: usize, x: usize) -> usize {
        let (d, i) = self.split(idx);
        self.offsets[d + 1] + i + pow(self.n, d) * x
    }
}

/// I ∩ T^{≤n} for n ≤ N, with the echelon used for normal forms.
#[derive(Clone, Debug)]
pub struct IdealTruncation {
    pub degree_cap: usize,
    /// Buffer at which the dimensions were certified.
    pub buffer: usize,
    /// dim(I ∩ T^{≤n}) for n = 0..=N.
    pub ideal_dims: Vec<usize>,
    /// Dimensions seen at buffer, buffer+1 (and buffer+2 when needed).
    pub history: Vec<Vec<usize>>,
    echelon: FilteredEchelon,
    field: Field,
    n: usize,
}

impl IdealTruncation {
    pub fn echelon(&self) -> &FilteredEchelon {
        &self.echelon
    }

    /// Canonical coset representative: combination of standard monomials.
    pub fn normal_form(&self, t: &TensorElem) -> TensorElem {
        from_sparse(self.field, self.n, &self.echelon.reduce(&to_sparse(t)))
    }

    pub fn normal_form_word(&self, w: &Word) -> TensorElem {
        from_sparse(self.field, self.n, &self.echelon.reduce(&[(w.filtered_index(self.n), self.field.one())]))
    }

    /// Words of length ≤ d that are not leading terms; a basis of U'_d.
    pub fn standard_monomials(&self, d: usize) -> Vec<Word> {
        (0..degree_offset(self.n, d + 1)).filter(|&i| !self.echelon.is_pivot(i)).map(|i| word_at_filtered_index(self.n, i)).collect()
    }

    /// dim U'_n / U'_{n-1} for n = 0..=N.
    pub fn graded_quotient_dims(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut prev = 0;
        for (d, idim) in self.ideal_dims.iter().enumerate() {
            let q = degree_offset(self.n, d + 1) - idim;
            out.push(q - prev);
            prev = q;
        }
        out
    }

    /// Reduces both legs of a split element.
    pub fn reduce_split(&self, s: &SplitTensorElem) -> SplitTensorElem {
        let mut cache: BTreeMap<Word, TensorElem> = BTreeMap::new();
        let mut nf = |w: &Word| cache.entry(w.clone()).or_insert_with(|| self.normal_form_word(w)).clone();
        let mut out = SplitTensorElem::zero(self.field, self.n);
        for ((a, b), c) in s.terms() {
            let na = nf(a);
            let nb = nf(b);
            for (u, x) in na.terms() {
                for (v, y) in nb.terms() {
                    out.add_term(u.clone(), v.clone(), &(c * x) * y);
                }
            }
        }
        out
    }
}

/// Grows span{u·r·v : |u| + |v| + deg r ≤ m} one degree at a time.
struct IdealBuilder<'a> {
    p: &'a Presentation,
    idx: FilteredIndex,
    echelon: FilteredEchelon,
    level: usize,
    fresh: Vec<usize>,
}

impl<'a> IdealBuilder<'a> {
    fn new(p: &'a Presentation, max_deg: usize) -> IdealBuilder<'a> {
        let (field, n) = (p.space.field(), p.space.dim());
        IdealBuilder { p, idx: FilteredIndex::new(n, max_deg), echelon: FilteredEchelon::new(field, n), level: 0, fresh: Vec::new() }
    }

    fn advance(&mut self) {
        let m = self.level + 1;
        let n = self.p.space.dim();
        let mut candidates: Vec<SparseVec> = Vec::new();
        for lead in &self.fresh {
            let row = self.echelon.row(*lead).expect("fresh row").clone();
            for x in 0..n {
                candidates.push(row.iter().map(|(i, c)| (self.idx.left(x, *i), c.clone())).collect());
                candidates.push(row.iter().map(|(i, c)| (self.idx.right(*i, x), c.clone())).collect());
            }
        }
        for r in &self.p.relations {
            if r.degree().map_or(0, |d| d.max(2)) == m {
                candidates.push(to_sparse(r));
            }
        }
        let mut fresh = Vec::new();
        for v in candidates {
            if let Some(lead) = self.echelon.insert(&v) {
                fresh.push(lead);
            }
        }
        self.fresh = fresh;
        self.level = m;
    }

    fn dims(&self, cap: usize) -> Vec<usize> {
        (0..=cap).map(|d| self.echelon.count_up_to_degree(d)).collect()
    }
}

/// dim(I_{≤N+buffer} ∩ T^{≤n}) for n ≤ N, certified by matching the run at buffer+1
/// (or, failing that, buffer+1 against buffer+2).
pub fn ideal_truncation(p: &Presentation, degree_cap: usize, buffer: usize) -> Result<IdealTruncation, EnvelopeError> {
    for r in &p.relations {
        if r.degree().unwrap_or(0) > 2 {
            return Err(EnvelopeError::RelationDegree(r.to_string()));
        }
    }
    let target = degree_cap + buffer;
    let mut b = IdealBuilder::new(p, target + 2);
    while b.level < target {
        b.advance();
    }
    let mut history = vec![b.dims(degree_cap)];
    b.advance();
    history.push(b.dims(degree_cap));
    let mut used = buffer;
    if history[0] != history[1] {
        b.advance();
        history.push(b.dims(degree_cap));
        if history[1] != history[2] {
            return Err(EnvelopeError::Unstabilized(history));
        }
        used = buffer + 1;
    }
    let ideal_dims = history.last().expect("nonempty").clone();
    Ok(IdealTruncation {
        degree_cap,
        buffer: used,
        ideal_dims,
        history,
        echelon: b.echelon,
        field: p.space.field(),
        n: p.space.dim(),
    })
}

/// dim U'_n/U'_{n-1} for n = 0..=N with the default buffer.
pub fn filtration_dims(p: &Presentation, degree_cap: usize) -> Result<Vec<usize>, EnvelopeError> {
    Ok(ideal_truncation(p, degree_cap, DEFAULT_BUFFER)?.graded_quotient_dims())
}

/// dim S_Q^n = dim V^{⊗n} − dim Σ_i V^{⊗i}⊗E₂⊗V^{⊗(n−2−i)}.
pub fn sq_graded_dims(b: &BraidedSpace, degree_cap: usize) -> Vec<usize> {
    let (field, n) = (b.field(), b.dim());
    let e2 = b.e2();
    (0..=degree_cap)
        .map(|d| {
            if d < 2 || e2.is_zero() {
                return pow(n, d);
            }
            let mut vecs = Vec::new();
            for i in 0..=d - 2 {
                let (lo, hi) = (pow(n, i), pow(n, d - 2 - i));
                for e in e2.basis() {
                    for a in 0..lo {
                        for z in 0..hi {
                            let mut v = vec![field.zero(); pow(n, d)];
                            for (k, x) in e.iter().enumerate() {
                                if !x.is_zero() {
                                    v[a + lo * (k + n * n * z)] = x.clone();
                                }
                            }
                            vecs.push(v);
                        }
                    }
                }
            }
            pow(n, d) - Subspace::span(field, pow(n, d), vecs).dim()
        })
        .collect()
}

/// Braverman–Gaitsgory conditions on the relation space P ⊂ T^{≤2}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BgReport {
    /// P ∩ T^{≤1} = 0.
    pub i: bool,
    /// (T^{≤1}·P·T^{≤1}) ∩ T^{≤2} = P.
    pub j: bool,
}

/// Condition J is decided inside T^{≤3}: once P ∩ T^{≤1} = 0, the top degree of
/// any element of V·P·V determines it, so V·P·V adds nothing in T^{≤2}.
pub fn bg_conditions(p: &Presentation) -> BgReport {
    let (field, n) = (p.space.field(), p.space.dim());
    let mut base = FilteredEchelon::new(field, n);
    for r in &p.relations {
        base.insert(&to_sparse(r));
    }
    let dim_p = base.len();
    let i = base.count_up_to_degree(1) == 0;
    let idx = FilteredIndex::new(n, 4);
    let mut w = base.clone();
    for row in base.rows.values() {
        for x in 0..n {
            w.insert(&row.iter().map(|(k, c)| (idx.left(x, *k), c.clone())).collect::<Vec<_>>());
            w.insert(&row.iter().map(|(k, c)| (idx.right(*k, x), c.clone())).collect::<Vec<_>>());
        }
    }
    let j = w.count_up_to_degree(2) == dim_p;
    BgReport { i, j }
}

/// Filtered dimensions against the graded dimensions of S_Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwReport {
    pub filtration: Vec<usize>,
    pub graded: Vec<usize>,
}

impl PbwReport {
    pub fn holds(&self) -> bool {
        self.filtration == self.graded
    }
}

pub fn pbw_report(p: &Presentation, degree_cap: usize) -> Result<PbwReport, EnvelopeError> {
    Ok(PbwReport { filtration: filtration_dims(p, degree_cap)?, graded: sq_graded_dims(&p.space, degree_cap) })
}

/// dim gr U'_n = dim S_Q^n for every n ≤ N.
pub fn pbw_check(p: &Presentation, degree_cap: usize) -> Result<bool, EnvelopeError> {
    Ok(pbw_report(p, degree_cap)?.holds())
}

/// Δ(r) reduces to zero in A⊗A for every relation r, i.e. Δ(I) ⊆ I⊗T + T⊗I
/// as far as the truncation sees.
pub fn coproduct_descends(p: &Presentation, trunc: &IdealTruncation) -> bool {
    let t = TensorAlgebra::new(&p.space);
    p.relations.iter().all(|r| trunc.reduce_split(&t.coproduct(r)).is_zero())
}

/// All words of degree d, as tensor elements.
pub fn monomials(field: Field, n: usize, d: usize) -> Vec<TensorElem> {
    words_of_degree(n, d).into_iter().map(|w| TensorElem::word(field, n, w)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row1_presentation() -> Presentation {
        let q = Field::Rationals;
        let space = BraidedSpace::flip(q, 2);
        let r = TensorElem::from_terms(q, 2, [(Word(vec![1, 0]), q.int(1)), (Word(vec![0, 1]), q.int(-1)), (Word(vec![0]), q.int(1))]);
        Presentation { space, relations: vec![r] }
    }

    #[test]
    fn row1_slices() {
        let t = ideal_truncation(&row1_presentation(), 3, 2).unwrap();
        assert_eq!(t.ideal_dims, vec![0, 0, 1, 5]);
    }

    #[test]
    fn tensor_algebra_dims() {
        let q = Field::Rationals;
        let p = Presentation { space: BraidedSpace::flip(q, 2), relations: vec![] };
        assert_eq!(filtration_dims(&p, 3).unwrap(), vec![1, 2, 4, 8]);
    }

    #[test]
    fn bg_condition_i_fails_for_linear_relation() {
        let q = Field::Rationals;
        let r = TensorElem::from_terms(q, 2, [(Word(vec![0]), q.int(1)), (Word::empty(), q.int(-1))]);
        let p = Presentation { space: BraidedSpace::flip(q, 2), relations: vec![r] };
        assert!(!bg_conditions(&p).i);
    }

    #[test]
    fn letter_index_helpers() {
        let idx = FilteredIndex::new(2, 4);
        let w = Word(vec![1, 0]);
        let i = w.filtered_index(2);
        assert_eq!(word_at_filtered_index(2, idx.left(1, i)), Word(vec![1, 1, 0]));
        assert_eq!(word_at_filtered_index(2, idx.right(i, 1)), Word(vec![1, 0, 1]));
    }
}
