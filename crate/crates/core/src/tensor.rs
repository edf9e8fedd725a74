//! The braided tensor bialgebra T(V).
//!
//! Δ(x) = x⊗1 + 1⊗x on generators, extended multiplicatively for the braided
//! product (u⊗v)(u'⊗v') = u·c^{|v|,|u'|}(v⊗u')·v' on T⊗T. In bidegree (1,1)
//! this gives Δ^{1,1} = Id + c.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::braided::{index_word, pow, word_index, BraidedSpace};
use crate::linalg::{Mat, Subspace};
use crate::scalar::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("element is not homogeneous of degree {0}")]
    DegreeMismatch(usize),
    #[error("letter {0} outside 1..={1}")]
    BadLetter(usize, usize),
}

/// Word in the generators, letters 0-based. Ordered by length, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letter(l: u8) -> Word {
        Word(vec![l])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Word(v)
    }

    pub fn index(&self, n: usize) -> usize {
        word_index(&self.0, n)
    }

    /// Position in the basis of T^{≤len} ordered by degree, then by index.
    pub fn filtered_index(&self, n: usize) -> usize {
        degree_offset(n, self.len()) + self.index(n)
    }

    /// 1-based letters, as in `x1x2`.
    pub fn letters_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&l| l as usize + 1).collect()
    }
}

impl Ord for Word {
    fn cmp(&self, o: &Word) -> Ordering {
        self.0.len().cmp(&o.0.len()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Word) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        // Runs of a letter print as powers: x1^2x2.
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            if j - i == 1 {
                write!(f, "x{}", l + 1)?;
            } else {
                write!(f, "x{}^{}", l + 1, j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

/// dim T^{<d} = 1 + n + … + n^(d-1).
pub fn degree_offset(n: usize, d: usize) -> usize {
    (0..d).map(|k| pow(n, k)).sum()
}

/// Inverse of [`Word::filtered_index`].
pub fn word_at_filtered_index(n: usize, idx: usize) -> Word {
    let mut d = 0;
    let mut off = 0;
    while off + pow(n, d) <= idx {
        off += pow(n, d);
        d += 1;
    }
    Word(index_word(idx - off, n, d))
}

/// All words of length `d` in basis order.
pub fn words_of_degree(n: usize, d: usize) -> Vec<Word> {
    (0..pow(n, d)).map(|i| Word(index_word(i, n, d))).collect()
}

fn fmt_linear<K>(f: &mut fmt::Formatter<'_>, terms: impl Iterator<Item = (K, Scalar)>, field: Field, show: impl Fn(&K) -> String) -> fmt::Result {
    let mut first = true;
    for (k, c) in terms {
        let neg = matches!(field, Field::Rationals) && c.total_cmp(&field.zero()).is_lt();
        let a = if neg { -&c } else { c.clone() };
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        first = false;
        let body = show(&k);
        if a.is_one() && body != "1" {
            write!(f, "{body}")?;
        } else if body == "1" {
            write!(f, "{a}")?;
        } else if a.to_string().contains('/') {
            write!(f, "({a}){body}")?;
        } else {
            write!(f, "{a}{body}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Finite linear combination of words.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorElem {
    field: Field,
    dim: usize,
    terms: BTreeMap<Word, Scalar>,
}

impl TensorElem {
    pub fn zero(field: Field, dim: usize) -> TensorElem {
        TensorElem { field, dim, terms: BTreeMap::new() }
    }

    pub fn word(field: Field, dim: usize, w: Word) -> TensorElem {
        let mut t = TensorElem::zero(field, dim);
        t.add_term(w, field.one());
        t
    }

    pub fn from_terms(field: Field, dim: usize, terms: impl IntoIterator<Item = (Word, Scalar)>) -> TensorElem {
        let mut t = TensorElem::zero(field, dim);
        for (w, c) in terms {
            t.add_term(w, c);
        }
        t
    }

    /// Homogeneous element from a coordinate vector on V^{⊗d}.
    pub fn from_vector(field: Field, dim: usize, d: usize, v: &[Scalar]) -> TensorElem {
        assert_eq!(v.len(), pow(dim, d));
        TensorElem::from_terms(field, dim, v.iter().enumerate().map(|(i, c)| (Word(index_word(i, dim, d)), c.clone())))
    }

    /// Element from coordinates on T^{≤d} in filtered order.
    pub fn from_filtered(field: Field, dim: usize, v: &[Scalar]) -> TensorElem {
        TensorElem::from_terms(field, dim, v.iter().enumerate().map(|(i, c)| (word_at_filtered_index(dim, i), c.clone())))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest word length present, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    pub fn is_homogeneous(&self, d: usize) -> bool {
        self.terms.keys().all(|w| w.len() == d)
    }

    pub fn add(&self, o: &TensorElem) -> TensorElem {
        let mut t = self.clone();
        for (w, c) in &o.terms {
            t.add_term(w.clone(), c.clone());
        }
        t
    }

    pub fn sub(&self, o: &TensorElem) -> TensorElem {
        self.add(&o.scale(&self.field.int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> TensorElem {
        TensorElem::from_terms(self.field, self.dim, self.terms.iter().map(|(w, c)| (w.clone(), c * s)))
    }

    /// Concatenation product of T(V).
    pub fn mul(&self, o: &TensorElem) -> TensorElem {
        let mut t = TensorElem::zero(self.field, self.dim);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                t.add_term(a.concat(b), x * y);
            }
        }
        t
    }

    /// Coordinates of the degree-d component on V^{⊗d}.
    pub fn component(&self, d: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); pow(self.dim, d)];
        for (w, c) in self.terms.iter().filter(|(w, _)| w.len() == d) {
            v[w.index(self.dim)] = c.clone();
        }
        v
    }

    /// Coordinates on T^{≤d} in filtered order.
    pub fn filtered_vector(&self, d: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); degree_offset(self.dim, d + 1)];
        for (w, c) in &self.terms {
            assert!(w.len() <= d, "element exceeds the requested filtration degree");
            v[w.filtered_index(self.dim)] = c.clone();
        }
        v
    }
}

impl fmt::Display for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Highest degree first reads like the usual relation notation.
        let mut items: Vec<(&Word, &Scalar)> = self.terms.iter().collect();
        items.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0 .0.iter().rev().cmp(b.0 .0.iter().rev())));
        fmt_linear(f, items.into_iter().map(|(w, c)| (w.clone(), c.clone())), self.field, |w| w.to_string())
    }
}

/// Element of T(V)⊗T(V).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SplitTensorElem {
    field: Field,
    dim: usize,
    terms: BTreeMap<(Word, Word), Scalar>,
}

impl SplitTensorElem {
    pub fn zero(field: Field, dim: usize) -> SplitTensorElem {
        SplitTensorElem { field, dim, terms: BTreeMap::new() }
    }

    pub fn pure(field: Field, dim: usize, a: Word, b: Word) -> SplitTensorElem {
        let mut t = SplitTensorElem::zero(field, dim);
        t.add_term(a, b, field.one());
        t
    }

    /// a ⊗ b for tensor elements.
    pub fn tensor(a: &TensorElem, b: &TensorElem) -> SplitTensorElem {
        let mut t = SplitTensorElem::zero(a.field, a.dim);
        for (u, x) in &a.terms {
            for (v, y) in &b.terms {
                t.add_term(u.clone(), v.clone(), x * y);
            }
        }
        t
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn add_term(&mut self, a: Word, b: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (a, b);
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<(Word, Word), Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &SplitTensorElem) -> SplitTensorElem {
        let mut t = self.clone();
        for ((a, b), c) in &o.terms {
            t.add_term(a.clone(), b.clone(), c.clone());
        }
        t
    }

    pub fn sub(&self, o: &SplitTensorElem) -> SplitTensorElem {
        let m = self.field.int(-1);
        let mut t = self.clone();
        for ((a, b), c) in &o.terms {
            t.add_term(a.clone(), b.clone(), c * &m);
        }
        t
    }

    pub fn scale(&self, s: &Scalar) -> SplitTensorElem {
        let mut t = SplitTensorElem::zero(self.field, self.dim);
        for ((a, b), c) in &self.terms {
            t.add_term(a.clone(), b.clone(), c * s);
        }
        t
    }

    /// Component of bidegree (a, b).
    pub fn bidegree(&self, a: usize, b: usize) -> SplitTensorElem {
        let mut t = SplitTensorElem::zero(self.field, self.dim);
        for ((u, v), c) in self.terms.iter().filter(|((u, v), _)| u.len() == a && v.len() == b) {
            t.add_term(u.clone(), v.clone(), c.clone());
        }
        t
    }

    /// Identifies V^{⊗a}⊗V^{⊗b} with V^{⊗(a+b)} by concatenation.
    pub fn flatten(&self) -> TensorElem {
        TensorElem::from_terms(self.field, self.dim, self.terms.iter().map(|((u, v), c)| (u.concat(v), c.clone())))
    }

    /// Applies linear maps to each leg.
    pub fn map_legs(&self, mut f: impl FnMut(&Word) -> TensorElem, mut g: impl FnMut(&Word) -> TensorElem) -> SplitTensorElem {
        let mut t = SplitTensorElem::zero(self.field, self.dim);
        for ((u, v), c) in &self.terms {
            let fu = f(u);
            let gv = g(v);
            for (a, x) in fu.terms() {
                for (b, y) in gv.terms() {
                    t.add_term(a.clone(), b.clone(), &(c * x) * y);
                }
            }
        }
        t
    }
}

impl fmt::Display for SplitTensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_linear(f, self.terms.iter().map(|(k, c)| (k.clone(), c.clone())), self.field, |(a, b)| format!("{a}⊗{b}"))
    }
}

type Braided = Vec<(Word, Word, Scalar)>;

/// T(V) as a braided bialgebra, with memoized braiding and coproduct on words.
pub struct TensorAlgebra {
    space: BraidedSpace,
    /// c(x_a⊗x_b) as (a', b', coefficient) triples.
    c_cols: Vec<Vec<(u8, u8, Scalar)>>,
    braid_cache: RefCell<HashMap<(Word, Word), Braided>>,
    coproduct_cache: RefCell<HashMap<Word, SplitTensorElem>>,
}

impl TensorAlgebra {
    pub fn new(space: &BraidedSpace) -> TensorAlgebra {
        let n = space.dim();
        let c = space.c();
        let c_cols = (0..n * n)
            .map(|j| {
                (0..n * n)
                    .filter(|&i| !c.get(i, j).is_zero())
                    .map(|i| ((i % n) as u8, (i / n) as u8, c.get(i, j).clone()))
                    .collect()
            })
            .collect();
        TensorAlgebra { space: space.clone(), c_cols, braid_cache: RefCell::default(), coproduct_cache: RefCell::default() }
    }

    pub fn space(&self) -> &BraidedSpace {
        &self.space
    }

    fn field(&self) -> Field {
        self.space.field()
    }

    fn n(&self) -> usize {
        self.space.dim()
    }

    /// c^{|u|,|v|}(u⊗v) as triples (v', u', λ) with |v'| = |v|, |u'| = |u|.
    pub fn braid_words(&self, u: &Word, v: &Word) -> Braided {
        if u.is_empty() || v.is_empty() {
            return vec![(v.clone(), u.clone(), self.field().one())];
        }
        let key = (u.clone(), v.clone());
        if let Some(r) = self.braid_cache.borrow().get(&key) {
            return r.clone();
        }
        let mut acc: BTreeMap<(Word, Word), Scalar> = BTreeMap::new();
        let mut push = |a: Word, b: Word, c: Scalar| {
            let e = acc.entry((a, b)).or_insert_with(|| c.field().zero());
            *e = &*e + &c;
        };
        if u.len() == 1 {
            // c^{1,n} = c_n ∘ … ∘ c_1: x moves right one slot at a time.
            let x = u.0[0] as usize;
            let first = v.0[0] as usize;
            let rest = Word(v.0[1..].to_vec());
            for (a, y, lam) in &self.c_cols[x + self.n() * first] {
                for (vt, ut, mu) in self.braid_words(&Word::letter(*y), &rest) {
                    push(Word::letter(*a).concat(&vt), ut, lam * &mu);
                }
            }
        } else {
            // c^{m,n} = (c^{m-1,n} ⊗ Id)(Id^{m-1} ⊗ c^{1,n}).
            let (head, last) = u.0.split_at(u.len() - 1);
            let head = Word(head.to_vec());
            for (v1, y, lam) in self.braid_words(&Word(last.to_vec()), v) {
                for (v2, u2, mu) in self.braid_words(&head, &v1) {
                    push(v2, u2.concat(&y), &lam * &mu);
                }
            }
        }
        let r: Braided = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((a, b), c)| (a, b, c)).collect();
        self.braid_cache.borrow_mut().insert(key, r.clone());
        r
    }

    /// c^{m,n} as a matrix on V^{⊗(m+n)}.
    pub fn block_braiding(&self, m: usize, n: usize) -> Mat {
        let d = self.n();
        let size = pow(d, m + n);
        let mut out = Mat::zeros(self.field(), size, size);
        for j in 0..size {
            let w = index_word(j, d, m + n);
            let (u, v) = w.split_at(m);
            for (v2, u2, c) in self.braid_words(&Word(u.to_vec()), &Word(v.to_vec())) {
                out.set(v2.concat(&u2).index(d), j, c);
            }
        }
        out
    }

    /// Product on T⊗T with the braided twist in the middle.
    pub fn braided_mul_split(&self, a: &SplitTensorElem, b: &SplitTensorElem) -> SplitTensorElem {
        let mut out = SplitTensorElem::zero(self.field(), self.n());
        for ((u, v), x) in &a.terms {
            for ((u2, v2), y) in &b.terms {
                let xy = x * y;
                for (p, q, lam) in self.braid_words(v, u2) {
                    out.add_term(u.concat(&p), q.concat(v2), &xy * &lam);
                }
            }
        }
        out
    }

    /// Δ on a single word.
    pub fn coproduct_word(&self, w: &Word) -> SplitTensorElem {
        if let Some(r) = self.coproduct_cache.borrow().get(w) {
            return r.clone();
        }
        let field = self.field();
        let r = if w.is_empty() {
            SplitTensorElem::pure(field, self.n(), Word::empty(), Word::empty())
        } else {
            let x = w.0[0];
            let tail = self.coproduct_word(&Word(w.0[1..].to_vec()));
            let mut out = SplitTensorElem::zero(field, self.n());
            for ((a, b), c) in &tail.terms {
                out.add_term(Word::letter(x).concat(a), b.clone(), c.clone());
                for (a2, y, lam) in self.braid_words(&Word::letter(x), a) {
                    out.add_term(a2, y.concat(b), c * &lam);
                }
            }
            out
        };
        self.coproduct_cache.borrow_mut().insert(w.clone(), r.clone());
        r
    }

    pub fn coproduct(&self, t: &TensorElem) -> SplitTensorElem {
        let mut out = SplitTensorElem::zero(self.field(), self.n());
        for (w, c) in &t.terms {
            out = out.add(&self.coproduct_word(w).scale(c));
        }
        out
    }

    /// Δ^{a,b}(t) for t homogeneous of degree a+b.
    pub fn delta_component(&self, t: &TensorElem, a: usize, b: usize) -> Result<SplitTensorElem, TensorError> {
        if !t.is_homogeneous(a + b) {
            return Err(TensorError::DegreeMismatch(a + b));
        }
        Ok(self.coproduct(t).bidegree(a, b))
    }

    /// Δ^{a,b} as a matrix V^{⊗(a+b)} → V^{⊗a}⊗V^{⊗b} ≅ V^{⊗(a+b)}.
    pub fn delta_component_matrix(&self, a: usize, b: usize) -> Mat {
        let d = self.n();
        let size = pow(d, a + b);
        let mut out = Mat::zeros(self.field(), size, size);
        for j in 0..size {
            let w = Word(index_word(j, d, a + b));
            for ((u, v), c) in self.coproduct_word(&w).bidegree(a, b).terms {
                out.set(u.concat(&v).index(d), j, c);
            }
        }
        out
    }

    /// E_n = ∩_{a+b=n, a,b≥1} ker Δ^{a,b}.
    pub fn en_space(&self, n: usize) -> Subspace {
        let size = pow(self.n(), n);
        if n < 2 {
            return Subspace::full(self.field(), size);
        }
        let mut stacked = self.delta_component_matrix(1, n - 1);
        for a in 2..n {
            stacked = stacked.vstack(&self.delta_component_matrix(a, n - a));
        }
        stacked.kernel()
    }
}

/// Words of V^{⊗d} spanning a subspace, as tensor elements.
pub fn subspace_elements(space: &Subspace, dim: usize, d: usize) -> Vec<TensorElem> {
    space.basis().iter().map(|v| TensorElem::from_vector(space.field(), dim, d, v)).collect()
}
