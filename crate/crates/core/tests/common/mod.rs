//! Shared oracles for the integration tests. Nothing here calls into the
//! classification tables of the library: the row data is transcribed afresh.
#![allow(dead_code)]

use std::collections::BTreeMap;

use qlie_core::linalg::{Mat, Poly, Subspace};
use qlie_core::tensor::{words_of_degree, TensorAlgebra, TensorElem, Word};
use qlie_core::{BraidedSpace, Field, Scalar};
use rand::Rng;

/// One row of the table of two-dimensional brackets with one-dimensional image.
pub struct PaperRow {
    pub c: Mat,
    pub beta: Mat,
    pub f: Poly,
    /// Relations as (1-based word, coefficient) lists.
    pub relations: Vec<TensorElem>,
}

fn rel(field: Field, terms: &[(&[u8], Scalar)]) -> TensorElem {
    TensorElem::from_terms(field, 2, terms.iter().map(|(w, c)| (Word(w.iter().map(|l| l - 1).collect()), c.clone())))
}

pub fn paper_row(row: u8, gamma: &Scalar) -> PaperRow {
    let f = gamma.field();
    let g = gamma.clone();
    let i = |v: i64| f.int(v);
    let m = |rows: Vec<Vec<Scalar>>| Mat::from_rows(f, rows).unwrap();
    let mid = || vec![vec![i(0), i(0), i(1), i(0)], vec![i(0), i(1), i(0), i(0)]];
    let flip_like = |top: Vec<Scalar>, bottom: Vec<Scalar>| {
        let mut r = vec![top];
        r.extend(mid());
        r.push(bottom);
        m(r)
    };
    let e4 = vec![i(0), i(0), i(0), i(1)];
    let std_beta = m(vec![vec![i(0), i(1), i(-1), i(0)], vec![i(0); 4]]);
    let x2m1 = Poly::from_ints(f, &[-1, 0, 1]);
    let x = Poly::from_ints(f, &[0, 1]);
    match row {
        1 => PaperRow {
            c: flip_like(vec![i(1), i(0), i(0), i(0)], e4),
            beta: std_beta,
            f: x2m1,
            relations: vec![rel(f, &[(&[2, 1], i(1)), (&[1, 2], i(-1)), (&[1], i(1))])],
        },
        2 => PaperRow {
            c: flip_like(vec![i(1), i(1), i(-1), i(0)], e4),
            beta: std_beta,
            f: x2m1,
            relations: vec![rel(f, &[(&[1, 1], i(1)), (&[2, 1], i(-1)), (&[1, 2], i(1)), (&[1], i(-1))])],
        },
        3 => PaperRow {
            c: flip_like(vec![i(-1), i(0), i(0), g.clone()], e4),
            beta: std_beta,
            f: x2m1,
            relations: vec![rel(f, &[(&[1, 1], i(1))]), rel(f, &[(&[2, 1], i(1)), (&[1, 2], i(-1)), (&[1], i(1))])],
        },
        4 => PaperRow {
            c: flip_like(vec![i(1), i(0), i(0), g.clone()], vec![i(0), i(0), i(0), i(-1)]),
            beta: m(vec![vec![i(0), i(0), i(0), i(1)], vec![i(0); 4]]),
            f: x2m1,
            relations: vec![
                rel(f, &[(&[2, 1], i(1)), (&[1, 2], i(-1))]),
                rel(f, &[(&[1, 1], g.clone()), (&[2, 2], i(-2)), (&[1], i(-1))]),
            ],
        },
        5 => PaperRow {
            c: m(vec![vec![i(0), i(1), i(0), i(0)], vec![i(0), i(0), i(1), i(0)], vec![i(0), i(1), i(0), i(0)], e4]),
            beta: std_beta,
            f: x2m1.mul(&x),
            relations: vec![rel(f, &[(&[1, 1], i(1)), (&[2, 1], i(-1)), (&[1, 2], i(1)), (&[1], i(1))])],
        },
        6 => PaperRow {
            c: m(vec![vec![i(0); 4], vec![i(0), i(0), g.clone(), i(0)], vec![i(0), g.inv().unwrap(), i(0), i(0)], e4]),
            beta: m(vec![vec![i(0), i(1), -&g, i(0)], vec![i(0); 4]]),
            f: x2m1.mul(&x),
            relations: vec![rel(f, &[(&[2, 1], -&g), (&[1, 2], i(1)), (&[1], g.clone())])],
        },
        7 => PaperRow {
            c: flip_like(vec![g.clone(), i(0), i(0), i(0)], e4),
            beta: std_beta,
            f: x2m1.mul(&Poly::new(f, vec![-&g, i(1)])),
            relations: vec![rel(f, &[(&[2, 1], &i(1) + &g), (&[1, 2], -&(&i(1) + &g)), (&[1], i(-1))])],
        },
        8 => PaperRow {
            c: flip_like(vec![i(1), i(0), i(0), g.clone()], e4),
            beta: std_beta,
            f: x2m1.mul(&Poly::from_ints(f, &[-1, 1])),
            relations: vec![rel(f, &[(&[2, 1], i(2)), (&[1, 2], i(-2)), (&[1], i(-1))])],
        },
        _ => panic!("no row {row}"),
    }
}

/// Parameter used by default for each row over a field where 2 is admissible.
pub fn default_gamma(row: u8, f: Field) -> Option<Scalar> {
    match row {
        3 | 4 | 6 | 7 | 8 => Some(f.int(2)),
        _ => None,
    }
}

/// Span of relations inside T^{≤2}.
pub fn relation_span(field: Field, rels: &[TensorElem]) -> Subspace {
    Subspace::span(field, 7, rels.iter().map(|r| r.filtered_vector(2)).collect())
}

type Triple = BTreeMap<(Word, Word, Word), Scalar>;

fn push(m: &mut Triple, k: (Word, Word, Word), c: Scalar) {
    let e = m.entry(k).or_insert_with(|| c.field().zero());
    *e = &*e + &c;
}

fn clean(m: Triple) -> Triple {
    m.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// (Δ⊗id)Δ = (id⊗Δ)Δ on a word.
pub fn coassociative_on(t: &TensorAlgebra, w: &Word) -> bool {
    let d = t.coproduct_word(w);
    let (mut left, mut right) = (Triple::new(), Triple::new());
    for ((a, b), c) in d.terms() {
        for ((a1, a2), x) in t.coproduct_word(a).terms() {
            push(&mut left, (a1.clone(), a2.clone(), b.clone()), c * x);
        }
        for ((b1, b2), x) in t.coproduct_word(b).terms() {
            push(&mut right, (a.clone(), b1.clone(), b2.clone()), c * x);
        }
    }
    clean(left) == clean(right)
}

/// (ε⊗id)Δ(w) = w = (id⊗ε)Δ(w).
pub fn counital_on(t: &TensorAlgebra, w: &Word) -> bool {
    let d = t.coproduct_word(w);
    let f = t.space().field();
    let mut l = TensorElem::zero(f, t.space().dim());
    let mut r = TensorElem::zero(f, t.space().dim());
    for ((a, b), c) in d.terms() {
        if a.is_empty() {
            l.add_term(b.clone(), c.clone());
        }
        if b.is_empty() {
            r.add_term(a.clone(), c.clone());
        }
    }
    let target = TensorElem::word(f, t.space().dim(), w.clone());
    l == target && r == target
}

/// Δ(uv) = Δ(u)Δ(v) with the braided product on T⊗T.
pub fn multiplicative_on(t: &TensorAlgebra, u: &Word, v: &Word) -> bool {
    t.coproduct_word(&u.concat(v)) == t.braided_mul_split(&t.coproduct_word(u), &t.coproduct_word(v))
}

/// c(w⊗1) = 1⊗w and c(1⊗w) = w⊗1.
pub fn connected_on(t: &TensorAlgebra, w: &Word) -> bool {
    let f = t.space().field();
    let e = Word::empty();
    t.braid_words(w, &e) == vec![(e.clone(), w.clone(), f.one())] && t.braid_words(&e, w) == vec![(w.clone(), e.clone(), f.one())]
}

/// Words of length 0..=max.
pub fn words_up_to(n: usize, max: usize) -> Vec<Word> {
    (0..=max).flat_map(|d| words_of_degree(n, d)).collect()
}

/// Every bialgebra compatibility on words of total degree ≤ max.
pub fn bialgebra_axioms_hold(b: &BraidedSpace, max: usize) -> Result<(), String> {
    let t = TensorAlgebra::new(b);
    let n = b.dim();
    for w in words_up_to(n, max) {
        if !coassociative_on(&t, &w) {
            return Err(format!("coassociativity fails on {w}"));
        }
        if !counital_on(&t, &w) {
            return Err(format!("counit fails on {w}"));
        }
        if w.len() < max && !connected_on(&t, &w) {
            return Err(format!("connectedness fails on {w}"));
        }
        for k in 0..=w.len() {
            let (u, v) = (Word(w.0[..k].to_vec()), Word(w.0[k..].to_vec()));
            if !multiplicative_on(&t, &u, &v) {
                return Err(format!("multiplicativity fails on {u} * {v}"));
            }
        }
    }
    Ok(())
}

fn mobius(mut n: usize) -> i64 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// Dimension of the degree-n part of the free Lie algebra on k generators.
pub fn witt(k: usize, n: usize) -> usize {
    let s: i64 = (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| mobius(d) * (k as i64).pow((n / d) as u32)).sum();
    (s / n as i64) as usize
}

/// Diagonal braiding c(x_i⊗x_j) = q_ij x_j⊗x_i.
pub fn diagonal_braiding(q: &[Vec<Scalar>]) -> BraidedSpace {
    let n = q.len();
    let f = q[0][0].field();
    let mut c = Mat::zeros(f, n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            c.set(j + n * i, i + n * j, q[i][j].clone());
        }
    }
    BraidedSpace::new(n, c).expect("diagonal braidings satisfy Yang-Baxter")
}

/// Δ(w) for a diagonal braiding as a sum over splittings of positions: the
/// letters in `left` go to the first leg and every pair (i < j) with i on the
/// right and j on the left contributes q_{w_i w_j}.
pub fn diagonal_unshuffle(q: &[Vec<Scalar>], w: &Word) -> BTreeMap<(Word, Word), Scalar> {
    let f = q[0][0].field();
    let len = w.len();
    let mut out: BTreeMap<(Word, Word), Scalar> = BTreeMap::new();
    for mask in 0u32..(1 << len) {
        let on_left = |i: usize| mask & (1 << i) != 0;
        let mut coef = f.one();
        for i in 0..len {
            for j in i + 1..len {
                if !on_left(i) && on_left(j) {
                    coef = &coef * &q[w.0[i] as usize][w.0[j] as usize];
                }
            }
        }
        let a = Word((0..len).filter(|&i| on_left(i)).map(|i| w.0[i]).collect());
        let b = Word((0..len).filter(|&i| !on_left(i)).map(|i| w.0[i]).collect());
        let e = out.entry((a, b)).or_insert_with(|| f.zero());
        *e = &*e + &coef;
    }
    out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Random invertible 2x2 rational matrix with numerators in [-3, 3] and
/// denominators in {1, 2, 3}.
pub fn random_small_rational_invertible(rng: &mut impl Rng) -> Mat {
    let f = Field::Rationals;
    loop {
        let m = Mat::from_fn(f, 2, 2, |_, _| f.ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3)).unwrap());
        if m.inverse().is_some() {
            return m;
        }
    }
}
