mod common;

use common::{default_gamma, diagonal_braiding};
use proptest::prelude::*;
use qlie_core::classify::row_instance;
use qlie_core::envelope::{sq_graded_dims, sq_presentation};
use qlie_core::linalg::Mat;
use qlie_core::nichols::{alpha_table, braid_lift, nichols_dims, nichols_quadratic_at, primitives_of_quotient, q_binomial, quantum_symmetrizer, reduced_word, verify_cx2_and_alpha, verify_qpower_coproduct};
use qlie_core::tensor::{TensorElem, Word};
use qlie_core::{BraidedSpace, Field, Scalar};

fn gf(p: u64) -> Field {
    Field::prime(p).unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn inversions(p: &[usize]) -> usize {
    (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count()
}

/// ∏ (1 - q^{n-i}) / (1 - q^{i+1}) for i < t.
fn q_binomial_product(n: usize, t: usize, q: &Scalar) -> Scalar {
    let f = q.field();
    let mut num = f.one();
    let mut den = f.one();
    for i in 0..t {
        num = &num * &(&f.one() - &q.pow((n - i) as u64));
        den = &den * &(&f.one() - &q.pow((i + 1) as u64));
    }
    num.div(&den).unwrap()
}

fn factorial(n: u128) -> u128 {
    (1..=n).product()
}

#[test]
fn matsumoto_lifts_do_not_depend_on_the_reduced_word() {
    let f = Field::Rationals;
    for row in [2u8, 4, 6, 8] {
        let b = row_instance(row, default_gamma(row, f).as_ref(), f).unwrap().space;
        for n in 2..=4 {
            let mut sum = Mat::zeros(f, 1 << n, 1 << n);
            for p in permutations(n) {
                let (l, r) = (reduced_word(&p, true), reduced_word(&p, false));
                assert_eq!(l.len(), inversions(&p));
                assert_eq!(r.len(), inversions(&p));
                let lift = braid_lift(&b, &l, n);
                assert_eq!(lift, braid_lift(&b, &r, n), "row {row} perm {p:?}");
                sum = sum.add(&lift);
            }
            assert_eq!(sum, quantum_symmetrizer(&b, n), "row {row} n {n}");
        }
    }
}

#[test]
fn reduced_word_reproduces_the_permutation() {
    // Swapping positions (i-1, i) for i = w[0], w[1], … rebuilds the one-line notation.
    for n in 1..=5 {
        for p in permutations(n) {
            let mut arr: Vec<usize> = (0..n).collect();
            for &i in &reduced_word(&p, true) {
                arr.swap(i - 1, i);
            }
            assert_eq!(arr, p);
        }
    }
}

#[test]
fn exterior_algebra_ranks() {
    let f = Field::Rationals;
    let m1 = f.int(-1);
    let b = diagonal_braiding(&[vec![m1.clone(), m1.clone()], vec![m1.clone(), m1]]);
    assert_eq!(nichols_dims(&b, 4), vec![1, 2, 1, 0, 0]);
    let flip = BraidedSpace::flip(f, 2);
    assert_eq!(nichols_dims(&flip, 4), vec![1, 2, 3, 4, 5]);
}

#[test]
fn symmetrizer_ranks_match_sq_on_rows() {
    let f = Field::Rationals;
    for row in 1..=8u8 {
        let b = row_instance(row, default_gamma(row, f).as_ref(), f).unwrap().space;
        assert!(nichols_quadratic_at(&b, 4), "row {row}");
        assert_eq!(nichols_dims(&b, 4), sq_graded_dims(&b, 4), "row {row}");
    }
}

#[test]
fn q_binomial_matches_product_formula() {
    let f = Field::Rationals;
    for q in [2, 3, -2, -1] {
        let q = f.int(q);
        for n in 0..=7 {
            for t in 0..=n {
                if q == f.int(-1) {
                    continue;
                }
                assert_eq!(q_binomial(n, t, &q), q_binomial_product(n, t, &q), "n {n} t {t}");
            }
        }
    }
    for n in 0..=7usize {
        for t in 0..=n {
            let ordinary = (factorial(n as u128) / (factorial(t as u128) * factorial((n - t) as u128))) as i64;
            assert_eq!(q_binomial(n, t, &f.one()), f.int(ordinary));
        }
    }
}

#[test]
fn alpha_table_counts_partial_matchings() {
    let a = alpha_table(12);
    for (n, row) in a.iter().enumerate() {
        for (t, &v) in row.iter().enumerate() {
            let want = if 2 * t > n { 0 } else { factorial(n as u128) / (factorial(t as u128) * (1u128 << t) * factorial((n - 2 * t) as u128)) };
            assert_eq!(v, want, "n {n} t {t}");
        }
    }
}

#[test]
fn row8_identities_hold() {
    let q = Field::Rationals;
    assert!(verify_cx2_and_alpha(q, &q.one(), 6).unwrap().holds());
    assert!(verify_cx2_and_alpha(q, &q.int(2), 5).unwrap().holds());
    let f5 = gf(5);
    assert!(verify_cx2_and_alpha(f5, &f5.int(2), 4).unwrap().holds());
}

#[test]
fn diagonal_rows_follow_the_q_power_formula() {
    let f = Field::Rationals;
    for row in [1u8, 7] {
        let b = row_instance(row, default_gamma(row, f).as_ref(), f).unwrap().space;
        let rep = verify_qpower_coproduct(&b, 5).unwrap();
        assert!(rep.holds() && rep.monomials_checked == 21, "row {row}: {rep:?}");
    }
}

#[test]
fn primitives_are_v_over_rationals() {
    let f = Field::Rationals;
    for row in 1..=8u8 {
        let b = row_instance(row, default_gamma(row, f).as_ref(), f).unwrap().space;
        let rep = primitives_of_quotient(&sq_presentation(&b), 5).unwrap();
        assert!(rep.equals_image_of_v(), "row {row}: {:?}", rep.level_dims);
    }
}

#[test]
fn p_th_powers_are_primitive_in_characteristic_p() {
    for p in [3u64, 5] {
        let f = gf(p);
        let b = row_instance(1, None, f).unwrap().space;
        let rep = primitives_of_quotient(&sq_presentation(&b), p as usize).unwrap();
        for x in 0..2u8 {
            let power = TensorElem::word(f, 2, Word(vec![x; p as usize]));
            assert!(rep.contains(&power), "GF({p}) x{}^{p}", x + 1);
        }
        assert_eq!(rep.level_dims[p as usize], 4);
        assert_eq!(rep.level_dims[p as usize - 1], 2);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn diagonal_braidings_follow_the_q_power_formula(q in prop::collection::vec(1i64..7, 3)) {
        let f = gf(7);
        let (q1, q12, q2) = (f.int(q[0]), f.int(q[1]), f.int(q[2]));
        let b = diagonal_braiding(&[vec![q1, q12.clone()], vec![q12, q2]]);
        prop_assert!(verify_qpower_coproduct(&b, 4).unwrap().in_tensor_algebra);
    }
}
