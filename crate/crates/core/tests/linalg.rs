use num_rational::Rational64;
use proptest::prelude::*;
use qlie_core::linalg::{complement_split, Mat, Poly, Subspace};
use qlie_core::{Field, Scalar};

fn gf(p: u64) -> Field {
    Field::prime(p).unwrap()
}

fn mat(field: Field, rows: &[Vec<i64>]) -> Mat {
    let r: Vec<&[i64]> = rows.iter().map(|v| v.as_slice()).collect();
    Mat::from_ints(field, &r)
}

/// All vectors of GF(p)^n.
fn all_vectors(field: Field, n: usize) -> Vec<Vec<Scalar>> {
    let elems = field.elements().unwrap();
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v: Vec<Scalar>| elems.iter().map(move |e| [v.clone(), vec![e.clone()]].concat())).collect();
    }
    out
}

/// |ker M| counted by enumeration; rank = n - log_p |ker|.
fn brute_rank(m: &Mat, p: u64) -> usize {
    let zeros = all_vectors(m.field(), m.cols()).into_iter().filter(|v| m.apply(v).iter().all(Scalar::is_zero)).count();
    let mut k = 0;
    let mut s = 1;
    while s < zeros {
        s *= p as usize;
        k += 1;
    }
    m.cols() - k
}

/// Lowest-degree monic polynomial annihilating M, by enumeration of coefficients.
fn brute_minpoly(m: &Mat) -> Vec<Scalar> {
    let f = m.field();
    let n = m.rows();
    for d in 1..=n {
        for low in all_vectors(f, d) {
            let mut acc = Mat::zeros(f, n, n);
            let mut pw = Mat::identity(f, n);
            for c in &low {
                acc = acc.add(&pw.scale(c));
                pw = pw.mul(m);
            }
            if acc.add(&pw).is_zero() {
                let mut coeffs = low;
                coeffs.push(f.one());
                return coeffs;
            }
        }
    }
    unreachable!("Cayley-Hamilton bounds the degree by n")
}

fn small_mat(p: i64, max_r: usize, max_c: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_r, 1..=max_c).prop_flat_map(move |(r, c)| prop::collection::vec(prop::collection::vec(0..p, c), r))
}

#[test]
fn rationals_agree_with_num_rational() {
    let f = Field::Rationals;
    for (a, b, c, d) in [(1, 2, -3, 4), (7, 3, 5, 6), (-9, 10, 9, 10), (0, 1, 5, 7)] {
        let (x, y) = (f.ratio(a, b).unwrap(), f.ratio(c, d).unwrap());
        let (rx, ry) = (Rational64::new(a, b), Rational64::new(c, d));
        for (got, want) in [(&x + &y, rx + ry), (&x - &y, rx - ry), (&x * &y, rx * ry)] {
            assert_eq!(got, f.ratio(*want.numer(), *want.denom()).unwrap());
        }
        if c != 0 {
            let q = rx / ry;
            assert_eq!(x.div(&y).unwrap(), f.ratio(*q.numer(), *q.denom()).unwrap());
        }
    }
}

#[test]
fn gf_sqrt_matches_enumeration() {
    for p in [3u64, 5, 7, 11, 13] {
        let f = gf(p);
        for a in 0..p {
            let x = f.int(a as i64);
            let has = (0..p).any(|r| (r * r) % p == a);
            assert_eq!(x.is_square(), has, "GF({p}) {a}");
            if let Some(r) = x.sqrt() {
                assert_eq!(&r * &r, x);
            }
        }
    }
}

#[test]
fn rational_square_test_is_exact() {
    let f = Field::Rationals;
    assert!(f.ratio(9, 4).unwrap().is_square());
    assert_eq!(f.ratio(9, 4).unwrap().sqrt().unwrap().total_cmp(&f.zero()), std::cmp::Ordering::Greater);
    assert!(!f.int(2).is_square());
    assert!(!f.int(-4).is_square());
    assert!(f.int(0).is_square());
}

#[test]
fn gf2_is_rejected_for_brackets() {
    assert!(gf(2).require_odd().is_err());
    assert!(Field::prime(9).is_err());
}

#[test]
fn kernel_of_flip_plus_identity() {
    let f = Field::Rationals;
    let flip = mat(f, &[vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 1, 0, 0], vec![0, 0, 0, 1]]);
    let k = flip.add(&Mat::identity(f, 4)).kernel();
    assert_eq!(k.dim(), 1);
    assert_eq!(k.basis()[0], vec![f.zero(), f.one(), f.int(-1), f.zero()]);
}

#[test]
fn minimal_polynomial_examples() {
    let f = Field::Rationals;
    let flip = mat(f, &[vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 1, 0, 0], vec![0, 0, 0, 1]]);
    assert_eq!(flip.minimal_polynomial().unwrap(), Poly::from_ints(f, &[-1, 0, 1]));
    let jordan = mat(f, &[vec![2, 1], vec![0, 2]]);
    assert_eq!(jordan.minimal_polynomial().unwrap(), Poly::from_ints(f, &[4, -4, 1]));
    assert_eq!(Mat::identity(f, 3).minimal_polynomial().unwrap(), Poly::from_ints(f, &[-1, 1]));
}

#[test]
fn gcd_over_gf5() {
    let f = gf(5);
    let a = Poly::from_ints(f, &[1, 3, 1]); // (X-1)^2 = X^2 - 2X + 1
    let b = Poly::from_ints(f, &[1, 1]);
    let (g, u, v) = a.gcd_bezout(&b);
    assert_eq!(g, Poly::from_ints(f, &[1]));
    assert_eq!(u.mul(&a).add(&v.mul(&b)), g);
}

#[test]
fn complement_split_detects_overlap() {
    let f = Field::Rationals;
    let a = mat(f, &[vec![1, 0], vec![0, 0]]);
    let b = mat(f, &[vec![0, 0], vec![0, 1]]);
    let (ia, ib) = complement_split(&a, &b).unwrap();
    assert_eq!((ia.dim(), ib.dim()), (1, 1));
    let z = Mat::zeros(f, 2, 2);
    assert!(complement_split(&z, &z).is_err());
}

#[test]
fn subspace_intersection_and_sum() {
    let f = Field::Rationals;
    let s = Subspace::span(f, 3, vec![vec![f.one(), f.zero(), f.zero()], vec![f.zero(), f.one(), f.zero()]]);
    let t = Subspace::span(f, 3, vec![vec![f.zero(), f.one(), f.zero()], vec![f.zero(), f.zero(), f.one()]]);
    assert_eq!(s.intersect(&t).dim(), 1);
    assert_eq!(s.sum(&t).dim(), 3);
    assert!(s.intersect(&t).is_subspace_of(&s));
}

proptest! {
    #[test]
    fn rank_matches_kernel_enumeration(rows in small_mat(3, 3, 4)) {
        let m = mat(gf(3), &rows);
        prop_assert_eq!(m.rank(), brute_rank(&m, 3));
        prop_assert_eq!(m.rank() + m.kernel().dim(), m.cols());
    }

    #[test]
    fn kernel_vectors_are_annihilated(rows in small_mat(5, 4, 5)) {
        let m = mat(gf(5), &rows);
        for v in m.kernel().basis() {
            prop_assert!(m.apply(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn rref_is_idempotent(rows in small_mat(7, 4, 4)) {
        let m = mat(gf(7), &rows);
        let (r, piv) = m.rref();
        let (r2, piv2) = r.rref();
        prop_assert_eq!(r, r2);
        prop_assert_eq!(piv, piv2);
    }

    #[test]
    fn inverse_is_two_sided(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 3)) {
        let f = Field::Rationals;
        let m = mat(f, &rows);
        if let Some(inv) = m.inverse() {
            prop_assert_eq!(m.mul(&inv), Mat::identity(f, 3));
            prop_assert_eq!(inv.mul(&m), Mat::identity(f, 3));
        } else {
            prop_assert!(m.rank() < 3);
        }
    }

    #[test]
    fn minimal_polynomial_matches_enumeration(rows in prop::collection::vec(prop::collection::vec(0i64..3, 3), 3)) {
        let m = mat(gf(3), &rows);
        let mp = m.minimal_polynomial().unwrap();
        prop_assert_eq!(mp.coeffs().to_vec(), brute_minpoly(&m));
        prop_assert!(mp.eval_mat(&m).is_zero());
    }

    #[test]
    fn solve_left_solves(rows in small_mat(5, 3, 3), x in prop::collection::vec(prop::collection::vec(0i64..5, 3), 2)) {
        let f = gf(5);
        let a = mat(f, &rows);
        if a.cols() == 3 {
            let xm = mat(f, &x);
            if xm.cols() == a.rows() {
                let b = xm.mul(&a);
                let sol = a.solve_left(&b).expect("consistent by construction");
                prop_assert_eq!(sol.mul(&a), b);
            }
        }
    }

    #[test]
    fn bezout_identity(a in prop::collection::vec(-4i64..=4, 1..5), b in prop::collection::vec(-4i64..=4, 1..5)) {
        let f = Field::Rationals;
        let (pa, pb) = (Poly::from_ints(f, &a), Poly::from_ints(f, &b));
        let (g, u, v) = pa.gcd_bezout(&pb);
        prop_assert_eq!(u.mul(&pa).add(&v.mul(&pb)), g.clone());
        if !g.is_zero() {
            prop_assert!(pa.div_rem(&g).unwrap().1.is_zero());
            prop_assert!(pb.div_rem(&g).unwrap().1.is_zero());
        }
    }

    #[test]
    fn gf_field_axioms(a in 0i64..11, b in 0i64..11, c in 0i64..11) {
        let f = gf(11);
        let (x, y, z) = (f.int(a), f.int(b), f.int(c));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!((&x * &y).residue().unwrap(), (a * b % 11) as u64);
        if b != 0 {
            prop_assert_eq!(&x.div(&y).unwrap() * &y, x.clone());
        }
    }
}
