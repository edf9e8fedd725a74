//! Reduction of a two-dimensional lifted bracket with one-dimensional image to
//! its table row, tracking the accumulated change of basis.
//!
//! Every basis change is written as old-in-new coordinates: x₁ = a₁₁x₁′ + a₂₁x₂′,
//! x₂ = a₁₂x₁′ + a₂₂x₂′ gives α = [[a₁₁, a₁₂], [a₂₁, a₂₂]], and the data moves by
//! c ↦ (α⊗α)c(α⊗α)⁻¹, β ↦ αβ(α⊗α)⁻¹. Branches that the axioms rule out are
//! reported as [`ClassifyError::InternalContradiction`] instead of being skipped.

use crate::classify::table::{row_instance, row_matrices};
use crate::classify::ClassifyError;
use crate::linalg::Mat;
use crate::qlie::{verify_lifted, LiftedQLie};
use crate::scalar::Scalar;

// (row, column) of c^{ij}_{kl} = M[idx(kl)][idx(ij)] with idx(11)=0, idx(21)=1, idx(12)=2, idx(22)=3.
const C11_11: (usize, usize) = (0, 0);
const C11_21: (usize, usize) = (0, 1);
const C11_12: (usize, usize) = (0, 2);
const C11_22: (usize, usize) = (0, 3);
const C21_22: (usize, usize) = (1, 3);
const C22_22: (usize, usize) = (3, 3);
// Columns of the first row of β.
const B21: usize = 1;
const B12: usize = 2;
const B22: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub row: u8,
    pub gamma: Option<Scalar>,
    /// Transports the input exactly onto the table row.
    pub alpha: Mat,
    /// γ is a non-square outside {0, 1}: only its square class is an invariant
    /// established here.
    pub gamma_square_class: bool,
    /// Branch labels in the order they were taken.
    pub path: Vec<&'static str>,
}

struct State {
    q: LiftedQLie,
    alpha: Mat,
    path: Vec<&'static str>,
}

impl State {
    fn c(&self, at: (usize, usize)) -> Scalar {
        self.q.space.c().get(at.0, at.1).clone()
    }

    fn b(&self, col: usize) -> Scalar {
        self.q.beta.get(0, col).clone()
    }

    fn apply(&mut self, a: Mat) -> Result<(), ClassifyError> {
        self.q = self.q.transform(&a).map_err(|e| self.contradiction("basis change", &e.to_string()))?;
        self.alpha = a.mul(&self.alpha);
        Ok(())
    }

    fn upper(&mut self, a11: Scalar, a12: Scalar) -> Result<(), ClassifyError> {
        let f = self.q.field();
        let a = Mat::from_rows(f, vec![vec![a11, a12], vec![f.zero(), f.one()]]).expect("2x2");
        self.apply(a)
    }

    /// Scales V by the entry β¹ at `col`, which makes that entry 1 and leaves c unchanged.
    fn normalize(&mut self, col: usize) -> Result<(), ClassifyError> {
        let s = self.b(col);
        if s.is_zero() {
            return Err(self.contradiction("normalize β", "entry to normalize vanishes"));
        }
        let id = Mat::identity(self.q.field(), 2);
        self.apply(id.scale(&s))
    }

    fn contradiction(&self, branch: &str, detail: &str) -> ClassifyError {
        ClassifyError::InternalContradiction {
            branch: format!("{} [{}]", branch, self.path.join(" > ")),
            detail: detail.to_string(),
        }
    }

    /// Rescales x₁ by 1/√γ when γ = c¹¹₂₂ is a square outside {0, 1}.
    fn unit_square(&mut self, beta_col: usize) -> Result<(), ClassifyError> {
        let g = self.c(C11_22);
        if g.is_zero() || g.is_one() {
            return Ok(());
        }
        if let Some(r) = g.sqrt() {
            self.path.push("gamma square: rescale x1");
            let f = self.q.field();
            self.upper(r.inv().expect("nonzero root"), f.zero())?;
            self.normalize(beta_col)?;
        }
        Ok(())
    }
}

fn ensure(state: &State, ok: bool, branch: &str, detail: &str) -> Result<(), ClassifyError> {
    if ok {
        Ok(())
    } else {
        Err(state.contradiction(branch, detail))
    }
}

/// Initial basis: x₁ spans Im β, x₂ a standard vector completing it.
fn image_basis(q: &LiftedQLie) -> Mat {
    let f = q.field();
    let y = (0..4).map(|j| q.beta.col(j)).find(|v| v.iter().any(|x| !x.is_zero())).expect("β ≠ 0");
    let ek = if !y[1].is_zero() { [f.one(), f.zero()] } else { [f.zero(), f.one()] };
    let p = Mat::from_rows(f, vec![vec![y[0].clone(), ek[0].clone()], vec![y[1].clone(), ek[1].clone()]]).expect("2x2");
    p.inverse().expect("y and e_k are independent")
}

pub fn canonical_form(q: &LiftedQLie) -> Result<CanonicalForm, ClassifyError> {
    let f = q.field();
    f.require_odd().map_err(|_| ClassifyError::CharTwo)?;
    if q.dim() != 2 {
        return Err(ClassifyError::PreconditionViolated(format!("dim V = {} (expected 2)", q.dim())));
    }
    let report = verify_lifted(q);
    if !report.all() {
        return Err(ClassifyError::PreconditionViolated(format!("not a lifted QLie algebra: {} fails", report.failures().join(", "))));
    }
    match q.beta.rank() {
        1 => {}
        0 => return Err(ClassifyError::PreconditionViolated("β = 0".into())),
        r => return Err(ClassifyError::PreconditionViolated(format!("dim Im β = {r}; use the rank-two checks instead"))),
    }
    q.space.require_split().map_err(|e| ClassifyError::PreconditionViolated(e.to_string()))?;

    let mut st = State { q: q.clone(), alpha: Mat::identity(f, 2), path: vec![] };
    st.apply(image_basis(q))?;
    st.path.push("x1 spans Im beta");
    {
        let c = st.q.space.c();
        let zero_c = [(1, 0), (1, 1), (2, 0), (2, 2), (3, 0), (3, 1), (3, 2)].iter().all(|&(i, j)| c.get(i, j).is_zero());
        let zero_b = st.q.beta.get(0, 0).is_zero() && st.q.beta.row(1).iter().all(Scalar::is_zero);
        ensure(&st, zero_c, "categorical image", "c does not preserve Im beta")?;
        ensure(&st, zero_b, "beta vanishes on Im beta", "beta(x1 x1) != 0 or second row nonzero")?;
    }

    let (row, gamma) = if !st.c(C11_11).is_zero() {
        st.path.push("c11_11 != 0");
        ensure(&st, (&st.b(B21) + &st.b(B12)).is_zero(), "c11_11 != 0", "beta21 + beta12 != 0")?;
        if st.b(B21).is_zero() {
            st.path.push("beta21 = 0");
            st.normalize(B22)?;
            let half = f.int(2).inv().expect("odd characteristic");
            let d = st.c(C21_22);
            st.upper(f.one(), &d * &half)?;
            st.normalize(B22)?;
            st.unit_square(B22)?;
            (4, Some(st.c(C11_22)))
        } else {
            st.path.push("beta21 != 0");
            st.normalize(B21)?;
            let (x, y, w) = (st.c(C11_11), st.c(C11_21), st.c(C11_12));
            if y != w {
                st.path.push("c11_21 != c11_12");
                ensure(&st, !y.is_zero(), "c11_21 != c11_12", "c11_21 = 0")?;
                st.upper(y.inv().expect("nonzero"), f.zero())?;
                st.normalize(B21)?;
                (2, None)
            } else if x.is_one() {
                st.path.push("c11_21 = c11_12, c11_11 = 1");
                if st.c(C11_22).is_zero() {
                    (1, None)
                } else {
                    st.unit_square(B21)?;
                    (8, Some(st.c(C11_22)))
                }
            } else if x == f.int(-1) {
                st.path.push("c11_21 = c11_12, c11_11 = -1");
                let half = f.int(2).inv().expect("odd characteristic");
                st.upper(f.one(), -&(&y * &half))?;
                st.normalize(B21)?;
                st.unit_square(B21)?;
                (3, Some(st.c(C11_22)))
            } else {
                st.path.push("c11_21 = c11_12, c11_11 != 1, -1");
                if !y.is_zero() {
                    st.upper(&x - &f.one(), y)?;
                    st.normalize(B21)?;
                }
                (7, Some(st.c(C11_11)))
            }
        }
    } else {
        st.path.push("c11_11 = 0");
        ensure(&st, st.c(C22_22).is_one(), "c11_11 = 0", "c22_22 != 1 is incompatible with the axioms")?;
        if !st.b(B22).is_zero() {
            st.path.push("beta22 != 0");
            st.normalize(B22)?;
            let (b21, b12) = (st.b(B21), st.b(B12));
            ensure(&st, !(&b21 + &b12).is_zero(), "beta22 != 0", "beta12 = -beta21 is incompatible with the axioms")?;
            let p = &b12 * &b21;
            st.upper(&p * &(&b12 + &b21), p)?;
            ensure(&st, st.b(B22).is_zero(), "beta22 != 0", "shift did not clear beta22")?;
        }
        ensure(&st, !st.b(B21).is_zero(), "c11_11 = 0", "beta21 = 0 forces beta = 0")?;
        st.normalize(B21)?;
        if st.b(B12) == f.int(-1) {
            let (y, w) = (st.c(C11_21), st.c(C11_12));
            if y == w {
                st.path.push("beta12 = -1, c11_12 = c11_21");
                st.upper(f.one(), -&y)?;
                st.normalize(B21)?;
                (7, Some(f.zero()))
            } else {
                st.path.push("beta12 = -1, c11_12 != c11_21");
                let inv = (&y - &w).inv().expect("y != w");
                st.upper(inv.clone(), -&(&w * &inv))?;
                st.normalize(B21)?;
                (5, None)
            }
        } else {
            st.path.push("beta12 != -1");
            (6, Some(-&st.b(B12)))
        }
    };

    let expected = row_matrices(row, gamma.as_ref(), f)?;
    if expected != st.q {
        return Err(st.contradiction(
            "final comparison",
            &format!("reached c = {} beta = {}, expected row {row}", st.q.space.c(), st.q.beta),
        ));
    }
    if row_instance(row, gamma.as_ref(), f).is_err() {
        return Err(st.contradiction("gamma constraint", &format!("row {row} with gamma = {}", gamma.as_ref().map_or("-".into(), |g| g.to_string()))));
    }
    let gamma_square_class = matches!(row, 3 | 4 | 8) && gamma.as_ref().is_some_and(|g| !g.is_zero() && !g.is_one());
    Ok(CanonicalForm { row, gamma, alpha: st.alpha, gamma_square_class, path: st.path })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    #[test]
    fn table_rows_are_fixed_points() {
        let f = Field::Rationals;
        for row in 1..=8u8 {
            let g = match row {
                6 | 7 => Some(f.int(3)),
                3 | 4 | 8 => Some(f.int(2)),
                _ => None,
            };
            let q = row_instance(row, g.as_ref(), f).unwrap();
            let cf = canonical_form(&q).unwrap();
            assert_eq!(cf.row, row);
            assert_eq!(cf.gamma, g);
            assert_eq!(cf.alpha, Mat::identity(f, 2), "row {row}");
        }
    }

    #[test]
    fn shear_of_row1_is_undone() {
        let f = Field::Rationals;
        let a0 = Mat::from_ints(f, &[&[1, 1], &[0, 1]]);
        let q = row_instance(1, None, f).unwrap().transform(&a0).unwrap();
        let cf = canonical_form(&q).unwrap();
        assert_eq!(cf.row, 1);
        assert_eq!(q.transform(&cf.alpha).unwrap(), row_instance(1, None, f).unwrap());
    }
}
