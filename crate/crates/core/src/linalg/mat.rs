use std::fmt;

use crate::linalg::{LinalgError, Poly, Subspace};
use crate::scalar::{Field, Scalar};

/// Dense row-major matrix over a single field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        Mat { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                debug_assert_eq!(v.field(), field);
                data.push(v);
            }
        }
        Mat { field, rows, cols, data }
    }

    /// Rows must be non-ragged and live in `field`.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Mat, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(LinalgError::DimensionMismatch(format!("ragged row of length {} (expected {c})", row.len())));
            }
            for v in row {
                if v.field() != field {
                    return Err(LinalgError::FieldMismatch);
                }
                data.push(v);
            }
        }
        Ok(Mat { field, rows: r, cols: c, data })
    }

    /// Integer entries, reduced into `field`.
    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Mat {
        let c = rows.first().map_or(0, |x| x.len());
        Mat::from_fn(field, rows.len(), c, |i, j| field.int(rows[i][j]))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn checked_mul(&self, o: &Mat) -> Result<Mat, LinalgError> {
        if self.cols != o.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        if self.field != o.field {
            return Err(LinalgError::FieldMismatch);
        }
        let mut out = Mat::zeros(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let idx = i * o.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Panics on shape mismatch.
    pub fn mul(&self, o: &Mat) -> Mat {
        self.checked_mul(o).expect("matrix shape mismatch")
    }

    fn zip(&self, o: &Mat, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Mat {
        assert!(self.rows == o.rows && self.cols == o.cols, "matrix shape mismatch");
        Mat {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, o: &Mat) -> Mat {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        self.zip(o, |a, b| a - b)
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        Mat { field: self.field, rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn neg(&self) -> Mat {
        self.scale(&self.field.int(-1))
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        assert!(self.is_square());
        let mut r = Mat::identity(self.field, self.rows);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        r
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        let a = self.get(i, j);
                        if !a.is_zero() {
                            acc = &acc + &(a * x);
                        }
                    }
                }
                acc
            })
            .collect()
    }

    /// `[self | o]`.
    pub fn hstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.rows, o.rows);
        Mat::from_fn(self.field, self.rows, self.cols + o.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                o.get(i, j - self.cols).clone()
            }
        })
    }

    /// `self` above `o`.
    pub fn vstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Mat { field: self.field, rows: self.rows + o.rows, cols: self.cols, data }
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let rv = m.get(r, j);
                    if !rv.is_zero() {
                        let v = m.get(i, j) - &(&f * rv);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Null space `{v : self·v = 0}`.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let vecs = free
            .iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f);
                }
                v
            })
            .collect();
        Subspace::span(self.field, self.cols, vecs)
    }

    /// Column space.
    pub fn image(&self) -> Subspace {
        Subspace::span(self.field, self.rows, (0..self.cols).map(|j| self.col(j)).collect())
    }

    /// Some `x` with `self·x = b`.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let aug = Mat::from_fn(self.field, self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    /// Some `X` with `X·self = b` (row-wise solve).
    pub fn solve_left(&self, b: &Mat) -> Option<Mat> {
        let t = self.transpose();
        let rows: Option<Vec<Vec<Scalar>>> = (0..b.rows).map(|i| t.solve(&b.row(i))).collect();
        Mat::from_rows(self.field, rows?).ok().map(|m| {
            if m.rows == 0 {
                Mat::zeros(self.field, 0, self.rows)
            } else {
                m
            }
        })
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let (r, pivots) = self.hstack(&Mat::identity(self.field, n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Mat::from_fn(self.field, n, n, |i, j| r.get(i, n + j).clone()))
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(self.field.zero(), |acc, i| &acc + self.get(i, i))
    }

    /// Monic generator of `{f : f(self) = 0}`, via the first linear dependence among powers.
    pub fn minimal_polynomial(&self) -> Result<Poly, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare);
        }
        let n = self.rows;
        let field = self.field;
        // Reduced rows: (pivot, vector, combination of powers producing it).
        let mut basis: Vec<(usize, Vec<Scalar>, Vec<Scalar>)> = Vec::new();
        let mut power = Mat::identity(field, n);
        for k in 0..=n * n {
            let mut v = power.data.clone();
            let mut comb = vec![field.zero(); k + 1];
            comb[k] = field.one();
            for (p, bv, bc) in &basis {
                let f = v[*p].clone();
                if f.is_zero() {
                    continue;
                }
                for (x, y) in v.iter_mut().zip(bv) {
                    *x = &*x - &(&f * y);
                }
                for (i, y) in bc.iter().enumerate() {
                    comb[i] = &comb[i] - &(&f * y);
                }
            }
            match v.iter().position(|x| !x.is_zero()) {
                None => return Ok(Poly::new(field, comb)),
                Some(p) => {
                    let inv = v[p].inv().expect("nonzero");
                    let v: Vec<Scalar> = v.iter().map(|x| x * &inv).collect();
                    let comb: Vec<Scalar> = comb.iter().map(|x| x * &inv).collect();
                    for (_, bv, bc) in basis.iter_mut() {
                        let f = bv[p].clone();
                        if f.is_zero() {
                            continue;
                        }
                        for (x, y) in bv.iter_mut().zip(&v) {
                            *x = &*x - &(&f * y);
                        }
                        bc.resize(k + 1, field.zero());
                        for (i, y) in comb.iter().enumerate() {
                            bc[i] = &bc[i] - &(&f * y);
                        }
                    }
                    basis.push((p, v, comb));
                }
            }
            power = power.mul(self);
        }
        unreachable!("Cayley–Hamilton bounds the degree by n")
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
