use crate::linalg::Mat;
use crate::scalar::{Field, Scalar};

/// Subspace of K^ambient, stored as the nonzero rows of a reduced row echelon
/// form so that equal subspaces compare equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(field: Field, ambient: usize, vectors: Vec<Vec<Scalar>>) -> Subspace {
        if vectors.is_empty() {
            return Subspace::zero(field, ambient);
        }
        let m = Mat::from_rows(field, vectors).expect("vectors of equal length in one field");
        assert_eq!(m.cols(), ambient, "vector length differs from ambient dimension");
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i)).collect();
        Subspace { field, ambient, basis, pivots }
    }

    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace { field, ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        let id = Mat::identity(field, ambient);
        Subspace::span(field, ambient, id.to_rows())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates in the stored basis, `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient);
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rest = v.to_vec();
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in rest.iter_mut().zip(b) {
                *x = &*x - &(c * y);
            }
        }
        rest.iter().all(Scalar::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, o: &Subspace) -> bool {
        self.basis.iter().all(|b| o.contains(b))
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        let mut v = self.basis.clone();
        v.extend(o.basis.iter().cloned());
        Subspace::span(self.field, self.ambient, v)
    }

    pub fn intersect(&self, o: &Subspace) -> Subspace {
        if self.is_zero() || o.is_zero() {
            return Subspace::zero(self.field, self.ambient);
        }
        // Solve a·A = b·B: kernel of the stacked basis transpose.
        let a = self.as_rows_matrix();
        let b = o.as_rows_matrix();
        let stacked = a.vstack(&b.neg()).transpose();
        let k = stacked.kernel();
        let vecs = k
            .basis
            .iter()
            .map(|w| {
                let mut v = vec![self.field.zero(); self.ambient];
                for (i, c) in w[..self.dim()].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (x, y) in v.iter_mut().zip(&self.basis[i]) {
                        *x = &*x + &(c * y);
                    }
                }
                v
            })
            .collect();
        Subspace::span(self.field, self.ambient, vecs)
    }

    /// Basis vectors as the rows of a matrix.
    pub fn as_rows_matrix(&self) -> Mat {
        if self.basis.is_empty() {
            return Mat::zeros(self.field, 0, self.ambient);
        }
        Mat::from_rows(self.field, self.basis.clone()).expect("consistent basis")
    }

    /// Basis vectors as the columns of a matrix (an embedding K^dim → K^ambient).
    pub fn as_columns_matrix(&self) -> Mat {
        Mat::from_fn(self.field, self.ambient, self.dim(), |i, j| self.basis[j][i].clone())
    }

    /// Image under a linear map.
    pub fn map(&self, m: &Mat) -> Subspace {
        Subspace::span(self.field, m.rows(), self.basis.iter().map(|b| m.apply(b)).collect())
    }
}
