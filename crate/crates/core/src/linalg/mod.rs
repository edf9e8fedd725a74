//! Dense exact linear algebra: matrices, polynomials and canonical subspaces.
//!
//! Kernel and image bases come back in reduced echelon form, so two calls on
//! equal inputs always return identical bases.

mod mat;
mod poly;
mod subspace;

pub use mat::Mat;
pub use poly::Poly;
pub use subspace::Subspace;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square")]
    NotSquare,
    #[error("field mismatch")]
    FieldMismatch,
    #[error("polynomial division by zero")]
    DivisionByZero,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
}

pub fn kernel(m: &Mat) -> Subspace {
    m.kernel()
}

pub fn image(m: &Mat) -> Subspace {
    m.image()
}

pub fn rank(m: &Mat) -> usize {
    m.rank()
}

pub fn minimal_polynomial(m: &Mat) -> Result<Poly, LinalgError> {
    m.minimal_polynomial()
}

pub fn eval_poly_at(f: &Poly, m: &Mat) -> Mat {
    f.eval_mat(m)
}

/// Monic gcd with Bézout coefficients: `u·f + v·g = gcd`.
pub fn poly_gcd_bezout(f: &Poly, g: &Poly) -> (Poly, Poly, Poly) {
    f.gcd_bezout(g)
}

/// For `α(c)·β(c) = 0` with coprime α, β: returns `(Im α(c), Im β(c))`, which are
/// complementary with `Im α(c) = ker β(c)`. Every claim is rechecked.
pub fn complement_split(m_alpha: &Mat, m_beta: &Mat) -> Result<(Subspace, Subspace), LinalgError> {
    if !m_alpha.is_square() || !m_beta.is_square() || m_alpha.rows() != m_beta.rows() {
        return Err(LinalgError::DimensionMismatch("operators must be square of equal size".into()));
    }
    if !m_alpha.mul(m_beta).is_zero() {
        return Err(LinalgError::HypothesisViolated("α(c)∘β(c) is not zero".into()));
    }
    let ia = m_alpha.image();
    let ib = m_beta.image();
    let n = m_alpha.rows();
    if ia.dim() + ib.dim() != n || !ia.intersect(&ib).is_zero() {
        return Err(LinalgError::HypothesisViolated("images are not complementary".into()));
    }
    if ia != m_beta.kernel() {
        return Err(LinalgError::HypothesisViolated("Im α(c) differs from ker β(c)".into()));
    }
    Ok((ia, ib))
}
