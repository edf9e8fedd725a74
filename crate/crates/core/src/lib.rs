//! Braided vector spaces, quadratic Lie algebras over a braiding with a
//! separable -1 eigenspace, their universal enveloping algebras, and the
//! classification of the two-dimensional case.
//!
//! Everything is exact: ℚ through arbitrary-precision fractions and GF(p) for
//! primes below 2^31.

pub mod braided;
pub mod classify;
pub mod envelope;
pub mod io;
pub mod linalg;
pub mod nichols;
pub mod qlie;
pub mod scalar;
pub mod tensor;

pub use braided::{BraidError, BraidedSpace, MinpolyOutcome, MinpolySplit};
pub use linalg::{Mat, Poly, Subspace};
pub use qlie::LiftedQLie;
pub use scalar::{Field, Scalar};
