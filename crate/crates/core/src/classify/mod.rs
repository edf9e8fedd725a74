//! Two-dimensional lifted brackets: normal forms, isomorphism tests and the
//! exhaustive checks behind the rank-two image bound.

pub mod appendix;
pub mod canonical;
pub mod iso;
pub mod table;

use thiserror::Error;

pub use appendix::{appendix_checks, AppendixReport, AppendixScope, FamilyReport, SurveyReport};
pub use canonical::{canonical_form, CanonicalForm};
pub use iso::{iso_bruteforce, IsoMode};
pub use table::{row_instance, row_matrices, table_emit, GammaRule, TableRow};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("characteristic two is not supported")]
    CharTwo,
    #[error("no such table row: {0}")]
    NoSuchRow(u8),
    #[error("gamma = {1} is not admissible for row {0}")]
    BadGamma(u8, String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("not classifiable: {0}")]
    NotClassifiable(String),
    #[error("eliminated branch reached at {branch}: {detail}")]
    InternalContradiction { branch: String, detail: String },
    #[error("unsupported field for this search: {0}")]
    UnsupportedField(String),
}
