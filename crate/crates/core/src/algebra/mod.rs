//! Sparse multivectors over `Cl(p,q,r)` with exact symbolic coefficients.

mod blade;
mod inverse;
mod multivector;
mod render;
mod signature;
mod table;

use thiserror::Error;

pub use blade::{blade_product, Blade};
pub use multivector::Multivector;
pub use render::{blade_latex, blade_text, groups_text};
pub use signature::{Signature, MAX_DIM};
pub use table::{bdecompose, factor_by, mult_table, BladeGroup, Factored};

use crate::symexpr::SymError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("invalid signature ({p},{q},{r}): need 1 <= p+q+r <= {MAX_DIM}")]
    InvalidSignature { p: usize, q: usize, r: usize },
    #[error("signature mismatch: {0} vs {1}")]
    SignatureMismatch(Signature, Signature),
    #[error("basis index {k} out of range 1..={n}")]
    IndexOutOfRange { k: usize, n: usize },
    #[error("grade {k} out of range 0..={n}")]
    GradeOutOfRange { k: usize, n: usize },
    #[error("{0} is not invertible")]
    NotInvertible(String),
    #[error("multiplication table needs at least one element")]
    EmptyTable,
    #[error(transparent)]
    Sym(#[from] SymError),
}
