//! Geometric calculus: vector derivatives along coordinate frames and the
//! Euler-Lagrange operator for multivector fields.

mod derivative;
mod direction;
mod fields;
mod lagrange;

use thiserror::Error;

pub use derivative::{grade_sectors, mvectdiff, svectdiff, vvectdiff, Sectors};
pub use direction::{DirTerm, Direction};
pub use fields::{celem, cvect, em_field_object, lagrangian_scalar, LagrangianKind};
pub use lagrange::euler_lagrange;

use crate::algebra::AlgebraError;
use crate::symexpr::SymError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CalculusError {
    #[error("{0} is not a direction: each term must be +/- coordinate times a blade")]
    NotADirection(String),
    #[error("coordinate {0} appears twice in a direction")]
    DuplicateCoordinate(String),
    #[error("direction blade {0} is degenerate and has no inverse")]
    DegenerateBlade(String),
    #[error("{given} coordinates given but the algebra allows at most {max}")]
    TooManyCoordinates { given: usize, max: usize },
    #[error("operation needs an algebra of dimension {want}, got {got}")]
    WrongDimension { want: usize, got: usize },
    #[error("{0} must be a vector")]
    NotVector(&'static str),
    #[error("field component at {0} has no dependent field symbol")]
    NoFieldSymbol(String),
    #[error("field component at {0} has more than one dependent field symbol")]
    AmbiguousFieldSymbol(String),
    #[error("derivative atom {0} does not map to a single blade of the field derivative")]
    UnmappedAtom(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Sym(#[from] SymError),
}
