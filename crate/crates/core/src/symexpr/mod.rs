//! Exact scalar expressions: the coefficient ring of every multivector.

mod canon;
mod diff;
mod display;
mod eval;
mod expr;
mod symbol;

use thiserror::Error;

pub use display::latex_symbol;
pub use eval::Bindings;
pub use expr::{Atom, Coeff, Exponent, Expr, Monomial};
pub use symbol::{DerivAtom, Symbol, SymbolKind, SymbolTable};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SymError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("fractional power of negative constant in {0} has no real value")]
    ComplexPower(String),
    #[error("{name} is already a {existing}, cannot declare it as {requested}")]
    KindConflict {
        name: String,
        existing: &'static str,
        requested: &'static str,
    },
    #[error("{0} is already declared with a different dependency list")]
    Redeclared(String),
    #[error("{0} is not a declared coordinate")]
    NotCoordinate(String),
    #[error("no numeric value bound for {0}")]
    Unbound(String),
    #[error("negative base {0} raised to a fractional power")]
    NegativeBase(f64),
    #[error("substitution is cyclic through {0}")]
    CyclicSubstitution(String),
}
