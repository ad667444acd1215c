//! Interactive session, script runner and output rendering.

mod builtins;
mod render;
mod script;
mod session;

use thiserror::Error;

pub use render::OutputMode;
pub use script::{run_script, Entry, Repl, Report};
pub use session::{Outcome, Session, Value};

use crate::algebra::{AlgebraError, Signature};
use crate::calculus::CalculusError;
use crate::symexpr::SymError;
use crate::syntax::SyntaxError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CliError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("no algebra initialised; start with clifford(e,p,q,r)")]
    NoSignature,
    #[error("the algebra is already initialised as {0}")]
    SignatureSet(Signature),
    #[error("unknown function '{0}'")]
    UnknownFunction(String),
    #[error("{name} takes {expected} argument(s), got {got}")]
    Arity { name: String, expected: &'static str, got: usize },
    #[error("{name}: {msg}")]
    Argument { name: String, msg: String },
    #[error("'{0}' is the basis symbol; index it as {0}[k]")]
    BareBasis(String),
    #[error("{0}")]
    Type(String),
    #[error("{op}: {source}")]
    In { op: String, source: Box<CliError> },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Calculus(#[from] CalculusError),
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error("invalid JSON multivector: {0}")]
    Json(String),
}

impl CliError {
    pub(crate) fn arg(name: &str, msg: impl Into<String>) -> Self {
        CliError::Argument { name: name.into(), msg: msg.into() }
    }
}
