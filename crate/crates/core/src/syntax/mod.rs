//! Statement grammar: a small Pratt parser.
//!
//! Precedence, loosest to tightest: `:` (assignment, right-assoc), `+ -`,
//! `* /`, `.` (geometric), `| &`, unary `-`, `^` (right-assoc), postfix
//! indexing `x[k]`. All binary operators other than `:` and `^` are
//! left-associative.

mod lexer;
mod parser;

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

pub use lexer::{tokenize, Tok, Token};
pub use parser::{parse, parse_program, Statement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("syntax error at column {col}: {msg}")]
pub struct SyntaxError {
    /// 1-based character column.
    pub col: usize,
    pub msg: String,
}

impl SyntaxError {
    pub(crate) fn new(col: usize, msg: impl Into<String>) -> Self {
        SyntaxError { col, msg: msg.into() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    /// `.`
    Geometric,
    /// `|`
    Inner,
    /// `&`
    Outer,
    /// `^`
    Pow,
}

impl BinOp {
    fn name(self) -> &'static str {
        match self {
            BinOp::Add => "add",
            BinOp::Sub => "sub",
            BinOp::Mul => "mul",
            BinOp::Div => "div",
            BinOp::Geometric => "dot",
            BinOp::Inner => "inner",
            BinOp::Outer => "outer",
            BinOp::Pow => "pow",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Num(BigInt),
    Ident(String),
    Call { name: String, args: Vec<Node> },
    List(Vec<Node>),
    Index { base: Box<Node>, index: Box<Node> },
    Neg(Box<Node>),
    Binary { op: BinOp, lhs: Box<Node>, rhs: Box<Node> },
    Assign { name: String, value: Box<Node> },
}

/// S-expression style dump: `cinv(add(1, index(e, 1)))`.
impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list(f: &mut fmt::Formatter<'_>, items: &[Node]) -> fmt::Result {
            for (i, a) in items.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{a}")?;
            }
            Ok(())
        }
        match self {
            Node::Num(n) => write!(f, "{n}"),
            Node::Ident(s) => f.write_str(s),
            Node::Call { name, args } => {
                write!(f, "{name}(")?;
                list(f, args)?;
                f.write_str(")")
            }
            Node::List(items) => {
                f.write_str("[")?;
                list(f, items)?;
                f.write_str("]")
            }
            Node::Index { base, index } => write!(f, "index({base}, {index})"),
            Node::Neg(a) => write!(f, "neg({a})"),
            Node::Binary { op, lhs, rhs } => write!(f, "{}({lhs}, {rhs})", op.name()),
            Node::Assign { name, value } => write!(f, "assign({name}, {value})"),
        }
    }
}
