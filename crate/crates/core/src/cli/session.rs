use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::{CliError, OutputMode};
use crate::algebra::{BladeGroup, Factored, Multivector, Signature};
use crate::symexpr::{Coeff, Exponent, Expr, Symbol, SymbolTable};
use crate::syntax::{parse, parse_program, BinOp, Node, Statement};

/// Result of evaluating a statement.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    /// Directives with nothing to print.
    Done,
    Mv(Multivector),
    List(Vec<Value>),
    Matrix(Vec<Vec<Multivector>>),
    Groups(Vec<BladeGroup>),
    Factored(Factored),
}

/// What one statement produced.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    /// Rendered value, absent for directives and `$`-terminated statements.
    pub output: Option<String>,
    /// `Some(passed)` for `assertZero`.
    pub assertion: Option<bool>,
}

/// Evaluation state: the algebra, declared symbols, bindings and output mode.
#[derive(Clone, Debug)]
pub struct Session {
    pub(super) sig: Option<Signature>,
    pub(super) basis: String,
    pub(super) table: SymbolTable,
    pub(super) bindings: BTreeMap<String, Value>,
    pub(super) mode: OutputMode,
    /// Set by the last `assertZero`.
    pub(super) last_assertion: Option<bool>,
}

impl Default for Session {
    fn default() -> Self {
        Session {
            sig: None,
            basis: "e".into(),
            table: SymbolTable::new(),
            bindings: BTreeMap::new(),
            mode: OutputMode::Text,
            last_assertion: None,
        }
    }
}

impl Session {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn signature(&self) -> Option<Signature> {
        self.sig
    }

    pub fn basis(&self) -> &str {
        &self.basis
    }

    pub fn mode(&self) -> OutputMode {
        self.mode
    }

    pub fn set_mode(&mut self, mode: OutputMode) {
        self.mode = mode;
    }

    pub fn table(&self) -> &SymbolTable {
        &self.table
    }

    pub fn binding(&self, name: &str) -> Option<&Value> {
        self.bindings.get(name)
    }

    pub fn bindings(&self) -> &BTreeMap<String, Value> {
        &self.bindings
    }

    /// Runs every statement of one input line.
    pub fn run_line(&mut self, line: &str) -> Result<Vec<Outcome>, CliError> {
        let stmts = parse_program(line)?;
        let mut out = Vec::with_capacity(stmts.len());
        for s in &stmts {
            out.push(self.execute(s)?);
        }
        Ok(out)
    }

    pub fn execute(&mut self, stmt: &Statement) -> Result<Outcome, CliError> {
        self.last_assertion = None;
        let v = self.eval(&stmt.node)?;
        let output = if stmt.silent { None } else { v.render(self.mode, &self.basis) };
        Ok(Outcome { output, assertion: self.last_assertion.take() })
    }

    /// Parses and evaluates a single expression, returning its value.
    pub fn evaluate(&mut self, input: &str) -> Result<Value, CliError> {
        let node = parse(input)?;
        self.eval(&node)
    }

    /// Evaluates to a multivector (grouped forms are summed back up).
    pub fn evaluate_mv(&mut self, input: &str) -> Result<Multivector, CliError> {
        let v = self.evaluate(input)?;
        self.to_mv(v, "expression")
    }

    pub(super) fn sig(&self) -> Result<Signature, CliError> {
        self.sig.ok_or(CliError::NoSignature)
    }

    pub(super) fn scalar_mv(&self, e: Expr) -> Result<Multivector, CliError> {
        Ok(Multivector::scalar(self.sig()?, e))
    }

    pub(super) fn to_mv(&self, v: Value, what: &str) -> Result<Multivector, CliError> {
        match v {
            Value::Mv(m) => Ok(m),
            Value::Factored(f) => Ok(f.to_multivector()),
            Value::Groups(groups) => {
                let sig = self.sig()?;
                let terms = groups.into_iter().flat_map(|g| g.blades.into_iter().zip(g.coeffs));
                Ok(Multivector::from_terms(sig, terms))
            }
            Value::Done => Err(CliError::Type(format!("{what}: a directive has no value"))),
            Value::List(_) => Err(CliError::Type(format!("{what}: expected a multivector, got a list"))),
            Value::Matrix(_) => Err(CliError::Type(format!("{what}: expected a multivector, got a matrix"))),
        }
    }

    pub(super) fn to_scalar(&self, v: Value, what: &str) -> Result<Expr, CliError> {
        self.to_mv(v, what)?
            .as_scalar()
            .ok_or_else(|| CliError::Type(format!("{what}: expected a scalar")))
    }

    pub(super) fn eval(&mut self, node: &Node) -> Result<Value, CliError> {
        match node {
            Node::Num(n) => Ok(Value::Mv(self.scalar_mv(Expr::constant(Coeff::from_integer(n.clone())))?)),
            Node::Ident(name) => self.ident(name),
            Node::List(items) => Ok(Value::List(items.iter().map(|i| self.eval(i)).collect::<Result<_, _>>()?)),
            Node::Index { base, index } => self.index(base, index),
            Node::Neg(a) => {
                let a = self.eval(a)?;
                Ok(Value::Mv(self.to_mv(a, "-")?.neg()))
            }
            Node::Binary { op, lhs, rhs } => {
                let l = self.eval(lhs)?;
                let l = self.to_mv(l, op_symbol(*op))?;
                let r = self.eval(rhs)?;
                let r = self.to_mv(r, op_symbol(*op))?;
                Ok(Value::Mv(self.binary(*op, &l, &r)?))
            }
            Node::Assign { name, value } => {
                if name == "%iv" || self.basis_index(name).is_some() || *name == self.basis {
                    return Err(CliError::Type(format!("cannot assign to reserved name '{name}'")));
                }
                let v = self.eval(value)?;
                self.bindings.insert(name.clone(), v.clone());
                Ok(v)
            }
            Node::Call { name, args } => self.call(name, args),
        }
    }

    /// `e12` style alias of `e[12]`.
    pub(super) fn basis_index(&self, name: &str) -> Option<usize> {
        let rest = name.strip_prefix(self.basis.as_str())?;
        if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) || rest.starts_with('0') {
            return None;
        }
        rest.parse().ok()
    }

    fn ident(&self, name: &str) -> Result<Value, CliError> {
        if let Some(v) = self.bindings.get(name) {
            return Ok(v.clone());
        }
        let sig = self.sig()?;
        if name == "%iv" {
            return Ok(Value::Mv(Multivector::pseudoscalar(sig)));
        }
        if name == self.basis {
            return Err(CliError::BareBasis(name.into()));
        }
        if let Some(k) = self.basis_index(name) {
            return Ok(Value::Mv(Multivector::basis(sig, k)?));
        }
        Ok(Value::Mv(Multivector::scalar(sig, Expr::symbol(name))))
    }

    fn index(&mut self, base: &Node, index: &Node) -> Result<Value, CliError> {
        let k = self.eval(index)?;
        let k = self.to_integer(k, "index")?;
        if let Node::Ident(name) = base {
            if *name == self.basis && !self.bindings.contains_key(name) {
                let k = usize::try_from(k).map_err(|_| CliError::Type(format!("basis index {k} must be positive")))?;
                return Ok(Value::Mv(Multivector::basis(self.sig()?, k)?));
            }
        }
        match self.eval(base)? {
            Value::List(items) => {
                let i = usize::try_from(k).ok().filter(|i| (1..=items.len()).contains(i));
                let i = i.ok_or_else(|| CliError::Type(format!("list index {k} out of range 1..={}", items.len())))?;
                Ok(items[i - 1].clone())
            }
            _ => Err(CliError::Type("only the basis symbol and lists can be indexed".into())),
        }
    }

    pub(super) fn to_integer(&self, v: Value, what: &str) -> Result<i64, CliError> {
        let c = self
            .to_scalar(v, what)?
            .as_constant()
            .ok_or_else(|| CliError::Type(format!("{what}: expected an integer constant")))?;
        if !c.is_integer() {
            return Err(CliError::Type(format!("{what}: expected an integer, got {c}")));
        }
        c.to_integer().to_i64().ok_or_else(|| CliError::Type(format!("{what}: integer too large")))
    }

    fn binary(&self, op: BinOp, l: &Multivector, r: &Multivector) -> Result<Multivector, CliError> {
        Ok(match op {
            BinOp::Add => l.add(r)?,
            BinOp::Sub => l.sub(r)?,
            BinOp::Geometric => l.gp(r)?,
            BinOp::Inner => l.inner(r)?,
            BinOp::Outer => l.outer(r)?,
            BinOp::Mul => {
                if l.as_scalar().is_none() && r.as_scalar().is_none() {
                    return Err(CliError::Type(
                        "'*' needs a scalar operand; use '.' for the geometric product".into(),
                    ));
                }
                l.gp(r)?
            }
            BinOp::Div => match r.as_scalar() {
                Some(s) => l.scale(&s.inv()?),
                None => l.gp(&r.inverse()?)?,
            },
            BinOp::Pow => {
                let e = r
                    .as_scalar()
                    .and_then(|s| s.as_constant())
                    .ok_or_else(|| CliError::Type("exponent must be a rational constant".into()))?;
                match l.as_scalar() {
                    Some(base) => self.scalar_mv(base.pow(to_exponent(&e)?)?)?,
                    None => {
                        if !e.is_integer() {
                            return Err(CliError::Type("a non-scalar can only be raised to an integer power".into()));
                        }
                        let k = e.to_integer().to_i64().ok_or_else(|| CliError::Type("exponent too large".into()))?;
                        l.powi(k)?
                    }
                }
            }
        })
    }

    /// Parses a coefficient string in a clean scope: same algebra and
    /// declarations, no bindings.
    pub(super) fn parse_coefficient(&self, text: &str) -> Result<Expr, CliError> {
        let mut scratch = Session {
            sig: self.sig,
            basis: self.basis.clone(),
            table: self.table.clone(),
            bindings: BTreeMap::new(),
            mode: self.mode,
            last_assertion: None,
        };
        let v = scratch.evaluate(text)?;
        scratch.to_scalar(v, "coefficient")
    }

    /// Reads the JSON form `{"sig":[p,q,r],"terms":[{"blade":[..],"coeff":".."}]}`.
    /// The signature must match the session's.
    pub fn multivector_from_json(&self, text: &str) -> Result<Multivector, CliError> {
        let bad = |m: &str| CliError::Json(m.to_string());
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| CliError::Json(e.to_string()))?;
        let sig = self.sig()?;
        let dims: Vec<usize> = v["sig"]
            .as_array()
            .ok_or_else(|| bad("missing \"sig\""))?
            .iter()
            .map(|d| d.as_u64().map(|d| d as usize).ok_or_else(|| bad("\"sig\" entries must be integers")))
            .collect::<Result<_, _>>()?;
        if dims != [sig.p(), sig.q(), sig.r()] {
            return Err(bad(&format!("signature {dims:?} does not match the session's {sig}")));
        }
        let mut terms = Vec::new();
        for t in v["terms"].as_array().ok_or_else(|| bad("missing \"terms\""))? {
            let idx: Vec<usize> = t["blade"]
                .as_array()
                .ok_or_else(|| bad("term without \"blade\""))?
                .iter()
                .map(|k| k.as_u64().map(|k| k as usize).ok_or_else(|| bad("blade indices must be integers")))
                .collect::<Result<_, _>>()?;
            let mut blade = Multivector::one(sig);
            for k in idx {
                blade = blade.gp(&Multivector::basis(sig, k)?)?;
            }
            let coeff = self.parse_coefficient(t["coeff"].as_str().ok_or_else(|| bad("term without \"coeff\""))?)?;
            terms.push(blade.scale(&coeff));
        }
        terms.into_iter().try_fold(Multivector::zero(sig), |acc, t| acc.add(&t)).map_err(Into::into)
    }
}

fn op_symbol(op: BinOp) -> &'static str {
    match op {
        BinOp::Add => "+",
        BinOp::Sub => "-",
        BinOp::Mul => "*",
        BinOp::Div => "/",
        BinOp::Geometric => ".",
        BinOp::Inner => "|",
        BinOp::Outer => "&",
        BinOp::Pow => "^",
    }
}

fn to_exponent(c: &Coeff) -> Result<Exponent, CliError> {
    let conv = |n: &BigInt| n.to_i64().ok_or_else(|| CliError::Type("exponent too large".into()));
    let (n, d) = (conv(c.numer())?, conv(c.denom())?);
    if d.is_one() {
        return Ok(Exponent::from_integer(n));
    }
    Ok(Exponent::new(n, d))
}

pub(super) fn symbol_of(name: &str) -> Symbol {
    Symbol::new(name)
}
