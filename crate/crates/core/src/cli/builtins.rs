use std::collections::BTreeMap;

use super::session::symbol_of;
use super::{CliError, Session, Value};
use crate::algebra::{bdecompose, factor_by, mult_table, Blade, Multivector, Signature};
use crate::calculus::{
    celem, cvect, em_field_object, euler_lagrange, grade_sectors, mvectdiff, svectdiff, vvectdiff, Direction,
};
use crate::symexpr::{Expr, Symbol};
use crate::syntax::Node;

/// Names accepted by [`Session::call`], for help output.
pub const FUNCTIONS: &[&str] = &[
    "clifford", "declare_scalar", "declare", "depends", "dependsv", "assertZero", "mode", "cinv", "creverse",
    "cinvolve", "cconjugate", "cnorm", "psnorm", "grpart", "scalarpart", "vectorpart", "grade", "mtable",
    "bdecompose", "factorby", "cvect", "celem", "mvectdiff", "svectdiff", "vvectdiff", "EuLagEq2", "emfield",
    "sectors", "diff", "subst", "expand", "cliffsimpall", "ratsimp",
];

fn arity(name: &str, args: &[Node], min: usize, max: usize, expected: &'static str) -> Result<(), CliError> {
    if args.len() < min || args.len() > max {
        return Err(CliError::Arity { name: name.into(), expected, got: args.len() });
    }
    Ok(())
}

fn ident(name: &str, node: &Node) -> Result<String, CliError> {
    match node {
        Node::Ident(s) => Ok(s.clone()),
        other => Err(CliError::arg(name, format!("expected a name, got {other}"))),
    }
}

/// A bracketed list of names, or a single name.
fn ident_list(name: &str, node: &Node) -> Result<Vec<String>, CliError> {
    match node {
        Node::List(items) => items.iter().map(|i| ident(name, i)).collect(),
        other => Ok(vec![ident(name, other)?]),
    }
}

fn symbols(names: &[String]) -> Vec<Symbol> {
    names.iter().map(|n| symbol_of(n)).collect()
}

fn small_int(name: &str, node: &Node) -> Result<usize, CliError> {
    match node {
        Node::Num(n) => usize::try_from(n).map_err(|_| CliError::arg(name, format!("{n} is too large"))),
        other => Err(CliError::arg(name, format!("expected a non-negative integer, got {other}"))),
    }
}

impl Session {
    pub(super) fn call(&mut self, name: &str, args: &[Node]) -> Result<Value, CliError> {
        self.call_inner(name, args).map_err(|e| match e {
            CliError::Algebra(_) | CliError::Calculus(_) | CliError::Sym(_) => {
                CliError::In { op: name.into(), source: Box::new(e) }
            }
            other => other,
        })
    }

    fn arg_mv(&mut self, name: &str, node: &Node) -> Result<Multivector, CliError> {
        let v = self.eval(node)?;
        self.to_mv(v, name)
    }

    fn arg_direction(&mut self, name: &str, node: &Node) -> Result<Direction, CliError> {
        let m = self.arg_mv(name, node)?;
        Ok(Direction::from_multivector(&m)?)
    }

    /// Declares each name as a coordinate, skipping ones that already are.
    fn declare_coordinates(&mut self, coords: &[Symbol]) -> Result<(), CliError> {
        for c in coords {
            self.table.declare_coordinate(c)?;
        }
        Ok(())
    }

    fn mv1(&mut self, name: &str, args: &[Node], f: impl Fn(&Multivector) -> Result<Multivector, CliError>) -> Result<Value, CliError> {
        arity(name, args, 1, 1, "1")?;
        let a = self.arg_mv(name, &args[0])?;
        Ok(Value::Mv(f(&a)?))
    }

    fn call_inner(&mut self, name: &str, args: &[Node]) -> Result<Value, CliError> {
        match name {
            "clifford" => {
                arity(name, args, 2, 4, "2 to 4")?;
                if let Some(sig) = self.sig {
                    return Err(CliError::SignatureSet(sig));
                }
                let basis = ident(name, &args[0])?;
                let dims: Vec<usize> = args[1..].iter().map(|a| small_int(name, a)).collect::<Result<_, _>>()?;
                let get = |i: usize| dims.get(i).copied().unwrap_or(0);
                self.sig = Some(Signature::new(get(0), get(1), get(2))?);
                self.basis = basis;
                Ok(Value::Done)
            }
            "mode" => {
                arity(name, args, 1, 1, "1")?;
                self.mode = ident(name, &args[0])?.parse().map_err(|m: String| CliError::arg(name, m))?;
                Ok(Value::Done)
            }
            // Symbols are scalar by default, so these only check their arguments.
            "declare_scalar" => {
                for a in args {
                    ident_list(name, a)?;
                }
                Ok(Value::Done)
            }
            "declare" => {
                arity(name, args, 2, 2, "2")?;
                ident_list(name, &args[0])?;
                match ident(name, &args[1])?.as_str() {
                    "scalar" => Ok(Value::Done),
                    other => Err(CliError::arg(name, format!("unsupported property '{other}'"))),
                }
            }
            "depends" => {
                arity(name, args, 2, 2, "2")?;
                let coords = symbols(&ident_list(name, &args[1])?);
                self.declare_coordinates(&coords)?;
                for f in ident_list(name, &args[0])? {
                    self.table.declare_dependency(&symbol_of(&f), &coords)?;
                }
                Ok(Value::Done)
            }
            "dependsv" => {
                // Components are declared when celem builds the field.
                arity(name, args, 2, 2, "2")?;
                ident_list(name, &args[0])?;
                let coords = symbols(&ident_list(name, &args[1])?);
                self.declare_coordinates(&coords)?;
                Ok(Value::Done)
            }
            "assertZero" => {
                arity(name, args, 1, 1, "1")?;
                let v = self.eval(&args[0])?;
                let zero = self.is_zero_value(&v)?;
                self.last_assertion = Some(zero);
                Ok(v)
            }
            "cinv" => self.mv1(name, args, |a| Ok(a.inverse()?)),
            "creverse" => self.mv1(name, args, |a| Ok(a.reverse())),
            "cinvolve" => self.mv1(name, args, |a| Ok(a.grade_involution())),
            "cconjugate" => self.mv1(name, args, |a| Ok(a.conjugate())),
            "cnorm" => self.mv1(name, args, |a| Ok(Multivector::scalar(a.sig(), a.cnorm()))),
            "psnorm" => self.mv1(name, args, |a| Ok(Multivector::scalar(a.sig(), a.psnorm()))),
            "scalarpart" => self.mv1(name, args, |a| Ok(Multivector::scalar(a.sig(), a.scalar_part()))),
            "vectorpart" => self.mv1(name, args, |a| Ok(a.non_scalar_part())),
            "expand" | "cliffsimpall" | "ratsimp" => {
                arity(name, args, 1, 1, "1")?;
                self.eval(&args[0])
            }
            "grpart" => {
                arity(name, args, 2, 2, "2")?;
                let a = self.arg_mv(name, &args[0])?;
                let k = self.eval(&args[1])?;
                let k = self.to_integer(k, name)?;
                let k = usize::try_from(k).map_err(|_| CliError::arg(name, "grade must be non-negative"))?;
                Ok(Value::Mv(a.grade_part(k)?))
            }
            "grade" => {
                arity(name, args, 1, 1, "1")?;
                let a = self.arg_mv(name, &args[0])?;
                let sig = a.sig();
                let parts = a
                    .grade_decompose()
                    .into_iter()
                    .map(|(k, m)| Value::List(vec![Value::Mv(Multivector::scalar(sig, Expr::int(k as i64))), Value::Mv(m)]))
                    .collect();
                Ok(Value::List(parts))
            }
            "mtable" => {
                let elems = match args {
                    [] => {
                        let sig = self.sig()?;
                        Blade::all(&sig).into_iter().map(|b| Multivector::from_blade(sig, b, Expr::one())).collect()
                    }
                    [list] => match self.eval(list)? {
                        Value::List(items) => items
                            .into_iter()
                            .map(|v| self.to_mv(v, name))
                            .collect::<Result<Vec<_>, _>>()?,
                        _ => return Err(CliError::arg(name, "expected a list of elements")),
                    },
                    _ => return Err(CliError::Arity { name: name.into(), expected: "0 or 1", got: args.len() }),
                };
                Ok(Value::Matrix(mult_table(&elems)?))
            }
            "bdecompose" => {
                arity(name, args, 1, 1, "1")?;
                let a = self.arg_mv(name, &args[0])?;
                Ok(Value::Groups(bdecompose(&a)))
            }
            "factorby" => {
                arity(name, args, 1, 2, "1 or 2")?;
                let a = self.arg_mv(name, &args[0])?;
                let blades = match args.get(1) {
                    None => (1..=a.sig().dim()).map(Blade::basis).collect(),
                    Some(node) => match self.eval(node)? {
                        Value::List(items) => {
                            let mut out = Vec::new();
                            for v in items {
                                out.push(unit_blade(&self.to_mv(v, name)?).ok_or_else(|| CliError::arg(name, "list entries must be basis blades"))?);
                            }
                            out
                        }
                        _ => return Err(CliError::arg(name, "expected a list of blades")),
                    },
                };
                Ok(Value::Factored(factor_by(&a, &blades)))
            }
            "cvect" => {
                arity(name, args, 1, 1, "1")?;
                let coords = symbols(&ident_list(name, &args[0])?);
                Ok(Value::Mv(cvect(self.sig()?, &coords)?))
            }
            "celem" => {
                arity(name, args, 2, 2, "2")?;
                let field = ident(name, &args[0])?;
                let coords = symbols(&ident_list(name, &args[1])?);
                self.declare_coordinates(&coords)?;
                let sig = self.sig()?;
                Ok(Value::Mv(celem(sig, &mut self.table, &field, &coords)?))
            }
            "mvectdiff" | "svectdiff" | "vvectdiff" => {
                arity(name, args, 2, 2, "2")?;
                let f = self.arg_mv(name, &args[0])?;
                let d = self.arg_direction(name, &args[1])?;
                let op = match name {
                    "mvectdiff" => mvectdiff,
                    "svectdiff" => svectdiff,
                    _ => vvectdiff,
                };
                Ok(Value::Mv(op(&f, &d, &self.table)?))
            }
            "EuLagEq2" => {
                arity(name, args, 3, 3, "3")?;
                let l = self.eval(&args[0])?;
                let l = self.to_scalar(l, name)?;
                let d = self.arg_direction(name, &args[1])?;
                let (q, p) = match &args[2] {
                    Node::List(pair) if pair.len() == 2 => (self.arg_mv(name, &pair[0])?, self.arg_mv(name, &pair[1])?),
                    _ => return Err(CliError::arg(name, "third argument must be [field, derivative]")),
                };
                Ok(Value::Mv(euler_lagrange(&l, &d, &q, &p, &self.table)?))
            }
            "emfield" => {
                arity(name, args, 2, 2, "2")?;
                let e = self.arg_mv(name, &args[0])?;
                let b = self.arg_mv(name, &args[1])?;
                Ok(Value::Mv(em_field_object(&e, &b)?))
            }
            "sectors" => {
                arity(name, args, 1, 1, "1")?;
                let a = self.arg_mv(name, &args[0])?;
                let s = grade_sectors(&a)?;
                Ok(Value::List(
                    [s.scalar, s.vector, s.bivector, s.pseudoscalar].into_iter().map(Value::Mv).collect(),
                ))
            }
            "diff" => {
                if args.len() < 2 {
                    return Err(CliError::Arity { name: name.into(), expected: "at least 2", got: args.len() });
                }
                let f = self.arg_mv(name, &args[0])?;
                let coords: Vec<Symbol> =
                    args[1..].iter().map(|a| ident(name, a).map(|s| symbol_of(&s))).collect::<Result<_, _>>()?;
                let table = &self.table;
                Ok(Value::Mv(f.map_coeffs(|c| c.diff_many(&coords, table))))
            }
            "subst" => {
                arity(name, args, 3, 3, "3")?;
                let f = self.arg_mv(name, &args[0])?;
                let target = ident(name, &args[1])?;
                let v = self.eval(&args[2])?;
                let v = self.to_scalar(v, name)?;
                let map = BTreeMap::from([(symbol_of(&target), v)]);
                Ok(Value::Mv(f.try_map_coeffs(|c| c.substitute(&map))?))
            }
            _ => Err(CliError::UnknownFunction(name.into())),
        }
    }

    fn is_zero_value(&self, v: &Value) -> Result<bool, CliError> {
        Ok(match v {
            Value::Done => return Err(CliError::Type("assertZero: a directive has no value".into())),
            Value::Mv(m) => m.is_zero(),
            Value::Factored(f) => f.to_multivector().is_zero(),
            Value::Groups(g) => g.iter().all(|g| g.coeffs.iter().all(Expr::is_zero)),
            Value::Matrix(rows) => rows.iter().flatten().all(Multivector::is_zero),
            Value::List(items) => {
                for i in items {
                    if !self.is_zero_value(i)? {
                        return Ok(false);
                    }
                }
                true
            }
        })
    }
}

/// The blade of a single-term multivector with coefficient 1.
fn unit_blade(m: &Multivector) -> Option<Blade> {
    let mut it = m.terms();
    let (b, c) = it.next()?;
    (it.next().is_none() && c.is_one()).then_some(*b)
}
