use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::ToPrimitive;

use super::expr::{Atom, Coeff, Exponent, Expr};
use super::symbol::{DerivAtom, Symbol};
use super::SymError;

/// Numeric values for the atoms of an expression.
#[derive(Clone, Debug, Default)]
pub struct Bindings {
    pub symbols: HashMap<Symbol, f64>,
    pub derivs: HashMap<DerivAtom, f64>,
}

impl Bindings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, value: f64) -> Self {
        self.symbols.insert(Symbol::new(name), value);
        self
    }

    pub fn set(&mut self, s: Symbol, value: f64) {
        self.symbols.insert(s, value);
    }

    pub fn set_deriv(&mut self, d: DerivAtom, value: f64) {
        self.derivs.insert(d, value);
    }
}

fn coeff_f64(c: &Coeff) -> f64 {
    c.to_f64().unwrap_or_else(|| {
        let n = c.numer().to_f64().unwrap_or(f64::NAN);
        let d = c.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

fn exp_f64(e: &Exponent) -> f64 {
    *e.numer() as f64 / *e.denom() as f64
}

fn powr(base: f64, e: &Exponent) -> Result<f64, SymError> {
    if e.is_integer() {
        return Ok(base.powi(e.to_integer() as i32));
    }
    if base < 0.0 {
        return Err(SymError::NegativeBase(base));
    }
    Ok(base.powf(exp_f64(e)))
}

impl Expr {
    /// IEEE double evaluation of the canonical form.
    pub fn eval(&self, b: &Bindings) -> Result<f64, SymError> {
        let mut total = 0.0;
        for (m, c) in self.terms() {
            let mut term = coeff_f64(c);
            for (a, e) in m.iter() {
                let v = match a {
                    Atom::Symbol(s) => *b.symbols.get(s).ok_or_else(|| SymError::Unbound(s.to_string()))?,
                    Atom::Deriv(d) => *b.derivs.get(d).ok_or_else(|| SymError::Unbound(deriv_label(d)))?,
                    Atom::Power(base) => base.eval(b)?,
                };
                term *= powr(v, e)?;
            }
            total += term;
        }
        Ok(total)
    }

    /// Simultaneous substitution of symbols. Derivative atoms are opaque and
    /// left alone.
    pub fn substitute(&self, map: &BTreeMap<Symbol, Expr>) -> Result<Expr, SymError> {
        check_acyclic(map)?;
        self.substitute_unchecked(map)
    }

    fn substitute_unchecked(&self, map: &BTreeMap<Symbol, Expr>) -> Result<Expr, SymError> {
        let mut acc = Expr::zero();
        for (m, c) in self.terms() {
            let mut term = Expr::constant(c.clone());
            for (a, e) in m.iter() {
                let factor = match a {
                    Atom::Symbol(s) => match map.get(s) {
                        Some(v) => v.pow(*e)?,
                        None => Expr::atom(a.clone()).pow(*e)?,
                    },
                    Atom::Power(base) => base.substitute_unchecked(map)?.pow(*e)?,
                    Atom::Deriv(_) => Expr::atom(a.clone()).pow(*e)?,
                };
                term = term.mul(&factor);
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}

fn check_acyclic(map: &BTreeMap<Symbol, Expr>) -> Result<(), SymError> {
    let edges: BTreeMap<&Symbol, Vec<Symbol>> = map
        .iter()
        .map(|(k, v)| {
            let targets = v
                .atoms()
                .into_iter()
                .filter_map(|a| match a {
                    Atom::Symbol(s) if map.contains_key(&s) => Some(s),
                    _ => None,
                })
                .collect();
            (k, targets)
        })
        .collect();

    fn visit<'a>(
        node: &'a Symbol,
        edges: &'a BTreeMap<&Symbol, Vec<Symbol>>,
        on_stack: &mut BTreeSet<&'a Symbol>,
        done: &mut BTreeSet<&'a Symbol>,
    ) -> Result<(), SymError> {
        if done.contains(node) {
            return Ok(());
        }
        if !on_stack.insert(node) {
            return Err(SymError::CyclicSubstitution(node.to_string()));
        }
        for next in &edges[node] {
            let key = edges.keys().find(|k| **k == next).copied().unwrap();
            visit(key, edges, on_stack, done)?;
        }
        on_stack.remove(node);
        done.insert(node);
        Ok(())
    }

    let mut done = BTreeSet::new();
    for k in map.keys() {
        visit(k, &edges, &mut BTreeSet::new(), &mut done)?;
    }
    Ok(())
}

pub(crate) fn deriv_label(d: &DerivAtom) -> String {
    let coords: Vec<&str> = d.wrt().iter().map(Symbol::name).collect();
    format!("diff({},{})", d.base(), coords.join(","))
}
