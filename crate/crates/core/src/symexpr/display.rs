use std::fmt::{self, Write};

use num_traits::{One, Signed};

use super::expr::{Atom, Coeff, Exponent, Expr, Monomial};
use super::symbol::{DerivAtom, Symbol};

// Plain text. The output re-parses to the same canonical value.

fn text_exponent(e: &Exponent) -> String {
    if e.is_integer() && e.is_positive() {
        e.to_string()
    } else {
        format!("({e})")
    }
}

fn text_atom(a: &Atom) -> String {
    match a {
        Atom::Symbol(s) => s.to_string(),
        Atom::Power(base) => format!("({base})"),
        Atom::Deriv(d) => {
            let coords: Vec<&str> = d.wrt().iter().map(Symbol::name).collect();
            format!("diff({},{})", d.base(), coords.join(","))
        }
    }
}

fn text_monomial(m: &Monomial) -> String {
    let parts: Vec<String> = m
        .iter()
        .map(|(a, e)| {
            if e.is_one() {
                text_atom(a)
            } else {
                format!("{}^{}", text_atom(a), text_exponent(e))
            }
        })
        .collect();
    parts.join("*")
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&text_monomial(m))?;
            } else {
                write!(f, "{mag}*{}", text_monomial(m))?;
            }
        }
        Ok(())
    }
}

// LaTeX.

fn latex_rational(c: &Coeff) -> String {
    if c.is_integer() {
        c.to_string()
    } else {
        let sign = if c.is_negative() { "-" } else { "" };
        format!("{sign}\\frac{{{}}}{{{}}}", c.numer().abs(), c.denom())
    }
}

fn latex_exponent(e: &Exponent) -> String {
    if e.is_integer() {
        e.to_string()
    } else {
        let sign = if e.is_negative() { "-" } else { "" };
        format!("{sign}\\frac{{{}}}{{{}}}", e.numer().abs(), e.denom())
    }
}

/// `A_t` becomes `A_{t}`; names with several underscores keep the first split.
pub fn latex_symbol(s: &Symbol) -> String {
    match s.name().split_once('_') {
        Some((head, tail)) if !head.is_empty() && !tail.is_empty() => format!("{head}_{{{tail}}}"),
        _ => s.name().to_string(),
    }
}

fn latex_deriv(d: &DerivAtom) -> String {
    let idx: String = d.wrt().iter().map(Symbol::name).collect();
    let base = latex_symbol(d.base());
    if base.contains('_') {
        format!("{{{base}}}_{{,{idx}}}")
    } else {
        format!("{base}_{{,{idx}}}")
    }
}

fn latex_atom(a: &Atom) -> String {
    match a {
        Atom::Symbol(s) => latex_symbol(s),
        Atom::Power(base) => match base.as_constant() {
            Some(c) => latex_rational(&c),
            None => format!("\\left({}\\right)", base.to_latex()),
        },
        Atom::Deriv(d) => latex_deriv(d),
    }
}

fn latex_factor(a: &Atom, e: &Exponent) -> String {
    let body = latex_atom(a);
    if e.is_one() {
        return body;
    }
    if *e == Exponent::new(1, 2) {
        if let Atom::Power(base) = a {
            if let Some(c) = base.as_constant() {
                return format!("\\sqrt{{{}}}", latex_rational(&c));
            }
        }
    }
    let body = if matches!(a, Atom::Deriv(_)) || body.contains('_') && !body.starts_with("\\left") {
        format!("{{{body}}}")
    } else {
        body
    };
    format!("{body}^{{{}}}", latex_exponent(e))
}

impl Expr {
    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            out.push_str(match (i, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            });
            let mag = c.abs();
            let factors: Vec<String> = m.iter().map(|(a, e)| latex_factor(a, e)).collect();
            if m.is_one() {
                out.push_str(&latex_rational(&mag));
            } else {
                if !mag.is_one() {
                    let _ = write!(out, "{} ", latex_rational(&mag));
                }
                out.push_str(&factors.join(" "));
            }
        }
        out
    }
}
