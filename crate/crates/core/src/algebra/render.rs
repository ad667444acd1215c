use std::fmt;

use num_traits::Signed;
use serde_json::{json, Value};

use super::blade::Blade;
use super::table::{BladeGroup, Factored};
use super::Multivector;
use crate::symexpr::Expr;

/// Text form of a blade, `e[1].e[2]`, with the given basis name.
pub fn blade_text(b: Blade, basis: &str) -> String {
    if b.is_scalar() {
        return "1".into();
    }
    let parts: Vec<String> = b.indices().iter().map(|k| format!("{basis}[{k}]")).collect();
    parts.join(".")
}

/// LaTeX form of a blade, `{e}_{1} \cdot {e}_{2}`.
pub fn blade_latex(b: Blade, basis: &str) -> String {
    if b.is_scalar() {
        return "1".into();
    }
    let parts: Vec<String> = b.indices().iter().map(|k| format!("{{{basis}}}_{{{k}}}")).collect();
    parts.join(" \\cdot ")
}

/// Splits a leading minus off a coefficient when it is a single term.
fn split_sign(c: &Expr) -> (bool, Expr) {
    match c.single_term() {
        Some((_, k)) if k.is_negative() => (true, c.neg()),
        _ => (false, c.clone()),
    }
}

fn join_terms(parts: Vec<(bool, String)>) -> String {
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (neg, body)) in parts.into_iter().enumerate() {
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

fn text_term(b: Blade, c: &Expr, basis: &str) -> (bool, String) {
    if b.is_scalar() {
        let (neg, mag) = split_sign(c);
        return (neg, mag.to_string());
    }
    let (neg, mag) = split_sign(c);
    let bt = blade_text(b, basis);
    let body = if mag.is_one() {
        bt
    } else if mag.num_terms() == 1 {
        format!("{mag}*{bt}")
    } else {
        format!("({mag})*{bt}")
    };
    (neg, body)
}

fn latex_term(b: Blade, c: &Expr, basis: &str) -> (bool, String) {
    let (neg, mag) = split_sign(c);
    if b.is_scalar() {
        let s = mag.to_latex();
        return (neg, if mag.num_terms() > 1 && neg { format!("\\left({s}\\right)") } else { s });
    }
    let bl = blade_latex(b, basis);
    let body = if mag.is_one() {
        bl
    } else if mag.num_terms() == 1 {
        format!("{} \\, {bl}", mag.to_latex())
    } else {
        format!("{bl} \\left({}\\right)", mag.to_latex())
    };
    (neg, body)
}

impl Multivector {
    pub fn to_text(&self, basis: &str) -> String {
        join_terms(self.terms().map(|(b, c)| text_term(*b, c, basis)).collect())
    }

    pub fn to_latex(&self, basis: &str) -> String {
        join_terms(self.terms().map(|(b, c)| latex_term(*b, c, basis)).collect())
    }

    /// `{"sig":[p,q,r],"terms":[{"blade":[1,2],"coeff":"..."}]}`.
    pub fn to_json(&self) -> Value {
        let sig = self.sig();
        let terms: Vec<Value> = self
            .terms()
            .map(|(b, c)| json!({ "blade": b.indices(), "coeff": c.to_string() }))
            .collect();
        json!({ "sig": [sig.p(), sig.q(), sig.r()], "terms": terms })
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("e"))
    }
}

impl Factored {
    pub fn to_text(&self, basis: &str) -> String {
        let mut parts: Vec<(bool, String)> = self
            .groups
            .iter()
            .map(|(b, c)| {
                if c.num_terms() > 1 {
                    (false, format!("{}*({c})", blade_text(*b, basis)))
                } else {
                    text_term(*b, c, basis)
                }
            })
            .collect();
        parts.extend(self.rest.terms().map(|(b, c)| text_term(*b, c, basis)));
        join_terms(parts)
    }

    pub fn to_latex(&self, basis: &str) -> String {
        let mut parts: Vec<(bool, String)> = self
            .groups
            .iter()
            .map(|(b, c)| {
                if c.num_terms() > 1 {
                    (false, format!("{} \\left({}\\right)", blade_latex(*b, basis), c.to_latex()))
                } else {
                    latex_term(*b, c, basis)
                }
            })
            .collect();
        parts.extend(self.rest.terms().map(|(b, c)| latex_term(*b, c, basis)));
        join_terms(parts)
    }
}

/// `[[blades],[coeffs]]` per grade; zero grades print as `[[0],[0]]`.
pub fn groups_text(groups: &[BladeGroup], basis: &str) -> String {
    let parts: Vec<String> = groups
        .iter()
        .map(|g| {
            if g.is_zero() {
                return "[[0],[0]]".into();
            }
            let bl: Vec<String> = g.blades.iter().map(|b| blade_text(*b, basis)).collect();
            let cs: Vec<String> = g.coeffs.iter().map(Expr::to_string).collect();
            format!("[[{}],[{}]]", bl.join(", "), cs.join(", "))
        })
        .collect();
    format!("[{}]", parts.join(", "))
}
