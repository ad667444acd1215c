use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value as Json};

use super::Value;
use crate::algebra::{blade_latex, groups_text, BladeGroup, Multivector};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputMode {
    #[default]
    Text,
    Latex,
    Json,
}

impl FromStr for OutputMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(OutputMode::Text),
            "latex" => Ok(OutputMode::Latex),
            "json" => Ok(OutputMode::Json),
            other => Err(format!("unknown output mode '{other}' (text, latex or json)")),
        }
    }
}

impl fmt::Display for OutputMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputMode::Text => "text",
            OutputMode::Latex => "latex",
            OutputMode::Json => "json",
        })
    }
}

impl Value {
    /// Renders a value; `None` for values that print nothing.
    pub fn render(&self, mode: OutputMode, basis: &str) -> Option<String> {
        match self {
            Value::Done => None,
            _ => Some(match mode {
                OutputMode::Text => self.text(basis),
                OutputMode::Latex => self.latex(basis),
                OutputMode::Json => self.json().to_string(),
            }),
        }
    }

    fn text(&self, basis: &str) -> String {
        match self {
            Value::Done => String::new(),
            Value::Mv(m) => m.to_text(basis),
            Value::List(items) => {
                let parts: Vec<String> = items.iter().map(|v| v.text(basis)).collect();
                format!("[{}]", parts.join(", "))
            }
            Value::Matrix(rows) => {
                let rows: Vec<String> = rows
                    .iter()
                    .map(|r| format!("[{}]", r.iter().map(|m| m.to_text(basis)).collect::<Vec<_>>().join(", ")))
                    .collect();
                format!("matrix({})", rows.join(", "))
            }
            Value::Groups(g) => groups_text(g, basis),
            Value::Factored(f) => f.to_text(basis),
        }
    }

    fn latex(&self, basis: &str) -> String {
        match self {
            Value::Done => String::new(),
            Value::Mv(m) => m.to_latex(basis),
            Value::List(items) => {
                let parts: Vec<String> = items.iter().map(|v| v.latex(basis)).collect();
                format!("\\left[ {} \\right]", parts.join(" , "))
            }
            Value::Matrix(rows) => {
                let rows: Vec<String> = rows
                    .iter()
                    .map(|r| r.iter().map(|m| m.to_latex(basis)).collect::<Vec<_>>().join(" & "))
                    .collect();
                format!("\\begin{{pmatrix}}{}\\end{{pmatrix}}", rows.join("\\cr "))
            }
            Value::Groups(g) => groups_latex(g, basis),
            Value::Factored(f) => f.to_latex(basis),
        }
    }

    fn json(&self) -> Json {
        match self {
            Value::Done => Json::Null,
            Value::Mv(m) => m.to_json(),
            Value::List(items) => Json::Array(items.iter().map(Value::json).collect()),
            Value::Matrix(rows) => Json::Array(
                rows.iter()
                    .map(|r| Json::Array(r.iter().map(Multivector::to_json).collect()))
                    .collect(),
            ),
            Value::Groups(groups) => Json::Array(
                groups
                    .iter()
                    .map(|g| {
                        json!({
                            "grade": g.grade,
                            "blades": g.blades.iter().map(|b| b.indices()).collect::<Vec<_>>(),
                            "coeffs": g.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                        })
                    })
                    .collect(),
            ),
            Value::Factored(f) => {
                let groups: Vec<Json> = f
                    .groups
                    .iter()
                    .map(|(b, c)| json!({ "blade": b.indices(), "coeff": c.to_string() }))
                    .collect();
                json!({ "groups": groups, "rest": f.rest.to_json() })
            }
        }
    }
}

fn groups_latex(groups: &[BladeGroup], basis: &str) -> String {
    let parts: Vec<String> = groups
        .iter()
        .map(|g| {
            if g.is_zero() {
                return "\\left[ \\left[ 0 \\right] , \\begin{pmatrix}0\\end{pmatrix} \\right]".into();
            }
            let bl: Vec<String> = g.blades.iter().map(|b| blade_latex(*b, basis)).collect();
            let cs: Vec<String> = g.coeffs.iter().map(|c| c.to_latex()).collect();
            format!(
                "\\left[ \\left[ {} \\right] , \\begin{{pmatrix}}{}\\end{{pmatrix}} \\right]",
                bl.join(" , "),
                cs.join("\\cr ")
            )
        })
        .collect();
    format!("\\left[ {} \\right]", parts.join(" , "))
}
