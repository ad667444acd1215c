use super::CalculusError;
use crate::algebra::{Blade, Multivector, Signature};
use crate::symexpr::{Coeff, Expr, Symbol, SymbolTable};

/// `Σ coords[k] · e_k`.
pub fn cvect(sig: Signature, coords: &[Symbol]) -> Result<Multivector, CalculusError> {
    if coords.len() > sig.dim() {
        return Err(CalculusError::TooManyCoordinates { given: coords.len(), max: sig.dim() });
    }
    Ok(Multivector::from_terms(
        sig,
        coords.iter().enumerate().map(|(k, c)| (Blade::basis(k + 1), Expr::sym(c))),
    ))
}

/// Paravector field `name_c0 + Σ name_ck · e_k`, declaring every component
/// as a function of all of `coords`.
pub fn celem(sig: Signature, table: &mut SymbolTable, name: &str, coords: &[Symbol]) -> Result<Multivector, CalculusError> {
    if coords.len() > sig.dim() + 1 {
        return Err(CalculusError::TooManyCoordinates { given: coords.len(), max: sig.dim() + 1 });
    }
    let mut terms = Vec::with_capacity(coords.len());
    for (k, c) in coords.iter().enumerate() {
        let comp = Symbol::new(&format!("{name}_{c}"));
        table.declare_dependency(&comp, coords)?;
        let blade = if k == 0 { Blade::SCALAR } else { Blade::basis(k) };
        terms.push((blade, Expr::sym(&comp)));
    }
    Ok(Multivector::from_terms(sig, terms))
}

/// `F = E + I B` for vectors `E`, `B`.
pub fn em_field_object(e: &Multivector, b: &Multivector) -> Result<Multivector, CalculusError> {
    let is_vector = |m: &Multivector| m.terms().all(|(bl, _)| bl.grade() == 1);
    if !is_vector(e) {
        return Err(CalculusError::NotVector("E"));
    }
    if !is_vector(b) {
        return Err(CalculusError::NotVector("B"));
    }
    let i = Multivector::pseudoscalar(e.sig());
    Ok(e.add(&i.gp(b)?)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LagrangianKind {
    /// `½⟨F F⟩₀`
    Quadratic,
    /// `-½⟨F conj(F)⟩₀`
    Em,
}

pub fn lagrangian_scalar(f: &Multivector, kind: LagrangianKind) -> Result<Expr, CalculusError> {
    let half = Coeff::new(1.into(), 2.into());
    Ok(match kind {
        LagrangianKind::Quadratic => f.gp(f)?.scalar_part().scale(&half),
        LagrangianKind::Em => f.cnorm().scale(&-half),
    })
}
