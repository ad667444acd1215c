use std::collections::BTreeMap;

use super::{mvectdiff, CalculusError, Direction};
use crate::algebra::{Blade, Multivector};
use crate::symexpr::{Atom, Coeff, DerivAtom, Expr, Symbol, SymbolKind, SymbolTable};

/// Euler-Lagrange operator in multivector-derivative form:
///
/// `EL = ∂_q L − ∇_D (∂_P L)`
///
/// where `q` is the field, `P` its first derivative multivector (for
/// example `∇_{t−r} q`), `∂_X = Σ_B B⁻¹ ∂/∂X_B` and `∇_D` is [`mvectdiff`].
///
/// Each blade of `q` must carry exactly one bare dependent symbol (its field
/// component; other atoms such as gauge terms are ignored). `L` is given in
/// terms of the derivative atoms of those components, and `P` fixes how
/// each atom `∂φ/∂c` enters: it must sit in a single blade of `P` with a
/// constant factor. `∂L/∂P_B` is then recovered from the atom partials by
/// least squares over the atoms that land on `B`, which is exact whenever
/// `L` depends on the atoms only through `P`.
pub fn euler_lagrange(
    l: &Expr,
    d: &Direction,
    q: &Multivector,
    p: &Multivector,
    table: &SymbolTable,
) -> Result<Multivector, CalculusError> {
    let sig = q.sig();
    let mut fields: Vec<(Blade, Symbol)> = Vec::new();
    for (b, c) in q.terms() {
        let mut found: Vec<Symbol> = Vec::new();
        for (m, _) in c.terms() {
            for (a, _) in m.iter() {
                if let Atom::Symbol(s) = a {
                    if matches!(table.kind(s), SymbolKind::Dependent(_)) && !found.contains(s) {
                        found.push(s.clone());
                    }
                }
            }
        }
        match found.len() {
            0 => return Err(CalculusError::NoFieldSymbol(format!("{b:?}"))),
            1 => fields.push((*b, found.pop().unwrap())),
            _ => return Err(CalculusError::AmbiguousFieldSymbol(format!("{b:?}"))),
        }
    }

    let mut dq = Multivector::zero(sig);
    for (b, phi) in &fields {
        let partial = l.partial(&Atom::Symbol(phi.clone()));
        let recip = Multivector::from_blade(sig, *b, Expr::one()).inverse()?;
        dq = dq.add(&recip.scale(&partial))?;
    }

    // numerator Σ m_a ∂L/∂a and weight Σ m_a² per blade of P
    let mut acc: BTreeMap<Blade, (Expr, Coeff)> = BTreeMap::new();
    for (_, phi) in &fields {
        let coords = table.dependencies(phi).unwrap_or(&[]);
        for c in coords {
            let atom = Atom::Deriv(DerivAtom::new(phi.clone(), vec![c.clone()]));
            let dl = l.partial(&atom);
            let map = p.map_coeffs(|e| e.partial(&atom));
            if map.is_zero() {
                if dl.is_zero() {
                    continue;
                }
                return Err(CalculusError::UnmappedAtom(Expr::atom(atom).to_string()));
            }
            let Some((blade, m)) = single_constant_term(&map) else {
                return Err(CalculusError::UnmappedAtom(Expr::atom(atom).to_string()));
            };
            let entry = acc.entry(blade).or_insert_with(|| (Expr::zero(), Coeff::from_integer(0.into())));
            entry.0 = entry.0.add(&dl.scale(&m));
            entry.1 += &m * &m;
        }
    }

    let mut g = Multivector::zero(sig);
    for (b, (num, weight)) in acc {
        if num.is_zero() {
            continue;
        }
        let recip = Multivector::from_blade(sig, b, Expr::one()).inverse()?;
        g = g.add(&recip.scale(&num.scale(&weight.recip())))?;
    }

    Ok(dq.sub(&mvectdiff(&g, d, table)?)?)
}

fn single_constant_term(m: &Multivector) -> Option<(Blade, Coeff)> {
    let mut it = m.terms();
    let (b, c) = it.next()?;
    if it.next().is_some() {
        return None;
    }
    c.as_constant().map(|k| (*b, k))
}
