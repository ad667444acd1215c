use num_traits::{One, Signed};

use super::CalculusError;
use crate::algebra::{blade_product, Blade, Multivector, Signature};
use crate::symexpr::{Atom, Symbol};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirTerm {
    pub sign: i8,
    pub coord: Symbol,
    pub blade: Blade,
}

/// Signed list of (coordinate, blade) pairs describing a derivative
/// operator; `t + r` in `Cl(3,0)` is `[(+,t,1), (+,x,e1), (+,y,e2), (+,z,e3)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Direction {
    sig: Signature,
    terms: Vec<DirTerm>,
}

impl Direction {
    pub fn new(sig: Signature, terms: Vec<DirTerm>) -> Result<Self, CalculusError> {
        for (i, t) in terms.iter().enumerate() {
            if terms[..i].iter().any(|u| u.coord == t.coord) {
                return Err(CalculusError::DuplicateCoordinate(t.coord.to_string()));
            }
            if blade_product(t.blade, t.blade, &sig).0 == 0 {
                return Err(CalculusError::DegenerateBlade(format!("{:?}", t.blade)));
            }
        }
        Ok(Direction { sig, terms })
    }

    /// Reads a direction off a multivector whose coefficients are sums of
    /// `+/-` bare symbols, as produced by evaluating `t + r` or `t - r`.
    pub fn from_multivector(mv: &Multivector) -> Result<Self, CalculusError> {
        let bad = || CalculusError::NotADirection(mv.to_string());
        let mut terms = Vec::new();
        for (b, c) in mv.terms() {
            for (m, k) in c.terms() {
                let sign = if k.is_one() {
                    1
                } else if (-k).is_one() {
                    -1
                } else {
                    return Err(bad());
                };
                let mut it = m.iter();
                let coord = match (it.next(), it.next()) {
                    (Some((Atom::Symbol(s), e)), None) if e.is_one() => s.clone(),
                    _ => return Err(bad()),
                };
                debug_assert!(!k.is_negative() || sign < 0);
                terms.push(DirTerm { sign, coord, blade: *b });
            }
        }
        Direction::new(mv.sig(), terms)
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    pub fn terms(&self) -> &[DirTerm] {
        &self.terms
    }

    pub fn coords(&self) -> Vec<Symbol> {
        self.terms.iter().map(|t| t.coord.clone()).collect()
    }
}
