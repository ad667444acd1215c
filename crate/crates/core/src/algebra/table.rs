use super::blade::Blade;
use super::{AlgebraError, Multivector};
use crate::symexpr::Expr;

/// `M[i][j] = elements[i] * elements[j]` (row times column).
pub fn mult_table(elements: &[Multivector]) -> Result<Vec<Vec<Multivector>>, AlgebraError> {
    if elements.is_empty() {
        return Err(AlgebraError::EmptyTable);
    }
    elements
        .iter()
        .map(|row| elements.iter().map(|col| row.gp(col)).collect())
        .collect()
}

/// One grade of a [`bdecompose`] result. An all-zero grade has no blades.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BladeGroup {
    pub grade: usize,
    pub blades: Vec<Blade>,
    pub coeffs: Vec<Expr>,
}

impl BladeGroup {
    pub fn is_zero(&self) -> bool {
        self.blades.is_empty()
    }
}

/// Groups a multivector by grade, listing every blade of a grade (zeros
/// included) once any coefficient of that grade is nonzero.
pub fn bdecompose(a: &Multivector) -> Vec<BladeGroup> {
    let sig = a.sig();
    (0..=sig.dim())
        .map(|k| {
            let blades = Blade::of_grade(&sig, k);
            if blades.iter().all(|b| a.get(*b).is_zero()) {
                return BladeGroup { grade: k, blades: vec![], coeffs: vec![] };
            }
            let coeffs = blades.iter().map(|b| a.get(*b)).collect();
            BladeGroup { grade: k, blades, coeffs }
        })
        .collect()
}

/// Presentation of a multivector as `Σ blade * (collected coefficient)` in
/// the order of a requested blade list, followed by the remaining terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factored {
    pub groups: Vec<(Blade, Expr)>,
    pub rest: Multivector,
}

impl Factored {
    pub fn to_multivector(&self) -> Multivector {
        let extra = self.groups.iter().map(|(b, c)| (*b, c.clone()));
        Multivector::from_terms(self.rest.sig(), self.rest.terms().map(|(b, c)| (*b, c.clone())).chain(extra))
    }
}

pub fn factor_by(a: &Multivector, blades: &[Blade]) -> Factored {
    let mut groups = Vec::new();
    for b in blades {
        let c = a.get(*b);
        if !c.is_zero() && !groups.iter().any(|(g, _): &(Blade, Expr)| g == b) {
            groups.push((*b, c));
        }
    }
    let rest = a.filter(|b| !groups.iter().any(|(g, _)| g == b));
    Factored { groups, rest }
}
