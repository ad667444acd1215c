use super::{CalculusError, Direction};
use crate::algebra::Multivector;
use crate::symexpr::SymbolTable;

/// `Σ sign · blade⁻¹ · ∂F/∂coord`, with the reciprocal blade acting from the left.
pub fn mvectdiff(f: &Multivector, d: &Direction, table: &SymbolTable) -> Result<Multivector, CalculusError> {
    let mut acc = Multivector::zero(f.sig());
    for t in d.terms() {
        let partial = f.map_coeffs(|c| c.diff(&t.coord, table));
        if partial.is_zero() {
            continue;
        }
        let recip = Multivector::from_blade(f.sig(), t.blade, crate::symexpr::Expr::int(t.sign.into())).inverse()?;
        acc = acc.add(&recip.gp(&partial)?)?;
    }
    Ok(acc)
}

/// Scalar part of [`mvectdiff`]: the divergence-like sector.
///
/// For a vector field and a purely spatial Euclidean direction this equals
/// `Σ e_k⁻¹ | ∂F/∂x_k`.
pub fn svectdiff(f: &Multivector, d: &Direction, table: &SymbolTable) -> Result<Multivector, CalculusError> {
    let full = mvectdiff(f, d, table)?;
    Ok(full.filter(|b| b.is_scalar()))
}

/// Everything of [`mvectdiff`] except the scalar part, so that
/// `svectdiff + vvectdiff = mvectdiff`.
pub fn vvectdiff(f: &Multivector, d: &Direction, table: &SymbolTable) -> Result<Multivector, CalculusError> {
    Ok(mvectdiff(f, d, table)?.non_scalar_part())
}

/// The four grade sectors of a derivative in `Cl(3,0)`-sized algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sectors {
    pub scalar: Multivector,
    pub vector: Multivector,
    pub bivector: Multivector,
    pub pseudoscalar: Multivector,
}

pub fn grade_sectors(df: &Multivector) -> Result<Sectors, CalculusError> {
    let n = df.sig().dim();
    if n != 3 {
        return Err(CalculusError::WrongDimension { want: 3, got: n });
    }
    Ok(Sectors {
        scalar: df.grade_part(0)?,
        vector: df.grade_part(1)?,
        bivector: df.grade_part(2)?,
        pseudoscalar: df.grade_part(3)?,
    })
}
