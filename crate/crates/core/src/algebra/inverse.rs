use super::blade::{blade_product, Blade};
use super::{AlgebraError, Multivector};
use crate::symexpr::Expr;

impl Multivector {
    /// Two-sided inverse.
    ///
    /// Tries, in order: scalars, vectors (`v / Q(v)`), elements whose
    /// product with their Clifford conjugate is scalar, the closed forms for
    /// `n = 3` and `n = 4` built from involutions, and finally Gauss-Jordan
    /// elimination on the left-multiplication matrix. A structurally zero
    /// denominator or a missing pivot means the element is a zero divisor.
    pub fn inverse(&self) -> Result<Multivector, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::NotInvertible("0".into()));
        }
        if let Some(s) = self.as_scalar() {
            return Ok(Multivector::scalar(self.sig(), s.inv()?));
        }
        if self.grades() == [1] {
            let q = self.gp(self)?.as_scalar().expect("vector squares are scalar");
            return self.over_scalar(self.clone(), &q);
        }

        let conj = self.conjugate();
        if let Some(d) = self.gp(&conj)?.as_scalar() {
            return self.over_scalar(conj, &d);
        }

        let n = self.sig().dim();
        if n == 3 {
            let num = conj.gp(&self.grade_involution())?.gp(&self.reverse())?;
            if let Some(d) = self.gp(&num)?.as_scalar() {
                return self.over_scalar(num, &d);
            }
        }
        if n == 4 {
            let aa = self.gp(&conj)?;
            let flipped = aa.filter(|b| b.grade() < 3).sub(&aa.filter(|b| b.grade() >= 3))?;
            let num = conj.gp(&flipped)?;
            if let Some(d) = self.gp(&num)?.as_scalar() {
                return self.over_scalar(num, &d);
            }
        }
        self.inverse_by_elimination()
    }

    fn over_scalar(&self, num: Multivector, d: &Expr) -> Result<Multivector, AlgebraError> {
        if d.is_zero() {
            return Err(AlgebraError::NotInvertible(self.to_string()));
        }
        let inv = d.inv()?;
        Ok(num.scale(&inv))
    }

    /// Solves `X A = 1` for the coefficients of `X`.
    fn inverse_by_elimination(&self) -> Result<Multivector, AlgebraError> {
        let sig = self.sig();
        let blades = Blade::all(&sig);
        let size = blades.len();
        let index = |b: Blade| blades.iter().position(|x| *x == b).unwrap();

        // column j holds the coordinates of (blade_j * A)
        let mut m: Vec<Vec<Expr>> = vec![vec![Expr::zero(); size + 1]; size];
        for (j, bj) in blades.iter().enumerate() {
            for (ba, ca) in self.terms() {
                let (sign, out) = blade_product(*bj, *ba, &sig);
                if sign == 0 {
                    continue;
                }
                let row = index(out);
                let t = if sign < 0 { ca.neg() } else { ca.clone() };
                m[row][j] = m[row][j].add(&t);
            }
        }
        m[index(Blade::SCALAR)][size] = Expr::one();

        for col in 0..size {
            let pivot = (col..size)
                .filter(|&r| !m[r][col].is_zero())
                .min_by_key(|&r| (!m[r][col].is_constant(), m[r][col].num_terms()));
            let Some(p) = pivot else {
                return Err(AlgebraError::NotInvertible(self.to_string()));
            };
            m.swap(col, p);
            let inv = m[col][col].inv()?;
            for k in col..=size {
                m[col][k] = m[col][k].mul(&inv);
            }
            for r in 0..size {
                if r == col || m[r][col].is_zero() {
                    continue;
                }
                let f = m[r][col].clone();
                for k in col..=size {
                    let t = f.mul(&m[col][k]);
                    m[r][k] = m[r][k].sub(&t);
                }
            }
        }
        let x = Multivector::from_terms(sig, blades.iter().enumerate().map(|(i, b)| (*b, m[i][size].clone())));
        if !x.gp(self)?.is_unit_scalar() || !self.gp(&x)?.is_unit_scalar() {
            return Err(AlgebraError::NotInvertible(self.to_string()));
        }
        Ok(x)
    }
}
