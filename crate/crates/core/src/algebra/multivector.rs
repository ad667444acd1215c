use std::collections::BTreeMap;

use num_traits::One;

use super::blade::{blade_product, Blade};
use super::{AlgebraError, Signature};
use crate::symexpr::{Coeff, Expr};

/// Sparse multivector: a map from basis blades to nonzero coefficients.
///
/// All operations return re-sparsified values, so `==` is mathematical
/// equality whenever coefficient equality is.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multivector {
    sig: Signature,
    terms: BTreeMap<Blade, Expr>,
}

fn insert(terms: &mut BTreeMap<Blade, Expr>, b: Blade, c: Expr) {
    if c.is_zero() {
        return;
    }
    match terms.remove(&b) {
        Some(old) => {
            let sum = old.add(&c);
            if !sum.is_zero() {
                terms.insert(b, sum);
            }
        }
        None => {
            terms.insert(b, c);
        }
    }
}

fn half() -> Coeff {
    Coeff::new(1.into(), 2.into())
}

impl Multivector {
    pub fn zero(sig: Signature) -> Self {
        Multivector { sig, terms: BTreeMap::new() }
    }

    pub fn scalar(sig: Signature, c: Expr) -> Self {
        Multivector::from_blade(sig, Blade::SCALAR, c)
    }

    pub fn one(sig: Signature) -> Self {
        Multivector::scalar(sig, Expr::one())
    }

    pub fn from_blade(sig: Signature, b: Blade, c: Expr) -> Self {
        let mut terms = BTreeMap::new();
        insert(&mut terms, b, c);
        Multivector { sig, terms }
    }

    /// Builds from (blade, coefficient) pairs, summing repeated blades.
    pub fn from_terms(sig: Signature, pairs: impl IntoIterator<Item = (Blade, Expr)>) -> Self {
        let mut terms = BTreeMap::new();
        for (b, c) in pairs {
            insert(&mut terms, b, c);
        }
        Multivector { sig, terms }
    }

    /// The basis vector `e_k`, 1-based.
    pub fn basis(sig: Signature, k: usize) -> Result<Self, AlgebraError> {
        if k == 0 || k > sig.dim() {
            return Err(AlgebraError::IndexOutOfRange { k, n: sig.dim() });
        }
        Ok(Multivector::from_blade(sig, Blade::basis(k), Expr::one()))
    }

    /// The unit blade `e_1 e_2 ... e_n`.
    pub fn pseudoscalar(sig: Signature) -> Self {
        Multivector::from_blade(sig, Blade::pseudoscalar(&sig), Expr::one())
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &Expr)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `b` (zero if absent).
    pub fn get(&self, b: Blade) -> Expr {
        self.terms.get(&b).cloned().unwrap_or_else(Expr::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The scalar value when no non-scalar blade is present.
    pub fn as_scalar(&self) -> Option<Expr> {
        match self.terms.len() {
            0 => Some(Expr::zero()),
            1 => self.terms.get(&Blade::SCALAR).cloned(),
            _ => None,
        }
    }

    /// Grades that have at least one nonzero coefficient, ascending.
    pub fn grades(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.terms.keys().map(Blade::grade).collect();
        g.dedup();
        g
    }

    fn check(&self, other: &Multivector) -> Result<(), AlgebraError> {
        if self.sig.dim() != other.sig.dim()
            || self.sig.p() != other.sig.p()
            || self.sig.q() != other.sig.q()
        {
            return Err(AlgebraError::SignatureMismatch(self.sig, other.sig));
        }
        Ok(())
    }

    pub fn add(&self, other: &Multivector) -> Result<Multivector, AlgebraError> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (b, c) in &other.terms {
            insert(&mut terms, *b, c.clone());
        }
        Ok(Multivector { sig: self.sig, terms })
    }

    pub fn sub(&self, other: &Multivector) -> Result<Multivector, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Multivector {
        self.map_coeffs(|c| c.neg())
    }

    /// Multiplies every coefficient by the scalar `s`.
    pub fn scale(&self, s: &Expr) -> Multivector {
        self.map_coeffs(|c| c.mul(s))
    }

    pub fn scale_rational(&self, s: &Coeff) -> Multivector {
        self.map_coeffs(|c| c.scale(s))
    }

    /// Applies `f` to each coefficient and drops resulting zeros.
    pub fn map_coeffs(&self, f: impl Fn(&Expr) -> Expr) -> Multivector {
        Multivector::from_terms(self.sig, self.terms.iter().map(|(b, c)| (*b, f(c))))
    }

    pub fn try_map_coeffs<E>(&self, f: impl Fn(&Expr) -> Result<Expr, E>) -> Result<Multivector, E> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (b, c) in &self.terms {
            out.push((*b, f(c)?));
        }
        Ok(Multivector::from_terms(self.sig, out))
    }

    /// Geometric (Clifford) product, the bilinear extension of the blade product.
    pub fn gp(&self, other: &Multivector) -> Result<Multivector, AlgebraError> {
        self.check(other)?;
        let mut terms = BTreeMap::new();
        for (ba, ca) in &self.terms {
            for (bb, cb) in &other.terms {
                let (sign, out) = blade_product(*ba, *bb, &self.sig);
                if sign == 0 {
                    continue;
                }
                let prod = ca.mul(cb);
                insert(&mut terms, out, if sign < 0 { prod.neg() } else { prod });
            }
        }
        Ok(Multivector { sig: self.sig, terms })
    }

    /// Symmetrized product `(AB + BA)/2`.
    pub fn inner(&self, other: &Multivector) -> Result<Multivector, AlgebraError> {
        let ab = self.gp(other)?;
        let ba = other.gp(self)?;
        Ok(ab.add(&ba)?.scale_rational(&half()))
    }

    /// Antisymmetrized product `(AB - BA)/2`.
    pub fn outer(&self, other: &Multivector) -> Result<Multivector, AlgebraError> {
        let ab = self.gp(other)?;
        let ba = other.gp(self)?;
        Ok(ab.sub(&ba)?.scale_rational(&half()))
    }

    /// Non-negative integer power by repeated squaring; negative powers go
    /// through [`Multivector::inverse`].
    pub fn powi(&self, k: i64) -> Result<Multivector, AlgebraError> {
        let mut base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut k = k.unsigned_abs();
        let mut acc = Multivector::one(self.sig);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.gp(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.gp(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn grade_part(&self, k: usize) -> Result<Multivector, AlgebraError> {
        if k > self.sig.dim() {
            return Err(AlgebraError::GradeOutOfRange { k, n: self.sig.dim() });
        }
        Ok(self.filter(|b| b.grade() == k))
    }

    pub fn filter(&self, keep: impl Fn(&Blade) -> bool) -> Multivector {
        Multivector {
            sig: self.sig,
            terms: self.terms.iter().filter(|(b, _)| keep(b)).map(|(b, c)| (*b, c.clone())).collect(),
        }
    }

    /// Coefficient of the scalar blade.
    pub fn scalar_part(&self) -> Expr {
        self.get(Blade::SCALAR)
    }

    /// Everything except the scalar part.
    pub fn non_scalar_part(&self) -> Multivector {
        self.filter(|b| !b.is_scalar())
    }

    /// Nonzero grade parts in ascending grade order.
    pub fn grade_decompose(&self) -> Vec<(usize, Multivector)> {
        self.grades().into_iter().map(|k| (k, self.filter(|b| b.grade() == k))).collect()
    }

    fn sign_by_grade(&self, sign: impl Fn(usize) -> bool) -> Multivector {
        Multivector {
            sig: self.sig,
            terms: self
                .terms
                .iter()
                .map(|(b, c)| (*b, if sign(b.grade()) { c.neg() } else { c.clone() }))
                .collect(),
        }
    }

    /// Reversion: grade `k` picks up `(-1)^(k(k-1)/2)`, signs `+ + - -` by `k mod 4`.
    pub fn reverse(&self) -> Multivector {
        self.sign_by_grade(|k| k % 4 >= 2)
    }

    /// Clifford conjugation: signs `+ - - +` by `k mod 4`.
    pub fn conjugate(&self) -> Multivector {
        self.sign_by_grade(|k| k % 4 == 1 || k % 4 == 2)
    }

    /// Grade involution: odd grades change sign.
    pub fn grade_involution(&self) -> Multivector {
        self.sign_by_grade(|k| k % 2 == 1)
    }

    /// `<A conj(A)>_0`.
    pub fn cnorm(&self) -> Expr {
        let conj = self.conjugate();
        let mut acc = Expr::zero();
        for (b, c) in &self.terms {
            let (sign, out) = blade_product(*b, *b, &self.sig);
            debug_assert!(out.is_scalar());
            if sign == 0 {
                continue;
            }
            let t = c.mul(&conj.get(*b));
            acc = if sign < 0 { acc.sub(&t) } else { acc.add(&t) };
        }
        acc
    }

    /// `normSign * cnorm`.
    pub fn psnorm(&self) -> Expr {
        let n = self.cnorm();
        if self.sig.norm_sign() < 0 {
            n.neg()
        } else {
            n
        }
    }

    /// True when every coefficient is a rational constant.
    pub fn is_numeric(&self) -> bool {
        self.terms.values().all(Expr::is_constant)
    }

    pub(crate) fn is_unit_scalar(&self) -> bool {
        self.as_scalar().is_some_and(|s| s.as_constant().is_some_and(|c| c.is_one()))
    }
}
