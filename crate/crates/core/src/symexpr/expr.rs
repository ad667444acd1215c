use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::canon;
use super::symbol::{DerivAtom, Symbol};
use super::SymError;

/// Rational coefficient of a term.
pub type Coeff = BigRational;
/// Rational exponent of an atom inside a monomial.
pub type Exponent = Rational64;

/// Factor of a monomial.
///
/// `Power` holds a compound base (a canonical multi-term expression, or a
/// constant for irrational radicals); its exponent lives in the monomial.
/// Variant order fixes the atom order: symbols, then powers, then derivatives.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Atom {
    Symbol(Symbol),
    Power(Arc<Expr>),
    Deriv(DerivAtom),
}

impl Atom {
    pub fn symbol(name: &str) -> Atom {
        Atom::Symbol(Symbol::new(name))
    }
}

/// Product of atoms raised to nonzero rational exponents.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(BTreeMap<Atom, Exponent>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn atom(atom: Atom, exp: Exponent) -> Self {
        let mut m = BTreeMap::new();
        if !exp.is_zero() {
            m.insert(atom, exp);
        }
        Monomial(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Atom, &Exponent)> {
        self.0.iter()
    }

    pub fn exponent(&self, atom: &Atom) -> Exponent {
        self.0.get(atom).copied().unwrap_or_else(Exponent::zero)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (a, e) in &other.0 {
            let sum = out.get(a).copied().unwrap_or_else(Exponent::zero) + e;
            if sum.is_zero() {
                out.remove(a);
            } else {
                out.insert(a.clone(), sum);
            }
        }
        Monomial(out)
    }

    pub fn pow(&self, r: Exponent) -> Monomial {
        if r.is_zero() {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|(a, e)| (a.clone(), e * r)).collect())
    }

    /// Same monomial with `atom` removed.
    pub fn without(&self, atom: &Atom) -> Monomial {
        let mut m = self.0.clone();
        m.remove(atom);
        Monomial(m)
    }

    pub(crate) fn with_exponent(&self, atom: Atom, exp: Exponent) -> Monomial {
        let mut m = self.0.clone();
        if exp.is_zero() {
            m.remove(&atom);
        } else {
            m.insert(atom, exp);
        }
        Monomial(m)
    }

    pub(crate) fn from_map(map: BTreeMap<Atom, Exponent>) -> Monomial {
        Monomial(map.into_iter().filter(|(_, e)| !e.is_zero()).collect())
    }

    pub fn has_power_atoms(&self) -> bool {
        self.0.keys().any(|a| matches!(a, Atom::Power(_)))
    }

    /// True when every exponent is a nonnegative integer and no compound
    /// power appears, i.e. an ordinary polynomial monomial.
    pub fn is_polynomial(&self) -> bool {
        self.0
            .iter()
            .all(|(a, e)| !matches!(a, Atom::Power(_)) && e.is_integer() && !e.is_negative())
    }
}

/// Scalar symbolic expression in canonical sum-of-monomials form over ℚ.
///
/// Every constructor and operator returns a canonical value, so structural
/// equality is mathematical equality within the supported class.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Expr {
    terms: BTreeMap<Monomial, Coeff>,
}

pub(crate) type Terms = BTreeMap<Monomial, Coeff>;

pub(crate) fn add_term(terms: &mut Terms, m: Monomial, c: Coeff) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&m) {
        Some(existing) => {
            *existing += c;
            if existing.is_zero() {
                terms.remove(&m);
            }
        }
        None => {
            terms.insert(m, c);
        }
    }
}

pub(crate) fn raw_mul(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            add_term(&mut out, ma.mul(mb), ca * cb);
        }
    }
    out
}

impl Expr {
    pub fn zero() -> Self {
        Expr::default()
    }

    pub fn one() -> Self {
        Expr::constant(Coeff::one())
    }

    pub fn int(n: i64) -> Self {
        Expr::constant(Coeff::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Expr::constant(Coeff::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn constant(c: Coeff) -> Self {
        let mut terms = Terms::new();
        add_term(&mut terms, Monomial::one(), c);
        Expr { terms }
    }

    pub fn symbol(name: &str) -> Self {
        Expr::atom(Atom::symbol(name))
    }

    pub fn sym(s: &Symbol) -> Self {
        Expr::atom(Atom::Symbol(s.clone()))
    }

    pub fn deriv(d: DerivAtom) -> Self {
        Expr::atom(Atom::Deriv(d))
    }

    pub fn atom(atom: Atom) -> Self {
        Expr::monomial(Coeff::one(), Monomial::atom(atom, Exponent::one()))
    }

    pub fn monomial(c: Coeff, m: Monomial) -> Self {
        Expr::from_terms(std::iter::once((m, c)).collect())
    }

    /// Builds a canonical expression from arbitrary terms.
    pub(crate) fn from_terms(terms: Terms) -> Self {
        Expr {
            terms: canon::canonicalize(terms),
        }
    }

    /// Wraps terms that are already canonical.
    #[cfg(test)]
    pub(crate) fn from_canonical(terms: Terms) -> Self {
        Expr { terms }
    }

    pub(crate) fn terms_map(&self) -> &Terms {
        &self.terms
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The rational value when the expression is a constant.
    pub fn as_constant(&self) -> Option<Coeff> {
        match self.terms.len() {
            0 => Some(Coeff::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// The atom when the expression is exactly one atom with coefficient 1.
    pub fn as_atom(&self) -> Option<&Atom> {
        let (m, c) = self.single_term()?;
        if !c.is_one() || m.len() != 1 {
            return None;
        }
        let (a, e) = m.iter().next().unwrap();
        e.is_one().then_some(a)
    }

    pub fn single_term(&self) -> Option<(&Monomial, &Coeff)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// All atoms reachable from this expression, including atoms nested in
    /// compound power bases.
    pub fn atoms(&self) -> Vec<Atom> {
        let mut out = std::collections::BTreeSet::new();
        self.collect_atoms(&mut out);
        out.into_iter().collect()
    }

    fn collect_atoms(&self, out: &mut std::collections::BTreeSet<Atom>) {
        for m in self.terms.keys() {
            for (a, _) in m.iter() {
                if let Atom::Power(base) = a {
                    base.collect_atoms(out);
                }
                out.insert(a.clone());
            }
        }
    }

    pub fn scale(&self, c: &Coeff) -> Expr {
        if c.is_zero() {
            return Expr::zero();
        }
        Expr {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn add(&self, other: &Expr) -> Expr {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m.clone(), c.clone());
        }
        if terms.keys().any(Monomial::has_power_atoms) {
            Expr::from_terms(terms)
        } else {
            Expr { terms }
        }
    }

    pub fn sub(&self, other: &Expr) -> Expr {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Expr {
        Expr {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Expr) -> Expr {
        if self.is_zero() || other.is_zero() {
            return Expr::zero();
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        Expr::from_terms(raw_mul(&self.terms, &other.terms))
    }

    /// Raises to a rational power.
    ///
    /// Positive integer powers expand. Other powers of single terms
    /// distribute over the atoms; other powers of sums become a compound
    /// power atom over the primitive part of the base.
    pub fn pow(&self, r: Exponent) -> Result<Expr, SymError> {
        if r.is_zero() {
            return Ok(Expr::one());
        }
        if r.is_one() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return if r.is_positive() {
                Ok(Expr::zero())
            } else {
                Err(SymError::DivisionByZero)
            };
        }
        if r.is_integer() && r.is_positive() {
            let k = r.to_integer();
            return Ok(self.pow_int(k as u64));
        }
        if let Some((m, c)) = self.single_term() {
            let mut out = Expr::monomial(Coeff::one(), m.pow(r));
            match rational_power(c, r) {
                Some(cr) => out = out.scale(&cr),
                None if c.is_negative() => return Err(SymError::ComplexPower(self.to_string())),
                None => {
                    let radical = Monomial::atom(Atom::Power(Arc::new(Expr::constant(c.clone()))), r);
                    out = out.mul(&Expr::monomial(Coeff::one(), radical));
                }
            }
            return Ok(out);
        }

        let (content, primitive) = self.primitive_part();
        let lead_negative = primitive.terms.values().next().is_some_and(Signed::is_negative);
        let (factor, base) = if r.is_integer() {
            let unit = if lead_negative { -content.clone() } else { content.clone() };
            let base = if lead_negative { primitive.neg() } else { primitive };
            (rational_power(&unit, r), base)
        } else {
            match rational_power(&content, r) {
                Some(f) => (Some(f), primitive),
                None => (Some(Coeff::one()), self.clone()),
            }
        };
        let factor = factor.expect("integer powers of rationals are rational");
        let atom = Monomial::atom(Atom::Power(Arc::new(base)), r);
        Ok(Expr::monomial(factor, atom))
    }

    fn pow_int(&self, k: u64) -> Expr {
        let mut acc = Expr::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn inv(&self) -> Result<Expr, SymError> {
        self.pow(-Exponent::one())
    }

    pub fn div(&self, other: &Expr) -> Result<Expr, SymError> {
        if other.is_zero() {
            return Err(SymError::DivisionByZero);
        }
        if let Some(c) = other.as_constant() {
            return Ok(self.scale(&c.recip()));
        }
        Ok(self.mul(&other.inv()?))
    }

    /// Splits into a positive rational content and a primitive part with
    /// coprime integer coefficients.
    pub(crate) fn primitive_part(&self) -> (Coeff, Expr) {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            return (Coeff::one(), self.clone());
        }
        let content = Coeff::new(num_gcd, den_lcm);
        (content.clone(), self.scale(&content.recip()))
    }

    /// Numeric coefficient of the constant term.
    pub fn constant_term(&self) -> Coeff {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(Coeff::zero)
    }
}

/// `c^r` when it is rational.
pub(crate) fn rational_power(c: &Coeff, r: Exponent) -> Option<Coeff> {
    if c.is_zero() {
        return r.is_positive().then(Coeff::zero);
    }
    let p = *r.numer();
    let q = *r.denom();
    let root = |n: &BigInt| -> Option<BigInt> {
        if q == 1 {
            return Some(n.clone());
        }
        let q32 = q.to_u32()?;
        if n.is_negative() {
            if q % 2 == 0 {
                return None;
            }
            let k = (-n).nth_root(q32);
            return (num_traits::pow(k.clone(), q as usize) == -n).then(|| -k);
        }
        let k = n.nth_root(q32);
        (num_traits::pow(k.clone(), q as usize) == *n).then_some(k)
    };
    let base = Coeff::new(root(c.numer())?, root(c.denom())?);
    let mag = num_traits::pow(base, p.unsigned_abs() as usize);
    Some(if p < 0 { mag.recip() } else { mag })
}

impl From<i64> for Expr {
    fn from(n: i64) -> Self {
        Expr::int(n)
    }
}

impl From<Symbol> for Expr {
    fn from(s: Symbol) -> Self {
        Expr::sym(&s)
    }
}

impl Add for &Expr {
    type Output = Expr;
    fn add(self, rhs: &Expr) -> Expr {
        Expr::add(self, rhs)
    }
}

impl Sub for &Expr {
    type Output = Expr;
    fn sub(self, rhs: &Expr) -> Expr {
        Expr::sub(self, rhs)
    }
}

impl Mul for &Expr {
    type Output = Expr;
    fn mul(self, rhs: &Expr) -> Expr {
        Expr::mul(self, rhs)
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(self)
    }
}
