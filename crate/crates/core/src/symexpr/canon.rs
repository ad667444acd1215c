//! Canonical form maintenance for [`Expr`].
//!
//! Two rewrites run after every product and every sum that involves compound
//! power atoms:
//!
//! 1. A compound power with a positive integer exponent is expanded back into
//!    the polynomial it stands for.
//! 2. Terms whose compound powers agree up to integer shifts of the exponent
//!    are brought over the smallest exponent; the resulting numerator is then
//!    divided by the base as many times as it is exactly divisible. This makes
//!    `x·S^(-3/2)·S` and `x·S^(-1/2)` the same term and makes sums such as
//!    `3·S^(-3/2) - 3·(x²+y²+z²)·S^(-5/2)` collapse to zero.
//!
//! Integer-class exponents are never raised above zero, so a term never
//! acquires a positive integer power of a compound base.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::expr::{add_term, raw_mul, Atom, Coeff, Exponent, Expr, Monomial, Terms};

pub(crate) fn canonicalize(terms: Terms) -> Terms {
    let mut terms: Terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    loop {
        let expanded = expand_integer_powers(&terms);
        let combined = if expanded.keys().any(Monomial::has_power_atoms) {
            combine_denominators(&expanded)
        } else {
            expanded
        };
        if combined == terms {
            return combined;
        }
        terms = combined;
    }
}

fn expand_integer_powers(terms: &Terms) -> Terms {
    let mut out = Terms::new();
    for (m, c) in terms {
        let positive = m.iter().find_map(|(a, e)| match a {
            Atom::Power(base) if e.is_integer() && e.is_positive() => Some((a.clone(), base.clone(), *e)),
            _ => None,
        });
        match positive {
            None => add_term(&mut out, m.clone(), c.clone()),
            Some((atom, base, e)) => {
                let rest = m.without(&atom);
                let mut acc: Terms = std::iter::once((rest, c.clone())).collect();
                for _ in 0..e.to_integer() {
                    acc = raw_mul(&acc, base.terms_map());
                }
                for (mm, cc) in acc {
                    add_term(&mut out, mm, cc);
                }
            }
        }
    }
    out
}

/// Polynomial bases take part in denominator combination; anything else is
/// kept as an opaque factor.
fn is_simple_base(base: &Expr) -> bool {
    base.num_terms() > 1 && base.terms().all(|(m, _)| m.is_polynomial())
}

fn frac(e: Exponent) -> Exponent {
    e - e.floor()
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct GroupKey {
    opaque: BTreeMap<Atom, Exponent>,
    classes: BTreeMap<Arc<Expr>, Exponent>,
}

struct Piece {
    coeff: Coeff,
    plain: Monomial,
    powers: BTreeMap<Arc<Expr>, Exponent>,
}

fn combine_denominators(terms: &Terms) -> Terms {
    let mut groups: BTreeMap<GroupKey, Vec<Piece>> = BTreeMap::new();
    for (m, c) in terms {
        let mut plain = BTreeMap::new();
        let mut opaque = BTreeMap::new();
        let mut classes = BTreeMap::new();
        let mut powers = BTreeMap::new();
        for (a, e) in m.iter() {
            match a {
                Atom::Power(base) if is_simple_base(base) => {
                    let f = frac(*e);
                    if !f.is_zero() {
                        classes.insert(base.clone(), f);
                    }
                    powers.insert(base.clone(), *e);
                }
                Atom::Power(_) => {
                    opaque.insert(a.clone(), *e);
                }
                _ => {
                    plain.insert(a.clone(), *e);
                }
            }
        }
        groups.entry(GroupKey { opaque, classes }).or_default().push(Piece {
            coeff: c.clone(),
            plain: Monomial::from_map(plain),
            powers,
        });
    }

    let mut out = Terms::new();
    for (key, pieces) in groups {
        let bases: Vec<Arc<Expr>> = {
            let mut set: Vec<Arc<Expr>> = pieces.iter().flat_map(|p| p.powers.keys().cloned()).collect();
            set.sort();
            set.dedup();
            set
        };
        let single = pieces.len() == 1;
        let mut floor: BTreeMap<Arc<Expr>, Exponent> = BTreeMap::new();
        for b in &bases {
            let integer_class = !key.classes.contains_key(b);
            let min = pieces
                .iter()
                .map(|p| p.powers.get(b).copied().unwrap_or_else(Exponent::zero))
                .min()
                .unwrap();
            floor.insert(b.clone(), if integer_class { min.min(Exponent::zero()) } else { min });
        }

        let emit = |out: &mut Terms, numer: &Terms, floor: &BTreeMap<Arc<Expr>, Exponent>| {
            let mut suffix: BTreeMap<Atom, Exponent> = key.opaque.clone();
            for (b, e) in floor {
                if !e.is_zero() {
                    suffix.insert(Atom::Power(b.clone()), *e);
                }
            }
            let suffix = Monomial::from_map(suffix);
            for (m, c) in numer {
                add_term(out, m.mul(&suffix), c.clone());
            }
        };

        if single {
            let p = &pieces[0];
            let numer: Terms = std::iter::once((p.plain.clone(), p.coeff.clone())).collect();
            emit(&mut out, &numer, &p.powers);
            continue;
        }

        let mut numer = Terms::new();
        for p in &pieces {
            let mut acc: Terms = std::iter::once((p.plain.clone(), p.coeff.clone())).collect();
            for b in &bases {
                let e = p.powers.get(b).copied().unwrap_or_else(Exponent::zero);
                let shift = (e - floor[b]).to_integer();
                for _ in 0..shift {
                    acc = raw_mul(&acc, b.terms_map());
                }
            }
            for (m, c) in acc {
                add_term(&mut numer, m, c);
            }
        }

        for b in &bases {
            let integer_class = !key.classes.contains_key(b);
            while !numer.is_empty() {
                let e = floor[b];
                if integer_class && !e.is_negative() {
                    break;
                }
                match divide_exact(&numer, b.terms_map()) {
                    Some(q) => {
                        numer = q;
                        floor.insert(b.clone(), e + Exponent::one());
                    }
                    None => break,
                }
            }
        }
        emit(&mut out, &numer, &floor);
    }
    out
}

/// Graded lexicographic comparison over atom order.
fn grlex(a: &Monomial, b: &Monomial) -> Ordering {
    let deg = |m: &Monomial| m.iter().fold(Exponent::zero(), |acc, (_, e)| acc + e);
    match deg(a).cmp(&deg(b)) {
        Ordering::Equal => {}
        other => return other,
    }
    let mut atoms: Vec<&Atom> = a.iter().map(|(x, _)| x).chain(b.iter().map(|(x, _)| x)).collect();
    atoms.sort();
    atoms.dedup();
    for atom in atoms {
        match a.exponent(atom).cmp(&b.exponent(atom)) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

fn leading(p: &Terms) -> (&Monomial, &Coeff) {
    p.iter().max_by(|x, y| grlex(x.0, y.0)).unwrap()
}

/// Divides `m` by `d` when every exponent of the quotient is a nonnegative
/// integer.
fn monomial_quotient(m: &Monomial, d: &Monomial) -> Option<Monomial> {
    let mut out = BTreeMap::new();
    for (a, e) in m.iter() {
        out.insert(a.clone(), *e);
    }
    for (a, e) in d.iter() {
        let have = out.get(a).copied().unwrap_or_else(Exponent::zero);
        let left = have - e;
        if left.is_negative() {
            return None;
        }
        out.insert(a.clone(), left);
    }
    Some(Monomial::from_map(out))
}

/// Exact quotient `numer / divisor`, or `None` if the division leaves a
/// remainder. Laurent and fractional monomials in the numerator are shifted
/// into polynomial range first when all of them differ by integer exponents.
pub(crate) fn divide_exact(numer: &Terms, divisor: &Terms) -> Option<Terms> {
    let mut shift: BTreeMap<Atom, Exponent> = BTreeMap::new();
    for m in numer.keys() {
        for (a, _) in m.iter() {
            shift.entry(a.clone()).or_insert_with(Exponent::zero);
        }
    }
    for (a, s) in shift.iter_mut() {
        let min = numer.keys().map(|m| m.exponent(a)).min().unwrap_or_else(Exponent::zero);
        *s = min.min(Exponent::zero());
        if !min.is_integer() {
            *s = min;
        }
    }
    let shift = Monomial::from_map(shift);
    let unshift = shift.pow(-Exponent::one());
    let mut rem: Terms = Terms::new();
    for (m, c) in numer {
        let shifted = m.mul(&unshift);
        if !shifted.is_polynomial() {
            return None;
        }
        add_term(&mut rem, shifted, c.clone());
    }

    let (dm, dc) = leading(divisor);
    let (dm, dc) = (dm.clone(), dc.clone());
    let mut quotient = Terms::new();
    while !rem.is_empty() {
        let (rm, rc) = leading(&rem);
        let qm = monomial_quotient(rm, &dm)?;
        let qc = rc / &dc;
        let step: Terms = std::iter::once((qm.clone(), qc.clone())).collect();
        for (m, c) in raw_mul(&step, divisor) {
            add_term(&mut rem, m, -c);
        }
        add_term(&mut quotient, qm, qc);
    }
    Some(quotient.into_iter().map(|(m, c)| (m.mul(&shift), c)).collect())
}
