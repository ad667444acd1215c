use super::expr::{add_term, raw_mul, Atom, Coeff, Expr, Terms};
use super::symbol::{Symbol, SymbolTable};

impl Expr {
    /// Partial derivative with respect to the coordinate `c`.
    ///
    /// Dependent symbols and their derivative atoms respond only to
    /// coordinates in their dependency list; free scalars are constants.
    pub fn diff(&self, c: &Symbol, table: &SymbolTable) -> Expr {
        self.derive_with(&|atom: &Atom| match atom {
            Atom::Symbol(s) if s == c => Some(Expr::one()),
            Atom::Symbol(s) if table.depends_on(s, c) => {
                Some(Expr::deriv(super::DerivAtom::new(s.clone(), vec![c.clone()])))
            }
            Atom::Deriv(d) if table.depends_on(d.base(), c) => Some(Expr::deriv(d.extended(c))),
            _ => None,
        })
    }

    /// Repeated partial derivative, one coordinate after another.
    pub fn diff_many(&self, coords: &[Symbol], table: &SymbolTable) -> Expr {
        coords.iter().fold(self.clone(), |acc, c| acc.diff(c, table))
    }

    /// Formal partial derivative treating every atom as an independent
    /// variable; compound bases are differentiated through.
    pub fn partial(&self, target: &Atom) -> Expr {
        self.derive_with(&|atom: &Atom| (atom == target).then(Expr::one))
    }

    /// Collects the raw product-rule terms and canonicalises once at the
    /// end; re-canonicalising a growing sum after every term is quadratic
    /// in the denominator work.
    fn derive_with(&self, leaf: &dyn Fn(&Atom) -> Option<Expr>) -> Expr {
        let mut acc = Terms::new();
        for (m, c) in self.terms() {
            for (a, e) in m.iter() {
                let da = match a {
                    Atom::Power(base) => base.derive_with(leaf),
                    other => match leaf(other) {
                        Some(d) => d,
                        None => continue,
                    },
                };
                if da.is_zero() {
                    continue;
                }
                let scale = c * Coeff::new((*e.numer()).into(), (*e.denom()).into());
                let reduced = m.with_exponent(a.clone(), e - 1);
                let term: Terms = std::iter::once((reduced, scale)).collect();
                for (mm, cc) in raw_mul(&term, da.terms_map()) {
                    add_term(&mut acc, mm, cc);
                }
            }
        }
        Expr::from_terms(acc)
    }

    /// True when no atom of the expression depends on `c`.
    pub fn is_constant_in(&self, c: &Symbol, table: &SymbolTable) -> bool {
        self.diff(c, table).is_zero()
    }
}
