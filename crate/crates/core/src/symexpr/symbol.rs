use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::SymError;

/// An interned scalar name. Ordering is lexicographic by name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Self {
        Symbol(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Symbol {
    fn from(name: &str) -> Self {
        Symbol::new(name)
    }
}

/// Partial derivative of a dependent symbol. The multi-index is kept sorted so
/// mixed partials taken in different orders are the same atom.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DerivAtom {
    base: Symbol,
    wrt: Vec<Symbol>,
}

impl DerivAtom {
    /// Builds the atom `∂^k base / ∂wrt...`; `wrt` must be nonempty.
    pub fn new(base: Symbol, mut wrt: Vec<Symbol>) -> Self {
        assert!(!wrt.is_empty(), "derivative atom needs at least one coordinate");
        wrt.sort();
        DerivAtom { base, wrt }
    }

    pub fn base(&self) -> &Symbol {
        &self.base
    }

    pub fn wrt(&self) -> &[Symbol] {
        &self.wrt
    }

    pub fn order(&self) -> usize {
        self.wrt.len()
    }

    /// One more derivative with respect to `coord`.
    pub fn extended(&self, coord: &Symbol) -> DerivAtom {
        let mut wrt = self.wrt.clone();
        wrt.push(coord.clone());
        DerivAtom::new(self.base.clone(), wrt)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymbolKind {
    FreeScalar,
    Coordinate,
    Dependent(Vec<Symbol>),
}

/// Declared symbols of a session. Undeclared names behave as free scalars.
///
/// Entries are never removed and a kind never changes once declared; writes
/// need `&mut`, reads can be shared freely.
#[derive(Clone, Debug, Default)]
pub struct SymbolTable {
    kinds: BTreeMap<Symbol, SymbolKind>,
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn kind(&self, s: &Symbol) -> SymbolKind {
        self.kinds.get(s).cloned().unwrap_or(SymbolKind::FreeScalar)
    }

    pub fn is_declared(&self, s: &Symbol) -> bool {
        self.kinds.contains_key(s)
    }

    pub fn is_coordinate(&self, s: &Symbol) -> bool {
        matches!(self.kinds.get(s), Some(SymbolKind::Coordinate))
    }

    pub fn dependencies(&self, s: &Symbol) -> Option<&[Symbol]> {
        match self.kinds.get(s) {
            Some(SymbolKind::Dependent(deps)) => Some(deps),
            _ => None,
        }
    }

    /// True when `s` is a dependent symbol listing `coord` among its coordinates.
    pub fn depends_on(&self, s: &Symbol, coord: &Symbol) -> bool {
        self.dependencies(s).is_some_and(|deps| deps.contains(coord))
    }

    pub fn declare_scalar(&mut self, s: &Symbol) -> Result<(), SymError> {
        match self.kinds.get(s) {
            None => {
                self.kinds.insert(s.clone(), SymbolKind::FreeScalar);
                Ok(())
            }
            Some(SymbolKind::FreeScalar) => Ok(()),
            Some(other) => Err(SymError::KindConflict {
                name: s.to_string(),
                existing: kind_name(other),
                requested: "free scalar",
            }),
        }
    }

    pub fn declare_coordinate(&mut self, s: &Symbol) -> Result<(), SymError> {
        match self.kinds.get(s) {
            None => {
                self.kinds.insert(s.clone(), SymbolKind::Coordinate);
                Ok(())
            }
            Some(SymbolKind::Coordinate) => Ok(()),
            Some(other) => Err(SymError::KindConflict {
                name: s.to_string(),
                existing: kind_name(other),
                requested: "coordinate",
            }),
        }
    }

    /// Declares `s` as a function of `coords`. Redeclaring with the same list
    /// is accepted; a different list is an error.
    pub fn declare_dependency(&mut self, s: &Symbol, coords: &[Symbol]) -> Result<(), SymError> {
        for c in coords {
            if !self.is_coordinate(c) {
                return Err(SymError::NotCoordinate(c.to_string()));
            }
        }
        match self.kinds.get(s) {
            None => {
                self.kinds.insert(s.clone(), SymbolKind::Dependent(coords.to_vec()));
                Ok(())
            }
            Some(SymbolKind::Dependent(existing)) if existing.as_slice() == coords => Ok(()),
            Some(SymbolKind::Dependent(_)) => Err(SymError::Redeclared(s.to_string())),
            Some(other) => Err(SymError::KindConflict {
                name: s.to_string(),
                existing: kind_name(other),
                requested: "dependent",
            }),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, &SymbolKind)> {
        self.kinds.iter()
    }
}

fn kind_name(kind: &SymbolKind) -> &'static str {
    match kind {
        SymbolKind::FreeScalar => "free scalar",
        SymbolKind::Coordinate => "coordinate",
        SymbolKind::Dependent(_) => "dependent",
    }
}
