//! Globally interned formal symbols.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use once_cell::sync::Lazy;
use parking_lot::RwLock;

use super::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymbolKind {
    /// A Hecke eigenvalue t_i.
    Eigenvalue,
    /// A root u with u^order = parent.
    Root { order: u32, parent: Symbol },
    /// A value of an unramified character at a uniformizer.
    CharValue,
    /// The place variable X = q^{-s}.
    Place,
}

#[derive(Debug)]
struct SymbolData {
    name: String,
    kind: SymbolKind,
}

#[derive(Clone)]
pub struct Symbol(Arc<SymbolData>);

static TABLE: Lazy<RwLock<HashMap<String, Symbol>>> = Lazy::new(|| RwLock::new(HashMap::new()));

impl Symbol {
    pub fn intern(name: &str, kind: SymbolKind) -> Result<Symbol, AlgebraError> {
        if let Some(s) = TABLE.read().get(name) {
            return if s.0.kind == kind {
                Ok(s.clone())
            } else {
                Err(AlgebraError::SymbolConflict(name.to_string()))
            };
        }
        let mut table = TABLE.write();
        if let Some(s) = table.get(name) {
            return if s.0.kind == kind {
                Ok(s.clone())
            } else {
                Err(AlgebraError::SymbolConflict(name.to_string()))
            };
        }
        let sym = Symbol(Arc::new(SymbolData {
            name: name.to_string(),
            kind,
        }));
        table.insert(name.to_string(), sym.clone());
        Ok(sym)
    }

    /// Panics if `name` is already registered with another kind.
    pub fn eigen(name: &str) -> Symbol {
        Self::intern(name, SymbolKind::Eigenvalue).expect("symbol kind conflict")
    }

    pub fn char_value(name: &str) -> Symbol {
        Self::intern(name, SymbolKind::CharValue).expect("symbol kind conflict")
    }

    pub fn root(name: &str, parent: &Symbol, order: u32) -> Symbol {
        Self::intern(
            name,
            SymbolKind::Root {
                order,
                parent: parent.clone(),
            },
        )
        .expect("symbol kind conflict")
    }

    pub fn place(name: &str) -> Symbol {
        Self::intern(name, SymbolKind::Place).expect("symbol kind conflict")
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn kind(&self) -> &SymbolKind {
        &self.0.kind
    }

    pub fn lookup(name: &str) -> Option<Symbol> {
        TABLE.read().get(name).cloned()
    }
}

impl PartialEq for Symbol {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.name == other.0.name
    }
}

impl Eq for Symbol {}

impl Hash for Symbol {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.name.hash(state)
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.0.name.cmp(&other.0.name)
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.name)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_idempotent() {
        let a = Symbol::eigen("sym_test_a");
        let b = Symbol::eigen("sym_test_a");
        assert!(Arc::ptr_eq(&a.0, &b.0));
        assert!(Symbol::intern("sym_test_a", SymbolKind::CharValue).is_err());
    }

    #[test]
    fn order_is_by_name() {
        let b = Symbol::eigen("sym_test_b");
        let a = Symbol::eigen("sym_test_a2");
        assert!(a < b);
    }

    #[test]
    fn concurrent_registration() {
        let handles: Vec<_> = (0..8)
            .map(|k| {
                std::thread::spawn(move || {
                    (0..50)
                        .map(|i| Symbol::eigen(&format!("sym_conc_{}", (i + k) % 20)))
                        .count()
                })
            })
            .collect();
        for h in handles {
            assert_eq!(h.join().unwrap(), 50);
        }
        assert!(Symbol::lookup("sym_conc_7").is_some());
    }
}
