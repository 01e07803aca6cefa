use std::fmt;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

/// What a table was built for; jet tables of the same arity are shared
/// singletons and always compatible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    Generic,
    Jet { indep: usize },
}

/// Ordered variable names. The order fixes the monomial order.
pub struct VarTable {
    names: Vec<String>,
    index: FxHashMap<String, usize>,
    kind: TableKind,
}

pub type TableRef = Arc<VarTable>;

pub(crate) fn valid_name(name: &str) -> bool {
    let ident = |s: &str| {
        let mut cs = s.chars();
        matches!(cs.next(), Some(c) if c.is_ascii_alphabetic())
            && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
    };
    if ident(name) {
        return true;
    }
    // indexed form such as u[2,0] or b[1,2]
    let Some((head, rest)) = name.split_once('[') else {
        return false;
    };
    let Some(inner) = rest.strip_suffix(']') else {
        return false;
    };
    ident(head)
        && !inner.is_empty()
        && inner
            .split(',')
            .all(|p| !p.is_empty() && p.chars().all(|c| c.is_ascii_digit()))
}

impl VarTable {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<TableRef> {
        Self::build(names.iter().map(|s| s.as_ref().to_string()).collect(), TableKind::Generic)
    }

    pub(crate) fn build(names: Vec<String>, kind: TableKind) -> Result<TableRef> {
        if names.len() > u16::MAX as usize {
            return Err(Error::Invalid("too many variables".into()));
        }
        let mut index = FxHashMap::default();
        for (i, n) in names.iter().enumerate() {
            if !valid_name(n) {
                return Err(Error::Invalid(format!("invalid variable name `{n}`")));
            }
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate variable `{n}`")));
            }
        }
        Ok(Arc::new(VarTable { names, index, kind }))
    }

    /// A new generic table with `extra` appended; existing indices are kept.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Result<TableRef> {
        let mut names = self.names.clone();
        names.extend(extra.iter().map(|s| s.as_ref().to_string()));
        Self::build(names, TableKind::Generic)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }
}

impl fmt::Debug for VarTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            TableKind::Jet { indep } => write!(f, "VarTable(jet, {indep} indep)"),
            TableKind::Generic => write!(f, "VarTable{:?}", self.names),
        }
    }
}

/// The table to use for a value combining operands over `a` and `b`:
/// identical tables, same-arity jet tables, or one a prefix of the other.
pub fn unify_tables(a: &TableRef, b: &TableRef) -> Option<TableRef> {
    if Arc::ptr_eq(a, b) {
        return Some(a.clone());
    }
    if let (TableKind::Jet { indep: i }, TableKind::Jet { indep: j }) = (a.kind, b.kind) {
        return (i == j).then(|| if a.len() >= b.len() { a.clone() } else { b.clone() });
    }
    let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    (long.names[..short.len()] == short.names[..]).then(|| long.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_validated() {
        assert!(VarTable::new(&["x", "y_1", "u[2,0]"]).is_ok());
        assert!(VarTable::new(&["1x"]).is_err());
        assert!(VarTable::new(&["u[]"]).is_err());
        assert!(VarTable::new(&["b[3,0]"]).is_ok());
        assert!(VarTable::new(&["b[3,]"]).is_err());
        assert!(VarTable::new(&["x", "x"]).is_err());
    }

    #[test]
    fn prefix_tables_unify() {
        let a = VarTable::new(&["x", "y"]).unwrap();
        let b = a.extended(&["z"]).unwrap();
        let c = VarTable::new(&["y", "x"]).unwrap();
        assert_eq!(unify_tables(&a, &b).unwrap().len(), 3);
        assert!(unify_tables(&a, &c).is_none());
    }
}
