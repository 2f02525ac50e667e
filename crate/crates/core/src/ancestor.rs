use std::fmt;

use crate::error::{ArsError, Result};

/// A total map `[n] -> [m]` with `[k] = {1, ..., k}`.
///
/// For a tile or a trace `f => g` it sends the index of each step of `g`
/// to the index of the step of `f` it descends from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AncestorFunction {
    codomain: usize,
    table: Vec<usize>,
}

impl AncestorFunction {
    /// Builds a function from its 1-based table.
    pub fn new(codomain: usize, table: Vec<usize>) -> Result<Self> {
        if let Some(bad) = table.iter().find(|&&v| v == 0 || v > codomain) {
            return Err(ArsError::InvalidAncestor(format!("entry {bad} outside 1..={codomain}")));
        }
        Ok(AncestorFunction { codomain, table })
    }

    pub fn identity(n: usize) -> Self {
        AncestorFunction {
            codomain: n,
            table: (1..=n).collect(),
        }
    }

    /// `{1 -> 2, 2 -> 1}`, the ancestor of a reversible tile.
    pub fn transposition() -> Self {
        AncestorFunction {
            codomain: 2,
            table: vec![2, 1],
        }
    }

    /// Ancestor of a tile `v.u' => u.h` with `|u.h| = n`: `u` descends from `u'`,
    /// every step of `h` descends from `v`.
    pub fn tile(n: usize) -> Self {
        AncestorFunction {
            codomain: 2,
            table: (1..=n).map(|j| if j == 1 { 2 } else { 1 }).collect(),
        }
    }

    pub fn domain(&self) -> usize {
        self.table.len()
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// Image of the 1-based index `j`.
    pub fn apply(&self, j: usize) -> usize {
        self.table[j - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.codomain == self.table.len() && self.table.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// `self ∘ inner`, defined when `inner.codomain() == self.domain()`.
    pub fn after(&self, inner: &AncestorFunction) -> Result<AncestorFunction> {
        if inner.codomain != self.domain() {
            return Err(ArsError::InvalidAncestor(format!(
                "cannot compose [{}] -> [{}] after [{}] -> [{}]",
                self.domain(),
                self.codomain,
                inner.domain(),
                inner.codomain
            )));
        }
        Ok(AncestorFunction {
            codomain: self.codomain,
            table: inner.table.iter().map(|&j| self.apply(j)).collect(),
        })
    }
}

impl fmt::Display for AncestorFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.table.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}↦{}", i + 1, v)?;
        }
        f.write_str("}")
    }
}
