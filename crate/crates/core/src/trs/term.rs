use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{ArsError, Result};

/// A ground first-order term.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TrsTerm {
    pub head: Arc<str>,
    pub args: Vec<TrsTerm>,
}

impl TrsTerm {
    pub fn constant(name: &str) -> Self {
        TrsTerm {
            head: name.into(),
            args: Vec::new(),
        }
    }

    pub fn apply(name: &str, args: Vec<TrsTerm>) -> Self {
        TrsTerm {
            head: name.into(),
            args,
        }
    }

    pub fn subterm(&self, pos: &[usize]) -> Option<&TrsTerm> {
        let mut t = self;
        for &i in pos {
            t = t.args.get(i.checked_sub(1)?)?;
        }
        Some(t)
    }

    pub(crate) fn replace_at(&self, pos: &[usize], new: TrsTerm) -> TrsTerm {
        match pos.split_first() {
            None => new,
            Some((&i, rest)) => {
                let mut t = self.clone();
                t.args[i - 1] = t.args[i - 1].replace_at(rest, new);
                t
            }
        }
    }

    /// Longest root-to-leaf chain, counting nodes (a constant has depth 1).
    pub fn depth(&self) -> usize {
        1 + self.args.iter().map(TrsTerm::depth).max().unwrap_or(0)
    }
}

impl fmt::Display for TrsTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.head)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// An open term on a rule side.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Pattern {
    Var(Arc<str>),
    Fun(Arc<str>, Vec<Pattern>),
}

impl Pattern {
    pub fn vars(&self) -> Vec<Arc<str>> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<Arc<str>>) {
        match self {
            Pattern::Var(v) => out.push(v.clone()),
            Pattern::Fun(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    /// Positions of `var`, leftmost-outermost.
    pub fn occurrences(&self, var: &str) -> Vec<Vec<usize>> {
        fn walk(p: &Pattern, var: &str, at: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            match p {
                Pattern::Var(v) if &**v == var => out.push(at.clone()),
                Pattern::Var(_) => {}
                Pattern::Fun(_, args) => {
                    for (i, a) in args.iter().enumerate() {
                        at.push(i + 1);
                        walk(a, var, at, out);
                        at.pop();
                    }
                }
            }
        }
        let mut out = Vec::new();
        walk(self, var, &mut Vec::new(), &mut out);
        out
    }

    /// Follows `pos` into the pattern. Returns the variable met on the way
    /// (with the offset inside that variable), or `None` when `pos` ends on a
    /// function symbol of the pattern.
    pub fn variable_above(&self, pos: &[usize]) -> Option<(Arc<str>, usize)> {
        let mut p = self;
        for (depth, &i) in pos.iter().enumerate() {
            match p {
                Pattern::Var(v) => return Some((v.clone(), depth)),
                Pattern::Fun(_, args) => p = args.get(i - 1)?,
            }
        }
        match p {
            Pattern::Var(v) => Some((v.clone(), pos.len())),
            Pattern::Fun(..) => None,
        }
    }

    pub fn matches<'t>(&self, term: &'t TrsTerm) -> Option<HashMap<Arc<str>, &'t TrsTerm>> {
        let mut binding = HashMap::new();
        self.match_into(term, &mut binding).then_some(binding)
    }

    fn match_into<'t>(&self, term: &'t TrsTerm, binding: &mut HashMap<Arc<str>, &'t TrsTerm>) -> bool {
        match self {
            Pattern::Var(v) => match binding.get(v) {
                Some(bound) => *bound == term,
                None => {
                    binding.insert(v.clone(), term);
                    true
                }
            },
            Pattern::Fun(f, args) => {
                *f == term.head
                    && args.len() == term.args.len()
                    && args.iter().zip(&term.args).all(|(p, t)| p.match_into(t, binding))
            }
        }
    }

    pub fn instantiate(&self, binding: &HashMap<Arc<str>, &TrsTerm>) -> TrsTerm {
        match self {
            Pattern::Var(v) => (*binding[v]).clone(),
            Pattern::Fun(f, args) => TrsTerm {
                head: f.clone(),
                args: args.iter().map(|a| a.instantiate(binding)).collect(),
            },
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Var(v) => f.write_str(v),
            Pattern::Fun(name, args) => {
                f.write_str(name)?;
                if !args.is_empty() {
                    f.write_str("(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "{a}")?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

/// A 1-based argument path; the root is `ε`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TrsPosition(pub Vec<usize>);

impl fmt::Display for TrsPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&parts.join("."))
    }
}

impl FromStr for TrsPosition {
    type Err = ArsError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if matches!(s, "" | "ε" | "e" | "eps") {
            return Ok(TrsPosition(Vec::new()));
        }
        s.split('.')
            .map(|part| match part.parse::<usize>() {
                Ok(i) if i > 0 => Ok(i),
                _ => Err(ArsError::Syntax {
                    offset: 0,
                    message: format!("bad position component `{part}` in `{s}`"),
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(TrsPosition)
    }
}
