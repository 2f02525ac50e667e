use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{ArsError, Result};

/// A λ-term with de Bruijn indices for bound variables.
///
/// Free variables are kept by name and are never shifted. Abstractions carry
/// the binder name they were written with; it only guides printing and is
/// ignored by equality and hashing, so equality is α-equivalence.
#[derive(Debug, Clone)]
pub enum LambdaTerm {
    Var(usize),
    Free(Arc<str>),
    Lam(Arc<str>, Box<LambdaTerm>),
    App(Box<LambdaTerm>, Box<LambdaTerm>),
}

impl PartialEq for LambdaTerm {
    fn eq(&self, other: &Self) -> bool {
        use LambdaTerm::*;
        match (self, other) {
            (Var(a), Var(b)) => a == b,
            (Free(a), Free(b)) => a == b,
            (Lam(_, a), Lam(_, b)) => a == b,
            (App(f, a), App(g, b)) => f == g && a == b,
            _ => false,
        }
    }
}

impl Eq for LambdaTerm {}

impl Hash for LambdaTerm {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            LambdaTerm::Var(i) => {
                0u8.hash(state);
                i.hash(state);
            }
            LambdaTerm::Free(n) => {
                1u8.hash(state);
                n.hash(state);
            }
            LambdaTerm::Lam(_, b) => {
                2u8.hash(state);
                b.hash(state);
            }
            LambdaTerm::App(f, a) => {
                3u8.hash(state);
                f.hash(state);
                a.hash(state);
            }
        }
    }
}

impl LambdaTerm {
    pub fn var(index: usize) -> Self {
        LambdaTerm::Var(index)
    }

    pub fn free(name: &str) -> Self {
        LambdaTerm::Free(name.into())
    }

    pub fn lam(hint: &str, body: LambdaTerm) -> Self {
        LambdaTerm::Lam(hint.into(), Box::new(body))
    }

    pub fn app(fun: LambdaTerm, arg: LambdaTerm) -> Self {
        LambdaTerm::App(Box::new(fun), Box::new(arg))
    }

    /// Number of constructor nodes.
    pub fn size(&self) -> usize {
        match self {
            LambdaTerm::Var(_) | LambdaTerm::Free(_) => 1,
            LambdaTerm::Lam(_, b) => 1 + b.size(),
            LambdaTerm::App(f, a) => 1 + f.size() + a.size(),
        }
    }

    pub fn is_beta_redex(&self) -> bool {
        matches!(self, LambdaTerm::App(f, _) if matches!(**f, LambdaTerm::Lam(..)))
    }

    pub fn subterm(&self, pos: &LambdaPosition) -> Option<&LambdaTerm> {
        let mut t = self;
        for sel in &pos.0 {
            t = match (sel, t) {
                (Selector::B, LambdaTerm::Lam(_, b)) => b,
                (Selector::L, LambdaTerm::App(f, _)) => f,
                (Selector::R, LambdaTerm::App(_, a)) => a,
                _ => return None,
            };
        }
        Some(t)
    }

    fn replace_at(&self, sels: &[Selector], f: &dyn Fn(&LambdaTerm) -> LambdaTerm) -> LambdaTerm {
        match (sels.split_first(), self) {
            (None, t) => f(t),
            (Some((Selector::B, rest)), LambdaTerm::Lam(h, b)) => {
                LambdaTerm::Lam(h.clone(), Box::new(b.replace_at(rest, f)))
            }
            (Some((Selector::L, rest)), LambdaTerm::App(g, a)) => {
                LambdaTerm::App(Box::new(g.replace_at(rest, f)), a.clone())
            }
            (Some((Selector::R, rest)), LambdaTerm::App(g, a)) => {
                LambdaTerm::App(g.clone(), Box::new(a.replace_at(rest, f)))
            }
            _ => unreachable!("position checked by caller"),
        }
    }

    /// Positions of all β-redexes in leftmost-outermost order.
    pub fn beta_redexes(&self) -> Vec<LambdaPosition> {
        fn walk(t: &LambdaTerm, at: &mut Vec<Selector>, out: &mut Vec<LambdaPosition>) {
            if t.is_beta_redex() {
                out.push(LambdaPosition(at.clone()));
            }
            match t {
                LambdaTerm::Lam(_, b) => {
                    at.push(Selector::B);
                    walk(b, at, out);
                    at.pop();
                }
                LambdaTerm::App(f, a) => {
                    at.push(Selector::L);
                    walk(f, at, out);
                    at.pop();
                    at.push(Selector::R);
                    walk(a, at, out);
                    at.pop();
                }
                _ => {}
            }
        }
        let mut out = Vec::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    /// β-contracts the redex at `pos`.
    pub fn contract(&self, pos: &LambdaPosition) -> Result<LambdaTerm> {
        match self.subterm(pos) {
            Some(t) if t.is_beta_redex() => Ok(self.replace_at(&pos.0, &|t| match t {
                LambdaTerm::App(f, a) => match &**f {
                    LambdaTerm::Lam(_, body) => instantiate(body, a, 0),
                    _ => unreachable!(),
                },
                _ => unreachable!(),
            })),
            _ => Err(ArsError::NotARedex {
                term: self.to_string(),
                redex: pos.to_string(),
            }),
        }
    }

    /// The β-redex in head position, if any.
    pub fn head_redex(&self) -> Option<LambdaPosition> {
        let mut pos = Vec::new();
        let mut t = self;
        while let LambdaTerm::Lam(_, b) = t {
            pos.push(Selector::B);
            t = b;
        }
        let mut spine = Vec::new();
        while let LambdaTerm::App(f, _) = t {
            spine.push(t);
            t = f;
        }
        // `t` is the head; the innermost application of the spine is the head redex
        // when the head is an abstraction.
        if matches!(t, LambdaTerm::Lam(..)) && !spine.is_empty() {
            pos.extend(std::iter::repeat_n(Selector::L, spine.len() - 1));
            Some(LambdaPosition(pos))
        } else {
            None
        }
    }

    /// `λx1…λxn. y t1 … tk`.
    pub fn is_head_normal_form(&self) -> bool {
        let mut t = self;
        while let LambdaTerm::Lam(_, b) = t {
            t = b;
        }
        while let LambdaTerm::App(f, _) = t {
            t = f;
        }
        matches!(t, LambdaTerm::Var(_) | LambdaTerm::Free(_))
    }
}

fn shift(t: &LambdaTerm, by: usize, cutoff: usize) -> LambdaTerm {
    if by == 0 {
        return t.clone();
    }
    match t {
        LambdaTerm::Var(i) if *i >= cutoff => LambdaTerm::Var(i + by),
        LambdaTerm::Var(_) | LambdaTerm::Free(_) => t.clone(),
        LambdaTerm::Lam(h, b) => LambdaTerm::Lam(h.clone(), Box::new(shift(b, by, cutoff + 1))),
        LambdaTerm::App(f, a) => LambdaTerm::App(Box::new(shift(f, by, cutoff)), Box::new(shift(a, by, cutoff))),
    }
}

// body[depth := arg], lowering the indices bound outside.
fn instantiate(body: &LambdaTerm, arg: &LambdaTerm, depth: usize) -> LambdaTerm {
    match body {
        LambdaTerm::Var(i) if *i == depth => shift(arg, depth, 0),
        LambdaTerm::Var(i) if *i > depth => LambdaTerm::Var(i - 1),
        LambdaTerm::Var(_) | LambdaTerm::Free(_) => body.clone(),
        LambdaTerm::Lam(h, b) => LambdaTerm::Lam(h.clone(), Box::new(instantiate(b, arg, depth + 1))),
        LambdaTerm::App(f, a) => LambdaTerm::App(
            Box::new(instantiate(f, arg, depth)),
            Box::new(instantiate(a, arg, depth)),
        ),
    }
}

/// A child selector: under an abstraction, or into the function or argument of an application.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Selector {
    B,
    L,
    R,
}

/// A path of selectors from the root. The derived order is leftmost-outermost
/// (a prefix comes first, then `L` before `R`).
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LambdaPosition(pub Vec<Selector>);

impl LambdaPosition {
    pub fn root() -> Self {
        LambdaPosition(Vec::new())
    }

    pub fn selectors(&self) -> &[Selector] {
        &self.0
    }

    pub fn is_prefix_of(&self, other: &LambdaPosition) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn child(&self, sel: Selector) -> Self {
        let mut v = self.0.clone();
        v.push(sel);
        LambdaPosition(v)
    }
}

impl fmt::Display for LambdaPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            f.write_str(match s {
                Selector::B => "B",
                Selector::L => "L",
                Selector::R => "R",
            })?;
        }
        Ok(())
    }
}

impl FromStr for LambdaPosition {
    type Err = ArsError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if matches!(s, "" | "ε" | "e" | "eps") {
            return Ok(LambdaPosition::root());
        }
        let mut sels = Vec::new();
        for (offset, c) in s.char_indices() {
            sels.push(match c {
                'B' => Selector::B,
                'L' => Selector::L,
                'R' => Selector::R,
                '.' => continue,
                other => {
                    return Err(ArsError::Syntax {
                        offset,
                        message: format!("unexpected `{other}` in position (expected B, L, R or .)"),
                    })
                }
            });
        }
        Ok(LambdaPosition(sels))
    }
}

/// A term with one boolean mark per application node, used to trace redexes
/// through a contraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MarkedTerm {
    Var(usize),
    Free(Arc<str>),
    Lam(Box<MarkedTerm>),
    App(bool, Box<MarkedTerm>, Box<MarkedTerm>),
}

impl MarkedTerm {
    /// Copies `t`, marking the application at `mark`.
    pub fn from_term(t: &LambdaTerm, mark: &LambdaPosition) -> Self {
        fn go(t: &LambdaTerm, mark: Option<&[Selector]>) -> MarkedTerm {
            let step = |sel: Selector| {
                mark.and_then(|m| m.split_first())
                    .filter(|(s, _)| **s == sel)
                    .map(|(_, r)| r)
            };
            match t {
                LambdaTerm::Var(i) => MarkedTerm::Var(*i),
                LambdaTerm::Free(n) => MarkedTerm::Free(n.clone()),
                LambdaTerm::Lam(_, b) => MarkedTerm::Lam(Box::new(go(b, step(Selector::B)))),
                LambdaTerm::App(f, a) => MarkedTerm::App(
                    mark.is_some_and(|m| m.is_empty()),
                    Box::new(go(f, step(Selector::L))),
                    Box::new(go(a, step(Selector::R))),
                ),
            }
        }
        go(t, Some(&mark.0))
    }

    fn shift(&self, by: usize, cutoff: usize) -> MarkedTerm {
        match self {
            MarkedTerm::Var(i) if *i >= cutoff => MarkedTerm::Var(i + by),
            MarkedTerm::Var(_) | MarkedTerm::Free(_) => self.clone(),
            MarkedTerm::Lam(b) => MarkedTerm::Lam(Box::new(b.shift(by, cutoff + 1))),
            MarkedTerm::App(m, f, a) => {
                MarkedTerm::App(*m, Box::new(f.shift(by, cutoff)), Box::new(a.shift(by, cutoff)))
            }
        }
    }

    fn instantiate(&self, arg: &MarkedTerm, depth: usize) -> MarkedTerm {
        match self {
            MarkedTerm::Var(i) if *i == depth => arg.shift(depth, 0),
            MarkedTerm::Var(i) if *i > depth => MarkedTerm::Var(i - 1),
            MarkedTerm::Var(_) | MarkedTerm::Free(_) => self.clone(),
            MarkedTerm::Lam(b) => MarkedTerm::Lam(Box::new(b.instantiate(arg, depth + 1))),
            MarkedTerm::App(m, f, a) => MarkedTerm::App(
                *m,
                Box::new(f.instantiate(arg, depth)),
                Box::new(a.instantiate(arg, depth)),
            ),
        }
    }

    /// Contracts the β-redex at `pos`, carrying marks along.
    pub fn contract(&self, pos: &[Selector]) -> Option<MarkedTerm> {
        Some(match (pos.split_first(), self) {
            (None, MarkedTerm::App(_, f, a)) => match &**f {
                MarkedTerm::Lam(body) => body.instantiate(a, 0),
                _ => return None,
            },
            (Some((Selector::B, rest)), MarkedTerm::Lam(b)) => MarkedTerm::Lam(Box::new(b.contract(rest)?)),
            (Some((Selector::L, rest)), MarkedTerm::App(m, f, a)) => {
                MarkedTerm::App(*m, Box::new(f.contract(rest)?), a.clone())
            }
            (Some((Selector::R, rest)), MarkedTerm::App(m, f, a)) => {
                MarkedTerm::App(*m, f.clone(), Box::new(a.contract(rest)?))
            }
            _ => return None,
        })
    }

    /// Positions of marked β-redexes, leftmost-outermost.
    pub fn marked_redexes(&self) -> Vec<LambdaPosition> {
        fn walk(t: &MarkedTerm, at: &mut Vec<Selector>, out: &mut Vec<LambdaPosition>) {
            match t {
                MarkedTerm::Lam(b) => {
                    at.push(Selector::B);
                    walk(b, at, out);
                    at.pop();
                }
                MarkedTerm::App(m, f, a) => {
                    if *m && matches!(**f, MarkedTerm::Lam(_)) {
                        out.push(LambdaPosition(at.clone()));
                    }
                    at.push(Selector::L);
                    walk(f, at, out);
                    at.pop();
                    at.push(Selector::R);
                    walk(a, at, out);
                    at.pop();
                }
                _ => {}
            }
        }
        let mut out = Vec::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }
}

/// Residuals of the redex `other` after contracting `contracted`, by marking.
pub fn residuals(t: &LambdaTerm, contracted: &LambdaPosition, other: &LambdaPosition) -> Result<Vec<LambdaPosition>> {
    if contracted == other {
        return Err(ArsError::SamePosition(contracted.to_string()));
    }
    for p in [contracted, other] {
        if !t.subterm(p).is_some_and(LambdaTerm::is_beta_redex) {
            return Err(ArsError::NotARedex {
                term: t.to_string(),
                redex: p.to_string(),
            });
        }
    }
    let marked = MarkedTerm::from_term(t, other);
    let after = marked
        .contract(&contracted.0)
        .expect("contracted position was checked to be a redex");
    Ok(after.marked_redexes())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> LambdaTerm {
        s.parse().unwrap()
    }

    fn pos(s: &str) -> LambdaPosition {
        s.parse().unwrap()
    }

    #[test]
    fn equality_ignores_binder_names() {
        assert_eq!(parse(r"\x. x"), parse(r"\y. y"));
        assert_ne!(parse(r"\x. \y. x"), parse(r"\x. \y. y"));
    }

    #[test]
    fn redexes_in_document_order() {
        assert!(parse(r"\x. x").beta_redexes().is_empty());
        assert_eq!(parse(r"(\x. x x) ((\z. z) y)").beta_redexes(), vec![pos("ε"), pos("R")]);
        assert_eq!(
            parse(r"((\z. z) a) ((\z. z) b)").beta_redexes(),
            vec![pos("L"), pos("R")]
        );
    }

    #[test]
    fn contraction() {
        assert_eq!(parse(r"(\x. x x) y").contract(&pos("ε")).unwrap(), parse("y y"));
        assert_eq!(parse(r"(\x. z) ((\w. w) y)").contract(&pos("ε")).unwrap(), parse("z"));
        assert_eq!(
            parse(r"(\x. x x) ((\z. z) y)").contract(&pos("ε")).unwrap(),
            parse(r"((\z. z) y) ((\z. z) y)")
        );
        assert!(matches!(
            parse(r"(\x. x) y").contract(&pos("L")),
            Err(ArsError::NotARedex { .. })
        ));
    }

    #[test]
    fn contraction_avoids_capture() {
        // (\x. \y. x) y  ->  \y'. y  (the free y is not captured)
        let t = parse(r"(\x. \y. x) y").contract(&pos("ε")).unwrap();
        assert_eq!(t, LambdaTerm::lam("w", LambdaTerm::free("y")));
        // (\x. \y. x y) (\z. y z)
        let t = parse(r"(\x. \y. x y) (\z. z)").contract(&pos("ε")).unwrap();
        assert_eq!(t, parse(r"\y. (\z. z) y"));
        // indices below the contracted binder are lowered
        let t = parse(r"\a. (\x. a x) a").contract(&pos("B")).unwrap();
        assert_eq!(t, parse(r"\a. a a"));
    }

    #[test]
    fn residuals_by_marking() {
        let dup = parse(r"(\x. x x) ((\z. z) y)");
        assert_eq!(residuals(&dup, &pos("ε"), &pos("R")).unwrap(), vec![pos("L"), pos("R")]);
        let erase = parse(r"(\x. z) ((\w. w) y)");
        assert!(residuals(&erase, &pos("ε"), &pos("R")).unwrap().is_empty());
        let disjoint = parse(r"((\z. z) a) ((\z. z) b)");
        assert_eq!(residuals(&disjoint, &pos("L"), &pos("R")).unwrap(), vec![pos("R")]);
        assert!(matches!(
            residuals(&disjoint, &pos("L"), &pos("L")),
            Err(ArsError::SamePosition(_))
        ));
    }

    #[test]
    fn residual_of_outer_after_inner_keeps_position() {
        let t = parse(r"(\x. x) ((\z. z) y)");
        assert_eq!(residuals(&t, &pos("R"), &pos("ε")).unwrap(), vec![pos("ε")]);
        // a redex in the body is instantiated in place
        let t = parse(r"(\x. (\w. w) x) a");
        assert_eq!(residuals(&t, &pos("ε"), &pos("L.B")).unwrap(), vec![pos("ε")]);
    }

    #[test]
    fn head_forms() {
        assert!(parse(r"\x. x").is_head_normal_form());
        assert!(!parse(r"(\x. x) y").is_head_normal_form());
        assert!(parse(r"\x. x ((\z. z) y)").is_head_normal_form());
        assert_eq!(parse(r"(\x. x) y").head_redex(), Some(pos("ε")));
        assert_eq!(parse(r"\x. x ((\z. z) y)").head_redex(), None);
        assert_eq!(parse(r"((\x. x) a) b").head_redex(), Some(pos("L")));
        assert_eq!(parse(r"\q. (\x. x) a b c").head_redex(), Some(pos("B.L.L")));
    }

    #[test]
    fn positions_parse_and_print() {
        assert_eq!(pos("R.B.L").to_string(), "R.B.L");
        assert_eq!(pos("RBL"), pos("R.B.L"));
        assert_eq!(pos("ε"), LambdaPosition::root());
        assert!("R.X".parse::<LambdaPosition>().is_err());
        assert!(pos("L") < pos("L.R"));
        assert!(pos("L.R") < pos("R"));
    }
}
