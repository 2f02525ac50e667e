//! Classical λ-calculus reference procedures, written against their own
//! term representation so they share no residual or tile code with the
//! engine.
//!
//! A reduction is standard in the classical sense when no step contracts a
//! residual of a redex that lies to the left of (or outside) an earlier
//! contracted redex. Residuals are traced by marking application nodes and
//! carrying the marks through substitution.

use std::sync::Arc;

use crate::lambda::{LambdaPosition, LambdaTerm, Selector};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Marked {
    Var(usize),
    Free(Arc<str>),
    Lam(Box<Marked>),
    App(bool, Box<Marked>, Box<Marked>),
}

impl Marked {
    fn from_term(t: &LambdaTerm) -> Marked {
        match t {
            LambdaTerm::Var(i) => Marked::Var(*i),
            LambdaTerm::Free(n) => Marked::Free(n.clone()),
            LambdaTerm::Lam(_, b) => Marked::Lam(Box::new(Marked::from_term(b))),
            LambdaTerm::App(f, a) => Marked::App(false, Box::new(Marked::from_term(f)), Box::new(Marked::from_term(a))),
        }
    }

    fn is_redex(&self) -> bool {
        matches!(self, Marked::App(_, f, _) if matches!(**f, Marked::Lam(_)))
    }

    fn at_mut(&mut self, pos: &[Selector]) -> Option<&mut Marked> {
        let mut t = self;
        for s in pos {
            t = match (t, s) {
                (Marked::Lam(b), Selector::B) => b,
                (Marked::App(_, f, _), Selector::L) => f,
                (Marked::App(_, _, a), Selector::R) => a,
                _ => return None,
            };
        }
        Some(t)
    }

    /// Marks every redex strictly before `limit` in leftmost-outermost order.
    fn mark_left_of(&mut self, here: &mut Vec<Selector>, limit: &[Selector]) {
        let before = here.as_slice() < limit;
        match self {
            Marked::App(mark, f, a) => {
                if before && matches!(**f, Marked::Lam(_)) {
                    *mark = true;
                }
                here.push(Selector::L);
                f.mark_left_of(here, limit);
                here.pop();
                here.push(Selector::R);
                a.mark_left_of(here, limit);
                here.pop();
            }
            Marked::Lam(b) => {
                here.push(Selector::B);
                b.mark_left_of(here, limit);
                here.pop();
            }
            _ => {}
        }
    }

    fn shifted(&self, by: usize, cutoff: usize) -> Marked {
        match self {
            Marked::Var(i) if *i >= cutoff => Marked::Var(i + by),
            Marked::Var(_) | Marked::Free(_) => self.clone(),
            Marked::Lam(b) => Marked::Lam(Box::new(b.shifted(by, cutoff + 1))),
            Marked::App(m, f, a) => Marked::App(*m, Box::new(f.shifted(by, cutoff)), Box::new(a.shifted(by, cutoff))),
        }
    }

    fn substituted(&self, depth: usize, arg: &Marked) -> Marked {
        match self {
            Marked::Var(i) if *i == depth => arg.shifted(depth, 0),
            Marked::Var(i) if *i > depth => Marked::Var(i - 1),
            Marked::Var(_) | Marked::Free(_) => self.clone(),
            Marked::Lam(b) => Marked::Lam(Box::new(b.substituted(depth + 1, arg))),
            Marked::App(m, f, a) => Marked::App(
                *m,
                Box::new(f.substituted(depth, arg)),
                Box::new(a.substituted(depth, arg)),
            ),
        }
    }

    /// Contracts the redex at `pos`, returning whether it was marked.
    fn contract(&mut self, pos: &[Selector]) -> Option<bool> {
        let node = self.at_mut(pos)?;
        let Marked::App(mark, f, a) = node else { return None };
        let Marked::Lam(body) = &**f else { return None };
        let mark = *mark;
        *node = body.substituted(0, a);
        Some(mark)
    }

    fn head_redex(&self) -> Option<Vec<Selector>> {
        let mut pos = Vec::new();
        let mut t = self;
        while let Marked::Lam(b) = t {
            pos.push(Selector::B);
            t = b;
        }
        let mut spine = 0;
        while let Marked::App(_, f, _) = t {
            spine += 1;
            t = f;
        }
        if spine == 0 || !matches!(t, Marked::Lam(_)) {
            return None;
        }
        pos.extend(std::iter::repeat_n(Selector::L, spine - 1));
        Some(pos)
    }
}

/// Classical standardness of a λ reduction given by its source and the
/// positions it contracts. `None` if some position is not a β-redex.
pub fn is_classically_standard(source: &LambdaTerm, script: &[LambdaPosition]) -> Option<bool> {
    let mut t = Marked::from_term(source);
    for p in script {
        let sel = p.selectors();
        if !t.at_mut(sel)?.is_redex() {
            return None;
        }
        t.mark_left_of(&mut Vec::new(), sel);
        if t.contract(sel)? {
            return Some(false);
        }
    }
    Some(true)
}

/// Head-reduction positions from `source`, at most `max_steps` of them.
/// The flag tells whether a head normal form was reached.
pub fn head_reduction(source: &LambdaTerm, max_steps: usize) -> (Vec<LambdaPosition>, bool) {
    let mut t = Marked::from_term(source);
    let mut out = Vec::new();
    while let Some(pos) = t.head_redex() {
        if out.len() == max_steps {
            return (out, false);
        }
        t.contract(&pos);
        out.push(LambdaPosition(pos));
    }
    (out, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn script(ps: &[&str]) -> Vec<LambdaPosition> {
        ps.iter().map(|p| p.parse().unwrap()).collect()
    }

    #[test]
    fn classical_standardness() {
        let t: LambdaTerm = r"(\x. x x) ((\z. z) y)".parse().unwrap();
        assert_eq!(is_classically_standard(&t, &script(&["R", "ε"])), Some(false));
        assert_eq!(is_classically_standard(&t, &script(&["ε", "L", "R"])), Some(true));
        assert_eq!(is_classically_standard(&t, &script(&["ε", "R", "L"])), Some(false));
        assert_eq!(is_classically_standard(&t, &script(&["L"])), None);
        // the redex on the left is marked once the right one is contracted
        let created: LambdaTerm = r"(\x. x) (\y. y) ((\z. z) a)".parse().unwrap();
        assert_eq!(is_classically_standard(&created, &script(&["R", "L"])), Some(false));
        assert_eq!(is_classically_standard(&created, &script(&["L", "ε", "ε"])), Some(true));
    }

    #[test]
    fn head_reduction_sequence() {
        let t: LambdaTerm = r"(\x. x) ((\z. z) y)".parse().unwrap();
        assert_eq!(head_reduction(&t, 10), (script(&["ε", "ε"]), true));
        let omega: LambdaTerm = r"(\x. x x) (\x. x x)".parse().unwrap();
        assert_eq!(head_reduction(&omega, 3), (script(&["ε", "ε", "ε"]), false));
        let nested: LambdaTerm = r"\w. (\x. x) (\y. y) w".parse().unwrap();
        assert_eq!(head_reduction(&nested, 10).0, script(&["B.L", "B"]));
        for src in [r"(\x. x) (\y. y) z", r"\a. (\x. \y. x) a b c", "y ((\\x. x) z)"] {
            let t: LambdaTerm = src.parse().unwrap();
            assert_eq!(Marked::from_term(&t).head_redex().map(LambdaPosition), t.head_redex());
        }
    }
}
