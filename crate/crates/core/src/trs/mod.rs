//! Left-linear first-order term rewriting over ground terms, with
//! overlapping rules allowed. Overlapping redexes conflict and get no tile.

mod syntax;
mod term;

use std::fmt;
use std::str::FromStr;

pub use syntax::{parse_rule_file, Rule, RuleFile, Signature};
pub use term::{Pattern, TrsPosition, TrsTerm};

use crate::error::{ArsError, Result};
use crate::path::RewritingPath;
use crate::system::{OrientationPolicy, Relation, Residuals, RewritingSystem};
use crate::tile::PermutationTile;

/// A redex: a rule (by declaration index) matching at a position.
///
/// Ordered leftmost-outermost, ties broken by declaration order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TrsOccurrence {
    pub position: TrsPosition,
    pub rule: usize,
}

pub type TrsPath = RewritingPath<TrsTerm, TrsOccurrence>;
pub type TrsTile = PermutationTile<TrsTerm, TrsOccurrence>;

/// The parallel-or rules.
pub const PARALLEL_OR: &str = "por(T,x) -> T ; por(x,T) -> T ; a -> T ; b -> T ; @head T";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrsSystem {
    signature: Signature,
    rules: Vec<Rule>,
    head_values: Vec<TrsTerm>,
    policy: OrientationPolicy,
}

/// The configured set of head values, as a predicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeadValues(Vec<TrsTerm>);

impl HeadValues {
    pub fn contains(&self, t: &TrsTerm) -> bool {
        self.0.contains(t)
    }

    pub fn terms(&self) -> &[TrsTerm] {
        &self.0
    }
}

impl TrsSystem {
    pub fn from_rule_file(file: RuleFile, policy: OrientationPolicy) -> Self {
        TrsSystem {
            signature: file.signature,
            rules: file.rules,
            head_values: file.head_values,
            policy,
        }
    }

    /// Parses a rule file; head values come from its `@head` directives.
    pub fn parse(text: &str, policy: OrientationPolicy) -> Result<Self> {
        Ok(Self::from_rule_file(parse_rule_file(text)?, policy))
    }

    pub fn parallel_or() -> Self {
        Self::parse(PARALLEL_OR, OrientationPolicy::Symmetric).expect("built-in rules parse")
    }

    pub fn with_policy(mut self, policy: OrientationPolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule_index(&self, name: &str) -> Option<usize> {
        self.rules.iter().position(|r| r.name == name)
    }

    pub fn parse_ground_term(&self, text: &str) -> Result<TrsTerm> {
        self.signature.parse_ground_term(text)
    }

    /// Builds the head-value predicate from ground terms written over the signature.
    pub fn head_values_from(&self, names: &[&str]) -> Result<HeadValues> {
        names
            .iter()
            .map(|n| self.signature.parse_ground_term(n))
            .collect::<Result<Vec<_>>>()
            .map(HeadValues)
    }

    pub fn head_values(&self) -> HeadValues {
        HeadValues(self.head_values.clone())
    }

    /// Replaces the configured head values.
    pub fn set_head_values(&mut self, values: HeadValues) {
        self.head_values = values.0;
    }

    /// All occurrences, leftmost-outermost, ties by rule declaration order.
    pub fn trs_redexes(&self, t: &TrsTerm) -> Vec<TrsOccurrence> {
        fn walk(sys: &TrsSystem, t: &TrsTerm, at: &mut Vec<usize>, out: &mut Vec<TrsOccurrence>) {
            for (i, rule) in sys.rules.iter().enumerate() {
                if rule.lhs.matches(t).is_some() {
                    out.push(TrsOccurrence {
                        position: TrsPosition(at.clone()),
                        rule: i,
                    });
                }
            }
            for (i, a) in t.args.iter().enumerate() {
                at.push(i + 1);
                walk(sys, a, at, out);
                at.pop();
            }
        }
        let mut out = Vec::new();
        walk(self, t, &mut Vec::new(), &mut out);
        out
    }

    pub fn trs_contract(&self, t: &TrsTerm, occ: &TrsOccurrence) -> Result<TrsTerm> {
        let not_a_redex = || ArsError::NotARedex {
            term: t.to_string(),
            redex: self.render_occurrence(occ),
        };
        let rule = self.rules.get(occ.rule).ok_or_else(not_a_redex)?;
        let sub = t.subterm(&occ.position.0).ok_or_else(not_a_redex)?;
        let binding = rule.lhs.matches(sub).ok_or_else(not_a_redex)?;
        Ok(t.replace_at(&occ.position.0, rule.rhs.instantiate(&binding)))
    }

    fn check(&self, t: &TrsTerm, occ: &TrsOccurrence) -> Result<()> {
        let ok = self
            .rules
            .get(occ.rule)
            .zip(t.subterm(&occ.position.0))
            .is_some_and(|(r, s)| r.lhs.matches(s).is_some());
        if ok {
            Ok(())
        } else {
            Err(ArsError::NotARedex {
                term: t.to_string(),
                redex: self.render_occurrence(occ),
            })
        }
    }

    /// Residuals of `other` after `contracted`, or `Conflict` when the
    /// patterns overlap.
    pub fn trs_residuals(
        &self,
        t: &TrsTerm,
        contracted: &TrsOccurrence,
        other: &TrsOccurrence,
    ) -> Result<Residuals<TrsOccurrence>> {
        if contracted == other {
            return Err(ArsError::SamePosition(self.render_occurrence(contracted)));
        }
        self.check(t, contracted)?;
        self.check(t, other)?;
        let (p, q) = (&contracted.position.0, &other.position.0);
        if p == q {
            return Ok(Residuals::Conflict);
        }
        if q.starts_with(p) {
            let rule = &self.rules[contracted.rule];
            let Some((var, depth)) = rule.lhs.variable_above(&q[p.len()..]) else {
                return Ok(Residuals::Conflict);
            };
            let below = &q[p.len() + depth..];
            let copies = rule
                .rhs
                .occurrences(&var)
                .into_iter()
                .map(|s| TrsOccurrence {
                    position: TrsPosition(p.iter().chain(&s).chain(below).copied().collect()),
                    rule: other.rule,
                })
                .collect();
            return Ok(Residuals::Copies(copies));
        }
        if p.starts_with(q) && self.rules[other.rule].lhs.variable_above(&p[q.len()..]).is_none() {
            return Ok(Residuals::Conflict);
        }
        Ok(Residuals::Copies(vec![other.clone()]))
    }

    /// The tile with source `first · second`, if any.
    pub fn trs_tile_for(&self, t: &TrsTerm, first: &TrsOccurrence, second: &TrsOccurrence) -> Result<Option<TrsTile>> {
        Ok(self.tiles_for(t, first, second)?.into_iter().next())
    }

    pub fn render_occurrence(&self, occ: &TrsOccurrence) -> String {
        let name = self.rules.get(occ.rule).map_or("?", |r| r.name.as_str());
        format!("{}/{}", occ.position, name)
    }

    /// Parses `position/rule`, e.g. `1.2/r3` or `ε/left`.
    pub fn parse_occurrence(&self, text: &str) -> Result<TrsOccurrence> {
        let Some((pos, rule)) = text.trim().rsplit_once('/') else {
            return Err(ArsError::Syntax {
                offset: 0,
                message: format!("expected `position/rule`, got `{text}`"),
            });
        };
        let rule = self
            .rule_index(rule.trim())
            .ok_or_else(|| ArsError::UnknownSymbol(rule.trim().to_string()))?;
        Ok(TrsOccurrence {
            position: TrsPosition::from_str(pos)?,
            rule,
        })
    }

    pub fn path(&self, source: &str, script: &[&str]) -> Result<TrsPath> {
        let term = self.parse_ground_term(source)?;
        let script = script
            .iter()
            .map(|s| self.parse_occurrence(s))
            .collect::<Result<Vec<_>>>()?;
        RewritingPath::from_script(self, term, &script)
    }

    /// Renders the rule file back, including `@head`; parsing it yields an
    /// equal system.
    pub fn to_rule_text(&self) -> String {
        let mut out = String::new();
        for r in &self.rules {
            out.push_str(&format!("{}: {} -> {}\n", r.name, r.lhs, r.rhs));
        }
        if !self.head_values.is_empty() {
            let heads: Vec<String> = self.head_values.iter().map(|t| t.to_string()).collect();
            out.push_str(&format!("@head {}\n", heads.join(", ")));
        }
        out
    }
}

impl fmt::Display for TrsOccurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/#{}", self.position, self.rule + 1)
    }
}

impl RewritingSystem for TrsSystem {
    type Term = TrsTerm;
    type Redex = TrsOccurrence;

    fn redexes(&self, term: &TrsTerm) -> Vec<TrsOccurrence> {
        self.trs_redexes(term)
    }

    fn contract(&self, term: &TrsTerm, redex: &TrsOccurrence) -> Result<TrsTerm> {
        self.trs_contract(term, redex)
    }

    fn residuals(
        &self,
        term: &TrsTerm,
        contracted: &TrsOccurrence,
        other: &TrsOccurrence,
    ) -> Result<Residuals<TrsOccurrence>> {
        self.trs_residuals(term, contracted, other)
    }

    fn relation(&self, term: &TrsTerm, a: &TrsOccurrence, b: &TrsOccurrence) -> Result<Relation> {
        if self.trs_residuals(term, a, b)?.is_conflict() {
            return Ok(Relation::Conflict);
        }
        let (p, q) = (&a.position.0, &b.position.0);
        Ok(if q.starts_with(p) {
            Relation::Contains
        } else if p.starts_with(q) {
            Relation::Inside
        } else {
            Relation::Disjoint
        })
    }

    fn policy(&self) -> OrientationPolicy {
        self.policy
    }

    fn is_head_value(&self, term: &TrsTerm) -> bool {
        self.head_values.contains(term)
    }

    fn render_term(&self, term: &TrsTerm) -> String {
        term.to_string()
    }

    fn parse_term(&self, text: &str) -> Result<TrsTerm> {
        self.parse_ground_term(text)
    }

    fn render_redex(&self, redex: &TrsOccurrence) -> String {
        self.render_occurrence(redex)
    }

    fn parse_redex(&self, text: &str) -> Result<TrsOccurrence> {
        self.parse_occurrence(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn por() -> TrsSystem {
        TrsSystem::parallel_or()
    }

    fn occ(s: &str) -> TrsOccurrence {
        por().parse_occurrence(s).unwrap()
    }

    fn term(s: &str) -> TrsTerm {
        por().parse_ground_term(s).unwrap()
    }

    #[test]
    fn redexes_leftmost_outermost() {
        assert_eq!(por().trs_redexes(&term("por(a,b)")), vec![occ("1/r3"), occ("2/r4")]);
        assert_eq!(por().trs_redexes(&term("por(T,b)")), vec![occ("ε/r1"), occ("2/r4")]);
        assert_eq!(por().trs_redexes(&term("por(T,T)")), vec![occ("ε/r1"), occ("ε/r2")]);
    }

    #[test]
    fn contraction() {
        assert_eq!(por().trs_contract(&term("por(T,b)"), &occ("ε/r1")).unwrap(), term("T"));
        assert_eq!(
            por().trs_contract(&term("por(a,b)"), &occ("2/r4")).unwrap(),
            term("por(a,T)")
        );
        assert!(matches!(
            por().trs_contract(&term("por(a,b)"), &occ("ε/r1")),
            Err(ArsError::NotARedex { .. })
        ));
    }

    #[test]
    fn residuals_and_conflicts() {
        let s = por();
        assert_eq!(
            s.trs_residuals(&term("por(T,T)"), &occ("ε/r1"), &occ("ε/r2")).unwrap(),
            Residuals::Conflict
        );
        assert_eq!(
            s.trs_residuals(&term("por(a,b)"), &occ("1/r3"), &occ("2/r4")).unwrap(),
            Residuals::Copies(vec![occ("2/r4")])
        );
        assert_eq!(
            s.trs_residuals(&term("por(T,b)"), &occ("ε/r1"), &occ("2/r4")).unwrap(),
            Residuals::Copies(vec![])
        );
        assert_eq!(
            s.trs_residuals(&term("por(T,b)"), &occ("2/r4"), &occ("ε/r1")).unwrap(),
            Residuals::Copies(vec![occ("ε/r1")])
        );
        assert!(matches!(
            s.trs_residuals(&term("por(T,b)"), &occ("2/r4"), &occ("2/r4")),
            Err(ArsError::SamePosition(_))
        ));
    }

    #[test]
    fn inner_redex_at_pattern_position_conflicts() {
        // f(a) overlaps a at position 1
        let s = TrsSystem::parse("f(a) -> bb ; a -> cc", OrientationPolicy::Symmetric).unwrap();
        let t = s.parse_ground_term("f(a)").unwrap();
        let (outer, inner) = (s.parse_occurrence("ε/r1").unwrap(), s.parse_occurrence("1/r2").unwrap());
        assert!(s.trs_residuals(&t, &outer, &inner).unwrap().is_conflict());
        assert!(s.trs_residuals(&t, &inner, &outer).unwrap().is_conflict());
    }

    #[test]
    fn duplicating_rule_copies_residuals() {
        let s = TrsSystem::parse("d(x) -> g(x,x) ; a -> cc", OrientationPolicy::Symmetric).unwrap();
        let t = s.parse_ground_term("d(a)").unwrap();
        let res = s
            .trs_residuals(
                &t,
                &s.parse_occurrence("ε/r1").unwrap(),
                &s.parse_occurrence("1/r2").unwrap(),
            )
            .unwrap();
        assert_eq!(
            res,
            Residuals::Copies(vec![
                s.parse_occurrence("1/r2").unwrap(),
                s.parse_occurrence("2/r2").unwrap()
            ])
        );
    }

    #[test]
    fn tiles() {
        let s = por();
        let swap = s
            .trs_tile_for(&term("por(a,b)"), &occ("2/r4"), &occ("1/r3"))
            .unwrap()
            .unwrap();
        assert!(swap.is_reversible());
        let mid = term("por(a,T)");
        assert_eq!(s.trs_redexes(&mid), vec![occ("ε/r2"), occ("1/r3")]);
        let after_b = TrsPath::from_script(&s, term("por(a,b)"), &[occ("2/r4"), occ("ε/r2")]).unwrap();
        assert_eq!(after_b.target(), &term("T"));
        // the root redex is created by b -> T, not a residual
        assert!(s
            .trs_tile_for(&term("por(a,b)"), &occ("2/r4"), &occ("ε/r2"))
            .unwrap()
            .is_none());
        let erase = s
            .trs_tile_for(&term("por(T,b)"), &occ("2/r4"), &occ("ε/r1"))
            .unwrap()
            .unwrap();
        assert!(!erase.is_reversible());
        assert_eq!(erase.target().script(), vec![occ("ε/r1")]);
        assert_eq!(erase.ancestor().table(), &[2]);
    }

    #[test]
    fn head_values() {
        let s = por();
        let h = s.head_values_from(&["T"]).unwrap();
        assert!(h.contains(&term("T")));
        assert!(!h.contains(&term("por(T,T)")));
        assert!(!h.contains(&term("a")));
        assert!(matches!(s.head_values_from(&["F"]), Err(ArsError::UnknownSymbol(_))));
        assert!(s.is_head_value(&term("T")));
    }

    #[test]
    fn rule_text_round_trips() {
        let s = por();
        assert_eq!(TrsSystem::parse(&s.to_rule_text(), s.policy()).unwrap(), s);
    }
}
