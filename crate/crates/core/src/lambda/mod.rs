//! The untyped λ-calculus with β-reduction as a rewriting system.

mod syntax;
mod term;

pub use syntax::{parse_term, print_term};
pub use term::{residuals, LambdaPosition, LambdaTerm, MarkedTerm, Selector};

use crate::error::Result;
use crate::path::RewritingPath;
use crate::system::{OrientationPolicy, Relation, Residuals, RewritingSystem};
use crate::tile::PermutationTile;

pub type LambdaPath = RewritingPath<LambdaTerm, LambdaPosition>;
pub type LambdaTile = PermutationTile<LambdaTerm, LambdaPosition>;

/// β-reduction with nested redexes oriented outer-first and disjoint redexes
/// oriented by `policy`. Head values are head normal forms.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LambdaSystem {
    pub policy: OrientationPolicy,
}

impl LambdaSystem {
    pub fn new(policy: OrientationPolicy) -> Self {
        LambdaSystem { policy }
    }

    /// The tile with source `first · second`, if the policy provides one.
    pub fn tile_for(
        &self,
        term: &LambdaTerm,
        first: &LambdaPosition,
        second: &LambdaPosition,
    ) -> Result<Option<LambdaTile>> {
        Ok(self.tiles_for(term, first, second)?.into_iter().next())
    }

    pub fn path(&self, source: &str, script: &[&str]) -> Result<LambdaPath> {
        let term = parse_term(source)?;
        let script = script
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<LambdaPosition>>>()?;
        RewritingPath::from_script(self, term, &script)
    }
}

impl RewritingSystem for LambdaSystem {
    type Term = LambdaTerm;
    type Redex = LambdaPosition;

    fn redexes(&self, term: &LambdaTerm) -> Vec<LambdaPosition> {
        term.beta_redexes()
    }

    fn contract(&self, term: &LambdaTerm, redex: &LambdaPosition) -> Result<LambdaTerm> {
        term.contract(redex)
    }

    fn residuals(
        &self,
        term: &LambdaTerm,
        contracted: &LambdaPosition,
        other: &LambdaPosition,
    ) -> Result<Residuals<LambdaPosition>> {
        residuals(term, contracted, other).map(Residuals::Copies)
    }

    fn relation(&self, _term: &LambdaTerm, a: &LambdaPosition, b: &LambdaPosition) -> Result<Relation> {
        Ok(if a.is_prefix_of(b) {
            Relation::Contains
        } else if b.is_prefix_of(a) {
            Relation::Inside
        } else {
            Relation::Disjoint
        })
    }

    fn policy(&self) -> OrientationPolicy {
        self.policy
    }

    fn is_head_value(&self, term: &LambdaTerm) -> bool {
        term.is_head_normal_form()
    }

    fn render_term(&self, term: &LambdaTerm) -> String {
        print_term(term)
    }

    fn parse_term(&self, text: &str) -> Result<LambdaTerm> {
        parse_term(text)
    }

    fn render_redex(&self, redex: &LambdaPosition) -> String {
        redex.to_string()
    }

    fn parse_redex(&self, text: &str) -> Result<LambdaPosition> {
        text.parse()
    }
}
