//! The interface every rewriting instance implements.
//!
//! An axiomatic rewriting system is a graph whose vertices are terms and
//! whose edges are redex occurrences, together with the permutation tiles
//! relating pairs of consecutive steps. Instances supply terms, redexes,
//! contraction and residuals; the tile generator in [`crate::tile`] derives
//! the tiles from those and from an [`OrientationPolicy`].

use std::fmt::Debug;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::tile::{self, PermutationTile};

/// Result of tracing a redex across the contraction of another coinitial redex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Residuals<R> {
    /// Residuals in the contracted term, in leftmost-outermost order.
    Copies(Vec<R>),
    /// The two redexes overlap; nothing of the other redex survives.
    Conflict,
}

impl<R> Residuals<R> {
    pub fn copies(&self) -> Option<&[R]> {
        match self {
            Residuals::Copies(c) => Some(c),
            Residuals::Conflict => None,
        }
    }

    pub fn is_conflict(&self) -> bool {
        matches!(self, Residuals::Conflict)
    }
}

/// How two distinct coinitial redexes sit relative to each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// Neither occurrence lies inside the other.
    Disjoint,
    /// The first redex strictly contains the second, without overlap.
    Contains,
    /// The first redex lies strictly inside the second, without overlap.
    Inside,
    /// The patterns overlap (a critical pair).
    Conflict,
}

impl Relation {
    pub fn flip(self) -> Relation {
        match self {
            Relation::Contains => Relation::Inside,
            Relation::Inside => Relation::Contains,
            other => other,
        }
    }
}

/// Which coinitial pairs get tiles, and in which direction.
///
/// Nested pairs are always oriented outer-before-inner and are irreversible.
/// The policies differ only on disjoint pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrientationPolicy {
    /// Disjoint pairs get two mutually inverse reversible tiles.
    #[default]
    Symmetric,
    /// Disjoint pairs are oriented left-before-right and are irreversible.
    Leftmost,
}

impl std::str::FromStr for OrientationPolicy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "symmetric" | "symmetric-disjoint" => Ok(OrientationPolicy::Symmetric),
            "leftmost" => Ok(OrientationPolicy::Leftmost),
            other => Err(format!("unknown policy `{other}` (expected symmetric|leftmost)")),
        }
    }
}

impl std::fmt::Display for OrientationPolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            OrientationPolicy::Symmetric => "symmetric",
            OrientationPolicy::Leftmost => "leftmost",
        })
    }
}

/// An axiomatic rewriting system.
///
/// `Redex` must be ordered in leftmost-outermost document order; the engine
/// uses that order for canonical forms and for the leftmost policy.
pub trait RewritingSystem {
    type Term: Clone + Eq + Hash + Debug;
    type Redex: Clone + Eq + Ord + Hash + Debug;

    /// All redex occurrences of `term`, leftmost-outermost.
    fn redexes(&self, term: &Self::Term) -> Vec<Self::Redex>;

    fn contract(&self, term: &Self::Term, redex: &Self::Redex) -> Result<Self::Term>;

    /// Residuals of `other` after contracting `contracted`, both redexes of `term`.
    fn residuals(
        &self,
        term: &Self::Term,
        contracted: &Self::Redex,
        other: &Self::Redex,
    ) -> Result<Residuals<Self::Redex>>;

    /// Relation of `a` to `b`, two distinct redexes of `term`.
    fn relation(&self, term: &Self::Term, a: &Self::Redex, b: &Self::Redex) -> Result<Relation>;

    fn policy(&self) -> OrientationPolicy;

    fn is_head_value(&self, term: &Self::Term) -> bool;

    fn render_term(&self, term: &Self::Term) -> String;

    fn parse_term(&self, text: &str) -> Result<Self::Term>;

    fn render_redex(&self, redex: &Self::Redex) -> String;

    fn parse_redex(&self, text: &str) -> Result<Self::Redex>;

    /// Tiles whose source path contracts `first` in `term` and then `second`.
    fn tiles_for(
        &self,
        term: &Self::Term,
        first: &Self::Redex,
        second: &Self::Redex,
    ) -> Result<Vec<PermutationTile<Self::Term, Self::Redex>>>
    where
        Self: Sized,
    {
        tile::generate_tiles(self, term, first, second)
    }
}
