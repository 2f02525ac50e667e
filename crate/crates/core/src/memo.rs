//! A caching wrapper for rewriting systems.
//!
//! The engine asks for the same tiles, redex lists and contractions many
//! times over while it explores closures and enumerates paths. [`Memoized`]
//! answers repeated questions from a table. It is single-threaded.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::error::Result;
use crate::system::{OrientationPolicy, Relation, Residuals, RewritingSystem};
use crate::tile::PermutationTile;

type Tiles<S> = Vec<PermutationTile<<S as RewritingSystem>::Term, <S as RewritingSystem>::Redex>>;
type Contractions<S> =
    HashMap<(<S as RewritingSystem>::Term, <S as RewritingSystem>::Redex), <S as RewritingSystem>::Term>;
type TileKey<S> = (
    <S as RewritingSystem>::Term,
    <S as RewritingSystem>::Redex,
    <S as RewritingSystem>::Redex,
);

pub struct Memoized<S: RewritingSystem> {
    inner: S,
    redexes: RefCell<HashMap<S::Term, Vec<S::Redex>>>,
    contractions: RefCell<Contractions<S>>,
    tiles: RefCell<HashMap<TileKey<S>, Tiles<S>>>,
}

impl<S: RewritingSystem> Memoized<S> {
    pub fn new(inner: S) -> Self {
        Memoized {
            inner,
            redexes: RefCell::default(),
            contractions: RefCell::default(),
            tiles: RefCell::default(),
        }
    }

    pub fn inner(&self) -> &S {
        &self.inner
    }

    /// Drops every cached answer.
    pub fn clear(&self) {
        self.redexes.borrow_mut().clear();
        self.contractions.borrow_mut().clear();
        self.tiles.borrow_mut().clear();
    }
}

impl<S: RewritingSystem> RewritingSystem for Memoized<S> {
    type Term = S::Term;
    type Redex = S::Redex;

    fn redexes(&self, term: &S::Term) -> Vec<S::Redex> {
        if let Some(r) = self.redexes.borrow().get(term) {
            return r.clone();
        }
        let r = self.inner.redexes(term);
        self.redexes.borrow_mut().insert(term.clone(), r.clone());
        r
    }

    fn contract(&self, term: &S::Term, redex: &S::Redex) -> Result<S::Term> {
        let key = (term.clone(), redex.clone());
        if let Some(t) = self.contractions.borrow().get(&key) {
            return Ok(t.clone());
        }
        let t = self.inner.contract(term, redex)?;
        self.contractions.borrow_mut().insert(key, t.clone());
        Ok(t)
    }

    fn residuals(&self, term: &S::Term, contracted: &S::Redex, other: &S::Redex) -> Result<Residuals<S::Redex>> {
        self.inner.residuals(term, contracted, other)
    }

    fn relation(&self, term: &S::Term, a: &S::Redex, b: &S::Redex) -> Result<Relation> {
        self.inner.relation(term, a, b)
    }

    fn policy(&self) -> OrientationPolicy {
        self.inner.policy()
    }

    fn is_head_value(&self, term: &S::Term) -> bool {
        self.inner.is_head_value(term)
    }

    fn render_term(&self, term: &S::Term) -> String {
        self.inner.render_term(term)
    }

    fn parse_term(&self, text: &str) -> Result<S::Term> {
        self.inner.parse_term(text)
    }

    fn render_redex(&self, redex: &S::Redex) -> String {
        self.inner.render_redex(redex)
    }

    fn parse_redex(&self, text: &str) -> Result<S::Redex> {
        self.inner.parse_redex(text)
    }

    fn tiles_for(&self, term: &S::Term, first: &S::Redex, second: &S::Redex) -> Result<Tiles<S>> {
        let key = (term.clone(), first.clone(), second.clone());
        if let Some(t) = self.tiles.borrow().get(&key) {
            return Ok(t.clone());
        }
        let t = self.inner.tiles_for(term, first, second)?;
        self.tiles.borrow_mut().insert(key, t.clone());
        Ok(t)
    }
}
