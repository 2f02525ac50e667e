//! Permutation tiles and their application inside a path.

use std::fmt::Debug;

use crate::ancestor::AncestorFunction;
use crate::error::{ArsError, Result};
use crate::path::RewritingPath;
use crate::system::{OrientationPolicy, Relation, Residuals, RewritingSystem};

/// An oriented 2-cell `v·u' ⇒ u·h` between coinitial, cofinal paths.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PermutationTile<T, R> {
    source: RewritingPath<T, R>,
    target: RewritingPath<T, R>,
    ancestor: AncestorFunction,
    reversible: bool,
}

impl<T, R> PermutationTile<T, R>
where
    T: Clone + Eq + Debug,
    R: Clone + Eq + Debug,
{
    pub fn new(
        source: RewritingPath<T, R>,
        target: RewritingPath<T, R>,
        ancestor: AncestorFunction,
        reversible: bool,
    ) -> Result<Self> {
        if source.len() != 2 {
            return Err(ArsError::InvalidTile(format!(
                "source path has length {}, expected 2",
                source.len()
            )));
        }
        if source.source() != target.source() {
            return Err(ArsError::InvalidTile("source and target are not coinitial".into()));
        }
        if source.target() != target.target() {
            return Err(ArsError::TileNotCofinal {
                source_end: format!("{:?}", source.target()),
                target_end: format!("{:?}", target.target()),
            });
        }
        if ancestor.domain() != target.len() || ancestor.codomain() != 2 {
            return Err(ArsError::InvalidTile(format!(
                "ancestor function has shape [{}] -> [{}] for a target of length {}",
                ancestor.domain(),
                ancestor.codomain(),
                target.len()
            )));
        }
        if reversible && (target.len() != 2 || ancestor != AncestorFunction::transposition()) {
            return Err(ArsError::InvalidTile("reversible tiles must swap two steps".into()));
        }
        Ok(PermutationTile {
            source,
            target,
            ancestor,
            reversible,
        })
    }

    pub fn source(&self) -> &RewritingPath<T, R> {
        &self.source
    }

    pub fn target(&self) -> &RewritingPath<T, R> {
        &self.target
    }

    pub fn ancestor(&self) -> &AncestorFunction {
        &self.ancestor
    }

    pub fn is_reversible(&self) -> bool {
        self.reversible
    }

    /// Target length `n`.
    pub fn target_len(&self) -> usize {
        self.target.len()
    }

    /// The tile with source and target exchanged, for reversible tiles.
    pub fn inverse(&self) -> Option<Self> {
        self.reversible.then(|| PermutationTile {
            source: self.target.clone(),
            target: self.source.clone(),
            ancestor: AncestorFunction::transposition(),
            reversible: true,
        })
    }
}

/// Rewriting `before` into `after` by one tile at the 1-based window `index`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TileApplication<T, R> {
    before: RewritingPath<T, R>,
    index: usize,
    tile: PermutationTile<T, R>,
    after: RewritingPath<T, R>,
}

impl<T, R> TileApplication<T, R>
where
    T: Clone + Eq + Debug,
    R: Clone + Eq + Debug,
{
    pub fn apply(before: &RewritingPath<T, R>, index: usize, tile: &PermutationTile<T, R>) -> Result<Self> {
        if index == 0 || index + 1 > before.len() {
            return Err(ArsError::InvalidApplication {
                index,
                reason: format!("no window at index {index} in a path of length {}", before.len()),
            });
        }
        let window = &before.steps()[index - 1..index + 1];
        if window != tile.source().steps() {
            return Err(ArsError::InvalidApplication {
                index,
                reason: "window does not match the tile source".into(),
            });
        }
        let after = before.splice(index, 2, tile.target().steps());
        Ok(TileApplication {
            before: before.clone(),
            index,
            tile: tile.clone(),
            after,
        })
    }

    pub fn before(&self) -> &RewritingPath<T, R> {
        &self.before
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn tile(&self) -> &PermutationTile<T, R> {
        &self.tile
    }

    pub fn after(&self) -> &RewritingPath<T, R> {
        &self.after
    }

    pub fn is_reversible(&self) -> bool {
        self.tile.is_reversible()
    }

    /// The ancestor map `[len(after)] -> [len(before)]` of this application.
    pub fn step_ancestor(&self) -> AncestorFunction {
        let k = self.index;
        let n = self.tile.target_len();
        let phi = self.tile.ancestor();
        let table = (1..=self.after.len())
            .map(|j| {
                if j < k {
                    j
                } else if j < k + n {
                    k - 1 + phi.apply(j - k + 1)
                } else {
                    j + 2 - n
                }
            })
            .collect();
        AncestorFunction::new(self.before.len(), table)
            .expect("step ancestor entries are within bounds by construction")
    }
}

/// Standalone form of [`TileApplication::step_ancestor`].
pub fn step_ancestor<T, R>(application: &TileApplication<T, R>) -> AncestorFunction
where
    T: Clone + Eq + Debug,
    R: Clone + Eq + Debug,
{
    application.step_ancestor()
}

/// Contracts `pending` (pairwise distinct redexes of the path's target) one
/// after the other, tracing the remaining ones through each contraction.
pub fn develop<S: RewritingSystem>(
    system: &S,
    path: &mut RewritingPath<S::Term, S::Redex>,
    pending: Vec<S::Redex>,
) -> Result<()> {
    let mut pending = pending;
    while !pending.is_empty() {
        let first = pending.remove(0);
        let at = path.target().clone();
        path.push(system, &first)?;
        let mut next = Vec::with_capacity(pending.len());
        for other in &pending {
            match system.residuals(&at, &first, other)? {
                Residuals::Copies(copies) => next.extend(copies),
                Residuals::Conflict => {
                    return Err(ArsError::InvalidTile(format!(
                        "development hit a conflict between {} and {}",
                        system.render_redex(&first),
                        system.render_redex(other)
                    )))
                }
            }
        }
        pending = next;
    }
    Ok(())
}

/// The generic tile generator shared by all instances.
///
/// For the source path `v·u'` (contract `first` = v in `term`, then `second`
/// = u'), finds the redexes `u` of `term` having `u'` among their residuals
/// after `v`, keeps those the policy orders before `v`, and builds
/// `u·h` where `h` develops the residuals of `v` after `u`
/// leftmost-outermost.
pub fn generate_tiles<S: RewritingSystem>(
    system: &S,
    term: &S::Term,
    first: &S::Redex,
    second: &S::Redex,
) -> Result<Vec<PermutationTile<S::Term, S::Redex>>> {
    let redexes = system.redexes(term);
    if !redexes.contains(first) {
        return Err(ArsError::InvalidOccurrence(format!(
            "{} is not a redex of {}",
            system.render_redex(first),
            system.render_term(term)
        )));
    }
    let source = RewritingPath::from_script(system, term.clone(), std::slice::from_ref(first))?;
    if !system.redexes(source.target()).contains(second) {
        return Err(ArsError::InvalidOccurrence(format!(
            "{} is not a redex of {}",
            system.render_redex(second),
            system.render_term(source.target())
        )));
    }
    let mut source = source;
    source.push(system, second)?;

    let mut tiles = Vec::new();
    for u in redexes.iter().filter(|u| *u != first) {
        let Residuals::Copies(after_v) = system.residuals(term, first, u)? else {
            continue;
        };
        if !after_v.contains(second) {
            continue;
        }
        let reversible = match (system.relation(term, u, first)?, system.policy()) {
            (Relation::Conflict, _) | (Relation::Inside, _) => continue,
            (Relation::Contains, _) => false,
            (Relation::Disjoint, OrientationPolicy::Symmetric) => true,
            (Relation::Disjoint, OrientationPolicy::Leftmost) => {
                if u < first {
                    false
                } else {
                    continue;
                }
            }
        };
        let Residuals::Copies(h) = system.residuals(term, u, first)? else {
            continue;
        };
        let mut target = RewritingPath::from_script(system, term.clone(), std::slice::from_ref(u))?;
        develop(system, &mut target, h)?;
        let ancestor = AncestorFunction::tile(target.len());
        tiles.push(PermutationTile::new(source.clone(), target, ancestor, reversible)?);
    }
    Ok(tiles)
}
