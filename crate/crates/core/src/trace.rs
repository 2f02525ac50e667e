//! Standardisation traces: 2-dimensional paths `f ⇒ g` built from tile applications.

use std::fmt::Debug;

use crate::ancestor::AncestorFunction;
use crate::error::{ArsError, Result};
use crate::path::RewritingPath;
use crate::tile::TileApplication;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StandardisationTrace<T, R> {
    start: RewritingPath<T, R>,
    applications: Vec<TileApplication<T, R>>,
    end: RewritingPath<T, R>,
    ancestor: AncestorFunction,
}

impl<T, R> StandardisationTrace<T, R>
where
    T: Clone + Eq + Debug,
    R: Clone + Eq + Debug,
{
    /// The empty trace on `path`.
    pub fn identity(path: RewritingPath<T, R>) -> Self {
        StandardisationTrace {
            ancestor: AncestorFunction::identity(path.len()),
            end: path.clone(),
            start: path,
            applications: Vec::new(),
        }
    }

    /// Chains `applications` from `start`, failing with `BrokenChain` on a gap.
    pub fn new(start: RewritingPath<T, R>, applications: Vec<TileApplication<T, R>>) -> Result<Self> {
        let mut trace = StandardisationTrace::identity(start);
        for app in applications {
            trace.push(app)?;
        }
        Ok(trace)
    }

    pub fn push(&mut self, application: TileApplication<T, R>) -> Result<()> {
        if application.before() != &self.end {
            return Err(ArsError::BrokenChain {
                position: self.applications.len() + 1,
            });
        }
        self.ancestor = self.ancestor.after(&application.step_ancestor())?;
        self.end = application.after().clone();
        self.applications.push(application);
        Ok(())
    }

    /// Vertical composition: `self` followed by `next`.
    pub fn then(mut self, next: &StandardisationTrace<T, R>) -> Result<Self> {
        if next.start != self.end {
            return Err(ArsError::BrokenChain {
                position: self.applications.len() + 1,
            });
        }
        for app in &next.applications {
            self.push(app.clone())?;
        }
        Ok(self)
    }

    pub fn start(&self) -> &RewritingPath<T, R> {
        &self.start
    }

    pub fn end(&self) -> &RewritingPath<T, R> {
        &self.end
    }

    pub fn applications(&self) -> &[TileApplication<T, R>] {
        &self.applications
    }

    /// Composite ancestor `[len(end)] -> [len(start)]`.
    pub fn ancestor(&self) -> &AncestorFunction {
        &self.ancestor
    }

    pub fn is_reversible(&self) -> bool {
        self.applications.iter().all(TileApplication::is_reversible)
    }

    pub fn len(&self) -> usize {
        self.applications.len()
    }

    pub fn is_empty(&self) -> bool {
        self.applications.is_empty()
    }
}

/// Recomputes the composite ancestor of a trace from its applications.
///
/// For applications `a_1, ..., a_p` the result is `ψ_1 ∘ ... ∘ ψ_p`.
pub fn compose_trace_ancestor<T, R>(trace: &StandardisationTrace<T, R>) -> Result<AncestorFunction>
where
    T: Clone + Eq + Debug,
    R: Clone + Eq + Debug,
{
    let mut current = trace.start();
    let mut composite = AncestorFunction::identity(current.len());
    for (i, app) in trace.applications().iter().enumerate() {
        if app.before() != current {
            return Err(ArsError::BrokenChain { position: i + 1 });
        }
        composite = composite.after(&app.step_ancestor())?;
        current = app.after();
    }
    if current != trace.end() {
        return Err(ArsError::BrokenChain {
            position: trace.applications().len() + 1,
        });
    }
    Ok(composite)
}

/// Two traces with the same endpoints denote the same cell iff their composite
/// ancestor functions coincide.
pub fn cells_equal<T, R>(t1: &StandardisationTrace<T, R>, t2: &StandardisationTrace<T, R>) -> Result<bool>
where
    T: Clone + Eq + Debug,
    R: Clone + Eq + Debug,
{
    if t1.start() != t2.start() || t1.end() != t2.end() {
        return Err(ArsError::EndpointMismatch(
            "traces do not share their start and end paths".into(),
        ));
    }
    Ok(compose_trace_ancestor(t1)? == compose_trace_ancestor(t2)?)
}

pub fn is_reversible_trace<T, R>(trace: &StandardisationTrace<T, R>) -> bool
where
    T: Clone + Eq + Debug,
    R: Clone + Eq + Debug,
{
    trace.is_reversible()
}
