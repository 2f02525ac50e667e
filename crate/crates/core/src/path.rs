use crate::error::{ArsError, Result};
use crate::system::RewritingSystem;

/// One edge of the rewriting graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RedexStep<T, R> {
    source: T,
    redex: R,
    target: T,
}

impl<T: Clone, R: Clone> RedexStep<T, R> {
    /// Contracts `redex` in `source`.
    pub fn contract<S>(system: &S, source: &T, redex: &R) -> Result<Self>
    where
        S: RewritingSystem<Term = T, Redex = R>,
    {
        let target = system.contract(source, redex)?;
        Ok(RedexStep {
            source: source.clone(),
            redex: redex.clone(),
            target,
        })
    }

    pub fn source(&self) -> &T {
        &self.source
    }

    pub fn redex(&self) -> &R {
        &self.redex
    }

    pub fn target(&self) -> &T {
        &self.target
    }
}

/// A finite sequence of composable steps `M ↠ N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RewritingPath<T, R> {
    source: T,
    steps: Vec<RedexStep<T, R>>,
}

impl<T, R> RewritingPath<T, R>
where
    T: Clone + Eq,
    R: Clone + Eq,
{
    pub fn empty(source: T) -> Self {
        RewritingPath {
            source,
            steps: Vec::new(),
        }
    }

    /// Replays a script of redexes from `source`, recomputing every term.
    pub fn from_script<S>(system: &S, source: T, script: &[R]) -> Result<Self>
    where
        S: RewritingSystem<Term = T, Redex = R>,
    {
        let mut path = RewritingPath::empty(source);
        for redex in script {
            path.push(system, redex)?;
        }
        Ok(path)
    }

    /// Builds a path from explicit steps, checking that they compose.
    pub fn from_steps(source: T, steps: Vec<RedexStep<T, R>>) -> Result<Self>
    where
        T: std::fmt::Debug,
    {
        let mut at = &source;
        for step in &steps {
            if &step.source != at {
                return Err(ArsError::NonComposable {
                    left: format!("{at:?}"),
                    right: format!("{:?}", step.source),
                });
            }
            at = &step.target;
        }
        Ok(RewritingPath { source, steps })
    }

    /// Contracts `redex` at the current target.
    pub fn push<S>(&mut self, system: &S, redex: &R) -> Result<()>
    where
        S: RewritingSystem<Term = T, Redex = R>,
    {
        let step = RedexStep::contract(system, self.target(), redex)?;
        self.steps.push(step);
        Ok(())
    }

    pub fn source(&self) -> &T {
        &self.source
    }

    pub fn target(&self) -> &T {
        self.steps.last().map_or(&self.source, |s| &s.target)
    }

    pub fn steps(&self) -> &[RedexStep<T, R>] {
        &self.steps
    }

    /// The 1-based `k`-th step.
    pub fn step(&self, k: usize) -> &RedexStep<T, R> {
        &self.steps[k - 1]
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The redex script of this path; together with the source it determines the path.
    pub fn script(&self) -> Vec<R> {
        self.steps.iter().map(|s| s.redex.clone()).collect()
    }

    /// The first `n` steps.
    pub fn prefix(&self, n: usize) -> Self {
        RewritingPath {
            source: self.source.clone(),
            steps: self.steps[..n].to_vec(),
        }
    }

    /// Everything after the first `n` steps.
    pub fn suffix(&self, n: usize) -> Self {
        let source = if n == 0 {
            self.source.clone()
        } else {
            self.steps[n - 1].target.clone()
        };
        RewritingPath {
            source,
            steps: self.steps[n..].to_vec(),
        }
    }

    /// Same source and same target.
    pub fn is_parallel_to(&self, other: &Self) -> bool {
        self.source == other.source && self.target() == other.target()
    }

    /// Replaces the `count` steps starting at 1-based index `k`.
    ///
    /// The caller guarantees that `replacement` is coinitial and cofinal with
    /// the replaced window.
    pub(crate) fn splice(&self, k: usize, count: usize, replacement: &[RedexStep<T, R>]) -> Self {
        let mut steps = Vec::with_capacity(self.steps.len() + replacement.len() - count);
        steps.extend_from_slice(&self.steps[..k - 1]);
        steps.extend_from_slice(replacement);
        steps.extend_from_slice(&self.steps[k - 1 + count..]);
        RewritingPath {
            source: self.source.clone(),
            steps,
        }
    }

    /// Recomputes every step with `system` and checks it against the stored terms.
    pub fn validate<S>(&self, system: &S) -> Result<()>
    where
        S: RewritingSystem<Term = T, Redex = R>,
    {
        let mut at = &self.source;
        for (i, step) in self.steps.iter().enumerate() {
            if &step.source != at {
                return Err(ArsError::NonComposable {
                    left: system.render_term(at),
                    right: system.render_term(&step.source),
                });
            }
            let target = system.contract(&step.source, &step.redex)?;
            if target != step.target {
                return Err(ArsError::InvalidOccurrence(format!(
                    "step {} does not reach `{}`",
                    i + 1,
                    system.render_term(&step.target)
                )));
            }
            at = &step.target;
        }
        Ok(())
    }
}

/// Concatenation `p · q`.
pub fn compose_paths<T, R>(p: &RewritingPath<T, R>, q: &RewritingPath<T, R>) -> Result<RewritingPath<T, R>>
where
    T: Clone + Eq + std::fmt::Debug,
    R: Clone + Eq,
{
    if p.target() != q.source() {
        return Err(ArsError::NonComposable {
            left: format!("{:?}", p.target()),
            right: format!("{:?}", q.source()),
        });
    }
    let mut steps = p.steps.clone();
    steps.extend_from_slice(&q.steps);
    Ok(RewritingPath {
        source: p.source.clone(),
        steps,
    })
}
