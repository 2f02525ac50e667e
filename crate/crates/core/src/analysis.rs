//! External/internal factorisation of paths and head-rewriting cones.
//!
//! Externality quantifies over every standard continuation. Here it is
//! checked against continuations up to [`AnalysisConfig::ext_bound`] steps,
//! so every answer in this module is relative to that bound.

use std::collections::HashMap;

use crate::engine::is_standard;
use crate::engine::{equivalent, reversible_closure, standardize, CanonicalStandardForm, EngineConfig};
use crate::error::{ArsError, Result};
use crate::path::{compose_paths, RewritingPath};
use crate::system::RewritingSystem;

type Path<S> = RewritingPath<<S as RewritingSystem>::Term, <S as RewritingSystem>::Redex>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalysisConfig {
    pub engine: EngineConfig,
    /// Longest standard continuation tried by [`is_external`].
    pub ext_bound: usize,
    /// Maximum number of paths produced by one enumeration.
    pub enumeration_budget: usize,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            engine: EngineConfig::default(),
            ext_bound: 3,
            enumeration_budget: 200_000,
        }
    }
}

/// Every path from `source` of length at most `max_len`, the empty path
/// first, depth-first in redex order.
pub fn enumerate_paths<S: RewritingSystem>(
    system: &S,
    source: &S::Term,
    max_len: usize,
    budget: usize,
) -> Result<Vec<Path<S>>> {
    let mut out = Vec::new();
    let mut path = RewritingPath::empty(source.clone());
    walk(system, &mut path, max_len, budget, &mut out)?;
    Ok(out)
}

fn walk<S: RewritingSystem>(
    system: &S,
    path: &mut Path<S>,
    max_len: usize,
    budget: usize,
    out: &mut Vec<Path<S>>,
) -> Result<()> {
    if out.len() >= budget {
        return Err(ArsError::EnumerationBudgetExceeded { budget });
    }
    out.push(path.clone());
    if path.len() == max_len {
        return Ok(());
    }
    for r in system.redexes(path.target()) {
        let saved = path.clone();
        path.push(system, &r)?;
        walk(system, path, max_len, budget, out)?;
        *path = saved;
    }
    Ok(())
}

/// Bounded externality: `e` is standard and so is `e·f` for every standard
/// `f` of length at most `config.ext_bound` from the target of `e`.
pub fn is_external<S: RewritingSystem>(system: &S, e: &Path<S>, config: &AnalysisConfig) -> Result<bool> {
    if !is_standard(system, e, &config.engine)? {
        return Ok(false);
    }
    let mut continuation = RewritingPath::empty(e.target().clone());
    let mut visited = 0;
    extend_standard(system, e, &mut continuation, config, &mut visited)
}

// A path with a non-standard prefix is not standard, so both the
// continuations and the composites can be pruned at the first failure.
fn extend_standard<S: RewritingSystem>(
    system: &S,
    e: &Path<S>,
    f: &mut Path<S>,
    config: &AnalysisConfig,
    visited: &mut usize,
) -> Result<bool> {
    if f.len() == config.ext_bound {
        return Ok(true);
    }
    for r in system.redexes(f.target()) {
        *visited += 1;
        if *visited > config.enumeration_budget {
            return Err(ArsError::EnumerationBudgetExceeded {
                budget: config.enumeration_budget,
            });
        }
        let saved = f.clone();
        f.push(system, &r)?;
        if is_standard(system, f, &config.engine)? {
            if !is_standard(system, &compose_paths(e, f)?, &config.engine)? {
                return Ok(false);
            }
            if !extend_standard(system, e, f, config, visited)? {
                return Ok(false);
            }
        }
        *f = saved;
    }
    Ok(true)
}

/// Memoised [`is_external`] keyed by script; all queried paths share a source.
struct ExternalCache<'a, S: RewritingSystem> {
    system: &'a S,
    config: &'a AnalysisConfig,
    known: HashMap<Vec<S::Redex>, bool>,
}

impl<'a, S: RewritingSystem> ExternalCache<'a, S> {
    fn new(system: &'a S, config: &'a AnalysisConfig) -> Self {
        ExternalCache {
            system,
            config,
            known: HashMap::new(),
        }
    }

    fn check(&mut self, e: &Path<S>) -> Result<bool> {
        let key = e.script();
        if let Some(&v) = self.known.get(&key) {
            return Ok(v);
        }
        let v = is_external(self.system, e, self.config)?;
        self.known.insert(key, v);
        Ok(v)
    }
}

/// True when no member of the reversible class of the standard form of `m`
/// has a nonempty external prefix.
pub fn is_internal<S: RewritingSystem>(system: &S, m: &Path<S>, config: &AnalysisConfig) -> Result<bool> {
    let g = standardize(system, m, &config.engine)?.path;
    let closure = reversible_closure(system, &g, config.engine.closure_budget)?;
    let mut cache = ExternalCache::new(system, config);
    for p in closure.paths() {
        for k in 1..=p.len() {
            if cache.check(&p.prefix(k))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Order in which the reversible class is scanned for the longest external
/// prefix. Ties between equally long prefixes go to the first one met.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum SearchOrder {
    #[default]
    Forward,
    Reverse,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorisation<T, R> {
    pub external: RewritingPath<T, R>,
    pub internal: RewritingPath<T, R>,
    /// Canonical standard form of the input, also that of `external·internal`.
    pub witness: CanonicalStandardForm<T, R>,
}

pub fn factorize<S: RewritingSystem>(
    system: &S,
    f: &Path<S>,
    config: &AnalysisConfig,
) -> Result<Factorisation<S::Term, S::Redex>> {
    factorize_with(system, f, config, SearchOrder::Forward)
}

/// Splits `f` into its longest external prefix and an internal rest, up to
/// permutation equivalence, and checks both parts before returning.
pub fn factorize_with<S: RewritingSystem>(
    system: &S,
    f: &Path<S>,
    config: &AnalysisConfig,
    order: SearchOrder,
) -> Result<Factorisation<S::Term, S::Redex>> {
    let witness = standardize(system, f, &config.engine)?;
    let closure = reversible_closure(system, &witness.path, config.engine.closure_budget)?;
    let mut members: Vec<&Path<S>> = closure.paths().collect();
    if order == SearchOrder::Reverse {
        members.reverse();
    }
    let mut cache = ExternalCache::new(system, config);
    let mut best: Option<(usize, &Path<S>)> = None;
    for p in members {
        let floor = best.map_or(0, |(k, _)| k);
        for k in (floor + 1..=p.len()).rev() {
            if cache.check(&p.prefix(k))? {
                best = Some((k, p));
                break;
            }
        }
    }
    let (k, chosen) = best.unwrap_or((0, &witness.path));
    let external = chosen.prefix(k);
    let internal = chosen.suffix(k);
    if !is_internal(system, &internal, config)? {
        return Err(ArsError::FactorisationCheckFailed(format!(
            "remainder `{}` has an external prefix",
            render_script(system, &internal)
        )));
    }
    let recomposed = compose_paths(&external, &internal)?;
    if !equivalent(system, f, &recomposed, &config.engine)? {
        return Err(ArsError::FactorisationCheckFailed(
            "external·internal is not equivalent to the input".into(),
        ));
    }
    Ok(Factorisation {
        external,
        internal,
        witness,
    })
}

fn render_script<S: RewritingSystem>(system: &S, p: &Path<S>) -> String {
    let parts: Vec<String> = p.steps().iter().map(|s| system.render_redex(s.redex())).collect();
    format!("[{}]", parts.join(", "))
}

/// External paths from an apex to head values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeadCone<T, R> {
    pub apex: T,
    /// Each branch is in canonical standard form.
    pub branches: Vec<RewritingPath<T, R>>,
}

/// Enumerates every path of length at most `path_bound` from `apex` to a
/// head value, takes external parts, and keeps the minimal ones up to
/// equivalence.
///
/// A candidate `c` is dropped when another candidate `d` is a prefix of a
/// path equivalent to `c`; this happens when the external part already runs
/// past a head value (e.g. reducing inside the arguments of a head normal
/// form that has no further redexes).
pub fn stability_cone<S: RewritingSystem>(
    system: &S,
    apex: &S::Term,
    path_bound: usize,
    config: &AnalysisConfig,
) -> Result<HeadCone<S::Term, S::Redex>> {
    let mut candidates: Vec<Path<S>> = Vec::new();
    for p in enumerate_paths(system, apex, path_bound, config.enumeration_budget)? {
        if !system.is_head_value(p.target()) {
            continue;
        }
        let e = factorize(system, &p, config)?.external;
        if !system.is_head_value(e.target()) {
            continue;
        }
        let e = standardize(system, &e, &config.engine)?.path;
        if !candidates.contains(&e) {
            candidates.push(e);
        }
    }
    let mut branches = Vec::new();
    for c in &candidates {
        let class = reversible_closure(system, c, config.engine.closure_budget)?;
        let dominated = candidates
            .iter()
            .any(|d| d.len() < c.len() && class.paths().any(|m| m.prefix(d.len()).script() == d.script()));
        if !dominated {
            branches.push(c.clone());
        }
    }
    branches.sort_by(|a, b| a.script().cmp(&b.script()).then(a.len().cmp(&b.len())));
    Ok(HeadCone {
        apex: apex.clone(),
        branches,
    })
}

/// A branch index (0-based) and the canonical rest `h` with `f ∼ e_i·h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeFactor<T, R> {
    pub index: usize,
    pub rest: RewritingPath<T, R>,
}

/// Finds the unique branch `e_i` and rest `h` (length at most `h_bound`)
/// with `f ∼ e_i·h`, checking that every rest found is equivalent.
pub fn factor_through_cone<S: RewritingSystem>(
    system: &S,
    f: &Path<S>,
    cone: &HeadCone<S::Term, S::Redex>,
    h_bound: usize,
    config: &AnalysisConfig,
) -> Result<ConeFactor<S::Term, S::Redex>> {
    if f.source() != &cone.apex {
        return Err(ArsError::EndpointMismatch(format!(
            "path starts at `{}`, cone apex is `{}`",
            system.render_term(f.source()),
            system.render_term(&cone.apex)
        )));
    }
    let target = standardize(system, f, &config.engine)?.path;
    let mut found: Vec<ConeFactor<S::Term, S::Redex>> = Vec::new();
    for (index, e) in cone.branches.iter().enumerate() {
        let mut rest: Option<Path<S>> = None;
        for h in enumerate_paths(system, e.target(), h_bound, config.enumeration_budget)? {
            if h.target() != f.target() {
                continue;
            }
            let composite = compose_paths(e, &h)?;
            if standardize(system, &composite, &config.engine)?.path != target {
                continue;
            }
            let canonical = standardize(system, &h, &config.engine)?.path;
            match &rest {
                None => rest = Some(canonical),
                Some(r) if *r == canonical => {}
                Some(r) => {
                    return Err(ArsError::MultipleFactorisations(format!(
                        "branch {index} admits inequivalent rests {} and {}",
                        render_script(system, r),
                        render_script(system, &canonical)
                    )))
                }
            }
        }
        if let Some(rest) = rest {
            found.push(ConeFactor { index, rest });
        }
    }
    match found.len() {
        0 => Err(ArsError::NoFactorisation),
        1 => Ok(found.pop().expect("one element")),
        _ => Err(ArsError::MultipleFactorisations(format!(
            "branches {:?}",
            found.iter().map(|c| c.index).collect::<Vec<_>>()
        ))),
    }
}
