//! The standardisation rewriting system on paths.
//!
//! Tiles rewrite 1-dimensional paths; this module finds tile sites, explores
//! the reversible closure of a path, drives paths to their canonical standard
//! form, and decides permutation equivalence. [`zigzag_witness`] is an
//! independent breadth-first decision used to cross-check [`equivalent`].

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{ArsError, Result};
use crate::path::RewritingPath;
use crate::system::RewritingSystem;
use crate::tile::{PermutationTile, TileApplication};
use crate::trace::StandardisationTrace;

type Path<S> = RewritingPath<<S as RewritingSystem>::Term, <S as RewritingSystem>::Redex>;
type Tile<S> = PermutationTile<<S as RewritingSystem>::Term, <S as RewritingSystem>::Redex>;
type Application<S> = TileApplication<<S as RewritingSystem>::Term, <S as RewritingSystem>::Redex>;
type Trace<S> = StandardisationTrace<<S as RewritingSystem>::Term, <S as RewritingSystem>::Redex>;
type Site<S> = TileSite<<S as RewritingSystem>::Term, <S as RewritingSystem>::Redex>;
/// A zig-zag search node: path, depth, and the parent with the move from it.
type SearchNode<S> = (
    Path<S>,
    usize,
    Option<(
        usize,
        ZigzagMove<<S as RewritingSystem>::Term, <S as RewritingSystem>::Redex>,
    )>,
);

/// Budgets for the standardisation engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineConfig {
    /// Maximum number of tile applications in one `standardize` call.
    pub fuel: usize,
    /// Maximum number of paths in a reversible closure.
    pub closure_budget: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            fuel: 10_000,
            closure_budget: 4_096,
        }
    }
}

/// A tile applicable at the 1-based window `index` of some path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileSite<T, R> {
    pub index: usize,
    pub tile: PermutationTile<T, R>,
}

impl<T, R> TileSite<T, R>
where
    T: Clone + Eq + std::fmt::Debug,
    R: Clone + Eq + std::fmt::Debug,
{
    pub fn apply(&self, path: &RewritingPath<T, R>) -> Result<TileApplication<T, R>> {
        TileApplication::apply(path, self.index, &self.tile)
    }

    pub fn is_reversible(&self) -> bool {
        self.tile.is_reversible()
    }
}

/// Every tile site of `path`, by ascending index then instance order.
pub fn enumerate_sites<S: RewritingSystem>(system: &S, path: &Path<S>) -> Result<Vec<TileSite<S::Term, S::Redex>>> {
    let mut sites = Vec::new();
    for k in 1..path.len() {
        let (step, next) = (path.step(k), path.step(k + 1));
        for tile in system.tiles_for(step.source(), step.redex(), next.redex())? {
            sites.push(TileSite { index: k, tile });
        }
    }
    Ok(sites)
}

#[derive(Debug, Clone)]
struct ClosureNode<S: RewritingSystem> {
    path: Path<S>,
    parent: Option<(usize, Application<S>)>,
    sites: Vec<TileSite<S::Term, S::Redex>>,
}

/// All paths reachable from a root path by reversible tiles, in BFS order.
#[derive(Debug, Clone)]
pub struct ReversibleClosure<S: RewritingSystem> {
    nodes: Vec<ClosureNode<S>>,
}

impl<S: RewritingSystem> ReversibleClosure<S> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn paths(&self) -> impl Iterator<Item = &Path<S>> {
        self.nodes.iter().map(|n| &n.path)
    }

    pub fn path(&self, i: usize) -> &Path<S> {
        &self.nodes[i].path
    }

    /// Irreversible sites of the `i`-th member.
    pub fn irreversible_sites(&self, i: usize) -> impl Iterator<Item = &TileSite<S::Term, S::Redex>> {
        self.nodes[i].sites.iter().filter(|s| !s.is_reversible())
    }

    pub fn has_irreversible_site(&self) -> bool {
        (0..self.nodes.len()).any(|i| self.irreversible_sites(i).next().is_some())
    }

    /// The reversible trace from the root to the `i`-th member.
    pub fn trace_to(&self, i: usize) -> Trace<S> {
        let mut apps = Vec::new();
        let mut at = i;
        while let Some((parent, app)) = &self.nodes[at].parent {
            apps.push(app.clone());
            at = *parent;
        }
        apps.reverse();
        StandardisationTrace::new(self.nodes[0].path.clone(), apps).expect("closure parents chain by construction")
    }
}

pub fn reversible_closure<S: RewritingSystem>(
    system: &S,
    path: &Path<S>,
    budget: usize,
) -> Result<ReversibleClosure<S>> {
    let mut nodes: Vec<ClosureNode<S>> = Vec::new();
    let mut seen: HashSet<Vec<S::Redex>> = HashSet::new();
    seen.insert(path.script());
    nodes.push(ClosureNode {
        path: path.clone(),
        parent: None,
        sites: Vec::new(),
    });
    let mut cursor = 0;
    while cursor < nodes.len() {
        let sites = enumerate_sites(system, &nodes[cursor].path)?;
        for site in sites.iter().filter(|s| s.is_reversible()) {
            let app = site.apply(&nodes[cursor].path)?;
            if seen.insert(app.after().script()) {
                if nodes.len() >= budget {
                    return Err(ArsError::ClosureBudgetExceeded { budget });
                }
                nodes.push(ClosureNode {
                    path: app.after().clone(),
                    parent: Some((cursor, app)),
                    sites: Vec::new(),
                });
            }
        }
        nodes[cursor].sites = sites;
        cursor += 1;
    }
    Ok(ReversibleClosure { nodes })
}

/// A path is standard when no member of its reversible closure admits an
/// irreversible tile.
pub fn is_standard<S: RewritingSystem>(system: &S, path: &Path<S>, config: &EngineConfig) -> Result<bool> {
    if path.len() < 2 {
        return Ok(true);
    }
    Ok(!reversible_closure(system, path, config.closure_budget)?.has_irreversible_site())
}

/// The canonical standard form of a path with a witness trace from the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalStandardForm<T, R> {
    pub path: RewritingPath<T, R>,
    pub witness: StandardisationTrace<T, R>,
}

/// Drives `path` to its canonical standard form, leftmost irreversible site first.
pub fn standardize<S: RewritingSystem>(
    system: &S,
    path: &Path<S>,
    config: &EngineConfig,
) -> Result<CanonicalStandardForm<S::Term, S::Redex>> {
    let mut trace = StandardisationTrace::identity(path.clone());
    loop {
        let closure = reversible_closure(system, trace.end(), config.closure_budget)?;
        let mut best: Option<(usize, &Site<S>)> = None;
        for i in 0..closure.len() {
            for site in closure.irreversible_sites(i) {
                if best.is_none_or(|(_, b)| site.index < b.index) {
                    best = Some((i, site));
                }
            }
        }
        let Some((node, site)) = best else { break };
        let app = site.apply(closure.path(node))?;
        trace = trace.then(&closure.trace_to(node))?;
        trace.push(app)?;
        if trace.len() > config.fuel {
            return Err(ArsError::FuelExhausted { fuel: config.fuel });
        }
    }
    let canonical = canonical_trace(system, trace.end())?;
    trace = trace.then(&canonical)?;
    if trace.len() > config.fuel {
        return Err(ArsError::FuelExhausted { fuel: config.fuel });
    }
    Ok(CanonicalStandardForm {
        path: trace.end().clone(),
        witness: trace,
    })
}

/// Sorts a standard path inside its reversible class: the result is the
/// lexicographically least member under the redex order.
pub fn canonicalize<S: RewritingSystem>(system: &S, path: &Path<S>, config: &EngineConfig) -> Result<Path<S>> {
    Ok(canonicalize_traced(system, path, config)?.end().clone())
}

/// [`canonicalize`] together with its reversible trace.
pub fn canonicalize_traced<S: RewritingSystem>(system: &S, path: &Path<S>, config: &EngineConfig) -> Result<Trace<S>> {
    if !is_standard(system, path, config)? {
        return Err(ArsError::NotStandard);
    }
    canonical_trace(system, path)
}

fn reversible_tile_at<S: RewritingSystem>(system: &S, path: &Path<S>, k: usize) -> Result<Option<Tile<S>>> {
    let (step, next) = (path.step(k), path.step(k + 1));
    Ok(system
        .tiles_for(step.source(), step.redex(), next.redex())?
        .into_iter()
        .find(PermutationTile::is_reversible))
}

// Greedy selection: at each position bring forward the least step that can
// reach it by reversible swaps.
fn canonical_trace<S: RewritingSystem>(system: &S, path: &Path<S>) -> Result<Trace<S>> {
    let mut trace = StandardisationTrace::identity(path.clone());
    for i in 1..=path.len() {
        let current = trace.end().clone();
        let mut best: Option<(S::Redex, Vec<Application<S>>)> = None;
        'candidates: for j in i..=current.len() {
            let mut apps = Vec::new();
            let mut p = current.clone();
            for w in (i..j).rev() {
                let Some(tile) = reversible_tile_at(system, &p, w)? else {
                    continue 'candidates;
                };
                let app = TileApplication::apply(&p, w, &tile)?;
                p = app.after().clone();
                apps.push(app);
            }
            let front = p.step(i).redex().clone();
            if best.as_ref().is_none_or(|(b, _)| front < *b) {
                best = Some((front, apps));
            }
        }
        if let Some((_, apps)) = best {
            for app in apps {
                trace.push(app)?;
            }
        }
    }
    Ok(trace)
}

/// Permutation equivalence: equal canonical standard forms.
pub fn equivalent<S: RewritingSystem>(system: &S, f: &Path<S>, g: &Path<S>, config: &EngineConfig) -> Result<bool> {
    check_parallel(system, f, g)?;
    let sf = standardize(system, f, config)?;
    let sg = standardize(system, g, config)?;
    Ok(sf.path == sg.path)
}

pub(crate) fn check_parallel<S: RewritingSystem>(system: &S, f: &Path<S>, g: &Path<S>) -> Result<()> {
    if f.is_parallel_to(g) {
        Ok(())
    } else {
        Err(ArsError::EndpointMismatch(format!(
            "`{}` ↠ `{}` versus `{}` ↠ `{}`",
            system.render_term(f.source()),
            system.render_term(f.target()),
            system.render_term(g.source()),
            system.render_term(g.target())
        )))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZigzagDirection {
    /// `before -> after` along the tile.
    Forward,
    /// `after -> before`, against the tile.
    Backward,
}

/// One move of a zig-zag; `application` is always stated in the tile's own direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZigzagMove<T, R> {
    pub direction: ZigzagDirection,
    pub application: TileApplication<T, R>,
}

impl<T, R> ZigzagMove<T, R>
where
    T: Clone + Eq + std::fmt::Debug,
    R: Clone + Eq + std::fmt::Debug,
{
    pub fn from(&self) -> &RewritingPath<T, R> {
        match self.direction {
            ZigzagDirection::Forward => self.application.before(),
            ZigzagDirection::Backward => self.application.after(),
        }
    }

    pub fn to(&self) -> &RewritingPath<T, R> {
        match self.direction {
            ZigzagDirection::Forward => self.application.after(),
            ZigzagDirection::Backward => self.application.before(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Zigzag<T, R> {
    pub start: RewritingPath<T, R>,
    pub moves: Vec<ZigzagMove<T, R>>,
}

impl<T, R> Zigzag<T, R>
where
    T: Clone + Eq + std::fmt::Debug,
    R: Clone + Eq + std::fmt::Debug,
{
    pub fn end(&self) -> &RewritingPath<T, R> {
        self.moves.last().map_or(&self.start, |m| m.to())
    }

    /// Checks that consecutive moves chain.
    pub fn is_chained(&self) -> bool {
        let mut at = &self.start;
        for m in &self.moves {
            if m.from() != at {
                return false;
            }
            at = m.to();
        }
        true
    }
}

/// Outcome of the bounded zig-zag search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZigzagSearch<T, R> {
    Found(Zigzag<T, R>),
    /// The whole connected component was explored without meeting the target.
    Exhausted {
        explored: usize,
    },
    /// The move bound or node budget cut the search short; inconclusive.
    BoundReached {
        explored: usize,
    },
}

impl<T, R> ZigzagSearch<T, R> {
    pub fn witness(&self) -> Option<&Zigzag<T, R>> {
        match self {
            ZigzagSearch::Found(z) => Some(z),
            _ => None,
        }
    }

    pub fn is_conclusive(&self) -> bool {
        !matches!(self, ZigzagSearch::BoundReached { .. })
    }
}

/// Every single-tile move from `path`, in both orientations.
pub fn zigzag_moves<S: RewritingSystem>(system: &S, path: &Path<S>) -> Result<Vec<ZigzagMove<S::Term, S::Redex>>> {
    let mut moves = Vec::new();
    for site in enumerate_sites(system, path)? {
        moves.push(ZigzagMove {
            direction: ZigzagDirection::Forward,
            application: site.apply(path)?,
        });
    }
    for k in 1..=path.len() + 1 {
        let at = if k == 1 {
            path.source()
        } else {
            path.step(k - 1).target()
        };
        for v in system.redexes(at) {
            let mid = system.contract(at, &v)?;
            for u in system.redexes(&mid) {
                for tile in system.tiles_for(at, &v, &u)? {
                    let n = tile.target_len();
                    if k - 1 + n > path.len() || path.steps()[k - 1..k - 1 + n] != *tile.target().steps() {
                        continue;
                    }
                    let before = path.splice(k, n, tile.source().steps());
                    moves.push(ZigzagMove {
                        direction: ZigzagDirection::Backward,
                        application: TileApplication::apply(&before, k, &tile)?,
                    });
                }
            }
        }
    }
    Ok(moves)
}

/// Default node budget for [`zigzag_witness`].
pub const ZIGZAG_NODE_BUDGET: usize = 20_000;

/// Breadth-first search for a zig-zag of tiles between `f` and `g`, using at
/// most `bound` moves.
pub fn zigzag_witness<S: RewritingSystem>(
    system: &S,
    f: &Path<S>,
    g: &Path<S>,
    bound: usize,
) -> Result<ZigzagSearch<S::Term, S::Redex>> {
    zigzag_search(system, f, g, bound, ZIGZAG_NODE_BUDGET)
}

pub fn zigzag_search<S: RewritingSystem>(
    system: &S,
    f: &Path<S>,
    g: &Path<S>,
    bound: usize,
    node_budget: usize,
) -> Result<ZigzagSearch<S::Term, S::Redex>> {
    check_parallel(system, f, g)?;
    let goal = g.script();
    let mut nodes: Vec<SearchNode<S>> = vec![(f.clone(), 0, None)];
    let mut seen: HashMap<Vec<S::Redex>, usize> = HashMap::new();
    seen.insert(f.script(), 0);
    let mut queue = VecDeque::from([0usize]);
    let mut truncated = false;
    let rebuild = |nodes: &Vec<SearchNode<S>>, mut at: usize| {
        let mut moves = Vec::new();
        while let Some((parent, m)) = &nodes[at].2 {
            moves.push(m.clone());
            at = *parent;
        }
        moves.reverse();
        Zigzag {
            start: f.clone(),
            moves,
        }
    };
    if f.script() == goal {
        return Ok(ZigzagSearch::Found(rebuild(&nodes, 0)));
    }
    while let Some(i) = queue.pop_front() {
        let depth = nodes[i].1;
        let moves = zigzag_moves(system, &nodes[i].0)?;
        for m in moves {
            let key = m.to().script();
            if seen.contains_key(&key) {
                continue;
            }
            if depth == bound || nodes.len() >= node_budget {
                truncated = true;
                continue;
            }
            let path = m.to().clone();
            nodes.push((path, depth + 1, Some((i, m))));
            let id = nodes.len() - 1;
            seen.insert(key.clone(), id);
            if key == goal {
                return Ok(ZigzagSearch::Found(rebuild(&nodes, id)));
            }
            queue.push_back(id);
        }
    }
    let explored = nodes.len();
    Ok(if truncated {
        ZigzagSearch::BoundReached { explored }
    } else {
        ZigzagSearch::Exhausted { explored }
    })
}

/// An edge of a [`StateSpace`]: a tile applied to node `from` gives node `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateEdge {
    pub from: usize,
    pub to: usize,
    /// 1-based position of the tile in `from`.
    pub index: usize,
    pub reversible: bool,
}

/// Every path reachable from a start path by tiles used in either
/// direction. Nodes are numbered in breadth-first order from the start.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSpace<T, R> {
    pub nodes: Vec<RewritingPath<T, R>>,
    pub edges: Vec<StateEdge>,
}

pub fn state_space<S: RewritingSystem>(
    system: &S,
    path: &Path<S>,
    budget: usize,
) -> Result<StateSpace<S::Term, S::Redex>> {
    let mut nodes = vec![path.clone()];
    let mut ids: HashMap<Vec<S::Redex>, usize> = HashMap::from([(path.script(), 0)]);
    let mut edges = HashSet::new();
    let mut cursor = 0;
    while cursor < nodes.len() {
        for m in zigzag_moves(system, &nodes[cursor])? {
            let mut id_of = |p: &Path<S>| -> Result<usize> {
                if let Some(&id) = ids.get(&p.script()) {
                    return Ok(id);
                }
                if nodes.len() >= budget {
                    return Err(ArsError::ClosureBudgetExceeded { budget });
                }
                nodes.push(p.clone());
                ids.insert(p.script(), nodes.len() - 1);
                Ok(nodes.len() - 1)
            };
            let app = &m.application;
            let from = id_of(app.before())?;
            let to = id_of(app.after())?;
            edges.insert(StateEdge {
                from,
                to,
                index: app.index(),
                reversible: app.is_reversible(),
            });
        }
        cursor += 1;
    }
    let mut edges: Vec<StateEdge> = edges.into_iter().collect();
    edges.sort();
    Ok(StateSpace { nodes, edges })
}

/// Results of running every maximal leftmost-free strategy from one path.
#[derive(Debug, Clone)]
pub struct StrategyExploration<T, R> {
    /// One full trace per explored strategy, ending in a canonical standard path.
    pub outcomes: Vec<StandardisationTrace<T, R>>,
    /// Whether the branch cap cut the exploration short.
    pub truncated: bool,
}

/// Explores every choice of irreversible site (anywhere in the reversible
/// closure) until standard, then canonicalizes. Stops after `cap` outcomes.
pub fn explore_strategies<S: RewritingSystem>(
    system: &S,
    path: &Path<S>,
    config: &EngineConfig,
    cap: usize,
) -> Result<StrategyExploration<S::Term, S::Redex>> {
    let mut out = StrategyExploration {
        outcomes: Vec::new(),
        truncated: false,
    };
    explore(
        system,
        StandardisationTrace::identity(path.clone()),
        config,
        cap,
        &mut out,
    )?;
    Ok(out)
}

fn explore<S: RewritingSystem>(
    system: &S,
    trace: Trace<S>,
    config: &EngineConfig,
    cap: usize,
    out: &mut StrategyExploration<S::Term, S::Redex>,
) -> Result<()> {
    if out.outcomes.len() >= cap {
        out.truncated = true;
        return Ok(());
    }
    if trace.len() > config.fuel {
        return Err(ArsError::FuelExhausted { fuel: config.fuel });
    }
    let closure = reversible_closure(system, trace.end(), config.closure_budget)?;
    let mut branches: Vec<Trace<S>> = Vec::new();
    let mut seen = HashSet::new();
    for i in 0..closure.len() {
        for site in closure.irreversible_sites(i) {
            let mut next = trace.clone().then(&closure.trace_to(i))?;
            next.push(site.apply(closure.path(i))?)?;
            if seen.insert((next.end().script(), next.ancestor().clone())) {
                branches.push(next);
            }
        }
    }
    if branches.is_empty() {
        let canonical = canonical_trace(system, trace.end())?;
        out.outcomes.push(trace.then(&canonical)?);
        return Ok(());
    }
    for next in branches {
        explore(system, next, config, cap, out)?;
        if out.truncated {
            break;
        }
    }
    Ok(())
}
