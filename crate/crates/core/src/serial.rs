//! JSON shapes for paths, tiles and traces.
//!
//! Terms are written in the instance's concrete syntax and redexes with
//! [`RewritingSystem::render_redex`]. Reading a shape back recomputes every
//! step and rejects documents whose recorded terms or tables disagree.

use serde::{Deserialize, Serialize};

use crate::ancestor::AncestorFunction;
use crate::error::{ArsError, Result};
use crate::path::RewritingPath;
use crate::system::{OrientationPolicy, RewritingSystem};
use crate::tile::{PermutationTile, TileApplication};
use crate::trace::StandardisationTrace;

type Path<S> = RewritingPath<<S as RewritingSystem>::Term, <S as RewritingSystem>::Redex>;
type Tile<S> = PermutationTile<<S as RewritingSystem>::Term, <S as RewritingSystem>::Redex>;
type Trace<S> = StandardisationTrace<<S as RewritingSystem>::Term, <S as RewritingSystem>::Redex>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub redex: String,
    pub target: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathJson {
    pub source: String,
    pub steps: Vec<StepJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileJson {
    pub source: PathJson,
    pub target: PathJson,
    pub ancestor: Vec<usize>,
    pub reversible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApplicationJson {
    /// 1-based index of the first replaced step.
    pub index: usize,
    pub tile: TileJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceJson {
    pub start: PathJson,
    pub applications: Vec<ApplicationJson>,
    pub end: PathJson,
    pub ancestor: Vec<usize>,
}

/// Which rewriting system a document was produced with.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceJson {
    pub kind: String,
    pub policy: OrientationPolicy,
    /// Rule text for TRS instances.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rules: Option<String>,
}

/// A command's full output: enough to re-run every check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub instance: InstanceJson,
    pub command: String,
    pub input: serde_json::Value,
    pub result: serde_json::Value,
    pub witness: serde_json::Value,
}

fn mismatch(what: &str, recorded: &str, computed: &str) -> ArsError {
    ArsError::EndpointMismatch(format!("{what}: recorded `{recorded}`, recomputed `{computed}`"))
}

pub fn path_to_json<S: RewritingSystem>(system: &S, path: &Path<S>) -> PathJson {
    PathJson {
        source: system.render_term(path.source()),
        steps: path
            .steps()
            .iter()
            .map(|s| StepJson {
                redex: system.render_redex(s.redex()),
                target: system.render_term(s.target()),
            })
            .collect(),
    }
}

pub fn path_from_json<S: RewritingSystem>(system: &S, json: &PathJson) -> Result<Path<S>> {
    let mut path = RewritingPath::empty(system.parse_term(&json.source)?);
    for step in &json.steps {
        path.push(system, &system.parse_redex(&step.redex)?)?;
        if system.parse_term(&step.target)? != *path.target() {
            return Err(mismatch(
                "step target",
                &step.target,
                &system.render_term(path.target()),
            ));
        }
    }
    Ok(path)
}

pub fn tile_to_json<S: RewritingSystem>(system: &S, tile: &Tile<S>) -> TileJson {
    TileJson {
        source: path_to_json(system, tile.source()),
        target: path_to_json(system, tile.target()),
        ancestor: tile.ancestor().table().to_vec(),
        reversible: tile.is_reversible(),
    }
}

/// Rebuilds a tile and checks that the system itself generates it.
pub fn tile_from_json<S: RewritingSystem>(system: &S, json: &TileJson) -> Result<Tile<S>> {
    let source = path_from_json(system, &json.source)?;
    let target = path_from_json(system, &json.target)?;
    let ancestor = AncestorFunction::new(2, json.ancestor.clone())?;
    let tile = PermutationTile::new(source, target, ancestor, json.reversible)?;
    let first = tile.source().step(1);
    let generated = system.tiles_for(first.source(), first.redex(), tile.source().step(2).redex())?;
    if !generated.contains(&tile) {
        return Err(ArsError::InvalidTile("the system generates no such tile".into()));
    }
    Ok(tile)
}

pub fn trace_to_json<S: RewritingSystem>(system: &S, trace: &Trace<S>) -> TraceJson {
    TraceJson {
        start: path_to_json(system, trace.start()),
        applications: trace
            .applications()
            .iter()
            .map(|a| ApplicationJson {
                index: a.index(),
                tile: tile_to_json(system, a.tile()),
            })
            .collect(),
        end: path_to_json(system, trace.end()),
        ancestor: trace.ancestor().table().to_vec(),
    }
}

/// Replays a trace from its start and checks its end and composite ancestor.
pub fn trace_from_json<S: RewritingSystem>(system: &S, json: &TraceJson) -> Result<Trace<S>> {
    let mut trace = StandardisationTrace::identity(path_from_json(system, &json.start)?);
    for app in &json.applications {
        let tile = tile_from_json(system, &app.tile)?;
        trace.push(TileApplication::apply(trace.end(), app.index, &tile)?)?;
    }
    let end = path_from_json(system, &json.end)?;
    if end != *trace.end() {
        return Err(ArsError::EndpointMismatch(
            "trace end differs from the replayed path".into(),
        ));
    }
    if trace.ancestor().table() != json.ancestor.as_slice() {
        return Err(ArsError::InvalidAncestor(format!(
            "recorded {:?}, recomputed {:?}",
            json.ancestor,
            trace.ancestor().table()
        )));
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{standardize, EngineConfig};
    use crate::lambda::LambdaSystem;

    #[test]
    fn trace_round_trip() {
        let sys = LambdaSystem::default();
        let path = sys.path(r"(\x. x x) ((\z. z) y)", &["R", "ε"]).unwrap();
        let form = standardize(&sys, &path, &EngineConfig::default()).unwrap();
        let json = trace_to_json(&sys, &form.witness);
        let text = serde_json::to_string(&json).unwrap();
        let back: TraceJson = serde_json::from_str(&text).unwrap();
        assert_eq!(trace_from_json(&sys, &back).unwrap(), form.witness);
        assert_eq!(json.ancestor, vec![2, 1, 1]);
    }

    #[test]
    fn tampered_documents_are_rejected() {
        let sys = LambdaSystem::default();
        let path = sys.path(r"(\x. x x) ((\z. z) y)", &["R", "ε"]).unwrap();
        let mut json = path_to_json(&sys, &path);
        json.steps[1].target = "y".into();
        assert!(path_from_json(&sys, &json).is_err());

        let form = standardize(&sys, &path, &EngineConfig::default()).unwrap();
        let mut trace = trace_to_json(&sys, &form.witness);
        trace.ancestor = vec![1, 1, 2];
        assert!(matches!(
            trace_from_json(&sys, &trace),
            Err(ArsError::InvalidAncestor(_))
        ));
        let mut tile = trace_to_json(&sys, &form.witness).applications[0].tile.clone();
        tile.ancestor = vec![1, 2, 2];
        assert!(tile_from_json(&sys, &tile).is_err());
    }
}
