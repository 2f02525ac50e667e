//! `--verify`: replays the witnesses of a JSON document against a freshly
//! loaded instance.

use std::path::Path as FsPath;

use serde::de::DeserializeOwned;
use serde_json::Value;

use ars_core::analysis::{is_external, is_internal, stability_cone, AnalysisConfig};
use ars_core::engine::{canonicalize, is_standard, state_space};
use ars_core::serial::{path_from_json, tile_from_json, trace_from_json, Document, PathJson, TileJson, TraceJson};
use ars_core::{compose_paths, RewritingPath, RewritingSystem, TileApplication};

use crate::commands::{load_path, statespace_json};
use crate::{exit, Instance, Outcome};

type Path<S> = RewritingPath<<S as RewritingSystem>::Term, <S as RewritingSystem>::Redex>;
type Check<T = ()> = Result<T, String>;

pub fn verify_file(file: &FsPath) -> Outcome {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => return Outcome::fail(exit::INVALID_INPUT, format!("cannot read {}: {e}", file.display())),
    };
    let doc: Document = match serde_json::from_str(&text) {
        Ok(d) => d,
        Err(e) => {
            return Outcome::fail(
                exit::INVALID_INPUT,
                format!("{}: not a witness document: {e}", file.display()),
            )
        }
    };
    let instance = match Instance::from_description(&doc.instance) {
        Ok(i) => i,
        Err(e) => return Outcome::fail(exit::INVALID_INPUT, e),
    };
    let checked = match &instance {
        Instance::Lambda(sys) => verify(sys, &doc),
        Instance::Trs(sys) => verify(sys, &doc),
    };
    match checked {
        Ok(()) => Outcome {
            code: exit::OK,
            stdout: format!("verified {}\n", doc.command),
            stderr: String::new(),
        },
        Err(e) => Outcome::fail(exit::ORACLE_DISAGREEMENT, format!("verification failed: {e}")),
    }
}

fn field<T: DeserializeOwned>(v: &Value, key: &str) -> Check<T> {
    let inner = v.get(key).ok_or_else(|| format!("missing `{key}`"))?;
    serde_json::from_value(inner.clone()).map_err(|e| format!("`{key}`: {e}"))
}

fn config(input: &Value) -> Check<AnalysisConfig> {
    let c = input.get("config").ok_or("missing `config`")?;
    let mut config = AnalysisConfig::default();
    config.engine.fuel = field(c, "fuel")?;
    config.ext_bound = field(c, "ext_bound")?;
    Ok(config)
}

fn ensure(ok: bool, what: &str) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn path_field<S: RewritingSystem>(sys: &S, v: &Value, key: &str) -> Check<Path<S>> {
    let json: PathJson = field(v, key)?;
    path_from_json(sys, &json).map_err(|e| format!("`{key}`: {e}"))
}

fn input_path<S: RewritingSystem>(sys: &S, input: &Value, key: &str) -> Check<Path<S>> {
    let term: String = field(input, "term")?;
    let script: String = field(input, key)?;
    load_path(sys, &term, &script).map_err(|e| e.to_string())
}

/// Replays a trace, checks it starts at `start`, and that it ends in a
/// canonical standard path, which it returns.
fn standard_trace<S: RewritingSystem>(
    sys: &S,
    v: &Value,
    key: &str,
    start: &Path<S>,
    config: &AnalysisConfig,
) -> Check<Path<S>> {
    let json: TraceJson = field(v, key)?;
    let trace = trace_from_json(sys, &json).map_err(|e| format!("`{key}`: {e}"))?;
    ensure(
        trace.start() == start,
        &format!("`{key}` does not start at the input path"),
    )?;
    let end = trace.end().clone();
    ensure(
        is_standard(sys, &end, &config.engine).map_err(|e| e.to_string())?,
        &format!("`{key}` does not end in a standard path"),
    )?;
    ensure(
        canonicalize(sys, &end, &config.engine).map_err(|e| e.to_string())? == end,
        &format!("`{key}` does not end in the canonical representative"),
    )?;
    Ok(end)
}

fn verify<S: RewritingSystem>(sys: &S, doc: &Document) -> Check {
    let (input, result, witness) = (&doc.input, &doc.result, &doc.witness);
    match doc.command.as_str() {
        "standardize" => {
            let config = config(input)?;
            let path = input_path(sys, input, "script")?;
            ensure(
                path_field(sys, result, "path")? == path,
                "recorded path differs from the input",
            )?;
            let end = standard_trace(sys, witness, "trace", &path, &config)?;
            ensure(
                path_field(sys, result, "standard")? == end,
                "recorded standard form differs from the trace end",
            )?;
            let was: bool = field(result, "input_standard")?;
            ensure(
                was == is_standard(sys, &path, &config.engine).map_err(|e| e.to_string())?,
                "recorded standardness of the input is wrong",
            )
        }
        "equiv" => {
            let config = config(input)?;
            let f = input_path(sys, input, "left")?;
            let g = input_path(sys, input, "right")?;
            let sf = standard_trace(sys, witness, "left", &f, &config)?;
            let sg = standard_trace(sys, witness, "right", &g, &config)?;
            ensure(
                path_field(sys, result, "left_standard")? == sf,
                "left standard form differs",
            )?;
            ensure(
                path_field(sys, result, "right_standard")? == sg,
                "right standard form differs",
            )?;
            let equivalent: bool = field(result, "equivalent")?;
            ensure(
                equivalent == (sf == sg),
                "verdict does not follow from the canonical forms",
            )?;
            match witness.get("zigzag") {
                None | Some(Value::Null) => Ok(()),
                Some(z) => verify_zigzag(sys, z, &f, &g, equivalent),
            }
        }
        "factorize" => {
            let config = config(input)?;
            let f = input_path(sys, input, "script")?;
            let e = path_field(sys, result, "external")?;
            let m = path_field(sys, result, "internal")?;
            let recomposed = compose_paths(&e, &m).map_err(|e| e.to_string())?;
            ensure(
                e.source() == f.source(),
                "external part does not start at the input term",
            )?;
            let s1 = standard_trace(sys, witness, "standard", &f, &config)?;
            let s2 = standard_trace(sys, witness, "recomposed", &recomposed, &config)?;
            ensure(s1 == s2, "external·internal is not equivalent to the input")?;
            ensure(
                is_external(sys, &e, &config).map_err(|e| e.to_string())?,
                "external part is not external",
            )?;
            ensure(
                is_internal(sys, &m, &config).map_err(|e| e.to_string())?,
                "internal part is not internal",
            )
        }
        "cone" => {
            let config = config(input)?;
            let term: String = field(input, "term")?;
            let bound: usize = field(input, "path_bound")?;
            let apex = sys.parse_term(&term).map_err(|e| e.to_string())?;
            let recorded: Vec<PathJson> = field(result, "branches")?;
            let branches = recorded
                .iter()
                .map(|b| path_from_json(sys, b).map_err(|e| e.to_string()))
                .collect::<Check<Vec<_>>>()?;
            for (i, b) in branches.iter().enumerate() {
                ensure(
                    b.source() == &apex,
                    &format!("branch {} does not start at the apex", i + 1),
                )?;
                ensure(
                    sys.is_head_value(b.target()),
                    &format!("branch {} does not end in a head value", i + 1),
                )?;
                ensure(
                    is_external(sys, b, &config).map_err(|e| e.to_string())?,
                    &format!("branch {} is not external", i + 1),
                )?;
                for (j, c) in branches.iter().enumerate().take(i) {
                    ensure(b != c, &format!("branches {} and {} coincide", j + 1, i + 1))?;
                }
            }
            let cone = stability_cone(sys, &apex, bound, &config).map_err(|e| e.to_string())?;
            ensure(cone.branches == branches, "recomputed cone differs")?;
            let entries: Vec<Value> = match witness.get("universality") {
                None | Some(Value::Null) => Vec::new(),
                Some(v) => serde_json::from_value(v.clone()).map_err(|e| e.to_string())?,
            };
            for entry in &entries {
                let p = path_field(sys, entry, "path")?;
                let index: usize = field(entry, "branch")?;
                let rest = path_field(sys, entry, "rest")?;
                let branch = branches.get(index.wrapping_sub(1)).ok_or("branch index out of range")?;
                let composite = compose_paths(branch, &rest).map_err(|e| e.to_string())?;
                let s1 = standard_trace(sys, entry, "path_trace", &p, &config)?;
                let s2 = standard_trace(sys, entry, "composite_trace", &composite, &config)?;
                ensure(s1 == s2, "a path is not equivalent to its recorded factorisation")?;
            }
            Ok(())
        }
        "statespace" => {
            let path = input_path(sys, input, "script")?;
            let budget: usize = field(input, "budget")?;
            let space = state_space(sys, &path, budget).map_err(|e| e.to_string())?;
            ensure(
                statespace_json(sys, &space) == *result,
                "recomputed state space differs",
            )
        }
        "tile" => {
            if result.is_null() {
                let term: String = field(input, "term")?;
                let first: String = field(input, "first")?;
                let second: String = field(input, "second")?;
                let t = sys.parse_term(&term).map_err(|e| e.to_string())?;
                let v = sys.parse_redex(&first).map_err(|e| e.to_string())?;
                let u = sys.parse_redex(&second).map_err(|e| e.to_string())?;
                let tiles = sys.tiles_for(&t, &v, &u).map_err(|e| e.to_string())?;
                return ensure(tiles.is_empty(), "a tile exists after all");
            }
            let json: TileJson = serde_json::from_value(result.clone()).map_err(|e| e.to_string())?;
            tile_from_json(sys, &json).map(|_| ()).map_err(|e| e.to_string())
        }
        other => Err(format!("unknown command `{other}`")),
    }
}

fn verify_zigzag<S: RewritingSystem>(sys: &S, z: &Value, f: &Path<S>, g: &Path<S>, equivalent: bool) -> Check {
    let outcome: String = field(z, "outcome")?;
    match outcome.as_str() {
        "found" => {
            let moves: Vec<Value> = field(z, "moves")?;
            let mut at = f.clone();
            for m in &moves {
                let direction: String = field(m, "direction")?;
                let before = path_field(sys, m, "before")?;
                let index: usize = field(m, "index")?;
                let tile: TileJson = field(m, "tile")?;
                let tile = tile_from_json(sys, &tile).map_err(|e| e.to_string())?;
                let app = TileApplication::apply(&before, index, &tile).map_err(|e| e.to_string())?;
                at = match direction.as_str() {
                    "forward" if *app.before() == at => app.after().clone(),
                    "backward" if *app.after() == at => app.before().clone(),
                    _ => return Err("zig-zag moves do not chain".into()),
                };
            }
            ensure(at == *g, "zig-zag does not reach the right path")?;
            ensure(equivalent, "zig-zag found for paths judged not equivalent")
        }
        "exhausted" => ensure(!equivalent, "zig-zag search exhausted for paths judged equivalent"),
        "bound-reached" => Ok(()),
        other => Err(format!("unknown zig-zag outcome `{other}`")),
    }
}
