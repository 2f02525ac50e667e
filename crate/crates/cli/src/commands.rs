use std::fmt::Write as _;

use serde_json::{json, Value};

use ars_core::analysis::{
    enumerate_paths, factor_through_cone, factorize, is_external, stability_cone, AnalysisConfig,
};
use ars_core::engine::{is_standard, standardize, state_space, zigzag_witness, Zigzag, ZigzagDirection, ZigzagSearch};
use ars_core::serial::{path_to_json, tile_to_json, trace_to_json, Document};
use ars_core::{compose_paths, ArsError, RewritingPath, RewritingSystem, StandardisationTrace};

use crate::render::{kind, parse_script, script, state_space_dot, tile_dot};
use crate::{error_code, exit, Command, Format, Instance, Outcome, Session};

type Path<S> = RewritingPath<<S as RewritingSystem>::Term, <S as RewritingSystem>::Redex>;

struct Report {
    code: i32,
    text: String,
    result: Value,
    witness: Value,
    dot: Option<String>,
}

impl Report {
    fn new(text: String, result: Value, witness: Value) -> Self {
        Report {
            code: exit::OK,
            text,
            result,
            witness,
            dot: None,
        }
    }
}

pub(crate) fn config_json(config: &AnalysisConfig) -> Value {
    json!({ "fuel": config.engine.fuel, "ext_bound": config.ext_bound })
}

pub(crate) fn load_path<S: RewritingSystem>(sys: &S, term: &str, text: &str) -> ars_core::Result<Path<S>> {
    let source = sys.parse_term(term)?;
    RewritingPath::from_script(sys, source, &parse_script(sys, text)?)
}

pub fn execute(session: &Session, command: &Command) -> Outcome {
    let (name, input, report) = match &session.instance {
        Instance::Lambda(sys) => dispatch(sys, session, command),
        Instance::Trs(sys) => dispatch(sys, session, command),
    };
    let report = match report {
        Ok(r) => r,
        Err(e) => return Outcome::fail(error_code(&e), format!("error: {e}")),
    };
    let stdout = match session.format {
        Format::Text => report.text,
        Format::Json => {
            let doc = Document {
                instance: session.instance.describe(),
                command: name.into(),
                input,
                result: report.result,
                witness: report.witness,
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("documents serialize");
            s.push('\n');
            s
        }
        Format::Dot => match report.dot {
            Some(dot) => dot,
            None => {
                return Outcome::fail(
                    exit::INVALID_INPUT,
                    format!("error: dot output is available for statespace and tile, not {name}"),
                )
            }
        },
    };
    Outcome {
        code: report.code,
        stdout,
        stderr: String::new(),
    }
}

fn dispatch<S: RewritingSystem>(
    sys: &S,
    session: &Session,
    command: &Command,
) -> (&'static str, Value, ars_core::Result<Report>) {
    let config = config_json(&session.config);
    match command {
        Command::Standardize { term, script } => (
            "standardize",
            json!({ "term": term, "script": script, "config": config }),
            cmd_standardize(sys, session, term, script),
        ),
        Command::Equiv { term, left, right } => (
            "equiv",
            json!({ "term": term, "left": left, "right": right, "config": config }),
            cmd_equiv(sys, session, term, left, right),
        ),
        Command::Factorize { term, script } => (
            "factorize",
            json!({ "term": term, "script": script, "config": config }),
            cmd_factorize(sys, session, term, script),
        ),
        Command::Cone {
            term,
            path_bound,
            check_universal,
        } => (
            "cone",
            json!({
                "term": term,
                "path_bound": path_bound,
                "check_universal": check_universal,
                "config": config,
            }),
            cmd_cone(sys, session, term, *path_bound, *check_universal),
        ),
        Command::Statespace { term, script, budget } => (
            "statespace",
            json!({ "term": term, "script": script, "budget": budget }),
            cmd_statespace(sys, term, script, *budget),
        ),
        Command::Tile { term, first, second } => (
            "tile",
            json!({ "term": term, "first": first, "second": second }),
            cmd_tile(sys, term, first, second),
        ),
    }
}

fn describe_trace<S: RewritingSystem>(sys: &S, trace: &StandardisationTrace<S::Term, S::Redex>, out: &mut String) {
    let irreversible = trace.applications().iter().filter(|a| !a.is_reversible()).count();
    let _ = writeln!(
        out,
        "trace     {} tile application(s), {} irreversible",
        trace.len(),
        irreversible
    );
    for (i, app) in trace.applications().iter().enumerate() {
        let tile = app.tile();
        let _ = writeln!(
            out,
            "  {:>2}. at {}: {} => {}  {}  {}",
            i + 1,
            app.index(),
            script(sys, tile.source()),
            script(sys, tile.target()),
            kind(tile.is_reversible()),
            app.step_ancestor()
        );
        let _ = writeln!(out, "      gives {}", script(sys, app.after()));
    }
    let _ = writeln!(out, "ancestor  {:?}", trace.ancestor().table());
}

fn cmd_standardize<S: RewritingSystem>(sys: &S, session: &Session, term: &str, text: &str) -> ars_core::Result<Report> {
    let path = load_path(sys, term, text)?;
    let was_standard = is_standard(sys, &path, &session.config.engine)?;
    let form = standardize(sys, &path, &session.config.engine)?;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "path      {}  {}",
        sys.render_term(path.source()),
        script(sys, &path)
    );
    let _ = writeln!(out, "target    {}", sys.render_term(path.target()));
    let _ = writeln!(
        out,
        "standard  {}{}",
        script(sys, &form.path),
        if was_standard { "  (input already standard)" } else { "" }
    );
    describe_trace(sys, &form.witness, &mut out);
    Ok(Report::new(
        out,
        json!({
            "path": path_to_json(sys, &path),
            "input_standard": was_standard,
            "standard": path_to_json(sys, &form.path),
        }),
        json!({ "trace": trace_to_json(sys, &form.witness) }),
    ))
}

pub(crate) fn zigzag_json<S: RewritingSystem>(sys: &S, search: &ZigzagSearch<S::Term, S::Redex>) -> Value {
    match search {
        ZigzagSearch::Found(z) => json!({ "outcome": "found", "moves": moves_json(sys, z) }),
        ZigzagSearch::Exhausted { explored } => json!({ "outcome": "exhausted", "explored": explored }),
        ZigzagSearch::BoundReached { explored } => json!({ "outcome": "bound-reached", "explored": explored }),
    }
}

fn moves_json<S: RewritingSystem>(sys: &S, z: &Zigzag<S::Term, S::Redex>) -> Value {
    z.moves
        .iter()
        .map(|m| {
            json!({
                "direction": match m.direction {
                    ZigzagDirection::Forward => "forward",
                    ZigzagDirection::Backward => "backward",
                },
                "before": path_to_json(sys, m.application.before()),
                "index": m.application.index(),
                "tile": tile_to_json(sys, m.application.tile()),
            })
        })
        .collect()
}

fn cmd_equiv<S: RewritingSystem>(
    sys: &S,
    session: &Session,
    term: &str,
    left: &str,
    right: &str,
) -> ars_core::Result<Report> {
    let f = load_path(sys, term, left)?;
    let g = load_path(sys, term, right)?;
    if !f.is_parallel_to(&g) {
        return Err(ArsError::EndpointMismatch(format!(
            "paths end at `{}` and `{}`",
            sys.render_term(f.target()),
            sys.render_term(g.target())
        )));
    }
    let sf = standardize(sys, &f, &session.config.engine)?;
    let sg = standardize(sys, &g, &session.config.engine)?;
    let equivalent = sf.path == sg.path;
    let mut out = String::new();
    let _ = writeln!(out, "{}", if equivalent { "equivalent" } else { "not equivalent" });
    let _ = writeln!(out, "left      {}  standard {}", script(sys, &f), script(sys, &sf.path));
    let _ = writeln!(out, "right     {}  standard {}", script(sys, &g), script(sys, &sg.path));
    let mut code = if equivalent { exit::OK } else { exit::NOT_EQUIVALENT };
    let mut zigzag = Value::Null;
    if let Some(bound) = session.zigzag {
        let search = zigzag_witness(sys, &f, &g, bound)?;
        let verdict = match &search {
            ZigzagSearch::Found(z) => {
                format!("zigzag    found, {} move(s)", z.moves.len())
            }
            ZigzagSearch::Exhausted { explored } => {
                format!("zigzag    none, component of {explored} path(s) exhausted")
            }
            ZigzagSearch::BoundReached { explored } => {
                format!("zigzag    inconclusive, bound {bound} reached after {explored} path(s)")
            }
        };
        let _ = writeln!(out, "{verdict}");
        if search.is_conclusive() {
            let agrees = search.witness().is_some() == equivalent;
            let _ = writeln!(out, "oracle    {}", if agrees { "agrees" } else { "DISAGREES" });
            if !agrees {
                code = exit::ORACLE_DISAGREEMENT;
            }
        }
        zigzag = zigzag_json(sys, &search);
    }
    let mut report = Report::new(
        out,
        json!({
            "equivalent": equivalent,
            "left": path_to_json(sys, &f),
            "right": path_to_json(sys, &g),
            "left_standard": path_to_json(sys, &sf.path),
            "right_standard": path_to_json(sys, &sg.path),
        }),
        json!({
            "left": trace_to_json(sys, &sf.witness),
            "right": trace_to_json(sys, &sg.witness),
            "zigzag": zigzag,
        }),
    );
    report.code = code;
    Ok(report)
}

fn cmd_factorize<S: RewritingSystem>(sys: &S, session: &Session, term: &str, text: &str) -> ars_core::Result<Report> {
    let f = load_path(sys, term, text)?;
    let fact = factorize(sys, &f, &session.config)?;
    let recomposed = compose_paths(&fact.external, &fact.internal)?;
    let again = standardize(sys, &recomposed, &session.config.engine)?;
    let mut out = String::new();
    let _ = writeln!(out, "path      {}  {}", sys.render_term(f.source()), script(sys, &f));
    let _ = writeln!(
        out,
        "external  {}  to {}",
        script(sys, &fact.external),
        sys.render_term(fact.external.target())
    );
    let _ = writeln!(out, "internal  {}", script(sys, &fact.internal));
    let _ = writeln!(
        out,
        "checks    external and internal up to continuations of length {}",
        session.config.ext_bound
    );
    let _ = writeln!(
        out,
        "standard  {}  (shared by the path and external·internal)",
        script(sys, &fact.witness.path)
    );
    Ok(Report::new(
        out,
        json!({
            "path": path_to_json(sys, &f),
            "external": path_to_json(sys, &fact.external),
            "internal": path_to_json(sys, &fact.internal),
        }),
        json!({
            "standard": trace_to_json(sys, &fact.witness.witness),
            "recomposed": trace_to_json(sys, &again.witness),
        }),
    ))
}

fn cmd_cone<S: RewritingSystem>(
    sys: &S,
    session: &Session,
    term: &str,
    path_bound: usize,
    check_universal: Option<usize>,
) -> ars_core::Result<Report> {
    let apex = sys.parse_term(term)?;
    let cone = stability_cone(sys, &apex, path_bound, &session.config)?;
    let mut out = String::new();
    let _ = writeln!(out, "apex      {}", sys.render_term(&apex));
    let _ = writeln!(out, "branches  {}", cone.branches.len());
    for (i, b) in cone.branches.iter().enumerate() {
        let external = is_external(sys, b, &session.config)?;
        let _ = writeln!(
            out,
            "  {}. {}  to {}{}",
            i + 1,
            script(sys, b),
            sys.render_term(b.target()),
            if external { "" } else { "  (NOT external)" }
        );
    }
    let mut code = exit::OK;
    let mut universality = Value::Null;
    if let Some(n) = check_universal {
        let mut entries = Vec::new();
        let mut failures = 0;
        let paths: Vec<Path<S>> = enumerate_paths(sys, &apex, n, session.config.enumeration_budget)?
            .into_iter()
            .filter(|p| sys.is_head_value(p.target()))
            .collect();
        for p in &paths {
            match factor_through_cone(sys, p, &cone, n, &session.config) {
                Ok(factor) => {
                    let composite = compose_paths(&cone.branches[factor.index], &factor.rest)?;
                    entries.push(json!({
                        "path": path_to_json(sys, p),
                        "branch": factor.index + 1,
                        "rest": path_to_json(sys, &factor.rest),
                        "path_trace": trace_to_json(sys, &standardize(sys, p, &session.config.engine)?.witness),
                        "composite_trace": trace_to_json(sys, &standardize(sys, &composite, &session.config.engine)?.witness),
                    }));
                }
                Err(e) if error_code(&e) == exit::FACTORISATION_FAILURE => {
                    failures += 1;
                    let _ = writeln!(out, "  FAIL {}: {e}", script(sys, p));
                }
                Err(e) => return Err(e),
            }
        }
        let _ = writeln!(
            out,
            "universal {} of {} path(s) to head values of length <= {n} factor uniquely",
            paths.len() - failures,
            paths.len()
        );
        if failures > 0 {
            code = exit::FACTORISATION_FAILURE;
        }
        universality = Value::Array(entries);
    }
    let mut report = Report::new(
        out,
        json!({ "branches": cone.branches.iter().map(|b| path_to_json(sys, b)).collect::<Vec<_>>() }),
        json!({ "universality": universality }),
    );
    report.code = code;
    Ok(report)
}

pub(crate) fn statespace_json<S: RewritingSystem>(
    sys: &S,
    space: &ars_core::engine::StateSpace<S::Term, S::Redex>,
) -> Value {
    json!({
        "nodes": space.nodes.iter().map(|p| script(sys, p)).collect::<Vec<_>>(),
        "edges": space.edges.iter().map(|e| json!({
            "from": e.from,
            "to": e.to,
            "index": e.index,
            "reversible": e.reversible,
        })).collect::<Vec<_>>(),
    })
}

fn cmd_statespace<S: RewritingSystem>(sys: &S, term: &str, text: &str, budget: usize) -> ars_core::Result<Report> {
    let path = load_path(sys, term, text)?;
    let space = state_space(sys, &path, budget)?;
    let mut out = String::new();
    let _ = writeln!(out, "nodes     {}", space.nodes.len());
    for (i, p) in space.nodes.iter().enumerate() {
        let _ = writeln!(out, "  n{i} {}", script(sys, p));
    }
    let _ = writeln!(out, "edges     {}", space.edges.len());
    for e in &space.edges {
        let _ = writeln!(out, "  n{} -> n{} at {} {}", e.from, e.to, e.index, kind(e.reversible));
    }
    let mut report = Report::new(
        out,
        statespace_json(sys, &space),
        json!({ "nodes": space.nodes.iter().map(|p| path_to_json(sys, p)).collect::<Vec<_>>() }),
    );
    report.dot = Some(state_space_dot(sys, &space));
    Ok(report)
}

fn cmd_tile<S: RewritingSystem>(sys: &S, term: &str, first: &str, second: &str) -> ars_core::Result<Report> {
    let source = sys.parse_term(term)?;
    let (v, u) = (sys.parse_redex(first)?, sys.parse_redex(second)?);
    let tile = sys.tiles_for(&source, &v, &u)?.into_iter().next();
    let Some(tile) = tile else {
        let mut report = Report::new("no tile\n".into(), Value::Null, Value::Null);
        report.code = exit::NOT_EQUIVALENT;
        return Ok(report);
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        "source    {}  {}",
        sys.render_term(&source),
        script(sys, tile.source())
    );
    let _ = writeln!(out, "target    {}", script(sys, tile.target()));
    let _ = writeln!(out, "ends at   {}", sys.render_term(tile.target().target()));
    let _ = writeln!(out, "kind      {}", kind(tile.is_reversible()));
    let _ = writeln!(out, "ancestor  {}", tile.ancestor());
    let mut report = Report::new(
        out,
        serde_json::to_value(tile_to_json(sys, &tile)).expect("tiles serialize"),
        Value::Null,
    );
    report.dot = Some(tile_dot(sys, &tile));
    Ok(report)
}
