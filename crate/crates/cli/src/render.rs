use ars_core::engine::StateSpace;
use ars_core::{PermutationTile, RewritingPath, RewritingSystem};

pub fn script<S: RewritingSystem>(sys: &S, path: &RewritingPath<S::Term, S::Redex>) -> String {
    let parts: Vec<String> = path.steps().iter().map(|s| sys.render_redex(s.redex())).collect();
    format!("[{}]", parts.join(", "))
}

pub fn parse_script<S: RewritingSystem>(sys: &S, text: &str) -> ars_core::Result<Vec<S::Redex>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| sys.parse_redex(s))
        .collect()
}

pub fn kind(reversible: bool) -> &'static str {
    if reversible {
        "reversible"
    } else {
        "irreversible"
    }
}

fn quote(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        if c == '\\' || c == '"' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

pub fn state_space_dot<S: RewritingSystem>(sys: &S, space: &StateSpace<S::Term, S::Redex>) -> String {
    let mut out = String::from("digraph statespace {\n  rankdir=LR;\n  node [shape=box, fontname=\"monospace\"];\n");
    for (i, p) in space.nodes.iter().enumerate() {
        out.push_str(&format!("  n{i} [label={}];\n", quote(&script(sys, p))));
    }
    for e in &space.edges {
        let style = if e.reversible { "dashed" } else { "solid" };
        out.push_str(&format!(
            "  n{} -> n{} [label={}, style={style}];\n",
            e.from,
            e.to,
            quote(&format!("@{} {}", e.index, kind(e.reversible)))
        ));
    }
    out.push_str("}\n");
    out
}

/// The tile as a square: the source path along the top, the target path
/// along the bottom, sharing both corners.
pub fn tile_dot<S: RewritingSystem>(sys: &S, tile: &PermutationTile<S::Term, S::Redex>) -> String {
    let mut out = String::from("digraph tile {\n  rankdir=LR;\n  node [shape=plaintext, fontname=\"monospace\"];\n");
    out.push_str(&format!(
        "  label={};\n",
        quote(&format!("{} {}", kind(tile.is_reversible()), tile.ancestor()))
    ));
    let src = tile.source();
    let tgt = tile.target();
    out.push_str(&format!("  m [label={}];\n", quote(&sys.render_term(src.source()))));
    out.push_str(&format!(
        "  s1 [label={}];\n",
        quote(&sys.render_term(src.step(1).target()))
    ));
    out.push_str(&format!("  p [label={}];\n", quote(&sys.render_term(src.target()))));
    for k in 1..tgt.len() {
        out.push_str(&format!(
            "  t{k} [label={}];\n",
            quote(&sys.render_term(tgt.step(k).target()))
        ));
    }
    out.push_str(&format!(
        "  m -> s1 [label={}];\n",
        quote(&sys.render_redex(src.step(1).redex()))
    ));
    out.push_str(&format!(
        "  s1 -> p [label={}];\n",
        quote(&sys.render_redex(src.step(2).redex()))
    ));
    for k in 1..=tgt.len() {
        let from = if k == 1 { "m".to_string() } else { format!("t{}", k - 1) };
        let to = if k == tgt.len() {
            "p".to_string()
        } else {
            format!("t{k}")
        };
        out.push_str(&format!(
            "  {from} -> {to} [label={}, style=dashed];\n",
            quote(&sys.render_redex(tgt.step(k).redex()))
        ));
    }
    out.push_str("}\n");
    out
}
