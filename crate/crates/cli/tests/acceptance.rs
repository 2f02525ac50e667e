//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p ars-cli --test acceptance`. The process fails if
//! any criterion fails, except checks listed as known failures (printed as
//! `FAIL (known)`), whose analysis is in the README.

use std::collections::BTreeMap;
use std::path::{Path as FsPath, PathBuf};
use std::process::Command;
use std::time::Instant;

use rand::Rng;

use ars_core::analysis::{
    enumerate_paths, factor_through_cone, factorize, factorize_with, is_external, is_internal, stability_cone,
    AnalysisConfig, SearchOrder,
};
use ars_core::corpus::{ground_terms, random_lambda_path, random_reducible_term, rng};
use ars_core::engine::{equivalent, explore_strategies, is_standard, standardize, zigzag_witness, ZigzagSearch};
use ars_core::lambda::{LambdaSystem, LambdaTerm};
use ars_core::memo::Memoized;
use ars_core::oracle::{head_reduction, is_classically_standard};
use ars_core::trs::{TrsSystem, TrsTerm};
use ars_core::{
    compose_paths, OrientationPolicy, PermutationTile, Residuals, RewritingPath, RewritingSystem, StandardisationTrace,
    TileApplication,
};

type Path<S> = RewritingPath<<S as RewritingSystem>::Term, <S as RewritingSystem>::Redex>;
type Tile<S> = PermutationTile<<S as RewritingSystem>::Term, <S as RewritingSystem>::Redex>;

const LAMBDA_MAX_SIZE: usize = 12;
/// Ground por terms of this depth or less are the sources of the tile suite.
const POR_TILE_DEPTH: usize = 3;
/// Ground por terms of this depth or less are the sources of the path suites.
const POR_PATH_DEPTH: usize = 2;

#[derive(Default)]
struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn fail(&mut self, what: String) {
        self.checked += 1;
        self.failures.push(what);
    }
}

struct Line {
    id: &'static str,
    title: &'static str,
    ok: bool,
    known: bool,
    detail: String,
    first_failures: Vec<String>,
}

fn line(id: &'static str, title: &'static str, tally: &Tally, detail: String) -> Line {
    Line {
        id,
        title,
        ok: tally.failures.is_empty(),
        known: false,
        detail,
        first_failures: tally.failures.iter().take(3).cloned().collect(),
    }
}

fn script<S: RewritingSystem>(sys: &S, p: &Path<S>) -> String {
    let parts: Vec<String> = p.steps().iter().map(|s| sys.render_redex(s.redex())).collect();
    format!("{} [{}]", sys.render_term(p.source()), parts.join(", "))
}

fn config() -> AnalysisConfig {
    AnalysisConfig::default()
}

fn lambda() -> Memoized<LambdaSystem> {
    Memoized::new(LambdaSystem::default())
}

fn por() -> Memoized<TrsSystem> {
    Memoized::new(TrsSystem::parallel_or())
}

fn lambda_paths(seed: u64, n: usize, max_len: usize) -> Vec<Path<LambdaSystem>> {
    let sys = LambdaSystem::default();
    let mut g = rng(seed);
    (0..n)
        .map(|_| random_lambda_path(&sys, &mut g, LAMBDA_MAX_SIZE, max_len))
        .collect()
}

fn por_paths(sys: &Memoized<TrsSystem>, max_len: usize) -> Vec<Path<TrsSystem>> {
    ground_terms(sys.inner().signature(), POR_PATH_DEPTH)
        .iter()
        .flat_map(|t| enumerate_paths(sys, t, max_len, 1_000_000).expect("small corpus"))
        .filter(|p| !p.is_empty())
        .collect()
}

// 1 and 4 ------------------------------------------------------------------

fn tiles_of<S: RewritingSystem>(sys: &S, term: &S::Term, tally: &mut Tally, reversible: &mut Vec<Tile<S>>) {
    let redexes = sys.redexes(term);
    for v in &redexes {
        for u in redexes.iter().filter(|u| *u != v) {
            let residuals = match sys.residuals(term, v, u) {
                Ok(Residuals::Copies(r)) => r,
                Ok(Residuals::Conflict) => continue,
                Err(e) => {
                    tally.fail(format!("residuals in {}: {e}", sys.render_term(term)));
                    continue;
                }
            };
            for u2 in residuals {
                let tiles = match sys.tiles_for(term, v, &u2) {
                    Ok(t) => t,
                    Err(e) => {
                        tally.fail(format!("tile_for in {}: {e}", sys.render_term(term)));
                        continue;
                    }
                };
                for tile in tiles {
                    let (s, t) = (tile.source(), tile.target());
                    let ok = s.source() == term
                        && t.source() == term
                        && s.target() == t.target()
                        && s.validate(sys).is_ok()
                        && t.validate(sys).is_ok()
                        && s.script() == vec![v.clone(), u2.clone()]
                        && tile.ancestor().domain() == t.len();
                    tally.check(ok, || format!("tile {} => {}", script(sys, s), script(sys, t)));
                    if tile.is_reversible() {
                        reversible.push(tile);
                    }
                }
            }
        }
    }
}

fn reversible_laws<S: RewritingSystem>(sys: &S, tiles: &[Tile<S>], tally: &mut Tally) {
    for tile in tiles {
        let what = || format!("reversible tile {}", script(sys, tile.source()));
        let Some(inverse) = tile.inverse() else {
            tally.fail(what());
            continue;
        };
        let first = inverse.source().step(1);
        let generated = sys
            .tiles_for(first.source(), first.redex(), inverse.source().step(2).redex())
            .map(|ts| ts.contains(&inverse))
            .unwrap_or(false);
        let round_trip = TileApplication::apply(tile.source(), 1, tile)
            .and_then(|a| {
                let b = TileApplication::apply(a.after(), 1, &inverse)?;
                StandardisationTrace::new(tile.source().clone(), vec![a, b])
            })
            .map(|trace| trace.end() == tile.source() && trace.ancestor().is_identity())
            .unwrap_or(false);
        tally.check(generated && round_trip, what);
    }
}

fn criteria_1_and_4() -> (Line, Line) {
    let lam = lambda();
    let trs = por();
    let mut g = rng(1);
    let terms: Vec<LambdaTerm> = (0..500)
        .map(|_| random_reducible_term(&mut g, LAMBDA_MAX_SIZE))
        .collect();
    let por_terms: Vec<TrsTerm> = ground_terms(trs.inner().signature(), POR_TILE_DEPTH);
    let mut tally = Tally::default();
    let (mut rev_l, mut rev_t) = (Vec::new(), Vec::new());
    for t in &terms {
        tiles_of(&lam, t, &mut tally, &mut rev_l);
    }
    for t in &por_terms {
        tiles_of(&trs, t, &mut tally, &mut rev_t);
    }
    let one = line(
        "1",
        "tile-square commutation",
        &tally,
        format!(
            "{} failures over {} tiles ({} λ-terms, {} por terms)",
            tally.failures.len(),
            tally.checked,
            terms.len(),
            por_terms.len()
        ),
    );
    let mut laws = Tally::default();
    reversible_laws(&lam, &rev_l, &mut laws);
    reversible_laws(&trs, &rev_t, &mut laws);
    let four = line(
        "4",
        "reversible-pair laws",
        &laws,
        format!(
            "{} failures over {} reversible tiles",
            laws.failures.len(),
            laws.checked
        ),
    );
    (one, four)
}

// 2 and 3 ------------------------------------------------------------------

fn existence<S: RewritingSystem>(sys: &S, paths: &[Path<S>], cfg: &AnalysisConfig, tally: &mut Tally) {
    for p in paths {
        match standardize(sys, p, &cfg.engine) {
            Ok(form) => {
                let ok = form.path.is_parallel_to(p)
                    && form.witness.start() == p
                    && is_standard(sys, &form.path, &cfg.engine).unwrap_or(false);
                tally.check(ok, || format!("standardize {}", script(sys, p)));
            }
            Err(e) => tally.fail(format!("standardize {}: {e}", script(sys, p))),
        }
    }
}

fn uniqueness<S: RewritingSystem>(sys: &S, paths: &[Path<S>], cfg: &AnalysisConfig, tally: &mut Tally) -> usize {
    let mut truncated = 0;
    for p in paths {
        let reference = match standardize(sys, p, &cfg.engine) {
            Ok(f) => f,
            Err(e) => {
                tally.fail(format!("standardize {}: {e}", script(sys, p)));
                continue;
            }
        };
        match explore_strategies(sys, p, &cfg.engine, 200) {
            Ok(ex) => {
                truncated += usize::from(ex.truncated);
                let ok = ex
                    .outcomes
                    .iter()
                    .all(|t| t.end() == &reference.path && t.ancestor() == reference.witness.ancestor());
                tally.check(ok && !ex.outcomes.is_empty(), || {
                    format!("strategies from {} disagree", script(sys, p))
                });
            }
            Err(e) => tally.fail(format!("strategies from {}: {e}", script(sys, p))),
        }
    }
    truncated
}

fn criteria_2_and_3() -> (Line, Line) {
    let cfg = config();
    let lam = lambda();
    let trs = por();
    let lpaths = lambda_paths(2, 500, 6);
    let ppaths = por_paths(&trs, 5);
    let mut t2 = Tally::default();
    existence(&lam, &lpaths, &cfg, &mut t2);
    existence(&trs, &ppaths, &cfg, &mut t2);
    let two = line(
        "2",
        "standardisation existence",
        &t2,
        format!(
            "{} failures over {} λ and {} por paths",
            t2.failures.len(),
            lpaths.len(),
            ppaths.len()
        ),
    );
    let mut t3 = Tally::default();
    let cut = uniqueness(&lam, &lpaths, &cfg, &mut t3) + uniqueness(&trs, &ppaths, &cfg, &mut t3);
    let three = line(
        "3",
        "standardisation uniqueness",
        &t3,
        format!(
            "{} discrepancies over {} paths ({} explorations hit the 200-branch cap)",
            t3.failures.len(),
            t3.checked,
            cut
        ),
    );
    (two, three)
}

// 5 ------------------------------------------------------------------------

fn compare_with_zigzag<S: RewritingSystem>(
    sys: &S,
    f: &Path<S>,
    g: &Path<S>,
    cfg: &AnalysisConfig,
    tally: &mut Tally,
    inconclusive: &mut usize,
    equivalent_pairs: &mut usize,
) {
    let decided = match equivalent(sys, f, g, &cfg.engine) {
        Ok(b) => b,
        Err(e) => return tally.fail(format!("equivalent {} / {}: {e}", script(sys, f), script(sys, g))),
    };
    *equivalent_pairs += usize::from(decided);
    match zigzag_witness(sys, f, g, 12) {
        Ok(ZigzagSearch::BoundReached { .. }) => *inconclusive += 1,
        Ok(search) => {
            let found = search.witness().is_some();
            tally.check(found == decided, || {
                format!(
                    "{} vs {}: decided {decided}, zigzag {found}",
                    script(sys, f),
                    script(sys, g)
                )
            });
        }
        Err(e) => tally.fail(format!("zigzag {}: {e}", script(sys, f))),
    }
}

fn lambda_pairs(seed: u64, n: usize) -> Vec<(Path<LambdaSystem>, Path<LambdaSystem>)> {
    let sys = Memoized::new(LambdaSystem::default());
    let mut g = rng(seed);
    let mut pairs = Vec::new();
    while pairs.len() < n {
        let t = random_reducible_term(&mut g, LAMBDA_MAX_SIZE);
        let Ok(paths) = enumerate_paths(&sys, &t, 4, 5_000) else {
            continue;
        };
        let mut by_target: BTreeMap<String, Vec<&Path<LambdaSystem>>> = BTreeMap::new();
        for p in paths.iter().filter(|p| !p.is_empty()) {
            by_target.entry(sys.render_term(p.target())).or_default().push(p);
        }
        let groups: Vec<&Vec<&Path<LambdaSystem>>> = by_target.values().filter(|v| v.len() >= 2).collect();
        if groups.is_empty() {
            continue;
        }
        let group = groups[g.gen_range(0..groups.len())];
        let i = g.gen_range(0..group.len());
        let mut j = g.gen_range(0..group.len() - 1);
        if j >= i {
            j += 1;
        }
        pairs.push((group[i].clone(), group[j].clone()));
    }
    pairs
}

fn criterion_5() -> Line {
    let cfg = config();
    let lam = lambda();
    let trs = por();
    let mut tally = Tally::default();
    let (mut inconclusive, mut eq) = (0, 0);
    let pairs = lambda_pairs(5, 300);
    for (f, g) in &pairs {
        compare_with_zigzag(&lam, f, g, &cfg, &mut tally, &mut inconclusive, &mut eq);
    }
    let ppaths = por_paths(&trs, 4);
    let mut por_pairs = 0;
    for (i, f) in ppaths.iter().enumerate() {
        for g in &ppaths[i + 1..] {
            if f.is_parallel_to(g) {
                por_pairs += 1;
                compare_with_zigzag(&trs, f, g, &cfg, &mut tally, &mut inconclusive, &mut eq);
            }
        }
    }
    line(
        "5",
        "equivalence vs zig-zag oracle",
        &tally,
        format!(
            "{} disagreements over {} conclusive pairs ({} λ pairs, {por_pairs} por pairs, {eq} equivalent, {inconclusive} inconclusive)",
            tally.failures.len(),
            tally.checked,
            pairs.len()
        ),
    )
}

// 6 ------------------------------------------------------------------------

fn criterion_6() -> Line {
    let cfg = config();
    let sys = Memoized::new(LambdaSystem::new(OrientationPolicy::Leftmost));
    let mut tally = Tally::default();
    let mut standard = 0;
    for p in lambda_paths(6, 500, 6) {
        let classical = is_classically_standard(p.source(), &p.script());
        let engine = is_standard(&sys, &p, &cfg.engine);
        standard += usize::from(classical == Some(true));
        tally.check(matches!((&engine, classical), (Ok(a), Some(b)) if *a == b), || {
            format!("{}: engine {:?}, classical {:?}", script(&sys, &p), engine, classical)
        });
    }
    line(
        "6",
        "classical standardness under the leftmost policy",
        &tally,
        format!(
            "{} disagreements over {} λ paths ({standard} classically standard)",
            tally.failures.len(),
            tally.checked
        ),
    )
}

// 7 ------------------------------------------------------------------------

fn factorisation<S: RewritingSystem>(sys: &S, f: &Path<S>, cfg: &AnalysisConfig, tally: &mut Tally) -> Option<Path<S>> {
    let what = |msg: &str| format!("{}: {msg}", script(sys, f));
    let fact = match factorize(sys, f, cfg) {
        Ok(x) => x,
        Err(e) => {
            tally.fail(what(&e.to_string()));
            return None;
        }
    };
    let (e, m) = (&fact.external, &fact.internal);
    let recomposed = compose_paths(e, m).expect("factorisation parts compose");
    let checks = is_external(sys, e, cfg).unwrap_or(false)
        && is_internal(sys, m, cfg).unwrap_or(false)
        && equivalent(sys, f, &recomposed, &cfg.engine).unwrap_or(false);
    tally.check(checks, || what("postconditions"));
    match factorize_with(sys, f, cfg, SearchOrder::Reverse) {
        Ok(other) => {
            let same = other.external.is_parallel_to(e)
                && equivalent(sys, e, &other.external, &cfg.engine).unwrap_or(false)
                && equivalent(sys, m, &other.internal, &cfg.engine).unwrap_or(false);
            tally.check(same, || what("search orders disagree"));
        }
        Err(err) => tally.fail(what(&err.to_string())),
    }
    Some(fact.external)
}

fn criterion_7() -> Vec<Line> {
    let cfg = config();
    let lam = lambda();
    let trs = por();
    let mut tally = Tally::default();
    let mut literal = Tally::default();
    let mut prefix = Tally::default();
    let lpaths = lambda_paths(7, 200, 6);
    for f in &lpaths {
        let Some(e) = factorisation(&lam, f, &cfg, &mut tally) else {
            continue;
        };
        if !f.target().is_head_normal_form() {
            continue;
        }
        let (head, reached) = head_reduction(f.source(), 64);
        if !reached {
            prefix.fail(format!("{}: no head normal form by head reduction", script(&lam, f)));
            continue;
        }
        literal.check(e.len() == head.len(), || {
            format!("{}: |e| = {}, head reduction {}", script(&lam, f), e.len(), head.len())
        });
        let std_e = standardize(&lam, &e, &cfg.engine).map(|s| s.path.script());
        prefix.check(
            std_e
                .as_ref()
                .is_ok_and(|s| s.len() >= head.len() && s[..head.len()] == head[..]),
            || format!("{}: e does not begin with the head reduction", script(&lam, f)),
        );
    }
    let ppaths = por_paths(&trs, 5);
    for f in &ppaths {
        factorisation(&trs, f, &cfg, &mut tally);
    }
    let main = line(
        "7",
        "factorisation",
        &tally,
        format!(
            "{} failures over {} checks ({} λ paths, {} por paths)",
            tally.failures.len(),
            tally.checked,
            lpaths.len(),
            ppaths.len()
        ),
    );
    let mut lit = line(
        "7b",
        "λ cross-check: |e| equals the head-reduction length",
        &literal,
        format!(
            "{} mismatches over {} paths ending in head normal forms",
            literal.failures.len(),
            literal.checked
        ),
    );
    lit.known = true;
    let pre = line(
        "7c",
        "λ cross-check: e begins with the full head reduction",
        &prefix,
        format!(
            "{} failures over {} paths ending in head normal forms",
            prefix.failures.len(),
            prefix.checked
        ),
    );
    vec![main, lit, pre]
}

// 8 ------------------------------------------------------------------------

fn criterion_8() -> Line {
    let cfg = config();
    let trs = por();
    let mut tally = Tally::default();
    let apex = trs.parse_term("por(a,b)").expect("por(a,b) parses");
    match stability_cone(&trs, &apex, 4, &cfg) {
        Ok(cone) => {
            tally.check(cone.branches.len() == 2, || {
                format!("por cone has {} branches", cone.branches.len())
            });
            for (i, b) in cone.branches.iter().enumerate() {
                tally.check(is_external(&trs, b, &cfg).unwrap_or(false), || {
                    format!("branch {i} not external")
                });
            }
            let paths = enumerate_paths(&trs, &apex, 5, cfg.enumeration_budget).expect("small");
            for f in paths.iter().filter(|p| trs.is_head_value(p.target())) {
                let r = factor_through_cone(&trs, f, &cone, 5, &cfg);
                tally.check(r.is_ok(), || format!("{}: {:?}", script(&trs, f), r.err()));
            }
        }
        Err(e) => tally.fail(format!("por cone: {e}")),
    }
    let por_checks = tally.checked;
    let lam = lambda();
    let mut g = rng(8);
    let mut terms = 0;
    while terms < 100 {
        let t = random_reducible_term(&mut g, LAMBDA_MAX_SIZE);
        let (head, reached) = head_reduction(&t, 6);
        if !reached {
            continue;
        }
        terms += 1;
        lam.clear();
        match stability_cone(&lam, &t, 6, &cfg) {
            Ok(cone) => {
                let ok = cone.branches.len() == 1 && cone.branches[0].script() == head;
                tally.check(ok, || {
                    let got: Vec<String> = cone.branches.iter().map(|b| script(&lam, b)).collect();
                    format!("{}: cone {:?}", lam.render_term(&t), got)
                });
            }
            Err(e) => tally.fail(format!("{}: {e}", lam.render_term(&t))),
        }
    }
    line(
        "8",
        "stability cones",
        &tally,
        format!(
            "{} violations ({por_checks} por checks, {terms} λ cones)",
            tally.failures.len()
        ),
    )
}

// 9 ------------------------------------------------------------------------

fn ars() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ars"))
}

fn golden(name: &str) -> PathBuf {
    FsPath::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Commands whose JSON witnesses must re-verify.
pub fn witness_corpus() -> Vec<Vec<&'static str>> {
    let dup = r"(\x. x x) ((\z. z) y)";
    let eq1 = r"((\z. z) a) ((\z. z) b)";
    let arg = r"(\x. x) ((\z. z) y)";
    vec![
        vec!["standardize", dup, "R, ε"],
        vec!["standardize", dup, ""],
        vec!["standardize", arg, "R ε"],
        vec!["--policy", "leftmost", "standardize", eq1, "R L"],
        vec!["equiv", eq1, "L R", "R L", "--zigzag", "12"],
        vec!["equiv", dup, "R ε", "ε L R", "--zigzag", "12"],
        vec!["equiv", dup, "R ε", "R ε"],
        vec!["factorize", arg, "R"],
        vec!["factorize", arg, "R ε"],
        vec!["factorize", r"(\x. x) (\y. y) z", "L ε"],
        vec!["cone", r"(\x. x) y"],
        vec!["cone", "y"],
        vec!["cone", arg, "--check-universal", "3"],
        vec!["statespace", dup, "R ε"],
        vec!["statespace", eq1, "L R"],
        vec!["statespace", eq1, ""],
        vec!["tile", dup, "R", "ε"],
        vec!["tile", eq1, "R", "L"],
        vec!["tile", dup, "ε", "L"],
        vec![
            "--instance",
            "trs",
            "equiv",
            "por(a,b)",
            "1/r3 2/r4 ε/r1",
            "1/r3 2/r4 ε/r2",
            "--zigzag",
            "12",
        ],
        vec![
            "--instance",
            "trs",
            "equiv",
            "por(a,b)",
            "1/r3 2/r4 ε/r1",
            "2/r4 1/r3 ε/r1",
            "--zigzag",
            "12",
        ],
        vec!["--instance", "trs", "standardize", "por(a,b)", "2/r4 1/r3 ε/r1"],
        vec!["--instance", "trs", "factorize", "por(a,b)", "1/r3 2/r4 ε/r1"],
        vec!["--instance", "trs", "cone", "por(a,b)", "--check-universal", "5"],
        vec!["--instance", "trs", "cone", "T"],
        vec!["--instance", "trs", "statespace", "por(a,b)", "1/r3 2/r4"],
        vec!["--instance", "trs", "tile", "por(T,b)", "2/r4", "ε/r1"],
    ]
}

fn criterion_9() -> Line {
    let mut tally = Tally::default();
    let dir = tempfile::tempdir().expect("temporary directory");
    for (i, args) in witness_corpus().iter().enumerate() {
        let out = ars().args(args).args(["--format", "json"]).output().expect("ars runs");
        let code = out.status.code().unwrap_or(-1);
        if ![0, 1].contains(&code) {
            tally.fail(format!(
                "{args:?} exited {code}: {}",
                String::from_utf8_lossy(&out.stderr)
            ));
            continue;
        }
        let file = dir.path().join(format!("witness-{i}.json"));
        std::fs::write(&file, &out.stdout).expect("write witness");
        let v = ars().arg("--verify").arg(&file).output().expect("ars runs");
        tally.check(v.status.code() == Some(0), || {
            format!("{args:?} does not re-verify: {}", String::from_utf8_lossy(&v.stderr))
        });
    }
    let goldens: [(&str, Vec<&str>); 2] = [
        (
            "square.dot",
            vec!["statespace", r"((\z. z) a) ((\z. z) b)", "L R", "--format", "dot"],
        ),
        (
            "duplication_tile.dot",
            vec!["tile", r"(\x. x x) ((\z. z) y)", "R", "ε", "--format", "dot"],
        ),
    ];
    for (name, args) in goldens {
        let out = ars().args(&args).output().expect("ars runs");
        let expected = std::fs::read(golden(name)).unwrap_or_default();
        tally.check(out.status.success() && out.stdout == expected, || {
            format!("{name} differs from golden")
        });
    }
    line(
        "9",
        "CLI round-trip",
        &tally,
        format!(
            "{} failures over {} witnesses and golden files",
            tally.failures.len(),
            tally.checked
        ),
    )
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_secs_f64())
}

fn main() {
    // `cargo test` passes harness flags such as `--quiet`; only a name filter matters here.
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let wanted = |id: &str| filter.is_empty() || filter.iter().any(|f| f == id);
    let mut lines: Vec<(Line, f64)> = Vec::new();
    if wanted("1") || wanted("4") {
        let ((one, four), secs) = timed(criteria_1_and_4);
        lines.push((one, secs));
        lines.push((four, 0.0));
    }
    if wanted("2") || wanted("3") {
        let ((two, three), secs) = timed(criteria_2_and_3);
        lines.push((two, secs));
        lines.push((three, 0.0));
    }
    if wanted("5") {
        let (l, s) = timed(criterion_5);
        lines.push((l, s));
    }
    if wanted("6") {
        let (l, s) = timed(criterion_6);
        lines.push((l, s));
    }
    if wanted("7") {
        let (ls, s) = timed(criterion_7);
        for (i, l) in ls.into_iter().enumerate() {
            lines.push((l, if i == 0 { s } else { 0.0 }));
        }
    }
    if wanted("8") {
        let (l, s) = timed(criterion_8);
        lines.push((l, s));
    }
    if wanted("9") {
        let (l, s) = timed(criterion_9);
        lines.push((l, s));
    }
    lines.sort_by_key(|(l, _)| {
        (
            l.id.trim_end_matches(char::is_alphabetic).parse::<u32>().unwrap_or(0),
            l.id,
        )
    });
    let mut unexpected = 0;
    for (l, secs) in &lines {
        let verdict = match (l.ok, l.known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => {
                unexpected += 1;
                "FAIL"
            }
        };
        let time = if *secs > 0.0 {
            format!(" [{secs:.1}s]")
        } else {
            String::new()
        };
        println!("{verdict} criterion {}: {}: {}{time}", l.id, l.title, l.detail);
        for f in &l.first_failures {
            println!("    e.g. {f}");
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} acceptance criteria failed");
        std::process::exit(1);
    }
}
