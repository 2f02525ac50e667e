//! Seeded test inputs: random λ-terms and paths, and exhaustive ground terms
//! over a TRS signature.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::lambda::{LambdaPath, LambdaSystem, LambdaTerm};
use crate::path::RewritingPath;
use crate::system::RewritingSystem;
use crate::trs::{Signature, TrsTerm};

const FREE_NAMES: [&str; 3] = ["a", "b", "y"];

/// Paths stop growing once their target exceeds this size.
const TERM_SIZE_CAP: usize = 80;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A closed-or-open λ-term of exactly `size` nodes (`size >= 1`), biased
/// towards redexes.
pub fn random_lambda_term<G: Rng>(rng: &mut G, size: usize) -> LambdaTerm {
    gen(rng, size.max(1), 0)
}

fn gen<G: Rng>(rng: &mut G, size: usize, binders: usize) -> LambdaTerm {
    match size {
        1 => {
            if binders > 0 && rng.gen_bool(0.75) {
                LambdaTerm::var(rng.gen_range(0..binders))
            } else {
                LambdaTerm::free(FREE_NAMES.choose(rng).expect("nonempty"))
            }
        }
        2 => LambdaTerm::lam(binder(binders), gen(rng, 1, binders + 1)),
        _ => match rng.gen_range(0..4) {
            0 => LambdaTerm::lam(binder(binders), gen(rng, size - 1, binders + 1)),
            1 | 2 => {
                let left = rng.gen_range(1..size - 1);
                let right = size - 1 - left;
                LambdaTerm::app(gen(rng, left, binders), gen(rng, right, binders))
            }
            _ => {
                let body = rng.gen_range(1..size - 1);
                let arg = size - 2 - body;
                if arg == 0 {
                    return LambdaTerm::lam(binder(binders), gen(rng, size - 1, binders + 1));
                }
                let fun = LambdaTerm::lam(binder(binders), gen(rng, body, binders + 1));
                LambdaTerm::app(fun, gen(rng, arg, binders))
            }
        },
    }
}

fn binder(depth: usize) -> &'static str {
    ["x", "z", "w", "u", "v", "s", "t"][depth % 7]
}

/// A random term of size at most `max_size` with at least one redex.
pub fn random_reducible_term<G: Rng>(rng: &mut G, max_size: usize) -> LambdaTerm {
    loop {
        let size = rng.gen_range(3..=max_size.max(3));
        let t = random_lambda_term(rng, size);
        if !t.beta_redexes().is_empty() {
            return t;
        }
    }
}

/// A random walk of `len` steps or fewer (it stops at normal forms and at
/// oversized terms).
pub fn random_walk<S: RewritingSystem, G: Rng>(
    system: &S,
    rng: &mut G,
    source: S::Term,
    len: usize,
    too_big: impl Fn(&S::Term) -> bool,
) -> RewritingPath<S::Term, S::Redex> {
    let mut path = RewritingPath::empty(source);
    for _ in 0..len {
        if too_big(path.target()) {
            break;
        }
        let redexes = system.redexes(path.target());
        let Some(r) = redexes.choose(rng) else { break };
        path.push(system, r).expect("enumerated redexes contract");
    }
    path
}

/// A nonempty random λ path: source size at most `max_size`, at most `max_len` steps.
pub fn random_lambda_path<G: Rng>(system: &LambdaSystem, rng: &mut G, max_size: usize, max_len: usize) -> LambdaPath {
    let source = random_reducible_term(rng, max_size);
    let len = rng.gen_range(1..=max_len.max(1));
    random_walk(system, rng, source, len, |t| t.size() > TERM_SIZE_CAP)
}

/// Every ground term of depth at most `max_depth` (a constant has depth 1),
/// ordered by depth, then structurally.
pub fn ground_terms(signature: &Signature, max_depth: usize) -> Vec<TrsTerm> {
    let symbols: Vec<(&str, usize)> = signature.symbols().collect();
    let mut by_depth: Vec<TrsTerm> = Vec::new();
    for _ in 0..max_depth {
        let mut next: Vec<TrsTerm> = Vec::new();
        for &(f, arity) in &symbols {
            for args in tuples(&by_depth, arity) {
                next.push(TrsTerm::apply(f, args));
            }
        }
        next.sort_by(|a, b| a.depth().cmp(&b.depth()).then_with(|| a.cmp(b)));
        by_depth = next;
    }
    by_depth
}

fn tuples(pool: &[TrsTerm], n: usize) -> Vec<Vec<TrsTerm>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                pool.iter().map(move |t| {
                    let mut v = prefix.clone();
                    v.push(t.clone());
                    v
                })
            })
            .collect();
    }
    out
}
