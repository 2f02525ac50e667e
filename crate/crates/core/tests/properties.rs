use proptest::prelude::*;

use ars_core::analysis::{factorize, is_external, is_internal, AnalysisConfig};
use ars_core::corpus::{ground_terms, random_lambda_path, random_reducible_term, random_walk, rng};
use ars_core::engine::{canonicalize, equivalent, is_standard, standardize, EngineConfig};
use ars_core::lambda::LambdaSystem;
use ars_core::oracle::is_classically_standard;
use ars_core::trace::compose_trace_ancestor;
use ars_core::trs::TrsSystem;
use ars_core::{
    compose_paths, AncestorFunction, OrientationPolicy, Residuals, RewritingPath, RewritingSystem,
    StandardisationTrace, TileApplication,
};

type LPath = RewritingPath<<LambdaSystem as RewritingSystem>::Term, <LambdaSystem as RewritingSystem>::Redex>;

fn lambda_path(seed: u64, max_len: usize) -> LPath {
    random_lambda_path(&LambdaSystem::default(), &mut rng(seed), 12, max_len)
}

fn por_path(
    seed: u64,
    len: usize,
) -> RewritingPath<<TrsSystem as RewritingSystem>::Term, <TrsSystem as RewritingSystem>::Redex> {
    let sys = TrsSystem::parallel_or();
    let terms = ground_terms(sys.signature(), 3);
    let mut g = rng(seed);
    let source = terms[(seed as usize) % terms.len()].clone();
    random_walk(&sys, &mut g, source, len, |_| false)
}

fn engine() -> EngineConfig {
    EngineConfig::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn trace_ancestor_is_the_composite_of_its_steps(seed in any::<u64>()) {
        let p = lambda_path(seed, 5);
        let form = standardize(&LambdaSystem::default(), &p, &engine()).unwrap();
        let trace = &form.witness;
        prop_assert_eq!(&compose_trace_ancestor(trace).unwrap(), trace.ancestor());
        prop_assert_eq!(trace.ancestor().domain(), trace.end().len());
        prop_assert_eq!(trace.ancestor().codomain(), trace.start().len());
    }

    #[test]
    fn ancestors_compose_along_concatenated_traces(seed in any::<u64>(), cut in 0usize..8) {
        let p = lambda_path(seed, 5);
        let form = standardize(&LambdaSystem::default(), &p, &engine()).unwrap();
        let apps = form.witness.applications();
        let cut = cut.min(apps.len());
        let first = StandardisationTrace::new(p.clone(), apps[..cut].to_vec()).unwrap();
        let second = StandardisationTrace::new(first.end().clone(), apps[cut..].to_vec()).unwrap();
        let joined = first.clone().then(&second).unwrap();
        prop_assert_eq!(joined.ancestor(), form.witness.ancestor());
        prop_assert_eq!(joined.ancestor(), &first.ancestor().after(second.ancestor()).unwrap());
    }

    #[test]
    fn reversible_tiles_round_trip(seed in any::<u64>()) {
        let sys = LambdaSystem::default();
        let term = random_reducible_term(&mut rng(seed), 12);
        let redexes = sys.redexes(&term);
        for v in &redexes {
            for u in redexes.iter().filter(|u| *u != v) {
                let Ok(Residuals::Copies(rs)) = sys.residuals(&term, v, u) else { continue };
                for u2 in rs {
                    for tile in sys.tiles_for(&term, v, &u2).unwrap() {
                        if !tile.is_reversible() {
                            continue;
                        }
                        prop_assert_eq!(tile.ancestor(), &AncestorFunction::transposition());
                        let inverse = tile.inverse().unwrap();
                        let a = TileApplication::apply(tile.source(), 1, &tile).unwrap();
                        let b = TileApplication::apply(a.after(), 1, &inverse).unwrap();
                        let trace = StandardisationTrace::new(tile.source().clone(), vec![a, b]).unwrap();
                        prop_assert_eq!(trace.end(), tile.source());
                        prop_assert!(trace.ancestor().is_identity());
                    }
                }
            }
        }
    }

    #[test]
    fn canonical_forms_are_standard_and_idempotent(seed in any::<u64>()) {
        let sys = LambdaSystem::default();
        let p = lambda_path(seed, 5);
        let s = standardize(&sys, &p, &engine()).unwrap().path;
        prop_assert!(s.is_parallel_to(&p));
        prop_assert!(is_standard(&sys, &s, &engine()).unwrap());
        prop_assert_eq!(&canonicalize(&sys, &s, &engine()).unwrap(), &s);
        prop_assert_eq!(&standardize(&sys, &s, &engine()).unwrap().path, &s);
        prop_assert!(equivalent(&sys, &p, &s, &engine()).unwrap());
    }

    #[test]
    fn prefixes_of_standard_paths_are_standard(seed in any::<u64>()) {
        let sys = LambdaSystem::default();
        let s = standardize(&sys, &lambda_path(seed, 5), &engine()).unwrap().path;
        for n in 0..=s.len() {
            prop_assert!(is_standard(&sys, &s.prefix(n), &engine()).unwrap());
        }
    }

    #[test]
    fn leftmost_standardness_is_classical(seed in any::<u64>()) {
        let sys = LambdaSystem::new(OrientationPolicy::Leftmost);
        let p = lambda_path(seed, 5);
        let classical = is_classically_standard(p.source(), &p.script());
        prop_assert_eq!(Some(is_standard(&sys, &p, &engine()).unwrap()), classical);
    }

    #[test]
    fn factorisations_recompose(seed in any::<u64>()) {
        let sys = LambdaSystem::default();
        let cfg = AnalysisConfig::default();
        let f = lambda_path(seed, 4);
        let fact = factorize(&sys, &f, &cfg).unwrap();
        prop_assert!(is_external(&sys, &fact.external, &cfg).unwrap());
        prop_assert!(is_internal(&sys, &fact.internal, &cfg).unwrap());
        let whole = compose_paths(&fact.external, &fact.internal).unwrap();
        prop_assert!(equivalent(&sys, &f, &whole, &cfg.engine).unwrap());
        let again = factorize(&sys, &f, &cfg).unwrap();
        prop_assert_eq!(again.external, fact.external);
    }

    #[test]
    fn factorisation_is_functorial(seed in any::<u64>(), more in 1usize..4) {
        let sys = LambdaSystem::default();
        let cfg = AnalysisConfig::default();
        let f = lambda_path(seed, 3);
        let g = random_walk(&sys, &mut rng(seed ^ 0x5eed), f.target().clone(), more, |t| t.size() > 40);
        let whole = factorize(&sys, &compose_paths(&f, &g).unwrap(), &cfg).unwrap();
        let first = factorize(&sys, &f, &cfg).unwrap();
        let rest = factorize(&sys, &compose_paths(&first.internal, &g).unwrap(), &cfg).unwrap();
        let external = compose_paths(&first.external, &rest.external).unwrap();
        prop_assert!(whole.external.is_parallel_to(&external));
        prop_assert!(equivalent(&sys, &whole.external, &external, &cfg.engine).unwrap());
    }

    #[test]
    fn por_standard_forms_are_standard_and_traced(seed in any::<u64>(), len in 0usize..5) {
        let sys = TrsSystem::parallel_or();
        let p = por_path(seed, len);
        let s = standardize(&sys, &p, &engine()).unwrap();
        prop_assert!(is_standard(&sys, &s.path, &engine()).unwrap());
        prop_assert_eq!(&compose_trace_ancestor(&s.witness).unwrap(), s.witness.ancestor());
    }

    #[test]
    fn lambda_terms_round_trip_through_text(seed in any::<u64>()) {
        let sys = LambdaSystem::default();
        let t = random_reducible_term(&mut rng(seed), 14);
        prop_assert_eq!(sys.parse_term(&sys.render_term(&t)).unwrap(), t);
    }
}

#[test]
fn rule_files_round_trip() {
    let sys = TrsSystem::parallel_or();
    let again = TrsSystem::parse(&sys.to_rule_text(), sys.policy()).unwrap();
    assert!(again == sys);
}
