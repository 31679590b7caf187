mod common;

use common::{poly, ring, terms};
use frobsplit::algebra::Polynomial;
use frobsplit::experiments::{
    perturb_in_maximal_bracket, perturb_in_prime_bracket, random_campaign, sample_maximal_bracket, sample_prime_bracket,
    CampaignConfig, Trial,
};
use frobsplit::frobenius::{bracket_power, fedder_fpure, splitting_prime, HypersurfaceContext, DEFAULT_MAX_ITER};
use frobsplit::ideal::Ideal;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fpure_context(p: u64, n: usize, t: &common::Terms) -> Option<HypersurfaceContext> {
    let r = ring(p, n);
    let f = poly(&r, t);
    let f = &f - &Polynomial::constant(&r, f.constant_term() as i64);
    if f.is_zero() {
        return None;
    }
    let ctx = HypersurfaceContext::new(f).unwrap();
    fedder_fpure(&ctx).unwrap().then_some(ctx)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn maximal_bracket_samples_lie_in_the_bracket(p in prop_oneof![Just(2u64), Just(3), Just(5)], n in 1usize..=4, e0 in 1u32..=2, seed: u64) {
        let r = ring(p, n);
        let eps = sample_maximal_bracket(&mut ChaCha8Rng::seed_from_u64(seed), &r, e0).unwrap();
        prop_assert!(!eps.is_zero());
        prop_assert!(bracket_power(&Ideal::maximal(&r), e0).unwrap().contains(&eps).unwrap());
    }

    #[test]
    fn prime_bracket_samples_lie_in_the_bracket(p in prop_oneof![Just(2u64), Just(3)], n in 2usize..=3, f in terms(3, 4), seed: u64) {
        let Some(ctx) = fpure_context(p, n, &f) else { return Ok(()) };
        let Ok(prime) = splitting_prime(&ctx, DEFAULT_MAX_ITER, 1) else { return Ok(()) };
        let eps = sample_prime_bracket(&mut ChaCha8Rng::seed_from_u64(seed), &prime.ideal).unwrap();
        prop_assert!(bracket_power(&prime.ideal, 1).unwrap().contains(&eps).unwrap());
    }

    #[test]
    fn prime_bracket_perturbations_keep_splitting_numbers(p in prop_oneof![Just(2u64), Just(3)], n in 2usize..=3, f in terms(3, 4), seed in 0u64..1000) {
        let Some(ctx) = fpure_context(p, n, &f) else { return Ok(()) };
        let trials = perturb_in_prime_bracket(&ctx, 2, &[1, 2], seed, DEFAULT_MAX_ITER).unwrap();
        for t in &trials {
            match t {
                Trial::Completed { outcome } => {
                    prop_assert!(outcome.in_hypothesis);
                    prop_assert!(!outcome.is_violation(), "{:?}", outcome);
                }
                Trial::Skipped { reason, .. } => prop_assert!(!reason.code().is_empty()),
            }
        }
        let again = perturb_in_prime_bracket(&ctx, 2, &[1, 2], seed, DEFAULT_MAX_ITER).unwrap();
        prop_assert_eq!(trials, again);
    }

    #[test]
    fn maximal_bracket_harness_is_reproducible(p in prop_oneof![Just(2u64), Just(3)], f in terms(3, 4), seed in 0u64..1000) {
        let Some(ctx) = fpure_context(p, 2, &f) else { return Ok(()) };
        let a = perturb_in_maximal_bracket(&ctx, 2, 1, seed, DEFAULT_MAX_ITER).unwrap();
        let b = perturb_in_maximal_bracket(&ctx, 2, 1, seed, DEFAULT_MAX_ITER).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn campaign_does_not_depend_on_the_thread_count() {
    let config = CampaignConfig::new(3, 2, 4, 8, 5);
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        serde_json::to_string(&pool.install(|| random_campaign(&config)).unwrap()).unwrap()
    };
    let single = run(1);
    assert_eq!(single, run(4));
    let mut other = config.clone();
    other.seed = 6;
    assert_ne!(single, serde_json::to_string(&random_campaign(&other).unwrap()).unwrap());
}
