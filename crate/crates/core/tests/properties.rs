//! Randomized invariants across the bundled fixtures, with exact arithmetic.

mod common;

use common::*;
use dimerlab::fixtures;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn run(r: Check) -> Result<(), TestCaseError> {
    r.map_err(TestCaseError::fail)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn eta_is_constant_under_rewriting(case in 0..map_cases().len(), seed: u64) {
        run(prop_eta_constant(&map_cases()[case], &mut ChaCha8Rng::seed_from_u64(seed)))?;
    }

    #[test]
    fn homology_is_additive_and_kills_faces(i in 0..fixtures::DIMERS.len(), seed: u64) {
        run(prop_hom_additive(&map_cases()[i].dimer, &mut ChaCha8Rng::seed_from_u64(seed)))?;
    }

    #[test]
    fn points_give_representations(case in 0..map_cases().len(), seed: u64) {
        run(prop_rep_relations(&map_cases()[case], &mut ChaCha8Rng::seed_from_u64(seed)))?;
    }

    #[test]
    fn simplicity_agrees_with_subset_search(i in 0..fixtures::DIMERS.len(), seed: u64) {
        let d = &map_cases()[i].dimer;
        prop_assume!(d.vertex_count() <= 16);
        run(prop_simple_matches_brute(d, &mut ChaCha8Rng::seed_from_u64(seed)))?;
    }

    #[test]
    fn transfers_round_trip(i in 0..CONTRACTIONS.len(), seed: u64) {
        run(prop_transfer_round_trip(&contractions()[i], &mut ChaCha8Rng::seed_from_u64(seed)))?;
    }

    #[test]
    fn normalizing_keeps_cycle_values(i in 0..fixtures::DIMERS.len(), seed: u64) {
        run(prop_normalize_fixes_cycles(&map_cases()[i].dimer, &mut ChaCha8Rng::seed_from_u64(seed)))?;
    }
}

proptest! {
    // Each case runs the U search, which is the slow part.
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn azumaya_is_the_conjunction(i in 0..CONTRACTIONS.len(), seed: u64) {
        run(prop_azumaya_conjunction(&locus_contexts()[i], &mut ChaCha8Rng::seed_from_u64(seed)))?;
    }
}
