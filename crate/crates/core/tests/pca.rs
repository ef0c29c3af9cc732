mod common;

use common::pca::{axioms, beta, body, oracle_matches_apply, query_free, run, value, Run};
use conserv::pca::{pair_u64, tuple, unpair_u64, untuple, Comb};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn pairing_is_a_bijection_on_small_arguments() {
    for a in 0..512 {
        for b in 0..512 {
            assert_eq!(unpair_u64(pair_u64(a, b).unwrap()), (a, b));
        }
    }
    for n in 0..10_000 {
        let (a, b) = unpair_u64(n);
        assert_eq!(pair_u64(a, b), Some(n));
    }
}

#[test]
fn tuples_round_trip() {
    for xs in [vec![], vec![3], vec![1, 2, 3], vec![0, 0, 0, 7]] {
        let n = tuple(&xs).unwrap();
        assert_eq!(untuple(n, xs.len()), xs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn axioms_hold(seed in any::<u64>(), n in 0u64..200) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y, z) = (value(&mut rng), value(&mut rng), value(&mut rng));
        let bad = axioms(&x, &y, &z, n, 100_000);
        prop_assert!(bad.is_empty(), "{bad:?}");
    }

    #[test]
    fn beta_law(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (b, a) = (body(&mut rng, 4), value(&mut rng));
        prop_assert!(beta(&b, &a, 100_000).is_ok(), "{:?}", beta(&b, &a, 100_000));
    }

    #[test]
    fn query_free_programs_match_plain_application(seed in any::<u64>(), b in 0u64..20) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (program, g) = query_free(&mut rng);
        prop_assert!(oracle_matches_apply(&program, &g, b, 100_000).is_ok());
    }

    #[test]
    fn evaluation_is_deterministic(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = Comb::app(value(&mut rng), value(&mut rng));
        prop_assert_eq!(run(&t, 10_000), run(&t, 10_000));
    }

    #[test]
    fn budgets_only_add_information(seed in any::<u64>(), low in 1u64..2_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = Comb::app(value(&mut rng), value(&mut rng));
        let small = run(&t, low);
        prop_assert!(small == Run::OutOfBudget || small == run(&t, 10 * low));
    }
}
