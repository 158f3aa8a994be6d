use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dpn::arith::Prime;
use dpn::coeff::FieldSpec;
use dpn::dring::{DOp, RingSpec};
use dpn::witness::{bernstein_witness, hs_check, replay, witness_batch, PolyRule};

fn ring(n: usize, p: u32) -> RingSpec {
    RingSpec::new(n, FieldSpec::prime_field(Prime::new(p).unwrap())).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    /// Chains replay, end in a nonzero scalar and cost at most the degree.
    #[test]
    fn chains_replay_within_degree(seed: u64, n in 1usize..=3, p in prop_oneof![Just(2u32), Just(3), Just(5)]) {
        let r = ring(n, p);
        let a = DOp::random(&r, 7, 5, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assume!(!a.is_zero());
        let chain = bernstein_witness(&a).unwrap();
        replay(&chain).unwrap();
        prop_assert!(!chain.scalar.is_zero());
        prop_assert!(chain.cost <= a.canonical_degree().unwrap());
    }
}

#[test]
fn spec_examples() {
    let r = ring(1, 2);
    let one = bernstein_witness(&DOp::one(&r)).unwrap();
    assert_eq!((one.steps.len(), one.cost), (0, 0));
    let x = bernstein_witness(&DOp::x(&r, 0, 1)).unwrap();
    assert_eq!((x.steps.len(), x.cost), (1, 1));

    let r = ring(2, 3);
    let a = DOp::parse("x1^3*d1[2] + x2", &r).unwrap();
    let chain = bernstein_witness(&a).unwrap();
    replay(&chain).unwrap();
    assert!(chain.cost <= 5, "{chain}");
    assert!(bernstein_witness(&DOp::zero(&r)).is_err());
}

#[test]
fn batches_are_clean() {
    for (n, p) in [(1, 2), (2, 3), (3, 2)] {
        let report = witness_batch(&ring(n, p), 200, 6, PolyRule::Valuation, 11);
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.replayed, report.count);
    }
}

#[test]
fn divided_power_identities_hold_on_polynomials() {
    for p in [2u32, 3] {
        let report = hs_check(2 * (p as usize).pow(2), Prime::new(p).unwrap(), 20, 5).unwrap();
        assert!(report.passed(), "{report:?}");
    }
    assert!(hs_check(3, Prime::new(2).unwrap(), 5, 1).is_err());
}
