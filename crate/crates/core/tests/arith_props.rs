use num_bigint::BigUint;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use dpn::arith::{binom_mod_p, digitwise_le, p_adic_digits, Prime};

fn prime() -> impl Strategy<Value = Prime> {
    prop_oneof![Just(2u32), Just(3), Just(5), Just(7)].prop_map(|p| Prime::new(p).unwrap())
}

fn big_binom(i: u64, j: u64) -> BigUint {
    (0..j).fold(BigUint::from(1u32), |acc, k| acc * BigUint::from(i - k) / BigUint::from(k + 1))
}

proptest! {
    #[test]
    fn matches_integer_binomials(p in prime(), i in 0u64..400, j in 0u64..400) {
        let want = if j > i { 0 } else { (big_binom(i, j) % BigUint::from(p.get())).to_u32().unwrap() };
        prop_assert_eq!(binom_mod_p(i, j, p), want);
    }

    #[test]
    fn nonzero_iff_digitwise_dominated(p in prime(), i in 0u64..5000, j in 0u64..5000) {
        prop_assert_eq!(binom_mod_p(i, j, p) != 0, digitwise_le(j, i, p));
    }

    #[test]
    fn translation_invariant(p in prime(), i in 0u64..200, j in 0u64..200, k in 0u32..3) {
        let s = p.pow(k).unwrap();
        prop_assert_eq!(binom_mod_p(s * i, s * j, p), binom_mod_p(i, j, p));
    }

    #[test]
    fn digits_round_trip(p in prime(), m in 0u64..1_000_000) {
        let back = p_adic_digits(m, p).iter().rev().fold(0u64, |acc, &d| acc * p.get() as u64 + d as u64);
        prop_assert_eq!(back, m);
    }
}

#[test]
fn vanishing_family() {
    for p in [2u32, 3, 5] {
        let pr = Prime::new(p).unwrap();
        for i in 1..=50u64 {
            assert_eq!(binom_mod_p(p as u64 * i, (p as u64 - 1) * i, pr), 0, "p = {p}, i = {i}");
        }
    }
}
