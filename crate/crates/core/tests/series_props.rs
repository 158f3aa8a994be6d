use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use dpn::arith::Prime;
use dpn::series::{fit_almost_polynomial, gamma_degree, PoincareSeries};

/// Numerators with a positive constant term, denominators `(1-ω^q)^e` with
/// `q ∈ {1, p}`; the constant term keeps every coefficient positive.
fn series(p: u32) -> impl Strategy<Value = PoincareSeries> {
    (prop::collection::vec(0i64..4, 0..3), 1u32..=3, 0u32..=2).prop_map(move |(mut num, e1, ep)| {
        num.insert(0, 1);
        let mut den = vec![(1, e1)];
        if ep > 0 {
            den.push((p, ep));
        }
        PoincareSeries::new(&num, &den).unwrap()
    })
}

fn as_u64(v: &[BigInt]) -> Vec<u64> {
    v.iter().map(|c| c.to_u64().unwrap()).collect()
}

fn convolve(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    (0..a.len()).map(|i| (0..=i).map(|j| &a[j] * &b[i - j]).sum()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_expands_to_convolution(a in series(2), b in series(2)) {
        prop_assert_eq!(a.mul(&b).expand(25), convolve(&a.expand(25), &b.expand(25)));
    }

    #[test]
    fn sum_expands_termwise(a in series(3), b in series(3)) {
        let sum: Vec<BigRational> = a.expand(20).iter().zip(b.expand(20)).map(|(x, y)| x + y).collect();
        prop_assert_eq!(a.add(&b).expand(20), sum);
    }

    /// The fit reproduces every term from its onset and agrees with the
    /// pole order and leading multiplicity of the series.
    #[test]
    fn fit_reproduces_series((p, s) in prop_oneof![Just(2u32), Just(3)].prop_flat_map(|p| (Just(p), series(p)))) {
        let seq = as_u64(&s.expand_integers(80).unwrap());
        let fit = fit_almost_polynomial(&seq, Prime::new(p).unwrap(), 2).unwrap();
        for (i, &v) in seq.iter().enumerate().skip(fit.onset) {
            prop_assert_eq!(fit.eval(i as u64), BigRational::from_integer(v.into()));
        }
        let (d, e) = s.leading_multiplicity().unwrap();
        prop_assert_eq!((fit.degree, fit.multiplicity), (d, e));
        let gamma = gamma_degree(&seq, None, Some(Prime::new(p).unwrap())).unwrap();
        prop_assert_eq!(gamma.exact, Some(d));
    }
}

#[test]
fn pure_poles_fit_with_period_one() {
    for e in 1..=4 {
        let seq = as_u64(&PoincareSeries::pole(e).expand_integers(40).unwrap());
        let fit = fit_almost_polynomial(&seq, Prime::new(2).unwrap(), 3).unwrap();
        assert_eq!((fit.period, fit.degree, fit.onset), (1, e - 1, 0));
    }
}

#[test]
fn growth_without_a_fit_uses_logs() {
    let seq: Vec<u64> = (0..60u64).map(|i| i * i + (i % 7) * (i % 5)).collect();
    let g = gamma_degree(&seq, Some(20), None).unwrap();
    assert!(g.exact.is_none());
    assert!((2.0..2.2).contains(&g.value), "{}", g.value);
    assert!(gamma_degree(&[0; 20], None, None).is_err());
}
