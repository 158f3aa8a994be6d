use proptest::prelude::*;

use dpn::arith::Prime;
use dpn::coeff::{FieldSpec, Fp, FpPoly, RatFn, Scalar, UniPoly};

fn prime() -> impl Strategy<Value = Prime> {
    prop_oneof![Just(2u32), Just(3), Just(5)].prop_map(|p| Prime::new(p).unwrap())
}

fn fp_poly(p: Prime, coeffs: &[i64]) -> FpPoly {
    FpPoly::from_coeffs(p, coeffs)
}

/// A scalar of either kind; rational functions have nonzero denominators.
fn scalar(p: Prime, rational: bool, num: &[i64], den: &[i64]) -> Scalar {
    if !rational {
        return Scalar::Fp(Fp::new(num.first().copied().unwrap_or(0), p));
    }
    let mut d = fp_poly(p, den);
    if d.is_zero() {
        d = FpPoly::one(p);
    }
    let n = RatFn::from_poly(fp_poly(p, num));
    Scalar::Rf(n.mul(&RatFn::from_poly(d).inv().unwrap()))
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..5, 0..4)
}

proptest! {
    #[test]
    fn field_axioms(p in prime(), rational: bool, a in coeffs(), b in coeffs(), c in coeffs(), d in coeffs()) {
        let x = scalar(p, rational, &a, &d);
        let y = scalar(p, rational, &b, &a);
        let z = scalar(p, rational, &c, &b);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &(-&x), FieldSpec::prime_field(p).zero());
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
    }

    /// `f(x^{p^k}) = g` and `f' ≠ 0`.
    #[test]
    fn separable_decomposition_reproduces(p in prime(), rational: bool, cs in prop::collection::vec(0i64..5, 1..5), k in 0u32..3) {
        let field = if rational { FieldSpec::rational(p) } else { FieldSpec::prime_field(p) };
        let mut cs = cs;
        cs.push(1);
        let base = UniPoly::from_ints(&field, "x", &cs);
        prop_assume!(base.degree().unwrap() > 0 && !base.derivative().is_zero());
        let g = base.inflate(p.pow(k).unwrap() as usize);
        let (f, kk) = g.separable_decompose().unwrap();
        prop_assert!(!f.derivative().is_zero());
        prop_assert_eq!(f.inflate(p.pow(kk).unwrap() as usize), g);
    }
}

/// Over the perfect field `F_p` every irreducible polynomial is separable.
#[test]
fn irreducibles_over_fp_are_separable() {
    for p in [2u32, 3, 5] {
        let pr = Prime::new(p).unwrap();
        let field = FieldSpec::prime_field(pr);
        for deg in 1..=4u32 {
            let count = (p as u64).pow(deg);
            for code in 0..count {
                let mut cs: Vec<i64> = (0..deg).map(|i| ((code / (p as u64).pow(i)) % p as u64) as i64).collect();
                cs.push(1);
                let g = UniPoly::from_ints(&field, "x", &cs);
                if g.irreducible_over_fp().unwrap() {
                    let (_, k) = g.separable_decompose().unwrap();
                    assert_eq!(k, 0, "{g} over F_{p}");
                }
            }
        }
    }
}
