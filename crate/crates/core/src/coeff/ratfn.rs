//! Rational functions over `F_p` in one variable, kept reduced with a monic
//! denominator so that equal values have equal representations.

use crate::arith::Prime;
use crate::coeff::fp::{Fp, FpPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: FpPoly,
    den: FpPoly,
}

/// Reduce `num/den`: coprime parts, monic denominator.
pub fn rf_normalize(num: FpPoly, den: FpPoly) -> Result<RatFn> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(RatFn::reduce(num, den))
}

impl RatFn {
    fn reduce(num: FpPoly, den: FpPoly) -> RatFn {
        if num.is_zero() {
            return RatFn { num, den: FpPoly::one(den.prime()) };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() { (num, den) } else { (num.div_exact(&g), den.div_exact(&g)) };
        if !den.is_monic() {
            let s = den.lead().inv().expect("nonzero");
            num = num.scale(s);
            den = den.scale(s);
        }
        RatFn { num, den }
    }

    pub fn zero(p: Prime) -> RatFn {
        RatFn { num: FpPoly::zero(p), den: FpPoly::one(p) }
    }

    pub fn from_poly(num: FpPoly) -> RatFn {
        let one = FpPoly::one(num.prime());
        RatFn { num, den: one }
    }

    pub fn from_fp(a: Fp) -> RatFn {
        RatFn::from_poly(FpPoly::constant(a))
    }

    pub fn num(&self) -> &FpPoly {
        &self.num
    }

    pub fn den(&self) -> &FpPoly {
        &self.den
    }

    pub fn modulus(&self) -> u32 {
        self.num.modulus()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The constant value when this is an element of `F_p`.
    pub fn as_constant(&self) -> Option<Fp> {
        if self.den.is_one() && self.num.degree().unwrap_or(0) == 0 {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn add(&self, o: &RatFn) -> RatFn {
        if self.den == o.den {
            return RatFn::reduce(self.num.add(&o.num), self.den.clone());
        }
        RatFn::reduce(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn neg(&self) -> RatFn {
        RatFn { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFn) -> RatFn {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFn) -> RatFn {
        if self.is_zero() || o.is_zero() {
            return RatFn::zero(self.num.prime());
        }
        RatFn::reduce(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn inv(&self) -> Option<RatFn> {
        if self.is_zero() {
            None
        } else {
            Some(RatFn::reduce(self.den.clone(), self.num.clone()))
        }
    }

    pub fn render(&self, var: &str) -> String {
        if self.den.is_one() {
            format!("({})", self.num.render(var))
        } else {
            format!("({})/({})", self.num.render(var), self.den.render(var))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let r = rf_normalize(FpPoly::from_coeffs(p(3), &[-1, 0, 1]), FpPoly::from_coeffs(p(3), &[-1, 1])).unwrap();
        assert_eq!(r.num(), &FpPoly::from_coeffs(p(3), &[1, 1]));
        assert!(r.den().is_one());

        let r = rf_normalize(FpPoly::zero(p(3)), FpPoly::from_coeffs(p(3), &[0, 1])).unwrap();
        assert!(r.is_zero());
        assert!(r.den().is_one());

        let r = rf_normalize(FpPoly::from_coeffs(p(3), &[0, 2]), FpPoly::from_coeffs(p(3), &[2])).unwrap();
        assert_eq!(r.num(), &FpPoly::from_coeffs(p(3), &[0, 1]));
        assert!(r.den().is_one());

        assert_eq!(rf_normalize(FpPoly::one(p(3)), FpPoly::zero(p(3))), Err(Error::DivisionByZero));
    }

    #[test]
    fn arithmetic_round_trip() {
        let a = rf_normalize(FpPoly::from_coeffs(p(5), &[1, 2]), FpPoly::from_coeffs(p(5), &[3, 0, 1])).unwrap();
        let b = rf_normalize(FpPoly::from_coeffs(p(5), &[0, 1]), FpPoly::from_coeffs(p(5), &[1, 1])).unwrap();
        let s = a.add(&b);
        assert_eq!(s.sub(&b), a);
        let m = a.mul(&b);
        assert_eq!(m.mul(&b.inv().unwrap()), a);
        assert!(a.mul(&a.inv().unwrap()).is_one());
    }
}
