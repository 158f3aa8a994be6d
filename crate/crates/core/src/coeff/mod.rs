//! Coefficient fields `F_p` and `F_p(t)`, univariate polynomials over them,
//! finite quotient algebras `K[x]/(g)`, and exact linear algebra.

pub mod fp;
pub mod linalg;
pub mod quotient;
pub mod ratfn;
pub mod unipoly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::arith::Prime;
use crate::error::{Error, Result};

pub use fp::{Fp, FpPoly};
pub use linalg::{Matrix, SpanBasis};
pub use quotient::QuotientAlgebra;
pub use ratfn::{rf_normalize, RatFn};
pub use unipoly::UniPoly;

/// The base field `K`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldSpec {
    PrimeField { p: Prime },
    RationalFunctionField { p: Prime, var: String },
}

impl FieldSpec {
    pub fn prime_field(p: Prime) -> FieldSpec {
        FieldSpec::PrimeField { p }
    }

    /// `F_p(t)` with the variable named `t`.
    pub fn rational(p: Prime) -> FieldSpec {
        FieldSpec::RationalFunctionField { p, var: "t".into() }
    }

    pub fn characteristic(&self) -> Prime {
        match self {
            FieldSpec::PrimeField { p } | FieldSpec::RationalFunctionField { p, .. } => *p,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, FieldSpec::RationalFunctionField { .. })
    }

    /// Name of the transcendental variable, if any.
    pub fn var(&self) -> Option<&str> {
        match self {
            FieldSpec::PrimeField { .. } => None,
            FieldSpec::RationalFunctionField { var, .. } => Some(var),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_int(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, a: i64) -> Scalar {
        self.from_fp(Fp::new(a, self.characteristic()))
    }

    /// Embed a prime-field residue.
    pub fn from_fp(&self, a: Fp) -> Scalar {
        match self {
            FieldSpec::PrimeField { .. } => Scalar::Fp(a),
            FieldSpec::RationalFunctionField { .. } => Scalar::Rf(RatFn::from_fp(a)),
        }
    }

    /// The transcendental `t`; errors over a prime field.
    pub fn generator(&self) -> Result<Scalar> {
        match self {
            FieldSpec::PrimeField { p } => Err(Error::Field(format!("F_{p} has no transcendental variable"))),
            FieldSpec::RationalFunctionField { p, .. } => {
                Ok(Scalar::Rf(RatFn::from_poly(FpPoly::monomial(Fp::one(*p), 1))))
            }
        }
    }

    /// True when `a` is an element of this field.
    pub fn contains(&self, a: &Scalar) -> bool {
        match (self, a) {
            (FieldSpec::PrimeField { p }, Scalar::Fp(x)) => x.modulus() == p.get(),
            (FieldSpec::PrimeField { p }, Scalar::Rf(r)) => r.modulus() == p.get() && r.as_constant().is_some(),
            (FieldSpec::RationalFunctionField { p, .. }, s) => s.modulus() == p.get(),
        }
    }

    /// Coerce `a` into this field's canonical representation.
    pub fn coerce(&self, a: &Scalar) -> Result<Scalar> {
        if !self.contains(a) {
            return Err(Error::Field(format!("{} is not an element of {}", a.render(self), self)));
        }
        Ok(match (self, a) {
            (FieldSpec::PrimeField { .. }, Scalar::Rf(r)) => Scalar::Fp(r.as_constant().expect("checked")),
            (FieldSpec::RationalFunctionField { .. }, Scalar::Fp(x)) => Scalar::Rf(RatFn::from_fp(*x)),
            _ => a.clone(),
        })
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::PrimeField { p } => write!(f, "F_{p}"),
            FieldSpec::RationalFunctionField { p, var } => write!(f, "F_{p}({var})"),
        }
    }
}

/// An element of `F_p` or `F_p(t)`.
///
/// Mixed arithmetic promotes `F_p` residues into `F_p(t)`; equality compares
/// values, so a constant rational function equals the matching residue.
#[derive(Clone, Debug)]
pub enum Scalar {
    Fp(Fp),
    Rf(RatFn),
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp(a) => write!(f, "{a}"),
            Scalar::Rf(r) => f.write_str(&r.render("t")),
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Fp(a), Scalar::Fp(b)) => a == b,
            (Scalar::Rf(a), Scalar::Rf(b)) => a == b,
            (Scalar::Fp(a), Scalar::Rf(r)) | (Scalar::Rf(r), Scalar::Fp(a)) => r.as_constant() == Some(*a),
        }
    }
}

impl Eq for Scalar {}

impl Scalar {
    pub fn modulus(&self) -> u32 {
        match self {
            Scalar::Fp(a) => a.modulus(),
            Scalar::Rf(r) => r.modulus(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp(a) => a.is_zero(),
            Scalar::Rf(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp(a) => a.is_one(),
            Scalar::Rf(r) => r.is_one(),
        }
    }

    fn as_rf(&self) -> RatFn {
        match self {
            Scalar::Fp(a) => RatFn::from_fp(*a),
            Scalar::Rf(r) => r.clone(),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Fp(a) => a.inv().map(Scalar::Fp),
            Scalar::Rf(r) => r.inv().map(Scalar::Rf),
        }
    }

    pub fn div(&self, o: &Scalar) -> Result<Scalar> {
        let inv = o.inv().ok_or(Error::DivisionByZero)?;
        Ok(self * &inv)
    }

    pub fn pow(&self, e: u64) -> Scalar {
        match self {
            Scalar::Fp(a) => Scalar::Fp(a.pow(e)),
            Scalar::Rf(r) => {
                let mut acc = RatFn::from_fp(Fp::raw(1, r.modulus()));
                for _ in 0..e {
                    acc = acc.mul(r);
                }
                Scalar::Rf(acc)
            }
        }
    }

    /// Scale by a prime-field residue.
    pub fn scale(&self, c: Fp) -> Scalar {
        match self {
            Scalar::Fp(a) => Scalar::Fp(a.mul(c)),
            Scalar::Rf(r) => Scalar::Rf(r.mul(&RatFn::from_fp(c))),
        }
    }

    /// Canonical text form; rational functions are parenthesised.
    pub fn render(&self, field: &FieldSpec) -> String {
        match self {
            Scalar::Fp(a) => a.to_string(),
            Scalar::Rf(r) => match r.as_constant() {
                Some(c) if !field.is_rational() => c.to_string(),
                _ => r.render(field.var().unwrap_or("t")),
            },
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Fp(a), Scalar::Fp(b)) => Scalar::Fp(a.add(*b)),
            _ => Scalar::Rf(self.as_rf().add(&o.as_rf())),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Fp(a), Scalar::Fp(b)) => Scalar::Fp(a.sub(*b)),
            _ => Scalar::Rf(self.as_rf().sub(&o.as_rf())),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Fp(a), Scalar::Fp(b)) => Scalar::Fp(a.mul(*b)),
            (Scalar::Rf(r), Scalar::Fp(c)) | (Scalar::Fp(c), Scalar::Rf(r)) => {
                if c.is_zero() {
                    Scalar::Rf(RatFn::zero(Prime::new(c.modulus()).expect("prime")))
                } else if c.is_one() {
                    Scalar::Rf(r.clone())
                } else {
                    Scalar::Rf(r.mul(&RatFn::from_fp(*c)))
                }
            }
            (Scalar::Rf(a), Scalar::Rf(b)) => Scalar::Rf(a.mul(b)),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Fp(a) => Scalar::Fp(a.neg()),
            Scalar::Rf(r) => Scalar::Rf(r.neg()),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        &self + &o
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        &self - &o
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_scalar(field: &FieldSpec, rng: &mut ChaCha8Rng) -> Scalar {
        let p = field.characteristic();
        match field {
            FieldSpec::PrimeField { .. } => field.from_int(rng.gen_range(0..p.get() as i64)),
            FieldSpec::RationalFunctionField { .. } => {
                let n: Vec<i64> = (0..rng.gen_range(0..4)).map(|_| rng.gen_range(0..p.get() as i64)).collect();
                let mut d: Vec<i64> = (0..rng.gen_range(1..4)).map(|_| rng.gen_range(0..p.get() as i64)).collect();
                if d.iter().all(|&x| x == 0) {
                    d[0] = 1;
                }
                Scalar::Rf(rf_normalize(FpPoly::from_coeffs(p, &n), FpPoly::from_coeffs(p, &d)).unwrap())
            }
        }
    }

    #[test]
    fn field_axioms_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for field in [FieldSpec::prime_field(Prime::new(5).unwrap()), FieldSpec::rational(Prime::new(3).unwrap())] {
            for _ in 0..200 {
                let a = random_scalar(&field, &mut rng);
                let b = random_scalar(&field, &mut rng);
                let c = random_scalar(&field, &mut rng);
                assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                assert_eq!(&a * &b, &b * &a);
                if !a.is_zero() {
                    assert!((&a * &a.inv().unwrap()).is_one());
                }
                assert!((&a - &a).is_zero());
            }
        }
    }

    #[test]
    fn mixed_equality_and_coercion() {
        let p = Prime::new(3).unwrap();
        let q = FieldSpec::rational(p);
        let fp = FieldSpec::prime_field(p);
        let two = fp.from_int(2);
        assert_eq!(q.from_int(2), two);
        assert!(fp.contains(&q.from_int(2)));
        assert!(!fp.contains(&q.generator().unwrap()));
        assert!(fp.coerce(&q.generator().unwrap()).is_err());
        assert!(fp.generator().is_err());
        let five = FieldSpec::prime_field(Prime::new(5).unwrap());
        assert!(!five.contains(&two));
    }
}
