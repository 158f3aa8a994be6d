//! Finite-dimensional quotients `K[x]/(g)`.

use crate::coeff::{FieldSpec, Matrix, Scalar, UniPoly};
use crate::error::{Error, Result};

/// `K[x]/(g)` with elements stored as reduced representatives.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientAlgebra {
    modulus: UniPoly,
}

impl QuotientAlgebra {
    pub fn new(g: &UniPoly) -> Result<QuotientAlgebra> {
        match g.degree() {
            Some(d) if d >= 1 => Ok(QuotientAlgebra { modulus: g.monic() }),
            _ => Err(Error::Domain("the modulus must have degree at least 1".into())),
        }
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    pub fn field(&self) -> &FieldSpec {
        self.modulus.field()
    }

    pub fn dim(&self) -> usize {
        self.modulus.degree().expect("nonconstant")
    }

    pub fn reduce(&self, a: &UniPoly) -> UniPoly {
        a.rem(&self.modulus).expect("nonzero modulus")
    }

    /// The class of `x^j`.
    pub fn basis(&self, j: usize) -> UniPoly {
        self.reduce(&UniPoly::monomial(self.field(), self.modulus.var(), self.field().one(), j))
    }

    pub fn mul(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        self.reduce(&a.mul(b))
    }

    /// Inverse via the extended Euclidean algorithm; `None` for zero divisors.
    pub fn inv(&self, a: &UniPoly) -> Option<UniPoly> {
        let a = self.reduce(a);
        if a.is_zero() {
            return None;
        }
        let (g, s, _) = a.xgcd(&self.modulus);
        if g.degree() == Some(0) {
            Some(self.reduce(&s))
        } else {
            None
        }
    }

    /// Coordinates of `a` in the basis `1, x, ..., x^{d-1}`.
    pub fn coords(&self, a: &UniPoly) -> Vec<Scalar> {
        let r = self.reduce(a);
        (0..self.dim()).map(|j| r.coeff(j)).collect()
    }

    pub fn from_coords(&self, c: &[Scalar]) -> Result<UniPoly> {
        if c.len() != self.dim() {
            return Err(Error::Dimension { expected: self.dim(), found: c.len() });
        }
        UniPoly::new(self.field(), self.modulus.var(), c.to_vec())
    }

    /// Matrix of multiplication by `a`; column `j` holds `a·x^j`.
    pub fn mult_matrix(&self, a: &UniPoly) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(self.field(), d, d);
        for j in 0..d {
            let col = self.coords(&a.mul(&self.basis(j)));
            for (i, v) in col.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Prime;

    #[test]
    fn inverse_in_a_field_extension() {
        let f = FieldSpec::rational(Prime::new(3).unwrap());
        let q = QuotientAlgebra::new(&UniPoly::parse("x^3 - t", &f).unwrap()).unwrap();
        let a = UniPoly::parse("x^2 + t*x + 1", &f).unwrap();
        let inv = q.inv(&a).unwrap();
        assert!(q.mul(&a, &inv).coeff(0).is_one());
        assert_eq!(q.mul(&a, &inv).degree(), Some(0));
    }

    #[test]
    fn zero_divisors_have_no_inverse() {
        let f = FieldSpec::prime_field(Prime::new(2).unwrap());
        let q = QuotientAlgebra::new(&UniPoly::parse("x^2 + 1", &f).unwrap()).unwrap();
        assert!(q.inv(&UniPoly::parse("x + 1", &f).unwrap()).is_none());
        assert!(q.inv(&UniPoly::zero(&f, "x")).is_none());
    }

    #[test]
    fn multiplication_matrix_of_x_is_companion() {
        let f = FieldSpec::prime_field(Prime::new(5).unwrap());
        let g = UniPoly::parse("x^2 + 2*x + 3", &f).unwrap();
        let q = QuotientAlgebra::new(&g).unwrap();
        let m = q.mult_matrix(&UniPoly::parse("x", &f).unwrap());
        assert_eq!(m.get(1, 0), &f.one());
        assert_eq!(m.get(0, 1), &f.from_int(-3));
        assert_eq!(m.get(1, 1), &f.from_int(-2));
    }
}
