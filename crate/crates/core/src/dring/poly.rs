//! Polynomials in `P_n` and the action of `D(P_n)` on them.

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::{binom_mod_p, MultiIndex};
use crate::coeff::{Fp, Scalar};
use crate::dring::{DOp, Mono, RingSpec};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    ring: RingSpec,
    terms: BTreeMap<MultiIndex, Scalar>,
}

impl Polynomial {
    pub fn zero(ring: &RingSpec) -> Polynomial {
        Polynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn monomial(ring: &RingSpec, alpha: MultiIndex, c: Scalar) -> Polynomial {
        let mut out = Polynomial::zero(ring);
        out.accumulate(alpha, c);
        out
    }

    pub fn one(ring: &RingSpec) -> Polynomial {
        Polynomial::monomial(ring, MultiIndex::zero(ring.n()), ring.field().one())
    }

    /// Parse a literal without divided powers, e.g. `x1^2 + 2*x2`.
    pub fn parse(text: &str, ring: &RingSpec) -> Result<Polynomial> {
        let op = DOp::parse(text, ring)?;
        Polynomial::try_from(&op)
    }

    fn accumulate(&mut self, alpha: MultiIndex, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let s = match self.terms.get(&alpha) {
            Some(old) => old + &c,
            None => c,
        };
        if s.is_zero() {
            self.terms.remove(&alpha);
        } else {
            self.terms.insert(alpha, s);
        }
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Scalar {
        self.terms.get(alpha).cloned().unwrap_or_else(|| self.ring.field().zero())
    }

    /// Total degree, `None` for zero.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(MultiIndex::total).max()
    }

    pub fn add(&self, o: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (a, c) in &o.terms {
            out.accumulate(a.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, o: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (a, c) in &self.terms {
            for (b, d) in &o.terms {
                out.accumulate(a.add(b), c * d);
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (a, v) in &self.terms {
            out.accumulate(a.clone(), v * c);
        }
        out
    }

    /// View as a multiplication operator.
    pub fn to_dop(&self) -> DOp {
        let z = MultiIndex::zero(self.ring.n());
        DOp::from_terms(&self.ring, self.terms.iter().map(|(a, c)| (Mono::new(a.clone(), z.clone()), c.clone())))
            .expect("same ring")
    }
}

impl TryFrom<&DOp> for Polynomial {
    type Error = Error;
    fn try_from(op: &DOp) -> Result<Polynomial> {
        if !op.is_polynomial() {
            return Err(Error::Domain("operator contains divided powers".into()));
        }
        let mut out = Polynomial::zero(op.ring());
        for (m, c) in op.terms() {
            out.accumulate(m.alpha.clone(), c.clone());
        }
        Ok(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_dop().fmt(f)
    }
}

/// `x^α ∂^[β] · x^γ = C(γ, β) x^{γ−β+α}`, summed over terms.
pub(super) fn apply(op: &DOp, f: &Polynomial) -> Result<Polynomial> {
    op.ring().check(f.ring())?;
    let p = op.ring().p();
    let n = op.ring().n();
    let mut out = Polynomial::zero(op.ring());
    for (m, c) in op.terms() {
        'mono: for (g, d) in f.terms() {
            let mut k = 1u64;
            let mut e = Vec::with_capacity(n);
            for i in 0..n {
                if g[i] < m.beta[i] {
                    continue 'mono;
                }
                k = k * binom_mod_p(g[i] as u64, m.beta[i] as u64, p) as u64 % p.get() as u64;
                if k == 0 {
                    continue 'mono;
                }
                e.push(g[i] - m.beta[i] + m.alpha[i]);
            }
            out.accumulate(e.into(), (c * d).scale(Fp::new(k as i64, p)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Prime;
    use crate::coeff::FieldSpec;

    fn ring(n: usize, p: u32) -> RingSpec {
        RingSpec::new(n, FieldSpec::prime_field(Prime::new(p).unwrap())).unwrap()
    }

    #[test]
    fn action_examples() {
        let r = ring(1, 2);
        let x4 = Polynomial::parse("x1^4", &r).unwrap();
        assert!(DOp::d(&r, 0, 2).apply(&x4).unwrap().is_zero());
        for p in [2u32, 3, 5] {
            let r = ring(1, p);
            let xp = Polynomial::parse(&format!("x1^{p}"), &r).unwrap();
            assert_eq!(DOp::d(&r, 0, p).apply(&xp).unwrap(), Polynomial::one(&r));
            assert_eq!(DOp::one(&r).apply(&xp).unwrap(), xp);
        }
    }

    #[test]
    fn parse_rejects_divided_powers() {
        assert!(Polynomial::parse("x1*d1[1]", &ring(1, 3)).is_err());
    }
}
