//! Normal-form arithmetic in the ring `D(P_n)` of differential operators on
//! `P_n = K[x_1, ..., x_n]`.
//!
//! Every element is stored as `Σ c_{αβ} x^α ∂^[β]` with the `x`'s on the
//! left and divided powers `∂^[β] = ∂^β/β!` on the right. Products are
//! straightened with the closed form
//!
//! ```text
//! ∂_i^[b] x_i^c = Σ_j C(c, j) x_i^{c-j} ∂_i^[b-j]
//! ∂_i^[a] ∂_i^[d] = C(a+d, d) ∂_i^[a+d]
//! ```
//!
//! with every binomial reduced modulo `p`.

mod poly;
mod text;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{binom_mod_p, MultiIndex, Prime};
use crate::coeff::{FieldSpec, Fp, Scalar};
use crate::error::{Error, Result};

pub use poly::Polynomial;

/// `D(P_n)` over a base field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingSpec {
    n: usize,
    field: FieldSpec,
}

impl RingSpec {
    pub fn new(n: usize, field: FieldSpec) -> Result<RingSpec> {
        if n == 0 {
            return Err(Error::Parameter("the number of variables must be at least 1".into()));
        }
        Ok(RingSpec { n, field })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn p(&self) -> Prime {
        self.field.characteristic()
    }

    fn check(&self, other: &RingSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("{self} vs {other}")))
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D(P_{}) over {}", self.n, self.field)
    }
}

/// Basis monomial `x^α ∂^[β]`, ordered graded-lexicographically with the
/// largest element first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono {
    pub alpha: MultiIndex,
    pub beta: MultiIndex,
}

impl Mono {
    pub fn new(alpha: MultiIndex, beta: MultiIndex) -> Mono {
        Mono { alpha, beta }
    }

    /// `|α| + |β|`.
    pub fn weight(&self) -> u64 {
        self.alpha.total() + self.beta.total()
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Mono) -> Ordering {
        o.weight()
            .cmp(&self.weight())
            .then_with(|| o.alpha.cmp(&self.alpha))
            .then_with(|| o.beta.cmp(&self.beta))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Mono) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Canonical and order degree of a nonzero operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Degrees {
    /// `max |α| + |β|`.
    pub canonical: u64,
    /// `max |β|`.
    pub order: u64,
}

/// An element of `D(P_n)` in `x`-left normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DOp {
    ring: RingSpec,
    terms: BTreeMap<Mono, Scalar>,
}

/// One variable's contribution to `x^a ∂^[b] · x^c ∂^[d]`.
pub(crate) fn straighten_1d(a: u32, b: u32, c: u32, d: u32, p: Prime) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for j in 0..=b.min(c) {
        let k = binom_mod_p(c as u64, j as u64, p);
        if k == 0 {
            continue;
        }
        let e = b - j;
        let m = binom_mod_p((e + d) as u64, d as u64, p);
        if m == 0 {
            continue;
        }
        let coef = (k as u64 * m as u64 % p.get() as u64) as u32;
        out.push((a + c - j, e + d, coef));
    }
    out
}

impl DOp {
    pub fn zero(ring: &RingSpec) -> DOp {
        DOp { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &RingSpec) -> DOp {
        DOp::scalar(ring, ring.field.one())
    }

    pub fn scalar(ring: &RingSpec, c: Scalar) -> DOp {
        DOp::monomial(ring, MultiIndex::zero(ring.n), MultiIndex::zero(ring.n), c)
    }

    /// `c · x^α ∂^[β]`.
    pub fn monomial(ring: &RingSpec, alpha: MultiIndex, beta: MultiIndex, c: Scalar) -> DOp {
        assert_eq!(alpha.len(), ring.n, "multi-index length must equal n");
        assert_eq!(beta.len(), ring.n, "multi-index length must equal n");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::new(alpha, beta), ring.field.coerce(&c).expect("coefficient in field"));
        }
        DOp { ring: ring.clone(), terms }
    }

    /// `x_i^e` for 0-based `i`.
    pub fn x(ring: &RingSpec, i: usize, e: u32) -> DOp {
        let mut a = MultiIndex::zero(ring.n);
        a.entries_mut()[i] = e;
        DOp::monomial(ring, a, MultiIndex::zero(ring.n), ring.field.one())
    }

    /// `∂_i^[k]` for 0-based `i`.
    pub fn d(ring: &RingSpec, i: usize, k: u32) -> DOp {
        let mut b = MultiIndex::zero(ring.n);
        b.entries_mut()[i] = k;
        DOp::monomial(ring, MultiIndex::zero(ring.n), b, ring.field.one())
    }

    /// Build from arbitrary terms; repeated monomials are summed.
    pub fn from_terms(ring: &RingSpec, terms: impl IntoIterator<Item = (Mono, Scalar)>) -> Result<DOp> {
        let mut out = DOp::zero(ring);
        for (m, c) in terms {
            if m.alpha.len() != ring.n || m.beta.len() != ring.n {
                return Err(Error::Dimension { expected: ring.n, found: m.alpha.len().max(m.beta.len()) });
            }
            let c = ring.field.coerce(&c)?;
            out.accumulate(m, c);
        }
        Ok(out)
    }

    fn accumulate(&mut self, m: Mono, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in graded-lexicographic order, largest first.
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.field.zero())
    }

    /// True when no divided power occurs, i.e. the operator lies in `P_n`.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.beta.is_zero())
    }

    /// The constant coefficient when the operator is a scalar.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(self.ring.field.zero()),
            1 => {
                let (m, c) = self.terms.iter().next().expect("one term");
                (m.weight() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn degrees(&self) -> Result<Degrees> {
        if self.is_zero() {
            return Err(Error::Domain("the zero operator has no degree".into()));
        }
        let canonical = self.terms.keys().map(Mono::weight).max().expect("nonzero");
        let order = self.terms.keys().map(|m| m.beta.total()).max().expect("nonzero");
        Ok(Degrees { canonical, order })
    }

    /// Canonical degree, or `None` for zero.
    pub fn canonical_degree(&self) -> Option<u64> {
        self.degrees().ok().map(|d| d.canonical)
    }

    pub fn scale(&self, c: &Scalar) -> DOp {
        if c.is_zero() {
            return DOp::zero(&self.ring);
        }
        DOp { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn try_add(&self, o: &DOp) -> Result<DOp> {
        self.ring.check(&o.ring)?;
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.accumulate(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, o: &DOp) -> Result<DOp> {
        self.try_add(&-o)
    }

    /// Normal form of `self · o`.
    pub fn try_mul(&self, o: &DOp) -> Result<DOp> {
        self.ring.check(&o.ring)?;
        let p = self.ring.p();
        let n = self.ring.n;
        let mut out = DOp::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let per_var: Vec<Vec<(u32, u32, u32)>> = (0..n)
                    .map(|i| straighten_1d(m1.alpha[i], m1.beta[i], m2.alpha[i], m2.beta[i], p))
                    .collect();
                if per_var.iter().any(Vec::is_empty) {
                    continue;
                }
                let c = c1 * c2;
                let mut idx = vec![0usize; n];
                loop {
                    let mut coef = 1u64;
                    let mut alpha = Vec::with_capacity(n);
                    let mut beta = Vec::with_capacity(n);
                    for i in 0..n {
                        let (a, b, k) = per_var[i][idx[i]];
                        coef = coef * k as u64 % p.get() as u64;
                        alpha.push(a);
                        beta.push(b);
                    }
                    out.accumulate(Mono::new(alpha.into(), beta.into()), c.scale(Fp::new(coef as i64, p)));
                    let mut i = 0;
                    while i < n {
                        idx[i] += 1;
                        if idx[i] < per_var[i].len() {
                            break;
                        }
                        idx[i] = 0;
                        i += 1;
                    }
                    if i == n {
                        break;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self^m` by repeated squaring; `m = 0` gives 1.
    pub fn pow(&self, mut m: u64) -> DOp {
        let mut acc = DOp::one(&self.ring);
        let mut base = self.clone();
        while m > 0 {
            if m & 1 == 1 {
                acc = &acc * &base;
            }
            m >>= 1;
            if m > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `[self, o] = self·o − o·self`.
    pub fn commutator(&self, o: &DOp) -> Result<DOp> {
        self.try_mul(o)?.try_sub(&o.try_mul(self)?)
    }

    /// The involution fixing `x_i` and sending `∂_i^[j]` to `(−1)^j ∂_i^[j]`,
    /// extended anti-multiplicatively.
    pub fn star(&self) -> DOp {
        let n = self.ring.n;
        let mut out = DOp::zero(&self.ring);
        for (m, c) in &self.terms {
            let c = if m.beta.total() % 2 == 1 { -c } else { c.clone() };
            let d = DOp::monomial(&self.ring, MultiIndex::zero(n), m.beta.clone(), c);
            let x = DOp::monomial(&self.ring, m.alpha.clone(), MultiIndex::zero(n), self.ring.field.one());
            for (mm, cc) in (&d * &x).terms {
                out.accumulate(mm, cc);
            }
        }
        out
    }

    /// `x_i ↦ x_i^{p^k}`, `∂_i^[j] ↦ ∂_i^[j p^k]` termwise.
    pub fn frobenius_shift(&self, k: u32) -> Result<DOp> {
        let q = self.ring.p().pow(k).and_then(|q| u32::try_from(q).ok()).ok_or_else(|| Error::Parameter("p^k overflows".into()))?;
        let mut out = DOp::zero(&self.ring);
        for (m, c) in &self.terms {
            out.terms.insert(Mono::new(m.alpha.scaled(q), m.beta.scaled(q)), c.clone());
        }
        Ok(out)
    }

    /// Rewrite in `∂`-left form `Σ c ∂^[β] x^α`; keys are `(β, α)`.
    pub fn to_d_left(&self) -> BTreeMap<(MultiIndex, MultiIndex), Scalar> {
        let p = self.ring.p();
        let n = self.ring.n;
        let mut out: BTreeMap<(MultiIndex, MultiIndex), Scalar> = BTreeMap::new();
        for (m, c) in &self.terms {
            // x^a ∂^[b] = Σ_j (−1)^j C(a, j) ∂^[b−j] x^{a−j}, variable by variable.
            let per_var: Vec<Vec<(u32, u32, i64)>> = (0..n)
                .map(|i| {
                    let (a, b) = (m.alpha[i], m.beta[i]);
                    (0..=a.min(b))
                        .filter_map(|j| {
                            let k = binom_mod_p(a as u64, j as u64, p) as i64;
                            (k != 0).then_some((b - j, a - j, if j % 2 == 0 { k } else { -k }))
                        })
                        .collect()
                })
                .collect();
            for combo in cartesian(&per_var) {
                let mut coef = 1i64;
                let mut beta = Vec::with_capacity(n);
                let mut alpha = Vec::with_capacity(n);
                for (b, a, k) in combo {
                    coef = coef * k % p.get() as i64;
                    beta.push(b);
                    alpha.push(a);
                }
                let v = c.scale(Fp::new(coef, p));
                let key = (MultiIndex::from(beta), MultiIndex::from(alpha));
                let s = match out.get(&key) {
                    Some(old) => old + &v,
                    None => v,
                };
                if s.is_zero() {
                    out.remove(&key);
                } else {
                    out.insert(key, s);
                }
            }
        }
        out
    }

    /// Act on a polynomial.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        poly::apply(self, f)
    }

    /// Parse an operator literal such as `2*x1^3*d1[2] + x2`.
    pub fn parse(text: &str, ring: &RingSpec) -> Result<DOp> {
        text::parse(text, ring)
    }

    /// A random operator with up to `max_terms` terms of canonical degree at
    /// most `max_degree` and prime-field coefficients.
    pub fn random<R: Rng + ?Sized>(ring: &RingSpec, max_degree: u32, max_terms: usize, rng: &mut R) -> DOp {
        let n = ring.n;
        let p = ring.p().get() as i64;
        let mut out = DOp::zero(ring);
        let count = rng.gen_range(1..=max_terms.max(1));
        for _ in 0..count {
            let deg = rng.gen_range(0..=max_degree);
            let mut left = deg;
            let mut e = vec![0u32; 2 * n];
            for slot in e.iter_mut().take(2 * n - 1) {
                let v = rng.gen_range(0..=left);
                *slot = v;
                left -= v;
            }
            e[2 * n - 1] = left;
            let perm_shift = rng.gen_range(0..2 * n);
            e.rotate_left(perm_shift);
            let c = ring.field.from_int(rng.gen_range(1..p));
            out.accumulate(Mono::new(e[..n].to_vec().into(), e[n..].to_vec().into()), c);
        }
        out
    }
}

fn cartesian<T: Copy>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![Vec::new()];
    for l in lists {
        let mut next = Vec::with_capacity(out.len() * l.len());
        for prefix in &out {
            for &x in l {
                let mut v = prefix.clone();
                v.push(x);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Every basis monomial of `F_i`, i.e. with `|α| + |β| ≤ i`.
pub fn filtration_basis(ring: &RingSpec, i: u32) -> Vec<Mono> {
    let n = ring.n;
    let mut out = Vec::new();
    for d in 0..=i {
        for e in MultiIndex::of_total(2 * n, d) {
            let e = e.entries();
            out.push(Mono::new(e[..n].to_vec().into(), e[n..].to_vec().into()));
        }
    }
    out
}

impl fmt::Display for DOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::print(self))
    }
}

impl Add for &DOp {
    type Output = DOp;
    /// Panics on ring mismatch; use [`DOp::try_add`] to get an error instead.
    fn add(self, o: &DOp) -> DOp {
        self.try_add(o).expect("ring mismatch")
    }
}

impl Sub for &DOp {
    type Output = DOp;
    fn sub(self, o: &DOp) -> DOp {
        self.try_sub(o).expect("ring mismatch")
    }
}

impl Mul for &DOp {
    type Output = DOp;
    fn mul(self, o: &DOp) -> DOp {
        self.try_mul(o).expect("ring mismatch")
    }
}

impl Neg for &DOp {
    type Output = DOp;
    fn neg(self) -> DOp {
        DOp { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ring(n: usize, p: u32) -> RingSpec {
        RingSpec::new(n, FieldSpec::prime_field(Prime::new(p).unwrap())).unwrap()
    }

    fn op(s: &str, r: &RingSpec) -> DOp {
        DOp::parse(s, r).unwrap()
    }

    #[test]
    fn basic_products() {
        for p in [2, 3, 5] {
            let r = ring(1, p);
            assert_eq!(&DOp::d(&r, 0, 1) * &DOp::x(&r, 0, 1), op("x1*d1[1] + 1", &r));
        }
        let r = ring(1, 2);
        assert!((&DOp::d(&r, 0, 1) * &DOp::d(&r, 0, 1)).is_zero());
        let r = ring(1, 5);
        assert_eq!(&DOp::d(&r, 0, 2) * &DOp::x(&r, 0, 3), op("x1^3*d1[2] + 3*x1^2*d1[1] + 3*x1", &r));
        let r = ring(1, 3);
        assert_eq!(&DOp::d(&r, 0, 2) * &DOp::x(&r, 0, 3), op("x1^3*d1[2]", &r));
    }

    #[test]
    fn euler_operator_is_idempotent_under_pth_power() {
        for p in [2u32, 3, 5] {
            let r = ring(2, p);
            for i in 0..2 {
                let e = &DOp::x(&r, i, 1) * &DOp::d(&r, i, 1);
                assert_eq!(e.pow(p as u64), e);
            }
        }
    }

    #[test]
    fn divided_powers_are_nilpotent() {
        for p in [2u32, 3] {
            let r = ring(1, p);
            for i in 1..=3 {
                assert!(DOp::d(&r, 0, i).pow(p as u64).is_zero());
            }
        }
        let r = ring(1, 3);
        assert!(DOp::one(&r).pow(7) == DOp::one(&r));
    }

    #[test]
    fn star_examples() {
        let r = ring(1, 3);
        assert_eq!(op("x1*d1[1]", &r).star(), op("-x1*d1[1] - 1", &r));
        assert_eq!(op("x1^4", &r).star(), op("x1^4", &r));
    }

    #[test]
    fn degrees_and_frobenius() {
        let r = ring(2, 2);
        assert_eq!(op("x1^2*d1[3]", &r).degrees().unwrap(), Degrees { canonical: 5, order: 3 });
        assert_eq!(op("x1 + d2[4]", &r).degrees().unwrap(), Degrees { canonical: 4, order: 4 });
        assert_eq!(DOp::one(&r).degrees().unwrap(), Degrees { canonical: 0, order: 0 });
        assert!(DOp::zero(&r).degrees().is_err());
        assert_eq!(op("x1*d1[1]", &r).frobenius_shift(1).unwrap(), op("x1^2*d1[2]", &r));
    }

    #[test]
    fn d_left_form_multiplies_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for p in [2u32, 3] {
            let r = ring(2, p);
            for _ in 0..40 {
                let a = DOp::random(&r, 5, 4, &mut rng);
                let mut back = DOp::zero(&r);
                for ((beta, alpha), c) in a.to_d_left() {
                    let d = DOp::monomial(&r, MultiIndex::zero(2), beta, c);
                    let x = DOp::monomial(&r, alpha, MultiIndex::zero(2), r.field().one());
                    back = &back + &(&d * &x);
                }
                assert_eq!(back, a);
            }
        }
    }

    #[test]
    fn filtration_basis_counts() {
        let r = ring(2, 3);
        let b = filtration_basis(&r, 3);
        assert_eq!(b.len(), 35);
        let mut sorted = b.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 35);
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = DOp::one(&ring(1, 2));
        let b = DOp::one(&ring(2, 2));
        assert!(matches!(a.try_mul(&b), Err(Error::RingMismatch(_))));
    }
}
