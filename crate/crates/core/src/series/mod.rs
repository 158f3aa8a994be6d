//! Growth analytics: exact Poincaré series, almost-polynomial fits and
//! growth-degree estimates.

mod fit;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub use fit::{fit_almost_polynomial, gamma_degree, loglog_slope, GammaEstimate, HilbertProfile};

/// A rational function `N(ω) / Π (1 − ω^m)^{e_m}` with `N ∈ ℚ[ω]`.
#[derive(Clone, Debug)]
pub struct PoincareSeries {
    /// Numerator coefficients, constant term first, trimmed.
    num: Vec<BigRational>,
    /// `m ↦ e_m`; zero exponents are never stored.
    den: BTreeMap<u32, u32>,
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_add(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out: Vec<BigRational> =
        (0..a.len().max(b.len())).map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default()).collect();
    trim(&mut out);
    out
}

/// `1 − ω^m`.
fn one_minus(m: u32) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); m as usize + 1];
    v[0] = BigRational::one();
    v[m as usize] = -BigRational::one();
    v
}

/// Divide by `1 − ω` when exact.
fn div_one_minus(a: &[BigRational]) -> Option<Vec<BigRational>> {
    if a.is_empty() {
        return Some(Vec::new());
    }
    // a = (1 − ω) q  ⇔  q_i = Σ_{j ≤ i} a_j and the total sum vanishes.
    let mut q = Vec::with_capacity(a.len());
    let mut acc = BigRational::zero();
    for x in &a[..a.len() - 1] {
        acc += x;
        q.push(acc.clone());
    }
    acc += &a[a.len() - 1];
    if !acc.is_zero() {
        return None;
    }
    trim(&mut q);
    Some(q)
}

fn eval_at_one(a: &[BigRational]) -> BigRational {
    a.iter().fold(BigRational::zero(), |s, x| s + x)
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl PoincareSeries {
    /// `num / Π (1 − ω^m)^{e}` from integer numerator coefficients.
    pub fn new(num: &[i64], den: &[(u32, u32)]) -> Result<PoincareSeries> {
        PoincareSeries::from_rational(num.iter().map(|&c| rat(c)).collect(), den)
    }

    pub fn from_rational(mut num: Vec<BigRational>, den: &[(u32, u32)]) -> Result<PoincareSeries> {
        trim(&mut num);
        let mut map = BTreeMap::new();
        for &(m, e) in den {
            if m == 0 {
                return Err(Error::Parameter("denominator factors need m >= 1".into()));
            }
            if e > 0 {
                *map.entry(m).or_insert(0) += e;
            }
        }
        Ok(PoincareSeries { num, den: map })
    }

    /// `1 / (1 − ω)^e`.
    pub fn pole(e: u32) -> PoincareSeries {
        PoincareSeries::new(&[1], &[(1, e)]).expect("valid")
    }

    pub fn numerator(&self) -> &[BigRational] {
        &self.num
    }

    pub fn denominator(&self) -> &BTreeMap<u32, u32> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    fn den_poly(den: &BTreeMap<u32, u32>) -> Vec<BigRational> {
        let mut out = vec![BigRational::one()];
        for (&m, &e) in den {
            for _ in 0..e {
                out = poly_mul(&out, &one_minus(m));
            }
        }
        out
    }

    pub fn add(&self, o: &PoincareSeries) -> PoincareSeries {
        let mut den = self.den.clone();
        for (&m, &e) in &o.den {
            let cur = den.entry(m).or_insert(0);
            *cur = (*cur).max(e);
        }
        let lift = |s: &PoincareSeries| {
            let missing: BTreeMap<u32, u32> = den
                .iter()
                .filter_map(|(&m, &e)| {
                    let have = s.den.get(&m).copied().unwrap_or(0);
                    (e > have).then_some((m, e - have))
                })
                .collect();
            poly_mul(&s.num, &PoincareSeries::den_poly(&missing))
        };
        PoincareSeries { num: poly_add(&lift(self), &lift(o)), den }
    }

    pub fn mul(&self, o: &PoincareSeries) -> PoincareSeries {
        let mut den = self.den.clone();
        for (&m, &e) in &o.den {
            *den.entry(m).or_insert(0) += e;
        }
        PoincareSeries { num: poly_mul(&self.num, &o.num), den }
    }

    /// Multiply by `1 − ω`, cancelling a denominator factor when present.
    pub fn mul_one_minus(&self) -> PoincareSeries {
        let mut out = self.clone();
        match out.den.get_mut(&1) {
            Some(e) => {
                *e -= 1;
                if *e == 0 {
                    out.den.remove(&1);
                }
            }
            None => out.num = poly_mul(&out.num, &one_minus(1)),
        }
        out
    }

    pub fn mul_poly(&self, p: &[BigRational]) -> PoincareSeries {
        PoincareSeries { num: poly_mul(&self.num, p), den: self.den.clone() }
    }

    /// Power-series coefficients of `ω^0 .. ω^n`.
    pub fn expand(&self, n: usize) -> Vec<BigRational> {
        let mut c: Vec<BigRational> = (0..=n).map(|i| self.num.get(i).cloned().unwrap_or_default()).collect();
        for (&m, &e) in &self.den {
            for _ in 0..e {
                // Multiply by 1/(1 − ω^m): running sums along residue classes.
                for i in m as usize..=n {
                    let prev = c[i - m as usize].clone();
                    c[i] += prev;
                }
            }
        }
        c
    }

    /// Expansion as integers; errors when a coefficient is not integral.
    pub fn expand_integers(&self, n: usize) -> Result<Vec<BigInt>> {
        self.expand(n)
            .into_iter()
            .map(|c| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(Error::Domain(format!("non-integral series coefficient {c}")))
                }
            })
            .collect()
    }

    /// Number of `(1 − ω)` factors in the numerator.
    fn numerator_valuation(&self) -> (u32, Vec<BigRational>) {
        let mut v = 0;
        let mut q = self.num.clone();
        while !q.is_empty() {
            match div_one_minus(&q) {
                Some(r) => {
                    q = r;
                    v += 1;
                }
                None => break,
            }
        }
        (v, q)
    }

    /// Order of the pole at `ω = 1`; zero or negative orders are reported as 0.
    pub fn pole_order(&self) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::Domain("the zero series has no pole order".into()));
        }
        let total: u32 = self.den.values().sum();
        let (v, _) = self.numerator_valuation();
        Ok(total.saturating_sub(v))
    }

    /// `((1 − ω)^{d+1} P)(1)` where `d + 1` must equal the pole order.
    pub fn multiplicity(&self, d: u32) -> Result<BigRational> {
        let order = self.pole_order()?;
        if order != d + 1 {
            return Err(Error::OrderMismatch { expected: d as usize + 1, found: order as usize });
        }
        // After removing (1 − ω)^v from the numerator, each (1 − ω^m)
        // contributes Φ_m(1) = m.
        let (_, q) = self.numerator_valuation();
        let mut value = eval_at_one(&q);
        for (&m, &e) in &self.den {
            for _ in 0..e {
                value /= rat(m as i64);
            }
        }
        Ok(value)
    }

    /// Multiplicity at the actual pole order.
    pub fn leading_multiplicity(&self) -> Result<(u32, BigRational)> {
        let order = self.pole_order()?;
        if order == 0 {
            return Err(Error::Domain("series has no pole at 1".into()));
        }
        Ok((order - 1, self.multiplicity(order - 1)?))
    }
}

impl PartialEq for PoincareSeries {
    fn eq(&self, o: &PoincareSeries) -> bool {
        poly_mul(&self.num, &PoincareSeries::den_poly(&o.den)) == poly_mul(&o.num, &PoincareSeries::den_poly(&self.den))
    }
}

impl fmt::Display for PoincareSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let coef = if mag.is_one() && i > 0 { String::new() } else { mag.to_string() };
            let mono = match i {
                0 => String::new(),
                1 => "w".into(),
                _ => format!("w^{i}"),
            };
            let body = match (coef.is_empty(), mono.is_empty()) {
                (true, _) => mono,
                (false, true) => coef,
                (false, false) => format!("{coef}*{mono}"),
            };
            parts.push((c.is_negative(), body));
        }
        let mut num = String::new();
        for (k, (neg, body)) in parts.iter().enumerate() {
            match (k, neg) {
                (0, true) => num.push('-'),
                (0, false) => {}
                (_, true) => num.push_str(" - "),
                (_, false) => num.push_str(" + "),
            }
            num.push_str(body);
        }
        if num.is_empty() {
            num.push('0');
        }
        if self.den.is_empty() {
            return write!(f, "{num}");
        }
        if parts.len() > 1 {
            num = format!("({num})");
        }
        let mut den = String::new();
        for (&m, &e) in &self.den {
            let base = if m == 1 { "(1-w)".to_string() } else { format!("(1-w^{m})") };
            den.push_str(&base);
            if e > 1 {
                den.push_str(&format!("^{e}"));
            }
        }
        write!(f, "{num} / {den}")
    }
}

/// Serialisable summary of a series.
#[derive(Clone, Debug, Serialize)]
pub struct SeriesReport {
    pub text: String,
    pub pole_order: u32,
    pub multiplicity: String,
}

impl PoincareSeries {
    pub fn report(&self) -> Result<SeriesReport> {
        let (d, e) = self.leading_multiplicity()?;
        Ok(SeriesReport { text: self.to_string(), pole_order: d + 1, multiplicity: e.to_string() })
    }
}

/// Closed forms for the standard families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    /// `P_n`: `1/(1−ω)^{n+1}`.
    Pn { n: u32 },
    /// `D(P_n)` with the canonical filtration: `1/(1−ω)^{2n+1}`.
    Dn { n: u32 },
    /// `T_k`: `(1 + ω + ... + ω^{p^k−1})^n / (1−ω)^{n+1}`.
    Tk { n: u32, p: u32, k: u32 },
    /// `Λ^{[p^k]}` in `n` variables: `1/((1−ω)(1−ω^{p^k})^n)`.
    LambdaScaled { n: u32, p: u32, k: u32 },
    /// Simple module attached to a maximal ideal.
    U { p: u32, ks: Vec<u32>, sep_degree: u64 },
    /// Tiny module `P_t ⊗ U`.
    Tiny { t: u32, p: u32, ks: Vec<u32>, sep_degree: u64 },
}

/// The closed-form series of a standard family.
///
/// `T_k` has basis `∂^[β] x^α` with `β < p^k` componentwise, so its weight
/// generating function is `(Σ_{b<p^k} ω^b)^n / (1−ω)^n`.
pub fn ps_from_formula(kind: &SeriesKind) -> Result<PoincareSeries> {
    let pow = |p: u32, k: u32| -> Result<u32> {
        p.checked_pow(k).ok_or_else(|| Error::Parameter("p^k overflows".into()))
    };
    Ok(match kind {
        SeriesKind::Pn { n } => PoincareSeries::pole(n + 1),
        SeriesKind::Dn { n } => PoincareSeries::pole(2 * n + 1),
        SeriesKind::Tk { n, p, k } => {
            let q = pow(*p, *k)? as usize;
            let block = vec![BigRational::one(); q];
            let mut num = vec![BigRational::one()];
            for _ in 0..*n {
                num = poly_mul(&num, &block);
            }
            PoincareSeries::from_rational(num, &[(1, n + 1)])?
        }
        SeriesKind::LambdaScaled { n, p, k } => PoincareSeries::new(&[1], &[(1, 1), (pow(*p, *k)?, *n)])?,
        SeriesKind::U { p, ks, sep_degree } | SeriesKind::Tiny { p, ks, sep_degree, .. } => {
            let mut den = vec![(1u32, 1u32)];
            let mut scale: u64 = *sep_degree;
            for &k in ks {
                let q = pow(*p, k)?;
                den.push((q, 1));
                scale = scale.checked_mul(q as u64).ok_or_else(|| Error::Parameter("overflow".into()))?;
            }
            if let SeriesKind::Tiny { t, .. } = kind {
                den.push((1, *t));
            }
            PoincareSeries::new(&[scale as i64], &den)?
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ints(v: &[BigRational]) -> Vec<i64> {
        v.iter().map(|c| i64::try_from(c.to_integer()).unwrap()).collect()
    }

    #[test]
    fn expansions() {
        let s = PoincareSeries::new(&[1], &[(1, 1), (3, 1)]).unwrap();
        assert_eq!(ints(&s.expand(7)), vec![1, 1, 1, 2, 2, 2, 3, 3]);
        let s = PoincareSeries::pole(3);
        assert_eq!(ints(&s.expand(4)), vec![1, 3, 6, 10, 15]);
        let s = PoincareSeries::new(&[1, 1], &[(1, 2)]).unwrap();
        assert_eq!(ints(&s.expand(4)), vec![1, 3, 5, 7, 9]);
    }

    #[test]
    fn poles_and_multiplicities() {
        let p = PoincareSeries::pole(2);
        let q = PoincareSeries::pole(1);
        let r = p.mul(&q).mul_one_minus();
        assert_eq!(r.pole_order().unwrap(), 2);
        assert_eq!(r.multiplicity(1).unwrap(), rat(1));
        assert_eq!(r, PoincareSeries::pole(2));

        for k in 0..4u32 {
            let q = 2u32.pow(k);
            let s = PoincareSeries::new(&[q as i64], &[(1, 1), (q, 1)]).unwrap();
            assert_eq!(s.pole_order().unwrap(), 2);
            assert_eq!(s.multiplicity(1).unwrap(), rat(1));
        }
        let one = PoincareSeries::new(&[1, -1], &[(1, 1)]).unwrap();
        assert_eq!(one.pole_order().unwrap(), 0);
        assert!(matches!(PoincareSeries::pole(3).multiplicity(1), Err(Error::OrderMismatch { .. })));
    }

    #[test]
    fn closed_forms() {
        let tk = ps_from_formula(&SeriesKind::Tk { n: 1, p: 2, k: 1 }).unwrap();
        assert_eq!(tk, PoincareSeries::new(&[1, 1], &[(1, 2)]).unwrap());
        let u = ps_from_formula(&SeriesKind::U { p: 3, ks: vec![1], sep_degree: 1 }).unwrap();
        assert_eq!(u, PoincareSeries::new(&[3], &[(1, 1), (3, 1)]).unwrap());
        assert_eq!(ps_from_formula(&SeriesKind::Pn { n: 2 }).unwrap(), PoincareSeries::pole(3));
        let l = ps_from_formula(&SeriesKind::LambdaScaled { n: 2, p: 2, k: 1 }).unwrap();
        assert_eq!(l.multiplicity(2).unwrap(), BigRational::new(1.into(), 4.into()));
    }

    #[test]
    fn equality_is_representation_independent() {
        let a = PoincareSeries::new(&[1, 1], &[(2, 1)]).unwrap();
        assert_eq!(a, PoincareSeries::pole(1));
        assert_eq!(a.to_string(), "(1 + w) / (1-w^2)");
        let sum = PoincareSeries::pole(1).add(&PoincareSeries::new(&[1], &[(2, 1)]).unwrap());
        assert_eq!(sum.expand(5), PoincareSeries::pole(1).expand(5).iter().zip(PoincareSeries::new(&[1], &[(2, 1)]).unwrap().expand(5)).map(|(a, b)| a + b).collect::<Vec<_>>());
    }

    #[test]
    fn multiplicity_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let random = |rng: &mut ChaCha8Rng| {
                let den: Vec<(u32, u32)> = (0..rng.gen_range(1..4)).map(|_| (rng.gen_range(1..5), 1)).collect();
                let num: Vec<i64> = (0..rng.gen_range(1..4)).map(|_| rng.gen_range(1..4)).collect();
                PoincareSeries::new(&num, &den).unwrap()
            };
            let p = random(&mut rng);
            let q = random(&mut rng);
            let (dp, ep) = p.leading_multiplicity().unwrap();
            let (dq, eq) = q.leading_multiplicity().unwrap();
            let r = p.mul(&q).mul_one_minus();
            assert_eq!(r.multiplicity(dp + dq).unwrap(), ep * eq);
        }
    }
}
