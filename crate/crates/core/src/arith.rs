//! Characteristic-`p` combinatorics.
//!
//! Binomial coefficients are reduced modulo `p` digit by digit (Lucas), so
//! nothing here ever forms a factorial. Digit lists are little-endian, which
//! makes multiplication by `p^k` a plain shift.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A validated prime, carried as a typed parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Prime(u32);

impl Prime {
    /// Largest prime accepted; keeps every product of two residues inside `u64`.
    pub const MAX: u32 = 1 << 16;

    pub fn new(p: u32) -> Result<Prime> {
        if !(2..=Self::MAX).contains(&p) || !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not a supported prime")));
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// `p^k`, or `None` on overflow.
    pub fn pow(self, k: u32) -> Option<u64> {
        (self.0 as u64).checked_pow(k)
    }

    /// The exponent `k` with `p^k <= m < p^(k+1)`; `m` must be positive.
    pub fn floor_log(self, m: u64) -> u32 {
        debug_assert!(m > 0);
        let p = self.0 as u64;
        let mut k = 0;
        let mut q = m;
        while q >= p {
            q /= p;
            k += 1;
        }
        k
    }

    /// Smallest `k` with `p^k >= m`.
    pub fn ceil_log(self, m: u64) -> u32 {
        let mut k = 0;
        let mut acc = 1u64;
        while acc < m {
            acc = acc.saturating_mul(self.0 as u64);
            k += 1;
        }
        k
    }
}

impl TryFrom<u32> for Prime {
    type Error = Error;
    fn try_from(p: u32) -> Result<Prime> {
        Prime::new(p)
    }
}

impl From<Prime> for u32 {
    fn from(p: Prime) -> u32 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Base-`p` digits of `m`, least significant first; empty for `m = 0`.
pub fn p_adic_digits(mut m: u64, p: Prime) -> Vec<u32> {
    let p = p.get() as u64;
    let mut out = Vec::new();
    while m > 0 {
        out.push((m % p) as u32);
        m /= p;
    }
    out
}

/// `C(i, j) mod p` via Lucas' theorem.
pub fn binom_mod_p(mut i: u64, mut j: u64, p: Prime) -> u32 {
    if j > i {
        return 0;
    }
    let pp = p.get() as u64;
    let mut acc = 1u64;
    while j > 0 {
        let (a, b) = (i % pp, j % pp);
        if b > a {
            return 0;
        }
        acc = acc * small_binom(a, b, pp) % pp;
        i /= pp;
        j /= pp;
    }
    acc as u32
}

/// `C(a, b) mod p` for digits `b <= a < p`.
fn small_binom(a: u64, b: u64, p: u64) -> u64 {
    let b = b.min(a - b);
    let mut num = 1u64;
    let mut den = 1u64;
    for t in 0..b {
        num = num * ((a - t) % p) % p;
        den = den * ((t + 1) % p) % p;
    }
    num * inv_mod(den, p) % p
}

/// Inverse of a nonzero residue modulo a prime.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a % p, p - 2, p)
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

/// True when every base-`p` digit of `j` is at most the matching digit of `i`,
/// which is exactly when `C(i, j)` is nonzero modulo `p`.
pub fn digitwise_le(j: u64, i: u64, p: Prime) -> bool {
    let pp = p.get() as u64;
    let (mut i, mut j) = (i, j);
    while j > 0 {
        if j % pp > i % pp {
            return false;
        }
        i /= pp;
        j /= pp;
    }
    true
}

/// Exponent vector of a monomial.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> MultiIndex {
        MultiIndex(entries)
    }

    pub fn zero(n: usize) -> MultiIndex {
        MultiIndex(vec![0; n])
    }

    /// The unit vector `e_i` (0-based).
    pub fn unit(n: usize, i: usize) -> MultiIndex {
        let mut v = vec![0; n];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|α|`.
    pub fn total(&self) -> u64 {
        self.0.iter().map(|&a| a as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn entries_mut(&mut self) -> &mut [u32] {
        &mut self.0
    }

    pub fn scaled(&self, factor: u32) -> MultiIndex {
        MultiIndex(self.0.iter().map(|&a| a * factor).collect())
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// All indices of length `n` with `|α| = d`, in lexicographically
    /// decreasing order.
    pub fn of_total(n: usize, d: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fill_total(&mut cur, 0, d, &mut out);
        out
    }
}

fn fill_total(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<MultiIndex>) {
    if pos + 1 == cur.len() {
        cur[pos] = left;
        out.push(MultiIndex(cur.clone()));
        return;
    }
    if cur.is_empty() {
        if left == 0 {
            out.push(MultiIndex(Vec::new()));
        }
        return;
    }
    for a in (0..=left).rev() {
        cur[pos] = a;
        fill_total(cur, pos + 1, left - a, out);
    }
}

impl std::ops::Index<usize> for MultiIndex {
    type Output = u32;
    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

/// Sign vector selecting, per variable, the commutative piece `K[x_i]`
/// (`+1`) or the divided powers `Λ_i` (`-1`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EpsSignature(Vec<i8>);

impl EpsSignature {
    pub fn new(signs: Vec<i8>) -> Result<EpsSignature> {
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Domain("signature entries must be +1 or -1".into()));
        }
        Ok(EpsSignature(signs))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    /// Number of `-1` entries.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&s| s == -1).count()
    }
}

/// `∏ C(α_i, β_i) mod p`.
pub fn binom_multi(alpha: &MultiIndex, beta: &MultiIndex, p: Prime) -> Result<u32> {
    if alpha.len() != beta.len() {
        return Err(Error::Dimension { expected: alpha.len(), found: beta.len() });
    }
    let pp = p.get() as u64;
    let mut acc = 1u64;
    for (&a, &b) in alpha.0.iter().zip(&beta.0) {
        acc = acc * binom_mod_p(a as u64, b as u64, p) as u64 % pp;
        if acc == 0 {
            break;
        }
    }
    Ok(acc as u32)
}

/// Product of `C(α_i, β_i)` over the coordinates with `ε_i = -1`; the
/// `+1` coordinates contribute 1.
pub fn eps_binom(alpha: &MultiIndex, beta: &MultiIndex, eps: &EpsSignature, p: Prime) -> Result<u32> {
    if alpha.len() != beta.len() {
        return Err(Error::Dimension { expected: alpha.len(), found: beta.len() });
    }
    if alpha.len() != eps.len() {
        return Err(Error::Dimension { expected: alpha.len(), found: eps.len() });
    }
    let pp = p.get() as u64;
    let mut acc = 1u64;
    for ((&a, &b), &s) in alpha.0.iter().zip(&beta.0).zip(&eps.0) {
        if s == -1 {
            acc = acc * binom_mod_p(a as u64, b as u64, p) as u64 % pp;
        }
    }
    Ok(acc as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32) -> Prime {
        Prime::new(n).unwrap()
    }

    fn int_binom(i: u64, j: u64) -> u128 {
        if j > i {
            return 0;
        }
        let mut acc: u128 = 1;
        for t in 0..j {
            acc = acc * (i - t) as u128 / (t + 1) as u128;
        }
        acc
    }

    #[test]
    fn primes_are_validated() {
        assert!(Prime::new(0).is_err());
        assert!(Prime::new(1).is_err());
        assert!(Prime::new(4).is_err());
        assert!(Prime::new(7).is_ok());
    }

    #[test]
    fn digits() {
        assert_eq!(p_adic_digits(0, p(3)), Vec::<u32>::new());
        assert_eq!(p_adic_digits(4, p(3)), vec![1, 1]);
        assert_eq!(p_adic_digits(8, p(2)), vec![0, 0, 0, 1]);
    }

    #[test]
    fn lucas_matches_integer_binomials() {
        for &q in &[2u32, 3, 5, 7] {
            for i in 0..60u64 {
                for j in 0..=i + 2 {
                    let want = (int_binom(i, j) % q as u128) as u32;
                    assert_eq!(binom_mod_p(i, j, p(q)), want, "C({i},{j}) mod {q}");
                }
            }
        }
    }

    #[test]
    fn spot_values() {
        for &q in &[2u32, 3, 5] {
            assert_eq!(binom_mod_p(q as u64, 1, p(q)), 0);
            assert_eq!(binom_mod_p(17, 0, p(q)), 1);
        }
        assert_eq!(binom_mod_p(6, 3, p(3)), 2);
    }

    #[test]
    fn multi_and_eps() {
        let a = MultiIndex::new(vec![3, 1]);
        let b = MultiIndex::new(vec![1, 1]);
        assert_eq!(binom_multi(&a, &b, p(2)).unwrap(), 1);
        let a = MultiIndex::new(vec![2, 2]);
        let b = MultiIndex::new(vec![1, 0]);
        assert_eq!(binom_multi(&a, &b, p(2)).unwrap(), 0);
        assert_eq!(binom_multi(&a, &MultiIndex::zero(2), p(2)).unwrap(), 1);
        assert!(binom_multi(&a, &MultiIndex::zero(3), p(2)).is_err());

        let eps = EpsSignature::new(vec![-1, 1]).unwrap();
        let a = MultiIndex::new(vec![2, 3]);
        let b = MultiIndex::new(vec![1, 1]);
        assert_eq!(eps_binom(&a, &b, &eps, p(2)).unwrap(), 0);
        let plus = EpsSignature::new(vec![1, 1]).unwrap();
        assert_eq!(eps_binom(&a, &b, &plus, p(2)).unwrap(), 1);
        assert!(EpsSignature::new(vec![0]).is_err());
        assert_eq!(EpsSignature::new(vec![-1, 1, -1]).unwrap().weight(), 2);
    }

    #[test]
    fn of_total_counts() {
        assert_eq!(MultiIndex::of_total(3, 4).len(), 15);
        assert_eq!(MultiIndex::of_total(1, 0), vec![MultiIndex::new(vec![0])]);
        let v = MultiIndex::of_total(2, 2);
        assert_eq!(v[0].entries(), &[2, 0]);
        assert_eq!(v[2].entries(), &[0, 2]);
    }

    #[test]
    fn logs() {
        assert_eq!(p(3).floor_log(1), 0);
        assert_eq!(p(3).floor_log(9), 2);
        assert_eq!(p(3).floor_log(26), 2);
        assert_eq!(p(2).ceil_log(15), 4);
        assert_eq!(p(2).ceil_log(16), 4);
        assert_eq!(p(2).ceil_log(1), 0);
    }
}
