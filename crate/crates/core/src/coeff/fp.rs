//! Prime-field residues and dense polynomials over `F_p`.

use std::fmt;

use crate::arith::{inv_mod, Prime};

/// A residue modulo a prime, tagged with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    v: u32,
    p: u32,
}

impl Fp {
    pub fn new(v: i64, p: Prime) -> Fp {
        let m = p.get() as i64;
        Fp { v: v.rem_euclid(m) as u32, p: p.get() }
    }

    pub(crate) fn raw(v: u32, p: u32) -> Fp {
        debug_assert!(v < p);
        Fp { v, p }
    }

    pub fn zero(p: Prime) -> Fp {
        Fp { v: 0, p: p.get() }
    }

    pub fn one(p: Prime) -> Fp {
        Fp { v: 1, p: p.get() }
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.v
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.v == 0
    }

    #[inline]
    pub fn is_one(self) -> bool {
        self.v == 1
    }

    #[inline]
    #[allow(clippy::should_implement_trait)]
    pub fn add(self, o: Fp) -> Fp {
        let s = self.v + o.v;
        Fp { v: if s >= self.p { s - self.p } else { s }, p: self.p }
    }

    #[inline]
    #[allow(clippy::should_implement_trait)]
    pub fn sub(self, o: Fp) -> Fp {
        Fp { v: if self.v >= o.v { self.v - o.v } else { self.v + self.p - o.v }, p: self.p }
    }

    #[inline]
    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Fp {
        Fp { v: if self.v == 0 { 0 } else { self.p - self.v }, p: self.p }
    }

    #[inline]
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, o: Fp) -> Fp {
        Fp { v: ((self.v as u64 * o.v as u64) % self.p as u64) as u32, p: self.p }
    }

    pub fn inv(self) -> Option<Fp> {
        if self.v == 0 {
            None
        } else {
            Some(Fp { v: inv_mod(self.v as u64, self.p as u64) as u32, p: self.p })
        }
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let mut r = Fp { v: 1 % self.p, p: self.p };
        let mut b = self;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(b);
            }
            b = b.mul(b);
            e >>= 1;
        }
        r
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

/// Dense polynomial over `F_p`, coefficients little-endian, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpPoly {
    p: u32,
    c: Vec<u32>,
}

impl FpPoly {
    pub fn zero(p: Prime) -> FpPoly {
        FpPoly { p: p.get(), c: Vec::new() }
    }

    pub fn one(p: Prime) -> FpPoly {
        FpPoly { p: p.get(), c: vec![1] }
    }

    pub fn constant(a: Fp) -> FpPoly {
        FpPoly::trimmed(a.p, vec![a.v])
    }

    /// `a·t^d`.
    pub fn monomial(a: Fp, d: usize) -> FpPoly {
        let mut c = vec![0; d + 1];
        c[d] = a.v;
        FpPoly::trimmed(a.p, c)
    }

    /// Build from signed integer coefficients, lowest degree first.
    pub fn from_coeffs(p: Prime, coeffs: &[i64]) -> FpPoly {
        let m = p.get() as i64;
        FpPoly::trimmed(p.get(), coeffs.iter().map(|&a| a.rem_euclid(m) as u32).collect())
    }

    fn trimmed(p: u32, mut c: Vec<u32>) -> FpPoly {
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn prime(&self) -> Prime {
        Prime::new(self.p).expect("modulus is prime")
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.c
    }

    pub fn coeff(&self, d: usize) -> Fp {
        Fp::raw(self.c.get(d).copied().unwrap_or(0), self.p)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0] == 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Fp {
        Fp::raw(self.c.last().copied().unwrap_or(0), self.p)
    }

    pub fn is_monic(&self) -> bool {
        self.c.last() == Some(&1)
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = o.c.get(i).copied().unwrap_or(0);
            let s = a + b;
            c.push(if s >= self.p { s - self.p } else { s });
        }
        FpPoly::trimmed(self.p, c)
    }

    pub fn neg(&self) -> FpPoly {
        FpPoly { p: self.p, c: self.c.iter().map(|&a| if a == 0 { 0 } else { self.p - a }).collect() }
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        self.add(&o.neg())
    }

    pub fn scale(&self, a: Fp) -> FpPoly {
        if a.is_zero() {
            return FpPoly { p: self.p, c: Vec::new() };
        }
        let p = self.p as u64;
        FpPoly { p: self.p, c: self.c.iter().map(|&x| ((x as u64 * a.v as u64) % p) as u32).collect() }
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly { p: self.p, c: Vec::new() };
        }
        let p = self.p as u64;
        let mut acc = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u64 * b as u64) % p;
            }
        }
        FpPoly::trimmed(self.p, acc.into_iter().map(|x| x as u32).collect())
    }

    pub fn pow(&self, mut e: u64) -> FpPoly {
        let mut r = FpPoly { p: self.p, c: vec![1] };
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let p = self.p as u64;
        let dd = d.c.len() - 1;
        if self.c.len() <= dd {
            return (FpPoly { p: self.p, c: Vec::new() }, self.clone());
        }
        let inv = inv_mod(d.c[dd] as u64, p);
        let mut r: Vec<u64> = self.c.iter().map(|&x| x as u64).collect();
        let mut q = vec![0u64; self.c.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = r[k + dd] * inv % p;
            q[k] = coef;
            if coef == 0 {
                continue;
            }
            for (j, &dj) in d.c.iter().enumerate() {
                r[k + j] = (r[k + j] + p - coef * dj as u64 % p) % p;
            }
        }
        r.truncate(dd);
        (
            FpPoly::trimmed(self.p, q.into_iter().map(|x| x as u32).collect()),
            FpPoly::trimmed(self.p, r.into_iter().map(|x| x as u32).collect()),
        )
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.divrem(d).1
    }

    /// Exact division; the caller guarantees divisibility.
    pub fn div_exact(&self, d: &FpPoly) -> FpPoly {
        let (q, r) = self.divrem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.lead().inv().expect("nonzero lead"))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> FpPoly {
        let p = self.p as u64;
        let c = self.c.iter().enumerate().skip(1).map(|(i, &a)| ((i as u64 % p) * a as u64 % p) as u32).collect();
        FpPoly::trimmed(self.p, c)
    }

    pub fn eval(&self, x: Fp) -> Fp {
        let mut acc = Fp::raw(0, self.p);
        for &a in self.c.iter().rev() {
            acc = acc.mul(x).add(Fp::raw(a, self.p));
        }
        acc
    }

    /// Render with the given variable name, highest degree first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (d, &a) in self.c.iter().enumerate().rev() {
            if a == 0 {
                continue;
            }
            let mono = match d {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{d}"),
            };
            parts.push(match (a, d) {
                (_, 0) => a.to_string(),
                (1, _) => mono,
                _ => format!("{a}*{mono}"),
            });
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn residue_arithmetic() {
        let a = Fp::new(-1, p(5));
        assert_eq!(a.value(), 4);
        assert_eq!(a.mul(a).value(), 1);
        assert_eq!(a.inv().unwrap().value(), 4);
        assert!(Fp::zero(p(5)).inv().is_none());
        assert_eq!(Fp::new(3, p(7)).pow(6).value(), 1);
    }

    #[test]
    fn division_and_gcd() {
        // (t^2 - 1) = (t - 1)(t + 1) over F_3
        let f = FpPoly::from_coeffs(p(3), &[-1, 0, 1]);
        let g = FpPoly::from_coeffs(p(3), &[-1, 1]);
        let (q, r) = f.divrem(&g);
        assert!(r.is_zero());
        assert_eq!(q, FpPoly::from_coeffs(p(3), &[1, 1]));
        assert_eq!(f.gcd(&g), g);
        let h = FpPoly::from_coeffs(p(3), &[1, 0, 1]);
        assert!(f.gcd(&h).is_one());
    }

    #[test]
    fn derivative_in_char_p() {
        // d/dt t^3 = 3t^2 = 0 over F_3
        let f = FpPoly::from_coeffs(p(3), &[0, 0, 0, 1]);
        assert!(f.derivative().is_zero());
    }

    #[test]
    fn render() {
        let f = FpPoly::from_coeffs(p(3), &[1, 0, 2]);
        assert_eq!(f.render("t"), "2*t^2 + 1");
        assert_eq!(FpPoly::zero(p(3)).render("t"), "0");
    }
}
