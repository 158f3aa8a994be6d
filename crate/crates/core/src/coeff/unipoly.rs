//! Univariate polynomials over `F_p` or `F_p(t)`.

use std::fmt;

use crate::coeff::{FieldSpec, Fp, FpPoly, Scalar};
use crate::error::{Error, Result};
use crate::text::{parse_sum, Gen};

#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly {
    field: FieldSpec,
    var: String,
    c: Vec<Scalar>,
}

/// How irreducibility of a polynomial was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    Linear,
    TrialDivision,
    /// Eisenstein's criterion at the prime `t` of `F_p[t]`.
    EisensteinAtT,
    /// Supplied by the caller and not checked.
    Asserted,
}

impl UniPoly {
    /// Coefficients lowest degree first; entries are coerced into `field`.
    pub fn new(field: &FieldSpec, var: &str, coeffs: Vec<Scalar>) -> Result<UniPoly> {
        let c = coeffs.iter().map(|a| field.coerce(a)).collect::<Result<Vec<_>>>()?;
        Ok(UniPoly::trimmed(field.clone(), var.to_string(), c))
    }

    fn trimmed(field: FieldSpec, var: String, mut c: Vec<Scalar>) -> UniPoly {
        while c.last().is_some_and(|a| a.is_zero()) {
            c.pop();
        }
        UniPoly { field, var, c }
    }

    fn like(&self, c: Vec<Scalar>) -> UniPoly {
        UniPoly::trimmed(self.field.clone(), self.var.clone(), c)
    }

    pub fn zero(field: &FieldSpec, var: &str) -> UniPoly {
        UniPoly { field: field.clone(), var: var.into(), c: Vec::new() }
    }

    pub fn constant(field: &FieldSpec, var: &str, a: Scalar) -> UniPoly {
        UniPoly::trimmed(field.clone(), var.into(), vec![a])
    }

    /// `a·x^d`.
    pub fn monomial(field: &FieldSpec, var: &str, a: Scalar, d: usize) -> UniPoly {
        let mut c = vec![field.zero(); d + 1];
        c[d] = a;
        UniPoly::trimmed(field.clone(), var.into(), c)
    }

    /// Integer coefficients, lowest degree first.
    pub fn from_ints(field: &FieldSpec, var: &str, coeffs: &[i64]) -> UniPoly {
        UniPoly::trimmed(field.clone(), var.into(), coeffs.iter().map(|&a| field.from_int(a)).collect())
    }

    /// Parse text such as `x1^3 - t` or `x^2 + x + 1`. A single variable
    /// named `x` or `x<i>` may appear; its label is kept for printing.
    pub fn parse(text: &str, field: &FieldSpec) -> Result<UniPoly> {
        let terms = parse_sum(&rewrite_bare_x(text), field)?;
        let mut var: Option<usize> = None;
        let mut c: Vec<Scalar> = Vec::new();
        for t in terms {
            let mut deg = 0usize;
            for g in &t.gens {
                match g {
                    Gen::X { var: v, exp } => {
                        if var.is_some_and(|w| w != *v) {
                            return Err(Error::Parse { pos: 0, msg: "more than one variable in a univariate polynomial".into() });
                        }
                        var = Some(*v);
                        deg += *exp as usize;
                    }
                    Gen::D { .. } => {
                        return Err(Error::Parse { pos: 0, msg: "divided powers are not allowed in a polynomial".into() })
                    }
                }
            }
            if c.len() <= deg {
                c.resize(deg + 1, field.zero());
            }
            c[deg] = &c[deg] + &t.coeff;
        }
        let label = match var {
            Some(v) if text.contains(&format!("x{}", v + 1)) => format!("x{}", v + 1),
            _ => "x".to_string(),
        };
        Ok(UniPoly::trimmed(field.clone(), label, c))
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn with_var(&self, var: &str) -> UniPoly {
        UniPoly { field: self.field.clone(), var: var.into(), c: self.c.clone() }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.c
    }

    pub fn coeff(&self, d: usize) -> Scalar {
        self.c.get(d).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Scalar {
        self.c.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let n = self.c.len().max(o.c.len());
        self.like((0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        let n = self.c.len().max(o.c.len());
        self.like((0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect())
    }

    pub fn scale(&self, a: &Scalar) -> UniPoly {
        self.like(self.c.iter().map(|x| x * a).collect())
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return self.like(Vec::new());
        }
        let mut c = vec![self.field.zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] = &c[i + j] + &(a * b);
                }
            }
        }
        self.like(c)
    }

    pub fn divrem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let inv = d.lead().inv().ok_or(Error::DivisionByZero)?;
        let mut r = self.c.clone();
        if r.len() <= dd {
            return Ok((self.like(Vec::new()), self.clone()));
        }
        let mut q = vec![self.field.zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = &r[k + dd] * &inv;
            if coef.is_zero() {
                continue;
            }
            for (j, dj) in d.c.iter().enumerate() {
                if !dj.is_zero() {
                    r[k + j] = &r[k + j] - &(&coef * dj);
                }
            }
            q[k] = coef;
        }
        r.truncate(dd);
        Ok((self.like(q), self.like(r)))
    }

    pub fn rem(&self, d: &UniPoly) -> Result<UniPoly> {
        Ok(self.divrem(d)?.1)
    }

    pub fn monic(&self) -> UniPoly {
        match self.lead().inv() {
            Some(i) => self.scale(&i),
            None => self.clone(),
        }
    }

    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s·self + t·o = g` and `g` monic.
    pub fn xgcd(&self, o: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let one = UniPoly::constant(&self.field, &self.var, self.field.one());
        let zero = self.like(Vec::new());
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (one.clone(), zero.clone());
        let (mut t0, mut t1) = (zero, one);
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lead().inv() {
            Some(i) => (r0.scale(&i), s0.scale(&i), t0.scale(&i)),
            None => (r0, s0, t0),
        }
    }

    pub fn derivative(&self) -> UniPoly {
        self.like(self.c.iter().enumerate().skip(1).map(|(i, a)| &self.field.from_int(i as i64) * a).collect())
    }

    /// `self(x^m)`.
    pub fn inflate(&self, m: usize) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![self.field.zero(); (self.c.len() - 1) * m + 1];
        for (i, a) in self.c.iter().enumerate() {
            c[i * m] = a.clone();
        }
        self.like(c)
    }

    /// `g(x) = f(x^{p^k})` with `k` maximal; `f` then has a nonzero derivative.
    pub fn separable_decompose(&self) -> Result<(UniPoly, u32)> {
        if self.degree().unwrap_or(0) == 0 {
            return Err(Error::Domain("separable decomposition needs a nonconstant polynomial".into()));
        }
        let p = self.field.characteristic().get() as usize;
        let mut k = 0u32;
        let mut step = 1usize;
        loop {
            let next = step * p;
            let all = self.c.iter().enumerate().all(|(e, a)| a.is_zero() || e % next == 0);
            if !all {
                break;
            }
            step = next;
            k += 1;
        }
        let f = self.like((0..self.c.len()).step_by(step).map(|e| self.c[e].clone()).collect());
        Ok((f, k))
    }

    /// Trial division by every monic polynomial of degree at most `deg/2`.
    /// Requires coefficients in `F_p`.
    pub fn irreducible_over_fp(&self) -> Result<bool> {
        let d = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::Domain("irreducibility is defined for degree >= 1".into())),
        };
        let p = self.field.characteristic();
        let coeffs: Vec<Fp> = self
            .c
            .iter()
            .map(|a| match a {
                Scalar::Fp(x) => Ok(*x),
                Scalar::Rf(r) => r.as_constant().ok_or_else(|| Error::Field("coefficients must lie in F_p".into())),
            })
            .collect::<Result<_>>()?;
        let g = FpPoly::from_coeffs(p, &coeffs.iter().map(|a| a.value() as i64).collect::<Vec<_>>());
        let pp = p.get() as u64;
        for deg in 1..=d / 2 {
            let count = pp.pow(deg as u32);
            for code in 0..count {
                let mut c = Vec::with_capacity(deg + 1);
                let mut rest = code;
                for _ in 0..deg {
                    c.push((rest % pp) as i64);
                    rest /= pp;
                }
                c.push(1);
                if g.rem(&FpPoly::from_coeffs(p, &c)).is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Certify irreducibility over the base field, or explain why not.
    ///
    /// Over `F_p(t)` only three shapes are recognised: linear polynomials,
    /// polynomials with constant coefficients (irreducible over `F_p` stays
    /// irreducible over `F_p(t)`), and Eisenstein polynomials at `t`, which
    /// include `x^{p^k} - t`.
    pub fn certify_irreducible(&self) -> Result<Certificate> {
        let d = self.degree().unwrap_or(0);
        if d == 0 {
            return Err(Error::Domain("irreducibility is defined for degree >= 1".into()));
        }
        if d == 1 {
            return Ok(Certificate::Linear);
        }
        let constant_coeffs = self.c.iter().all(|a| match a {
            Scalar::Fp(_) => true,
            Scalar::Rf(r) => r.as_constant().is_some(),
        });
        if constant_coeffs {
            return if self.irreducible_over_fp()? {
                Ok(Certificate::TrialDivision)
            } else {
                Err(Error::Domain(format!("{self} is reducible")))
            };
        }
        if self.eisenstein_at_t() {
            return Ok(Certificate::EisensteinAtT);
        }
        Err(Error::Unsupported(format!("cannot certify irreducibility of {self} over {}", self.field)))
    }

    fn eisenstein_at_t(&self) -> bool {
        let p = self.field.characteristic();
        let rows: Vec<(FpPoly, FpPoly)> = self
            .c
            .iter()
            .map(|a| match a {
                Scalar::Fp(x) => (FpPoly::constant(*x), FpPoly::one(p)),
                Scalar::Rf(r) => (r.num().clone(), r.den().clone()),
            })
            .collect();
        let mut l = FpPoly::one(p);
        for (_, den) in &rows {
            let g = l.gcd(den);
            l = l.mul(&den.div_exact(&g));
        }
        let ints: Vec<FpPoly> = rows.iter().map(|(n, d)| n.mul(&l.div_exact(d))).collect();
        let t_divides = |f: &FpPoly| f.coeff(0).is_zero();
        let t2_divides = |f: &FpPoly| f.coeff(0).is_zero() && f.coeff(1).is_zero();
        let last = ints.len() - 1;
        !t_divides(&ints[last]) && ints[..last].iter().all(t_divides) && !t2_divides(&ints[0])
    }

    /// Evaluate at `a` using Horner's rule.
    pub fn eval(&self, a: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.c.iter().rev() {
            acc = &(&acc * a) + c;
        }
        acc
    }
}

/// Let a bare `x` (no index) stand for `x1`.
fn rewrite_bare_x(text: &str) -> String {
    let b = text.as_bytes();
    let mut out = String::with_capacity(text.len() + 4);
    for (i, ch) in text.char_indices() {
        out.push(ch);
        if ch == 'x' {
            let prev_ident = i > 0 && (b[i - 1].is_ascii_alphanumeric() || b[i - 1] == b'_');
            let next_ident = b.get(i + 1).is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_');
            if !prev_ident && !next_ident {
                out.push('1');
            }
        }
    }
    out
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coef = a.render(&self.field);
            match d {
                0 => write!(f, "{coef}")?,
                _ => {
                    let mono = if d == 1 { self.var.clone() } else { format!("{}^{d}", self.var) };
                    if a.is_one() {
                        write!(f, "{mono}")?
                    } else {
                        write!(f, "{coef}*{mono}")?
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Prime;

    fn fp(n: u32) -> FieldSpec {
        FieldSpec::prime_field(Prime::new(n).unwrap())
    }

    fn fpt(n: u32) -> FieldSpec {
        FieldSpec::rational(Prime::new(n).unwrap())
    }

    #[test]
    fn parse_and_print() {
        let g = UniPoly::parse("x1^3 - t", &fpt(3)).unwrap();
        assert_eq!(g.degree(), Some(3));
        assert_eq!(g.var(), "x1");
        assert_eq!(g.to_string(), "x1^3 + (2*t)");
        let h = UniPoly::parse("x^2 + x + 1", &fp(2)).unwrap();
        assert_eq!(h, UniPoly::from_ints(&fp(2), "x", &[1, 1, 1]));
        assert!(UniPoly::parse("x1*x2", &fp(2)).is_err());
    }

    #[test]
    fn irreducibility_by_trial_division() {
        assert!(UniPoly::from_ints(&fp(2), "x", &[1, 1, 1]).irreducible_over_fp().unwrap());
        assert!(!UniPoly::from_ints(&fp(3), "x", &[0, 0, 1]).irreducible_over_fp().unwrap());
        assert!(!UniPoly::from_ints(&fp(2), "x", &[1, 0, 1]).irreducible_over_fp().unwrap());
        assert!(UniPoly::from_ints(&fp(2), "x", &[5]).irreducible_over_fp().is_err());
        assert!(UniPoly::from_ints(&fp(3), "x", &[1, 0, 1]).irreducible_over_fp().unwrap());
    }

    #[test]
    fn certification_over_rational_functions() {
        let f = fpt(2);
        assert_eq!(UniPoly::parse("x^4 - t", &f).unwrap().certify_irreducible().unwrap(), Certificate::EisensteinAtT);
        assert_eq!(UniPoly::parse("x^2 + x + 1", &f).unwrap().certify_irreducible().unwrap(), Certificate::TrialDivision);
        assert!(UniPoly::parse("x^2 + 1", &f).unwrap().certify_irreducible().is_err());
        assert!(UniPoly::parse("x^2 + t*x + 1", &f).unwrap().certify_irreducible().is_err());
    }

    #[test]
    fn separable_decomposition() {
        let f3 = fpt(3);
        let (f, k) = UniPoly::parse("x^3 - t", &f3).unwrap().separable_decompose().unwrap();
        assert_eq!(k, 1);
        assert_eq!(f, UniPoly::parse("x - t", &f3).unwrap());
        let (f, k) = UniPoly::parse("x^9 - t", &f3).unwrap().separable_decompose().unwrap();
        assert_eq!((f.degree(), k), (Some(1), 2));
        let (f, k) = UniPoly::parse("x + 1", &f3).unwrap().separable_decompose().unwrap();
        assert_eq!((f.degree(), k), (Some(1), 0));
        assert!(UniPoly::parse("2", &f3).unwrap().separable_decompose().is_err());
    }

    #[test]
    fn decomposition_reproduces_input() {
        let f = fpt(2);
        for text in ["x^4 - t", "x^6 + t*x^2 + 1", "x^3 + x + t", "x^8 + (t+1)*x^4 + t"] {
            let g = UniPoly::parse(text, &f).unwrap();
            let (h, k) = g.separable_decompose().unwrap();
            assert_eq!(h.inflate(2usize.pow(k)), g);
            assert!(!h.derivative().is_zero());
        }
    }

    #[test]
    fn perfect_fields_have_no_inseparable_irreducibles() {
        for p in [2u32, 3, 5] {
            let f = fp(p);
            for deg in 1..=4usize {
                let total = (p as u64).pow(deg as u32);
                for code in 0..total {
                    let mut c: Vec<i64> = Vec::new();
                    let mut r = code;
                    for _ in 0..deg {
                        c.push((r % p as u64) as i64);
                        r /= p as u64;
                    }
                    c.push(1);
                    let g = UniPoly::from_ints(&f, "x", &c);
                    if g.irreducible_over_fp().unwrap() {
                        assert_eq!(g.separable_decompose().unwrap().1, 0, "{g}");
                    }
                }
            }
        }
    }

    #[test]
    fn xgcd_identity() {
        let f = fpt(3);
        let a = UniPoly::parse("x^3 - t", &f).unwrap();
        let b = UniPoly::parse("x^2 + t*x + 1", &f).unwrap();
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert_eq!(g.degree(), Some(0));
    }
}
