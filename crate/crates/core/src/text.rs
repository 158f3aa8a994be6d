//! Shared recursive-descent reader for operator, polynomial and coefficient
//! literals.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := INT | '(' expr ')' ['/' '(' expr ')'] | VAR ['^' INT]
//!         | 'x'IDX ['^' INT] | 'd'IDX '[' INT ']'
//! ```
//!
//! `VAR` is the transcendental of `F_p(t)`. Parenthesised groups must be
//! free of generators and denote coefficients.

use crate::coeff::{FieldSpec, Scalar};
use crate::error::{Error, Result};

/// A generator occurrence; variables are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Gen {
    X { var: usize, exp: u32 },
    D { var: usize, ord: u32 },
}

/// A coefficient times an ordered word in the generators.
#[derive(Clone, Debug)]
pub(crate) struct Term {
    pub coeff: Scalar,
    pub gens: Vec<Gen>,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    End,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'[' => Tok::LBracket,
            b']' => Tok::RBracket,
            b'0'..=b'9' => {
                let mut v: u64 = 0;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add((bytes[i] - b'0') as u64))
                        .ok_or(Error::Parse { pos: start, msg: "integer literal too large".into() })?;
                    i += 1;
                }
                out.push((start, Tok::Int(v)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(Error::Parse { pos: i, msg: format!("unexpected character '{ch}'") });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    field: &'a FieldSpec,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn at(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.at(), msg: msg.into() })
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            self.fail(format!("expected {what}"))
        }
    }

    fn int(&mut self, what: &str) -> Result<u64> {
        match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                Ok(v)
            }
            _ => self.fail(format!("expected {what}")),
        }
    }

    fn expr(&mut self) -> Result<Vec<Term>> {
        let mut out = Vec::new();
        let mut negate = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            let mut t = self.term()?;
            if negate {
                t.coeff = -&t.coeff;
            }
            out.push(t);
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    negate = false;
                }
                Tok::Minus => {
                    self.bump();
                    negate = true;
                }
                _ => break,
            }
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<Term> {
        let mut t = Term { coeff: self.field.one(), gens: Vec::new() };
        self.factor(&mut t)?;
        while *self.peek() == Tok::Star {
            self.bump();
            self.factor(&mut t)?;
        }
        Ok(t)
    }

    fn scalar_group(&mut self) -> Result<Scalar> {
        let start = self.at();
        self.expect(Tok::LParen, "'('")?;
        let inner = self.expr()?;
        self.expect(Tok::RParen, "')'")?;
        let mut acc = self.field.zero();
        for t in inner {
            if !t.gens.is_empty() {
                return Err(Error::Parse { pos: start, msg: "generators are not allowed inside a coefficient".into() });
            }
            acc = &acc + &t.coeff;
        }
        Ok(acc)
    }

    fn factor(&mut self, t: &mut Term) -> Result<()> {
        let start = self.at();
        match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                let p = self.field.characteristic().get() as u64;
                t.coeff = &t.coeff * &self.field.from_int((v % p) as i64);
            }
            Tok::LParen => {
                let num = self.scalar_group()?;
                let val = if *self.peek() == Tok::Slash {
                    self.bump();
                    let den = self.scalar_group()?;
                    num.div(&den).map_err(|_| Error::Parse { pos: start, msg: "zero denominator".into() })?
                } else {
                    num
                };
                t.coeff = &t.coeff * &val;
            }
            Tok::Ident(name) => {
                self.bump();
                if Some(name.as_str()) == self.field.var() {
                    let e = self.exponent()?;
                    let g = self.field.generator()?;
                    t.coeff = &t.coeff * &g.pow(e as u64);
                } else if let Some(var) = generator_index(&name, 'x') {
                    let var = var.ok_or(Error::Parse { pos: start, msg: "variable indices start at 1".into() })?;
                    let exp = self.exponent()?;
                    t.gens.push(Gen::X { var, exp });
                } else if let Some(var) = generator_index(&name, 'd') {
                    let var = var.ok_or(Error::Parse { pos: start, msg: "variable indices start at 1".into() })?;
                    self.expect(Tok::LBracket, "'[' after a divided power")?;
                    let ord = self.int("divided-power order")?;
                    self.expect(Tok::RBracket, "']'")?;
                    let ord = u32::try_from(ord).map_err(|_| Error::Parse { pos: start, msg: "order too large".into() })?;
                    t.gens.push(Gen::D { var, ord });
                } else {
                    return Err(Error::Parse { pos: start, msg: format!("unknown identifier '{name}'") });
                }
            }
            Tok::End => return self.fail("unexpected end of input"),
            other => return self.fail(format!("unexpected token {other:?}")),
        }
        Ok(())
    }

    fn exponent(&mut self) -> Result<u32> {
        if *self.peek() == Tok::Caret {
            self.bump();
            let at = self.at();
            let e = self.int("exponent")?;
            u32::try_from(e).map_err(|_| Error::Parse { pos: at, msg: "exponent too large".into() })
        } else {
            Ok(1)
        }
    }
}

/// `Some(Some(i))` for `x<i+1>`, `Some(None)` for index 0, `None` otherwise.
fn generator_index(name: &str, head: char) -> Option<Option<usize>> {
    let rest = name.strip_prefix(head)?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let idx: usize = rest.parse().ok()?;
    Some(idx.checked_sub(1))
}

/// Parse a sum of terms over `field`.
pub(crate) fn parse_sum(text: &str, field: &FieldSpec) -> Result<Vec<Term>> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, field };
    let out = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail("trailing input");
    }
    Ok(out)
}

/// Parse a coefficient literal such as `3`, `(t^2+1)` or `(t)/(t+1)`.
pub fn parse_scalar(text: &str, field: &FieldSpec) -> Result<Scalar> {
    let terms = parse_sum(text, field)?;
    let mut acc = field.zero();
    for t in terms {
        if !t.gens.is_empty() {
            return Err(Error::Parse { pos: 0, msg: "expected a coefficient".into() });
        }
        acc = &acc + &t.coeff;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Prime;

    #[test]
    fn terms_and_coefficients() {
        let f = FieldSpec::rational(Prime::new(3).unwrap());
        let ts = parse_sum("(t)/(t^2+1)*x1 - 2*d2[3]*x1^4", &f).unwrap();
        assert_eq!(ts.len(), 2);
        assert_eq!(ts[0].gens, vec![Gen::X { var: 0, exp: 1 }]);
        assert_eq!(ts[1].coeff, f.from_int(-2));
        assert_eq!(ts[1].gens, vec![Gen::D { var: 1, ord: 3 }, Gen::X { var: 0, exp: 4 }]);
        let t = parse_scalar("t^2 - 1", &f).unwrap();
        let g = f.generator().unwrap();
        assert_eq!(t, &(&g * &g) - &f.one());
    }

    #[test]
    fn errors_carry_positions() {
        let f = FieldSpec::prime_field(Prime::new(5).unwrap());
        match parse_sum("x1 + ?", &f) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        assert!(parse_sum("d1 x1", &f).is_err());
        assert!(parse_sum("x0", &f).is_err());
        assert!(parse_sum("t*x1", &f).is_err());
        assert!(parse_sum("(x1)*x1", &f).is_err());
        assert!(parse_sum("x1 +", &f).is_err());
    }
}
