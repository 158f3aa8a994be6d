//! Operator literals: `2*x1^3*d1[2] + x2`, `(t)/(t^2+1)*x1`.

use crate::dring::DOp;
use crate::dring::RingSpec;
use crate::error::{Error, Result};
use crate::text::{parse_sum, Gen};

pub(super) fn parse(text: &str, ring: &RingSpec) -> Result<DOp> {
    let mut out = DOp::zero(ring);
    for t in parse_sum(text, ring.field())? {
        let mut word = DOp::scalar(ring, t.coeff);
        for g in t.gens {
            let (var, gen) = match g {
                Gen::X { var, exp } => (var, (var < ring.n()).then(|| DOp::x(ring, var, exp))),
                Gen::D { var, ord } => (var, (var < ring.n()).then(|| DOp::d(ring, var, ord))),
            };
            let gen = gen.ok_or_else(|| Error::Parse {
                pos: 0,
                msg: format!("variable index {} out of range 1..{}", var + 1, ring.n()),
            })?;
            word = &word * &gen;
        }
        out = &out + &word;
    }
    Ok(out)
}

pub(super) fn print(a: &DOp) -> String {
    if a.is_zero() {
        return "0".into();
    }
    let field = a.ring().field();
    let mut parts = Vec::with_capacity(a.len());
    for (m, c) in a.terms() {
        let mut factors = Vec::new();
        for (i, &e) in m.alpha.entries().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(format!("x{}", i + 1)),
                _ => factors.push(format!("x{}^{e}", i + 1)),
            }
        }
        for (i, &e) in m.beta.entries().iter().enumerate() {
            if e > 0 {
                factors.push(format!("d{}[{e}]", i + 1));
            }
        }
        if factors.is_empty() || !c.is_one() {
            factors.insert(0, c.render(field));
        }
        parts.push(factors.join("*"));
    }
    parts.join(" + ")
}
