//! `dim F_i · V_0` by exact rank, and the defining-relation check.

use crate::arith::binom_mod_p;
use crate::coeff::SpanBasis;
use crate::error::{Error, Result};

use super::{Algebra, Element, ExplicitModule, Indexer};

/// `dims[i] = dim_K span(F_i · V_0)` for `0 ≤ i ≤ n`, with `F` the canonical
/// filtration of the module's algebra.
///
/// Uses `S_i = S_{i-1} + Σ_j x_j Δ_{i-1} + Σ_{j, d ≥ 1} ∂_j^[d] Δ_{i-d}`,
/// where `Δ_l` holds the vectors that raised the rank at level `l`. This
/// follows from `F_i = F_{i-1} + Σ x_j F_{i-1} + Σ ∂_j^[d] F_{i-d}`.
pub fn hilbert_function(m: &ExplicitModule, v0: &[Element], n: usize) -> Result<Vec<u64>> {
    let mut span = SpanBasis::new(m.field());
    let mut idx = Indexer::default();
    let mut deltas: Vec<Vec<Element>> = Vec::with_capacity(n + 1);
    let mut dims = Vec::with_capacity(n + 1);
    let mut level = Vec::new();
    for v in v0 {
        if span.insert(&idx.sparse(v)) {
            level.push(v.clone());
        }
    }
    deltas.push(level);
    dims.push(span.rank() as u64);
    let nvars = m.ring().n();
    for i in 1..=n {
        let mut level = Vec::new();
        let mut consider = |w: Element, span: &mut SpanBasis, idx: &mut Indexer| {
            if !w.is_zero() && span.insert(&idx.sparse(&w)) {
                level.push(w);
            }
        };
        if m.algebra() == Algebra::D {
            for v in &deltas[i - 1] {
                for j in 0..nvars {
                    consider(m.act_x(j, v)?, &mut span, &mut idx);
                }
            }
        }
        for d in 1..=i {
            for v in &deltas[i - d] {
                for j in 0..nvars {
                    consider(m.act_d(j, d as u32, v)?, &mut span, &mut idx);
                }
            }
        }
        deltas.push(level);
        dims.push(span.rank() as u64);
    }
    Ok(dims)
}

/// [`hilbert_function`] with `V_0` the weight-0 block.
pub fn hilbert_function_default(m: &ExplicitModule, n: usize) -> Result<Vec<u64>> {
    hilbert_function(m, &m.ground_block(), n)
}

/// Check the defining relations of `D(P_n)` on every basis vector of weight
/// `≤ w_max`, with divided-power orders up to `order_max`:
///
/// ```text
/// [x_i, x_j] = 0                    [∂_i^[a], x_j] = δ_ij ∂_i^[a-1]
/// ∂_i^[a] ∂_i^[b] = C(a+b, a) ∂_i^[a+b]    [∂_i^[a], ∂_j^[b]] = 0
/// ```
///
/// Relations involving `x` are skipped for modules over `Λ`.
pub fn check_relations(m: &ExplicitModule, w_max: u64, order_max: u32) -> Result<()> {
    let field = m.field();
    let p = m.ring().p();
    let n = m.ring().n();
    let with_x = m.algebra() == Algebra::D;
    let fail = |what: String, e: &Element| -> Error {
        let key = e.terms().next().map(|(k, _)| format!("{k:?}")).unwrap_or_default();
        Error::Model(format!("{}: relation {what} fails on basis vector {key}", m.label()))
    };
    for key in m.basis_up_to(w_max) {
        let e = Element::basis(key, field);
        for i in 0..n {
            for j in 0..n {
                if with_x && i < j {
                    let l = m.act_x(i, &m.act_x(j, &e)?)?;
                    let r = m.act_x(j, &m.act_x(i, &e)?)?;
                    if l != r {
                        return Err(fail(format!("[x{}, x{}] = 0", i + 1, j + 1), &e));
                    }
                }
                for a in 1..=order_max {
                    if with_x {
                        let l = m.act_d(i, a, &m.act_x(j, &e)?)?.sub(&m.act_x(j, &m.act_d(i, a, &e)?)?, field);
                        let r = if i == j { m.act_d(i, a - 1, &e)? } else { Element::zero() };
                        if l != r {
                            return Err(fail(format!("[d{}[{a}], x{}]", i + 1, j + 1), &e));
                        }
                    }
                    for b in 1..=order_max {
                        let l = m.act_d(i, a, &m.act_d(j, b, &e)?)?;
                        let r = if i == j {
                            let c = binom_mod_p((a + b) as u64, a as u64, p);
                            m.act_d(i, a + b, &e)?.scale(&field.from_int(c as i64))
                        } else {
                            m.act_d(j, b, &m.act_d(i, a, &e)?)?
                        };
                        if l != r {
                            return Err(fail(format!("d{}[{a}] d{}[{b}]", i + 1, j + 1), &e));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}
