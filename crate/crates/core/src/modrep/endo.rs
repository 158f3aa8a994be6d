//! Truncated endomorphism spaces of cyclic modules.
//!
//! For `M = D·v`, `Hom_D(M, M) ≅ {w ∈ M : ann(v)·w = 0}` via `φ ↦ φ(v)`. The
//! truncation replaces `ann(v)` by `R_B = ann(v) ∩ F_B` and `M` by the span of
//! basis vectors of weight `≤ N`.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::coeff::{Scalar, SpanBasis};
use crate::dring::{filtration_basis, Mono};
use crate::error::{Error, Result};

use super::{BasisKey, Element, ExplicitModule, Indexer};

/// Outcome of a truncated endomorphism computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndoResult {
    pub dim: usize,
    /// Same dimension at `(N - 1, B - 1)`.
    pub stabilized: bool,
    pub level: usize,
    pub buffer: usize,
}

/// Tag columns sit above every module column, so a reduced row led by a tag
/// has a zero module part.
const TAG: usize = usize::MAX / 2;

/// Basis of `R_B = {r ∈ F_B : r·v = 0}` as sparse combinations of `monos`.
fn annihilator(m: &ExplicitModule, v: &Element, monos: &[Mono]) -> Result<Vec<Vec<(usize, Scalar)>>> {
    let mut idx = Indexer::default();
    let mut span = SpanBasis::new(m.field());
    let mut out = Vec::new();
    for (ui, u) in monos.iter().enumerate() {
        let mut row = idx.sparse(&m.act_mono(u, v)?);
        row.push((TAG + ui, m.field().one()));
        if let Some(red) = span.insert_reduced(&row) {
            if red[0].0 >= TAG {
                out.push(red.into_iter().map(|(c, a)| (c - TAG, a)).collect());
            }
        }
    }
    Ok(out)
}

/// `dim {w ∈ span(basis of weight ≤ N) : R_B·w = 0}`. No generation check;
/// for cyclic `M = D·v` this bounds `dim Hom(M, M) ∩ M_N` from above.
pub fn hom_from_cyclic_dim(m: &ExplicitModule, v: &Element, level: usize, buffer: usize) -> Result<usize> {
    let monos = filtration_basis(m.ring(), buffer as u32);
    let ann = annihilator(m, v, &monos)?;
    let keys = m.basis_up_to(level as u64);
    let field = m.field();
    let mut images: HashMap<(usize, usize), Element> = HashMap::new();
    let mut span = SpanBasis::new(field);
    for r in &ann {
        // Row (r, o) of the constraint matrix: coefficient of key o in r·e_k.
        let mut rows: BTreeMap<BasisKey, Vec<(usize, Scalar)>> = BTreeMap::new();
        for (k, key) in keys.iter().enumerate() {
            let mut w = Element::zero();
            for (ui, c) in r {
                let img = match images.entry((*ui, k)) {
                    Entry::Occupied(e) => e.into_mut(),
                    Entry::Vacant(e) => e.insert(m.act_mono(&monos[*ui], &Element::basis(key.clone(), field))?),
                };
                w.add_scaled(img, c);
            }
            for (o, c) in w.terms() {
                rows.entry(o.clone()).or_default().push((k, c.clone()));
            }
        }
        for row in rows.values() {
            span.insert(row);
        }
        if span.rank() == keys.len() {
            break;
        }
    }
    Ok(keys.len() - span.rank())
}

/// Smallest weight `≤ N` of a basis vector outside `span(F_B · v)`.
fn first_unreached(m: &ExplicitModule, v: &Element, level: usize, buffer: usize) -> Result<Option<u64>> {
    let mut idx = Indexer::default();
    let mut span = SpanBasis::new(m.field());
    for u in filtration_basis(m.ring(), buffer as u32) {
        let w = m.act_mono(&u, v)?;
        if !w.is_zero() {
            span.insert(&idx.sparse(&w));
        }
    }
    for key in m.basis_up_to(level as u64) {
        let e = Element::basis(key.clone(), m.field());
        if !span.contains(&idx.sparse(&e)) {
            return Ok(Some(m.weight(&key)));
        }
    }
    Ok(None)
}

/// `dim End(M) ∩ M_N` for `M = D·v`, after checking that `F_B·v` reaches
/// every basis vector of weight `≤ N`.
pub fn endomorphism_dim(m: &ExplicitModule, v: &Element, level: usize, buffer: usize) -> Result<EndoResult> {
    if buffer < level || level == 0 {
        return Err(Error::Parameter(format!("need 1 <= N <= B, got N = {level}, B = {buffer}")));
    }
    if let Some(w) = first_unreached(m, v, level, buffer)? {
        return Err(Error::NotGenerating { level: w as u32 });
    }
    let dim = hom_from_cyclic_dim(m, v, level, buffer)?;
    let prev = hom_from_cyclic_dim(m, v, level - 1, buffer - 1)?;
    Ok(EndoResult { dim, stabilized: dim == prev, level, buffer })
}

/// Start at `N = 2·hint + 8`, `B = 2N`, and double both until the dimension
/// is stable, at most `max_rounds` times.
pub fn endomorphism_dim_auto(m: &ExplicitModule, v: &Element, hint: usize, max_rounds: usize) -> Result<EndoResult> {
    let mut level = 2 * hint + 8;
    let mut last = endomorphism_dim(m, v, level, 2 * level)?;
    for _ in 1..max_rounds {
        if last.stabilized {
            break;
        }
        level *= 2;
        last = endomorphism_dim(m, v, level, 2 * level)?;
    }
    Ok(last)
}
