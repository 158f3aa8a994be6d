//! Bounded search for a subalgebra acting freely on a finite subspace.
//!
//! The subalgebra `Λ'` is generated by `x_j` for `j` in a chosen set of `s`
//! variables and by `∂_j^[p^{k_j} b]` for the remaining ones. A witness is a
//! finite-dimensional `V` with `dim V ≥ p^{Σ k_j}` on which `Λ' ∩ F_N` acts
//! freely. Absence of a witness within the bounds proves nothing.

use serde::Serialize;

use crate::arith::MultiIndex;
use crate::coeff::SpanBasis;
use crate::dring::Mono;
use crate::error::Result;

use super::{Algebra, BasisKey, Element, ExplicitModule, Indexer};

/// Search limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessBounds {
    /// Largest number of polynomial variables tried.
    pub s_max: usize,
    /// Largest Frobenius exponent tried per remaining variable.
    pub k_max: u32,
    /// Truncation level `N` of the free-action certificate.
    pub level: usize,
}

/// A verified free action at truncation level `level`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub s: usize,
    /// 0-based variables acting through `x_j`.
    pub poly_vars: Vec<usize>,
    /// `k_j` for every other variable, in increasing variable order.
    pub ks: Vec<u32>,
    /// Basis keys spanning `V`.
    pub v: Vec<BasisKey>,
    pub level: usize,
    /// `dim Λ'_N · dim V`, the verified rank.
    pub rank: usize,
}

/// Monomials of `Λ'` with canonical weight `≤ level`.
fn subalgebra_monomials(n: usize, poly: &[usize], scales: &[(usize, u64)], level: u64) -> Vec<Mono> {
    let mut out = vec![(0u64, vec![0u32; n], vec![0u32; n])];
    for &j in poly {
        out = out
            .into_iter()
            .flat_map(|(w, a, b)| {
                (0..=level - w).map(move |e| {
                    let mut a = a.clone();
                    a[j] = e as u32;
                    (w + e, a, b.clone())
                })
            })
            .collect();
    }
    for &(j, q) in scales {
        out = out
            .into_iter()
            .flat_map(|(w, a, b)| {
                (0..=(level - w) / q).map(move |e| {
                    let mut b = b.clone();
                    b[j] = (e * q) as u32;
                    (w + e * q, a.clone(), b)
                })
            })
            .collect();
    }
    out.into_iter().map(|(_, a, b)| Mono::new(MultiIndex::new(a), MultiIndex::new(b))).collect()
}

fn subsets(n: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for j in start..n {
            cur.push(j);
            rec(j + 1, n, s, cur, out);
            cur.pop();
        }
    }
    rec(0, n, s, &mut cur, &mut out);
    out
}

/// All `k ∈ [0, k_max]^m`, by total then lexicographically.
fn exponent_vectors(m: usize, k_max: u32) -> Vec<Vec<u32>> {
    let mut all: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..m {
        all = all.into_iter().flat_map(|v| (0..=k_max).map(move |k| [v.clone(), vec![k]].concat())).collect();
    }
    all.sort_by_key(|v| (v.iter().sum::<u32>(), v.clone()));
    all
}

fn acts_freely(m: &ExplicitModule, monos: &[Mono], v: &[Element]) -> Result<Option<usize>> {
    let mut span = SpanBasis::new(m.field());
    let mut idx = Indexer::default();
    for u in monos {
        for e in v {
            let w = m.act_mono(u, e)?;
            if w.is_zero() || !span.insert(&idx.sparse(&w)) {
                return Ok(None);
            }
        }
    }
    Ok(Some(span.rank()))
}

/// Search shapes with `s` from `min(s_max, n)` down to 0, variable subsets
/// in lexicographic order, candidate subspaces (the weight-0 block, then
/// single basis vectors of weight `≤ 2`), and exponent vectors by total.
pub fn holonomic_witness_search(m: &ExplicitModule, bounds: WitnessBounds) -> Result<Option<Witness>> {
    let n = m.ring().n();
    let p = m.ring().p();
    let field = m.field();
    let mut candidates: Vec<Vec<BasisKey>> = vec![m.basis_at(0)];
    candidates.extend(m.basis_up_to(2).into_iter().map(|k| vec![k]));
    candidates.dedup();
    let s_top = if m.algebra() == Algebra::Lambda { 0 } else { bounds.s_max.min(n) };
    for s in (0..=s_top).rev() {
        for poly in subsets(n, s) {
            let rest: Vec<usize> = (0..n).filter(|j| !poly.contains(j)).collect();
            for cand in &candidates {
                if cand.is_empty() {
                    continue;
                }
                let v: Vec<Element> = cand.iter().map(|k| Element::basis(k.clone(), field)).collect();
                for ks in exponent_vectors(rest.len(), bounds.k_max) {
                    let total: u32 = ks.iter().sum();
                    if (cand.len() as u64) < p.pow(total).unwrap_or(u64::MAX) {
                        continue;
                    }
                    let scales: Vec<(usize, u64)> =
                        rest.iter().zip(&ks).map(|(&j, &k)| (j, p.pow(k).expect("small exponent"))).collect();
                    let monos = subalgebra_monomials(n, &poly, &scales, bounds.level as u64);
                    if let Some(rank) = acts_freely(m, &monos, &v)? {
                        return Ok(Some(Witness {
                            s,
                            poly_vars: poly,
                            ks,
                            v: cand.clone(),
                            level: bounds.level,
                            rank,
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}
