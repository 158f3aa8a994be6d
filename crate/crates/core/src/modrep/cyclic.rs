//! Truncated cyclic quotients `D(P_n)/Σ_j D(P_n) g_j`.

use std::collections::HashMap;

use serde::Serialize;

use crate::coeff::SpanBasis;
use crate::dring::{filtration_basis, DOp, Mono, RingSpec};
use crate::error::{Error, Result};

/// `D(P_n)/Σ D g_j` truncated at level `N`, with left-ideal vectors searched
/// up to canonical degree `B ≥ N`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CyclicQuotient {
    ring: RingSpec,
    #[serde(serialize_with = "ser_ops")]
    generators: Vec<DOp>,
    level: usize,
    buffer: usize,
}

fn ser_ops<S: serde::Serializer>(v: &[DOp], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

/// Dimensions of the truncated quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicHilbert {
    pub dims: Vec<u64>,
    /// Set when the buffer `B - Δ` gives the same dimensions, where `Δ` is
    /// the least power of `p` that is at least `N`.
    pub stabilized: bool,
    pub buffer: usize,
}

impl CyclicQuotient {
    pub fn new(ring: &RingSpec, generators: Vec<DOp>, level: usize, buffer: usize) -> Result<CyclicQuotient> {
        if buffer < level {
            return Err(Error::Parameter(format!("buffer degree {buffer} is below the level {level}")));
        }
        if let Some(g) = generators.iter().find(|g| g.ring() != ring) {
            return Err(Error::RingMismatch(format!("{} vs {ring}", g.ring())));
        }
        Ok(CyclicQuotient { ring: ring.clone(), generators, level, buffer })
    }

    /// Buffer `N + 2Δ`, enough for one stabilization comparison with slack.
    pub fn with_default_buffer(ring: &RingSpec, generators: Vec<DOp>, level: usize) -> Result<CyclicQuotient> {
        let step = buffer_step(ring, level);
        CyclicQuotient::new(ring, generators, level, level + 2 * step)
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn generators(&self) -> &[DOp] {
        &self.generators
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn buffer(&self) -> usize {
        self.buffer
    }

    /// `dims[i] = dim F_i - dim(F_i ∩ S_B)` for `i ≤ N`, where `S_B` is spanned
    /// by the products `u·g_j` of canonical degree at most `B`.
    pub fn dims_with_buffer(&self, b: usize) -> Result<Vec<u64>> {
        let mut monos = filtration_basis(&self.ring, b as u32);
        // Highest weight first, so a row's leading (smallest) column is its
        // top-degree term.
        monos.sort();
        let col: HashMap<&Mono, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let field = self.ring.field();
        let mut span = SpanBasis::new(field);
        for g in &self.generators {
            for u in &monos {
                let u = DOp::monomial(&self.ring, u.alpha.clone(), u.beta.clone(), field.one());
                let prod = u.try_mul(g)?;
                if prod.is_zero() || prod.canonical_degree().is_some_and(|d| d > b as u64) {
                    continue;
                }
                let row: Vec<(usize, _)> = prod.terms().map(|(m, c)| (col[m], c.clone())).collect();
                span.insert(&row);
            }
        }
        let mut in_ideal = vec![0u64; b + 1];
        for c in span.leading_columns() {
            in_ideal[monos[c].weight() as usize] += 1;
        }
        let mut per_weight = vec![0u64; b + 1];
        for m in &monos {
            per_weight[m.weight() as usize] += 1;
        }
        let mut dims = Vec::with_capacity(self.level + 1);
        let (mut f, mut s) = (0u64, 0u64);
        for i in 0..=self.level {
            f += per_weight[i];
            s += in_ideal[i];
            dims.push(f - s);
        }
        Ok(dims)
    }

    pub fn hilbert(&self) -> Result<CyclicHilbert> {
        let dims = self.dims_with_buffer(self.buffer)?;
        let step = buffer_step(&self.ring, self.level);
        let stabilized = match self.buffer.checked_sub(step) {
            Some(lower) if lower >= self.level => self.dims_with_buffer(lower)? == dims,
            _ => false,
        };
        Ok(CyclicHilbert { dims, stabilized, buffer: self.buffer })
    }
}

/// `p^⌈log_p N⌉`, at least 1.
fn buffer_step(ring: &RingSpec, level: usize) -> usize {
    let p = ring.p();
    p.pow(p.ceil_log(level.max(1) as u64)).expect("small level") as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Prime;
    use crate::coeff::FieldSpec;

    #[test]
    fn polynomial_ring_as_quotient() {
        let ring = RingSpec::new(1, FieldSpec::prime_field(Prime::new(2).unwrap())).unwrap();
        let gens: Vec<DOp> = (1..=12).map(|j| DOp::d(&ring, 0, j)).collect();
        let q = CyclicQuotient::new(&ring, gens, 6, 12).unwrap();
        let h = q.hilbert().unwrap();
        assert_eq!(h.dims, (1..=7).collect::<Vec<u64>>());
        assert!(CyclicQuotient::new(&ring, vec![], 5, 4).is_err());
        let unit = CyclicQuotient::new(&ring, vec![DOp::one(&ring)], 4, 4).unwrap();
        assert!(unit.hilbert().unwrap().dims.iter().all(|&d| d == 0));
    }
}
