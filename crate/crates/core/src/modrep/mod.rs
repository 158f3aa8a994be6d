//! Explicit modules over `D(P_n)` and its subalgebras, their filtrations of
//! standard type, and the truncated computations built on them.
//!
//! An [`ExplicitModule`] is a finite direct sum of tensor products of
//! one-variable [`Factor`]s. Its basis vectors carry a weight fixed at
//! construction, and `F_i · V_0` is computed by exact rank over the base
//! field.

mod cyclic;
mod endo;
mod factor;
mod hilbert;
mod index_set;
mod witness_search;
mod zoo;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::coeff::{FieldSpec, Scalar};
use crate::dring::{DOp, Mono, RingSpec};
use crate::error::{Error, Result};

pub use cyclic::{CyclicHilbert, CyclicQuotient};
pub use endo::{endomorphism_dim, endomorphism_dim_auto, hom_from_cyclic_dim, EndoResult};
pub use factor::{Factor, LambdaInner, Slot, TkInner};
pub use hilbert::{check_relations, hilbert_function, hilbert_function_default};
pub use index_set::{mr_breakpoints, submasks, IndexSet, MrConstruction};
pub use witness_search::{holonomic_witness_search, Witness, WitnessBounds};
pub use zoo::{field_from_name, induced_monomial_count, zoo, zoo_names, ModuleRep, ZooEntry, ZooParams};

/// The algebra whose filtration is used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Algebra {
    /// `D(P_n)` with `F_i = span{x^α ∂^[β] : |α| + |β| ≤ i}`.
    D,
    /// `Λ` with `Λ_i = span{∂^[β] : |β| ≤ i}`; `x` need not act.
    Lambda,
}

/// A basis vector: a summand and one slot per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BasisKey {
    pub summand: usize,
    pub slots: Vec<Slot>,
}

/// A finite linear combination of basis vectors.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<BasisKey, Scalar>,
}

impl Element {
    pub fn zero() -> Element {
        Element::default()
    }

    pub fn basis(key: BasisKey, field: &FieldSpec) -> Element {
        let mut e = Element::zero();
        e.terms.insert(key, field.one());
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisKey, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: &BasisKey) -> Option<&Scalar> {
        self.terms.get(k)
    }

    /// `self += c · k`.
    pub fn add_term(&mut self, k: BasisKey, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(v) => {
                let s = &*v + c;
                if s.is_zero() {
                    self.terms.remove(&k);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(k, c.clone());
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Element, c: &Scalar) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), &(v * c));
        }
    }

    pub fn sub(&self, other: &Element, field: &FieldSpec) -> Element {
        let mut out = self.clone();
        out.add_scaled(other, &-field.one());
        out
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        let mut out = Element::zero();
        out.add_scaled(self, c);
        out
    }
}

/// Assigns consecutive column indices to basis keys.
#[derive(Clone, Debug, Default)]
pub struct Indexer {
    map: HashMap<BasisKey, usize>,
}

impl Indexer {
    pub fn index(&mut self, k: &BasisKey) -> usize {
        let next = self.map.len();
        *self.map.entry(k.clone()).or_insert(next)
    }

    pub fn sparse(&mut self, e: &Element) -> Vec<(usize, Scalar)> {
        e.terms().map(|(k, c)| (self.index(k), c.clone())).collect()
    }
}

/// A module given by an explicit weighted basis and action rules.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExplicitModule {
    ring: RingSpec,
    algebra: Algebra,
    summands: Vec<Vec<Factor>>,
    label: String,
}

impl ExplicitModule {
    /// `⊕_s ⊗_i summands[s][i]`, factor `i` in variable `x_{i+1}`.
    pub fn new(ring: &RingSpec, algebra: Algebra, summands: Vec<Vec<Factor>>, label: impl Into<String>) -> Result<Self> {
        if summands.is_empty() {
            return Err(Error::Model("a module needs at least one summand".into()));
        }
        for s in &summands {
            if s.len() != ring.n() {
                return Err(Error::Dimension { expected: ring.n(), found: s.len() });
            }
            for f in s {
                f.validate(ring.field())?;
                if algebra == Algebra::D && !f.is_d_module() {
                    return Err(Error::Model("a Λ-only factor cannot carry a D(P_n)-module".into()));
                }
            }
        }
        Ok(ExplicitModule { ring: ring.clone(), algebra, summands, label: label.into() })
    }

    /// A single tensor product.
    pub fn tensor(ring: &RingSpec, algebra: Algebra, factors: Vec<Factor>, label: impl Into<String>) -> Result<Self> {
        ExplicitModule::new(ring, algebra, vec![factors], label)
    }

    /// `self ⊕ other`.
    pub fn direct_sum(&self, other: &ExplicitModule) -> Result<ExplicitModule> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)));
        }
        if self.algebra != other.algebra {
            return Err(Error::Model("direct sum of modules over different algebras".into()));
        }
        let mut summands = self.summands.clone();
        summands.extend(other.summands.iter().cloned());
        ExplicitModule::new(&self.ring, self.algebra, summands, format!("{} + {}", self.label, other.label))
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn field(&self) -> &FieldSpec {
        self.ring.field()
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn summands(&self) -> &[Vec<Factor>] {
        &self.summands
    }

    pub fn weight(&self, k: &BasisKey) -> u64 {
        let p = self.ring.p();
        self.summands[k.summand].iter().zip(&k.slots).map(|(f, &s)| f.weight(s, p)).sum()
    }

    /// Basis vectors of weight exactly `w`.
    pub fn basis_at(&self, w: u64) -> Vec<BasisKey> {
        let p = self.ring.p();
        let mut out = Vec::new();
        for (si, factors) in self.summands.iter().enumerate() {
            let mut partial: Vec<(u64, Vec<Slot>)> = vec![(0, Vec::new())];
            for (fi, f) in factors.iter().enumerate() {
                let last = fi + 1 == factors.len();
                let mut next = Vec::new();
                for (used, slots) in &partial {
                    let range: Vec<u64> = if last { vec![w - used] } else { (0..=w - used).collect() };
                    for v in range {
                        for s in f.slots_at(v, p) {
                            let mut t = slots.clone();
                            t.push(s);
                            next.push((used + v, t));
                        }
                    }
                }
                partial = next;
            }
            out.extend(partial.into_iter().map(|(_, slots)| BasisKey { summand: si, slots }));
        }
        out
    }

    /// Basis vectors of weight `≤ w`.
    pub fn basis_up_to(&self, w: u64) -> Vec<BasisKey> {
        (0..=w).flat_map(|v| self.basis_at(v)).collect()
    }

    /// Number of basis vectors of each weight `0..=n`, by convolving the
    /// per-factor counts.
    pub fn weight_counts(&self, n: usize) -> Vec<u64> {
        let p = self.ring.p();
        let mut total = vec![0u64; n + 1];
        for factors in &self.summands {
            let mut acc = vec![0u64; n + 1];
            acc[0] = 1;
            for f in factors {
                let counts: Vec<u64> = (0..=n as u64).map(|w| f.count_at(w, p)).collect();
                let mut next = vec![0u64; n + 1];
                for (i, &a) in acc.iter().enumerate().filter(|(_, &a)| a != 0) {
                    for (j, &c) in counts[..=n - i].iter().enumerate() {
                        next[i + j] += a * c;
                    }
                }
                acc = next;
            }
            for (t, a) in total.iter_mut().zip(acc) {
                *t += a;
            }
        }
        total
    }

    /// `dim` of the span of basis vectors of weight `≤ i`, for `i ≤ n`. When
    /// the weight-0 block generates, this is the Hilbert function of the
    /// filtration `F_i · M_0`.
    pub fn weight_profile(&self, n: usize) -> Vec<u64> {
        self.weight_counts(n)
            .into_iter()
            .scan(0u64, |s, c| {
                *s += c;
                Some(*s)
            })
            .collect()
    }

    /// The weight-0 basis vectors.
    pub fn ground_block(&self) -> Vec<Element> {
        self.basis_at(0).into_iter().map(|k| Element::basis(k, self.field())).collect()
    }

    fn act_factor(
        &self,
        var: usize,
        v: &Element,
        f: impl Fn(&Factor, Slot) -> Result<Vec<(Slot, Scalar)>>,
    ) -> Result<Element> {
        let mut out = Element::zero();
        for (k, c) in v.terms() {
            let factor = &self.summands[k.summand][var];
            for (s, e) in f(factor, k.slots[var])? {
                let mut key = k.clone();
                key.slots[var] = s;
                out.add_term(key, &(c * &e));
            }
        }
        Ok(out)
    }

    fn check_var(&self, var: usize) -> Result<()> {
        if var >= self.ring.n() {
            return Err(Error::Parameter(format!("variable index {} out of range 1..{}", var + 1, self.ring.n())));
        }
        Ok(())
    }

    /// `x_{var+1} · v`.
    pub fn act_x(&self, var: usize, v: &Element) -> Result<Element> {
        self.check_var(var)?;
        self.act_factor(var, v, |f, s| f.act_x(s, self.field()))
    }

    /// `∂_{var+1}^[j] · v`.
    pub fn act_d(&self, var: usize, j: u32, v: &Element) -> Result<Element> {
        self.check_var(var)?;
        if j == 0 {
            return Ok(v.clone());
        }
        self.act_factor(var, v, |f, s| f.act_d(j, s, self.field()))
    }

    /// `x^α ∂^[β] · v`.
    pub fn act_mono(&self, m: &Mono, v: &Element) -> Result<Element> {
        let mut w = v.clone();
        for (i, &b) in m.beta.entries().iter().enumerate() {
            if b > 0 {
                w = self.act_d(i, b, &w)?;
            }
        }
        for (i, &a) in m.alpha.entries().iter().enumerate() {
            for _ in 0..a {
                w = self.act_x(i, &w)?;
            }
        }
        Ok(w)
    }

    /// `a · v` for an operator in normal form.
    pub fn act(&self, a: &DOp, v: &Element) -> Result<Element> {
        if a.ring() != &self.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", a.ring(), self.ring)));
        }
        let mut out = Element::zero();
        for (m, c) in a.terms() {
            out.add_scaled(&self.act_mono(m, v)?, c);
        }
        Ok(out)
    }

    /// Largest weight among the terms of `v`, `None` for zero.
    pub fn max_weight(&self, v: &Element) -> Option<u64> {
        v.terms().map(|(k, _)| self.weight(k)).max()
    }
}

impl fmt::Display for ExplicitModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.label, self.ring)
    }
}
