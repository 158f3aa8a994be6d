//! One-variable building blocks. A module over `D(P_n)` is assembled as a
//! direct sum of tensor products with one factor per variable; each factor
//! knows its basis, weights and the action of `x` and `∂^[j]`.

use serde::Serialize;

use crate::arith::{binom_mod_p, Prime};
use crate::coeff::{FieldSpec, Scalar, UniPoly};
use crate::dring::straighten_1d;
use crate::error::{Error, Result};

use super::index_set::IndexSet;

/// A basis slot of a factor; its meaning depends on the factor kind.
pub type Slot = (u32, u32);

/// A finite linear combination of slots.
pub type SlotVec = Vec<(Slot, Scalar)>;

/// Inner module of an induced `T_k`-factor.
fn ser_poly<S: serde::Serializer>(g: &UniPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(g)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum TkInner {
    /// `K[x]/(g)` with `g ∈ K[x^{p^k}]` monic.
    Quotient(#[serde(serialize_with = "ser_poly")] UniPoly),
    /// `K[x]` itself.
    PolyRing,
}

/// Inner module of a `Λ`-factor, spanned by `∂^[m]·1̄` for `m ∈ I`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum LambdaInner {
    /// `Λ/Λ_+ = K`.
    Trivial,
    Monomial(IndexSet),
}

impl LambdaInner {
    fn contains(&self, m: u64) -> bool {
        match self {
            LambdaInner::Trivial => m == 0,
            LambdaInner::Monomial(s) => s.contains(m),
        }
    }

    /// `∂^[e]·∂^[m]1̄ = C(e+m, m)·∂^[e+m]1̄` when `e + m ∈ I`.
    fn act(&self, e: u32, m: u32, p: Prime) -> Option<(u32, u32)> {
        let t = e as u64 + m as u64;
        if !self.contains(t) {
            return None;
        }
        let c = binom_mod_p(t, m as u64, p);
        (c != 0).then_some((t as u32, c))
    }
}

/// A one-variable factor.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Factor {
    /// `D(P_1)` acting on itself; slot `(a, b)` is `x^a ∂^[b]`.
    Regular,
    /// `D(P_1) ⊗_{T_k} (T_k ⊗_{K[x]} inner)` with `Λ_{[p^k],+}` acting by 0 on
    /// the inner module; slot `(a, j)` is `∂^[a p^k] ⊗ x^j`.
    InducedTk { k: u32, inner: TkInner },
    /// `D(P_1) ⊗_Λ inner`; slot `(a, m)` is `x^a ⊗ ∂^[m]1̄`.
    InducedLambda { inner: LambdaInner },
    /// A `Λ`-module on its own; slot `(0, m)` is `∂^[m]1̄`.
    LambdaModule { inner: LambdaInner },
}

fn sc(field: &FieldSpec, c: u32) -> Scalar {
    field.from_int(c as i64)
}

impl Factor {
    /// Reject malformed parameters.
    pub fn validate(&self, field: &FieldSpec) -> Result<()> {
        let p = field.characteristic();
        match self {
            Factor::InducedTk { k, inner: TkInner::Quotient(g) } => {
                if g.field() != field {
                    return Err(Error::Field(format!("modulus over {} in a module over {field}", g.field())));
                }
                if g.degree().unwrap_or(0) < 1 || !g.lead().is_one() {
                    return Err(Error::Model("the inner modulus must be monic of positive degree".into()));
                }
                let q = p.pow(*k).ok_or_else(|| Error::Parameter("p^k overflows".into()))? as usize;
                if g.coeffs().iter().enumerate().any(|(e, c)| e % q != 0 && !c.is_zero()) {
                    return Err(Error::Model(format!("{g} is not a polynomial in x^{q}")));
                }
                Ok(())
            }
            Factor::InducedTk { k, inner: TkInner::PolyRing } => {
                p.pow(*k).ok_or_else(|| Error::Parameter("p^k overflows".into()))?;
                Ok(())
            }
            Factor::InducedLambda { inner: LambdaInner::Monomial(s) }
            | Factor::LambdaModule { inner: LambdaInner::Monomial(s) } => s.check_closure(p, 1 << 12),
            _ => Ok(()),
        }
    }

    /// Whether `x` acts, i.e. the factor is a `D(P_1)`-module.
    pub fn is_d_module(&self) -> bool {
        !matches!(self, Factor::LambdaModule { .. })
    }

    fn scale_of(&self, p: Prime) -> u64 {
        match self {
            Factor::InducedTk { k, .. } => p.pow(*k).expect("validated"),
            _ => 1,
        }
    }

    /// Filtration weight of a slot.
    pub fn weight(&self, s: Slot, p: Prime) -> u64 {
        let (a, b) = (s.0 as u64, s.1 as u64);
        match self {
            Factor::Regular | Factor::InducedLambda { .. } | Factor::LambdaModule { .. } => a + b,
            Factor::InducedTk { inner: TkInner::Quotient(_), .. } => a * self.scale_of(p),
            Factor::InducedTk { inner: TkInner::PolyRing, .. } => a * self.scale_of(p) + b,
        }
    }

    /// Number of slots of weight exactly `w`.
    pub fn count_at(&self, w: u64, p: Prime) -> u64 {
        match self {
            Factor::Regular => w + 1,
            Factor::InducedTk { inner: TkInner::Quotient(g), .. } => {
                if w.is_multiple_of(self.scale_of(p)) {
                    g.degree().expect("validated") as u64
                } else {
                    0
                }
            }
            Factor::InducedTk { inner: TkInner::PolyRing, .. } => w / self.scale_of(p) + 1,
            Factor::InducedLambda { inner: LambdaInner::Trivial } => 1,
            Factor::InducedLambda { inner: LambdaInner::Monomial(s) } => s.count_up_to(w),
            Factor::LambdaModule { inner } => inner.contains(w) as u64,
        }
    }

    /// Slots of weight exactly `w`.
    pub fn slots_at(&self, w: u64, p: Prime) -> Vec<Slot> {
        let w32 = w as u32;
        match self {
            Factor::Regular => (0..=w32).map(|a| (a, w32 - a)).collect(),
            Factor::InducedTk { inner: TkInner::Quotient(g), .. } => {
                let q = self.scale_of(p);
                if w.is_multiple_of(q) {
                    (0..g.degree().expect("validated") as u32).map(|j| ((w / q) as u32, j)).collect()
                } else {
                    Vec::new()
                }
            }
            Factor::InducedTk { inner: TkInner::PolyRing, .. } => {
                let q = self.scale_of(p);
                (0..=w / q).map(|a| (a as u32, (w - a * q) as u32)).collect()
            }
            Factor::InducedLambda { inner: LambdaInner::Trivial } => vec![(w32, 0)],
            Factor::InducedLambda { inner: LambdaInner::Monomial(s) } => {
                s.members_up_to(w).into_iter().map(|m| ((w - m) as u32, m as u32)).collect()
            }
            Factor::LambdaModule { inner } => {
                if inner.contains(w) {
                    vec![(0, w32)]
                } else {
                    Vec::new()
                }
            }
        }
    }

    /// `x · s`.
    pub fn act_x(&self, s: Slot, field: &FieldSpec) -> Result<SlotVec> {
        let (a, b) = s;
        Ok(match self {
            Factor::Regular | Factor::InducedLambda { .. } => vec![((a + 1, b), field.one())],
            Factor::InducedTk { inner, .. } => {
                // x·(∂^[a q] ⊗ v) = ∂^[a q] ⊗ x v - ∂^[a q - 1] ⊗ v, and
                // ∂^[a q - 1] = ∂^[(a-1) q] ∂^[q-1] up to the unit C(aq-1, q-1) = 1.
                let q = self.scale_of(field.characteristic()) as u32;
                let mut out: SlotVec = inner_x(inner, b, field).into_iter().map(|(j, c)| ((a, j), c)).collect();
                if a >= 1 {
                    for (j, c) in inner_d(q - 1, b, field) {
                        out.push(((a - 1, j), -c));
                    }
                }
                out
            }
            Factor::LambdaModule { .. } => return Err(Error::Model("x does not act on a Λ-module".into())),
        })
    }

    /// `∂^[j] · s`.
    pub fn act_d(&self, j: u32, s: Slot, field: &FieldSpec) -> Result<SlotVec> {
        let p = field.characteristic();
        let (a, b) = s;
        Ok(match self {
            Factor::Regular => straighten_1d(0, j, a, b, p).into_iter().map(|(x, d, c)| ((x, d), sc(field, c))).collect(),
            Factor::InducedTk { .. } => {
                let q = self.scale_of(p);
                let t = j as u64 + a as u64 * q;
                let c = binom_mod_p(t, j as u64, p);
                if c == 0 {
                    return Ok(Vec::new());
                }
                let a2 = (t / q) as u32;
                let c = sc(field, c);
                inner_d((t % q) as u32, b, field).into_iter().map(|(jj, e)| ((a2, jj), &c * &e)).collect()
            }
            Factor::InducedLambda { inner } => {
                // ∂^[j] x^a = Σ_l C(a, l) x^{a-l} ∂^[j-l]
                let mut out = Vec::new();
                for l in 0..=j.min(a) {
                    let c = binom_mod_p(a as u64, l as u64, p);
                    if c == 0 {
                        continue;
                    }
                    if let Some((m2, e)) = inner.act(j - l, b, p) {
                        let v = (c as u64 * e as u64 % p.get() as u64) as u32;
                        out.push(((a - l, m2), sc(field, v)));
                    }
                }
                out
            }
            Factor::LambdaModule { inner } => match inner.act(j, b, p) {
                Some((m2, e)) => vec![((0, m2), sc(field, e))],
                None => Vec::new(),
            },
        })
    }
}

/// `x · x^j` in the inner module of an induced `T_k`-factor.
fn inner_x(inner: &TkInner, j: u32, field: &FieldSpec) -> SlotVecInner {
    match inner {
        TkInner::PolyRing => vec![(j + 1, field.one())],
        TkInner::Quotient(g) => {
            let d = g.degree().expect("validated") as u32;
            if j + 1 < d {
                vec![(j + 1, field.one())]
            } else {
                (0..d).map(|i| (i, -g.coeff(i as usize))).filter(|(_, c)| !c.is_zero()).collect()
            }
        }
    }
}

/// `∂^[e] · x^j = C(j, e) x^{j-e}` in the inner module; in the quotient case
/// this is well defined because `e < p^k` and `g ∈ K[x^{p^k}]`.
fn inner_d(e: u32, j: u32, field: &FieldSpec) -> SlotVecInner {
    if e > j {
        return Vec::new();
    }
    let c = binom_mod_p(j as u64, e as u64, field.characteristic());
    if c == 0 {
        Vec::new()
    } else {
        vec![(j - e, sc(field, c))]
    }
}

type SlotVecInner = Vec<(u32, Scalar)>;
