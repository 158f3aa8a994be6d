//! Surviving divided-power indices of monomial quotients `Λ/Λ(∂^[j] : j ∉ I)`
//! and the breakpoint construction of modules with prescribed growth.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Pow};
use serde::Serialize;

use crate::arith::{p_adic_digits, Prime};
use crate::error::{Error, Result};

/// A set `I ⊆ ℕ` containing 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum IndexSet {
    Finite(BTreeSet<u64>),
    /// `{0} ∪ {j·step : 1 ≤ j ≤ count}` over the listed `(step, count)`.
    Progressions(Vec<(u64, u64)>),
    All,
}

impl IndexSet {
    /// The finite set `members ∪ {0}`.
    pub fn finite(members: impl IntoIterator<Item = u64>) -> IndexSet {
        let mut s: BTreeSet<u64> = members.into_iter().collect();
        s.insert(0);
        IndexSet::Finite(s)
    }

    /// `{0} ∪ {p^{k_s}}`.
    pub fn powers(p: Prime, ks: &[u32]) -> Result<IndexSet> {
        let mut s = Vec::with_capacity(ks.len());
        for &k in ks {
            s.push(p.pow(k).ok_or_else(|| Error::Parameter(format!("{p}^{k} overflows")))?);
        }
        Ok(IndexSet::finite(s))
    }

    pub fn contains(&self, m: u64) -> bool {
        match self {
            IndexSet::Finite(s) => s.contains(&m),
            IndexSet::Progressions(v) => m == 0 || v.iter().any(|&(st, c)| m.is_multiple_of(st) && m / st <= c),
            IndexSet::All => true,
        }
    }

    /// Members `≤ w`, ascending.
    pub fn members_up_to(&self, w: u64) -> Vec<u64> {
        match self {
            IndexSet::Finite(s) => s.range(..=w).copied().collect(),
            IndexSet::Progressions(v) => {
                let mut s = BTreeSet::from([0]);
                for &(st, c) in v {
                    s.extend((1..=c.min(w / st)).map(|j| j * st));
                }
                s.into_iter().collect()
            }
            IndexSet::All => (0..=w).collect(),
        }
    }

    pub fn count_up_to(&self, w: u64) -> u64 {
        match self {
            IndexSet::All => w + 1,
            IndexSet::Finite(s) => s.range(..=w).count() as u64,
            IndexSet::Progressions(_) => self.members_up_to(w).len() as u64,
        }
    }

    /// Check that every digitwise submask of a member `≤ bound` is a member,
    /// which makes `Λ·{∂^[j] : j ∉ I}` a monomial ideal with complement `I`.
    ///
    /// Progressions whose steps are powers of `p` are closed by construction
    /// (submasks of `j·p^k` are `j'·p^k` with `j' ≤ j`), so only other steps
    /// are enumerated.
    pub fn check_closure(&self, p: Prime, bound: u64) -> Result<()> {
        let members = match self {
            IndexSet::All => return Ok(()),
            IndexSet::Finite(s) => s.range(..=bound).copied().collect::<Vec<_>>(),
            IndexSet::Progressions(v) => {
                if let Some(&(st, _)) = v.iter().find(|(st, _)| *st == 0) {
                    return Err(Error::Model(format!("progression step {st} must be positive")));
                }
                let odd: Vec<(u64, u64)> = v.iter().copied().filter(|&(st, _)| !is_power_of(st, p)).collect();
                IndexSet::Progressions(odd).members_up_to(bound)
            }
        };
        if !self.contains(0) {
            return Err(Error::Model("0 must belong to the index set".into()));
        }
        for m in members {
            if let Some(bad) = submasks(m, p).into_iter().find(|&s| !self.contains(s)) {
                return Err(Error::Model(format!(
                    "index set is not closed: {bad} is digitwise below member {m} but missing"
                )));
            }
        }
        Ok(())
    }
}

fn is_power_of(m: u64, p: Prime) -> bool {
    let p = p.get() as u64;
    let mut m = m;
    while m > 1 && m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

/// Every `m'` whose base-`p` digits are at most those of `m`.
pub fn submasks(m: u64, p: Prime) -> Vec<u64> {
    let pp = p.get() as u64;
    let mut out = vec![0u64];
    let mut place = 1u64;
    for d in p_adic_digits(m, p) {
        let prev = out.clone();
        for e in 1..=d as u64 {
            out.extend(prev.iter().map(|s| s + e * place));
        }
        place = place.saturating_mul(pp);
    }
    out
}

/// Output of [`mr_breakpoints`].
#[derive(Clone, Debug, Serialize)]
pub struct MrConstruction {
    /// `r = num/den`.
    pub r: (u32, u32),
    pub p: u32,
    /// Scale exponents `k_ν`.
    pub ks: Vec<u32>,
    /// Block lengths `i_ν`; block `ν` contributes `{j·p^{k_ν} : 1 ≤ j ≤ i_ν}`.
    pub counts: Vec<u64>,
    /// Breaking points `b_ν = i_ν·p^{k_ν}`.
    pub breakpoints: Vec<u64>,
    /// `f(b_ν) = 1 + Σ_{μ ≤ ν} i_μ`, the module dimension at `b_ν`.
    pub values: Vec<u64>,
    /// Slope `1/p^{k_ν}` of `f` along block `ν`.
    #[serde(serialize_with = "ser_rats")]
    pub slopes: Vec<BigRational>,
    pub index_set: IndexSet,
}

fn ser_rats<S: serde::Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

impl MrConstruction {
    /// `f(i) = #{m ∈ I : m ≤ i}`.
    pub fn f(&self, i: u64) -> u64 {
        self.index_set.count_up_to(i)
    }
}

/// `(f - 1)^den < b^num`, i.e. `f < b^r + 1`, exactly.
fn below_graph(f: u64, b: u64, r: (u32, u32)) -> bool {
    f == 0 || Pow::pow(BigUint::from(f - 1), r.1) < Pow::pow(BigUint::from(b), r.0)
}

fn rel_gap(f: u64, b: u64, r: (u32, u32)) -> f64 {
    let y = (b as f64).powf(r.0 as f64 / r.1 as f64) + 1.0;
    (y - f as f64) / f as f64
}

/// Build `count` blocks of the staircase `f` that stays below `i^r + 1`.
///
/// Block `ν` uses the scale `p^{k_ν}`: `k_1 = 2`, and `k_{ν+1}` is the least
/// `k` with `p^k > b_ν`, `f(b_ν) + 1 ≤ p^{kr} + 1` and a strictly smaller relative
/// gap `(y(b) - f(b))/f(b)` at the resulting breakpoint, `y(i) = i^r + 1`.
/// Within a block, `i_ν` is the largest `i` with `f(i·p^{k_ν}) < (i·p^{k_ν})^r + 1`.
pub fn mr_breakpoints(r: (u32, u32), p: Prime, count: usize) -> Result<MrConstruction> {
    let (num, den) = r;
    if num == 0 || den == 0 || num >= den {
        return Err(Error::Parameter(format!("r = {num}/{den} must lie strictly between 0 and 1")));
    }
    let mut ks = Vec::new();
    let mut counts = Vec::new();
    let mut breakpoints = Vec::new();
    let mut values = Vec::new();
    let mut f_prev = 1u64;
    let mut b_prev = 0u64;
    let mut gap_prev = f64::INFINITY;
    let mut k = 2u32;
    while ks.len() < count {
        let scale = p.pow(k).ok_or_else(|| Error::Parameter("breakpoint scale overflows u64".into()))?;
        // The first index of the block may touch the graph: f(p^k) ≤ p^{kr} + 1.
        let admissible =
            scale > b_prev && Pow::pow(BigUint::from(f_prev), den) <= Pow::pow(BigUint::from(scale), num);
        if admissible {
            let mut i = 1u64;
            while below_graph(f_prev + i + 1, (i + 1).saturating_mul(scale), r) {
                i += 1;
            }
            let b = i.checked_mul(scale).ok_or_else(|| Error::Parameter("breakpoint overflows u64".into()))?;
            let f = f_prev + i;
            let gap = rel_gap(f, b, r);
            if gap < gap_prev {
                ks.push(k);
                counts.push(i);
                breakpoints.push(b);
                values.push(f);
                f_prev = f;
                b_prev = b;
                gap_prev = gap;
            }
        }
        k += 1;
    }
    let pp = BigRational::from_integer(p.get().into());
    let slopes = ks.iter().map(|&k| BigRational::one() / Pow::pow(&pp, k)).collect();
    let steps = ks.iter().zip(&counts).map(|(&k, &c)| (p.pow(k).expect("checked above"), c)).collect();
    Ok(MrConstruction {
        r,
        p: p.get(),
        ks,
        counts,
        breakpoints,
        values,
        slopes,
        index_set: IndexSet::Progressions(steps),
    })
}
