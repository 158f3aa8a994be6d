//! Constructive certificates: commutator chains that walk a nonzero operator
//! down to a nonzero scalar, and identity checks for the divided-power
//! higher derivation on `K[x]`.
//!
//! A chain applies `ad u = [u, ·]` with `u = x_j` (cost 1) or `u = ∂_j^[p^k]`
//! (cost `p^k`). When the total cost stays within the canonical degree of the
//! start, the chain certifies an upper bound on the return behavior of that
//! one element. Nothing is claimed about other elements.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::arith::{binom_mod_p, Prime};
use crate::coeff::Scalar;
use crate::dring::{DOp, RingSpec};
use crate::error::{Error, Result};

/// One inner derivation, variables 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    AdX { var: usize },
    AdD { var: usize, k: u32 },
}

impl Move {
    pub fn cost(&self, p: Prime) -> u64 {
        match *self {
            Move::AdX { .. } => 1,
            Move::AdD { k, .. } => p.pow(k).expect("exponent bounded by a degree"),
        }
    }

    /// The operator `u` of `ad u`.
    pub fn operator(&self, ring: &RingSpec) -> DOp {
        match *self {
            Move::AdX { var } => DOp::x(ring, var, 1),
            Move::AdD { var, k } => {
                DOp::d(ring, var, ring.p().pow(k).expect("exponent bounded by a degree") as u32)
            }
        }
    }

    /// `[u, a]`.
    pub fn apply(&self, a: &DOp) -> Result<DOp> {
        self.operator(a.ring()).commutator(a)
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Move::AdX { var } => write!(f, "ad x{}", var + 1),
            Move::AdD { var, k } => write!(f, "ad d{}[p^{k}]", var + 1),
        }
    }
}

/// How the polynomial phase picks `k` for `ad ∂_j^[p^k]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PolyRule {
    /// The smallest `p`-adic valuation among the positive `x_j`-exponents.
    /// Each step then lowers the canonical degree by exactly its cost.
    #[default]
    Valuation,
    /// `p^k ≤ deg_{x_j} < p^{k+1}`. Always nonzero, but lower-order terms
    /// can survive and the total cost may exceed the start degree.
    LeadingDigit,
}

/// A replayable chain from `start` to the nonzero scalar `scalar`.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessChain {
    pub start: DOp,
    pub steps: Vec<Move>,
    pub scalar: Scalar,
    pub cost: u64,
}

impl Serialize for WitnessChain {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Plain {
            start: String,
            steps: Vec<String>,
            scalar: String,
            cost: u64,
        }
        Plain {
            start: self.start.to_string(),
            steps: self.steps.iter().map(Move::to_string).collect(),
            scalar: self.scalar.to_string(),
            cost: self.cost,
        }
        .serialize(s)
    }
}

impl fmt::Display for WitnessChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "start {}", self.start)?;
        for m in &self.steps {
            writeln!(f, "{m}")?;
        }
        write!(f, "scalar {} cost {}", self.scalar, self.cost)
    }
}

fn choose_move(a: &DOp, rule: PolyRule) -> Move {
    let p = a.ring().p();
    // Lexicographically largest nonzero β, then its first nonzero index.
    if let Some(beta) = a.terms().map(|(m, _)| &m.beta).filter(|b| !b.is_zero()).max_by(|u, v| u.entries().cmp(v.entries())) {
        let var = beta.entries().iter().position(|&b| b > 0).expect("nonzero β");
        return Move::AdX { var };
    }
    let n = a.ring().n();
    let var = (0..n).find(|&j| a.terms().any(|(m, _)| m.alpha.entries()[j] > 0)).expect("non-scalar polynomial");
    let exps = a.terms().map(|(m, _)| m.alpha.entries()[var] as u64).filter(|&e| e > 0);
    let k = match rule {
        PolyRule::Valuation => exps.map(|e| valuation(e, p)).min().expect("positive degree"),
        PolyRule::LeadingDigit => p.floor_log(exps.max().expect("positive degree")),
    };
    Move::AdD { var, k }
}

fn valuation(mut e: u64, p: Prime) -> u32 {
    let p = p.get() as u64;
    let mut v = 0;
    while e.is_multiple_of(p) {
        e /= p;
        v += 1;
    }
    v
}

/// Walk `a` down to a nonzero scalar with the default rule.
pub fn bernstein_witness(a: &DOp) -> Result<WitnessChain> {
    bernstein_witness_with(a, PolyRule::Valuation)
}

pub fn bernstein_witness_with(a: &DOp, rule: PolyRule) -> Result<WitnessChain> {
    if a.is_zero() {
        return Err(Error::Domain("the zero operator has no witness".into()));
    }
    let p = a.ring().p();
    let mut cur = a.clone();
    let mut steps = Vec::new();
    let mut cost = 0;
    loop {
        if let Some(c) = cur.as_scalar() {
            return Ok(WitnessChain { start: a.clone(), steps, scalar: c, cost });
        }
        let mv = choose_move(&cur, rule);
        let next = mv.apply(&cur)?;
        if next.is_zero() {
            return Err(Error::Model(format!("{mv} annihilated {cur}")));
        }
        cost += mv.cost(p);
        steps.push(mv);
        cur = next;
    }
}

/// Replay `chain` from its start. Checks that every intermediate element is
/// nonzero and that the end is the claimed scalar.
pub fn replay(chain: &WitnessChain) -> Result<()> {
    let p = chain.start.ring().p();
    let mut cur = chain.start.clone();
    let mut cost = 0;
    for (i, mv) in chain.steps.iter().enumerate() {
        cur = mv.apply(&cur)?;
        if cur.is_zero() {
            return Err(Error::Model(format!("step {} ({mv}) reached zero", i + 1)));
        }
        cost += mv.cost(p);
    }
    match cur.as_scalar() {
        Some(c) if c == chain.scalar && !c.is_zero() => {}
        _ => return Err(Error::Model(format!("chain ends at {cur}, expected {}", chain.scalar))),
    }
    if cost != chain.cost {
        return Err(Error::Model(format!("chain cost {} but steps cost {cost}", chain.cost)));
    }
    Ok(())
}

/// Summary of witnessing a batch of random operators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BatchReport {
    pub count: usize,
    pub replayed: usize,
    pub within_degree: usize,
    /// Largest `cost − canonical degree` seen.
    pub worst_excess: i64,
    /// Largest cost over the batch.
    pub max_cost: u64,
    pub failures: Vec<String>,
}

impl BatchReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.replayed == self.count && self.within_degree == self.count
    }
}

/// Witness `count` random nonzero operators of canonical degree `≤ max_degree`.
pub fn witness_batch(ring: &RingSpec, count: usize, max_degree: u32, rule: PolyRule, seed: u64) -> BatchReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ops = Vec::with_capacity(count);
    while ops.len() < count {
        let a = DOp::random(ring, max_degree, 4, &mut rng);
        if !a.is_zero() {
            ops.push(a);
        }
    }
    let results: Vec<std::result::Result<(u64, i64), String>> = ops
        .par_iter()
        .map(|a| {
            let chain = bernstein_witness_with(a, rule).map_err(|e| format!("{a}: {e}"))?;
            replay(&chain).map_err(|e| format!("{a}: {e}"))?;
            let deg = a.canonical_degree().expect("nonzero") as i64;
            Ok((chain.cost, chain.cost as i64 - deg))
        })
        .collect();
    let mut report = BatchReport { count, replayed: 0, within_degree: 0, worst_excess: i64::MIN, max_cost: 0, failures: Vec::new() };
    for r in results {
        match r {
            Ok((cost, excess)) => {
                report.replayed += 1;
                report.within_degree += usize::from(excess <= 0);
                report.worst_excess = report.worst_excess.max(excess);
                report.max_cost = report.max_cost.max(cost);
            }
            Err(e) => report.failures.push(e),
        }
    }
    report
}

/// Dense polynomial in one variable over `F_p`, index = exponent.
type Poly = Vec<u32>;

fn trim(mut f: Poly) -> Poly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

/// `δ_k(f)` with `δ_k(x^m) = C(m, k) x^{m-k}`.
fn delta(k: u64, f: &[u32], p: Prime) -> Poly {
    let pp = p.get() as u64;
    let mut out = vec![0; f.len().saturating_sub(k as usize)];
    for (m, &c) in f.iter().enumerate().skip(k as usize) {
        let b = binom_mod_p(m as u64, k, p) as u64;
        out[m - k as usize] = ((c as u64 * b) % pp) as u32;
    }
    trim(out)
}

fn mul(f: &[u32], g: &[u32], p: Prime) -> Poly {
    let pp = p.get() as u64;
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = (out[i + j] + a as u64 * b as u64) % pp;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

fn add(f: &[u32], g: &[u32], p: Prime) -> Poly {
    let n = f.len().max(g.len());
    let at = |h: &[u32], i: usize| h.get(i).copied().unwrap_or(0);
    trim((0..n).map(|i| (at(f, i) + at(g, i)) % p.get()).collect())
}

fn scale(f: &[u32], c: u32, p: Prime) -> Poly {
    trim(f.iter().map(|&a| ((a as u64 * c as u64) % p.get() as u64) as u32).collect())
}

fn power(f: &[u32], e: u64, p: Prime) -> Poly {
    (0..e).fold(vec![1], |acc, _| mul(&acc, f, p))
}

fn monomial(m: usize) -> Poly {
    let mut f = vec![0; m + 1];
    f[m] = 1;
    f
}

fn random_poly<R: Rng>(deg: usize, p: Prime, rng: &mut R) -> Poly {
    trim((0..=deg).map(|_| rng.gen_range(0..p.get())).collect())
}

fn show(f: &[u32]) -> String {
    let terms: Vec<String> =
        f.iter().enumerate().filter(|(_, &c)| c != 0).map(|(m, c)| format!("{c}x^{m}")).collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Outcome of one identity family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityFamily {
    pub name: &'static str,
    pub checks: usize,
    pub counterexamples: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HsReport {
    pub p: u32,
    pub degree_bound: usize,
    pub families: Vec<IdentityFamily>,
}

impl HsReport {
    pub fn passed(&self) -> bool {
        self.families.iter().all(|f| f.counterexamples.is_empty())
    }
}

/// Check the higher-derivation identities of `δ_k = ∂^[k]` on `F_p[x]` up
/// to degree `degree_bound`: the product rule, iterativity, `δ_i^p = 0`,
/// and Frobenius compatibility `δ_{k p^e}(f^{p^e}) = δ_k(f)^{p^e}`.
pub fn hs_check(degree_bound: usize, p: Prime, trials: usize, seed: u64) -> Result<HsReport> {
    let pp = p.get() as usize;
    if degree_bound < pp * pp {
        return Err(Error::Parameter(format!("degree bound {degree_bound} is below p^2 = {}", pp * pp)));
    }
    let nb = degree_bound;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut families = Vec::new();

    let mut fam = IdentityFamily { name: "product rule", checks: 0, counterexamples: Vec::new() };
    for _ in 0..trials {
        let f = random_poly(rng.gen_range(0..=nb / 2), p, &mut rng);
        let g = random_poly(rng.gen_range(0..=nb / 2), p, &mut rng);
        let fg = mul(&f, &g, p);
        for k in 0..=nb as u64 {
            let rhs = (0..=k).fold(Vec::new(), |acc, i| add(&acc, &mul(&delta(i, &f, p), &delta(k - i, &g, p), p), p));
            fam.checks += 1;
            if delta(k, &fg, p) != rhs {
                fam.counterexamples.push(format!("k = {k}, f = {}, g = {}", show(&f), show(&g)));
            }
        }
    }
    families.push(fam);

    let mut fam = IdentityFamily { name: "iterativity", checks: 0, counterexamples: Vec::new() };
    for m in 0..=nb {
        let f = monomial(m);
        for i in 0..=nb as u64 {
            for j in 0..=nb as u64 - i {
                let lhs = delta(i, &delta(j, &f, p), p);
                let rhs = scale(&delta(i + j, &f, p), binom_mod_p(i + j, i, p), p);
                fam.checks += 1;
                if lhs != rhs {
                    fam.counterexamples.push(format!("i = {i}, j = {j}, m = {m}"));
                }
            }
        }
    }
    families.push(fam);

    let mut fam = IdentityFamily { name: "nilpotency", checks: 0, counterexamples: Vec::new() };
    for i in 1..=(nb / pp) as u64 {
        for m in 0..=nb {
            let r = (0..pp).fold(monomial(m), |acc, _| delta(i, &acc, p));
            fam.checks += 1;
            if !r.is_empty() {
                fam.counterexamples.push(format!("δ_{i}^p(x^{m}) = {}", show(&r)));
            }
        }
    }
    // δ_1^p kills x^p while δ_p does not.
    fam.checks += 1;
    let xp = monomial(pp);
    let iterated = (0..pp).fold(xp.clone(), |acc, _| delta(1, &acc, p));
    if !iterated.is_empty() || delta(pp as u64, &xp, p) != vec![1] {
        fam.counterexamples.push("δ_1^p and δ_p agree on x^p".into());
    }
    families.push(fam);

    let mut fam = IdentityFamily { name: "frobenius", checks: 0, counterexamples: Vec::new() };
    let mut q = 1usize;
    while q <= nb {
        for k in 0..=(nb / q) as u64 {
            // The variable itself, then random f with deg f · q ≤ N.
            let mut inputs = vec![monomial(1)];
            for _ in 0..trials {
                inputs.push(random_poly(rng.gen_range(0..=nb / q), p, &mut rng));
            }
            for f in inputs {
                let lhs = delta(k * q as u64, &power(&f, q as u64, p), p);
                let rhs = power(&delta(k, &f, p), q as u64, p);
                fam.checks += 1;
                if lhs != rhs {
                    fam.counterexamples.push(format!("k = {k}, p^e = {q}, f = {}", show(&f)));
                }
            }
        }
        q *= pp;
    }
    families.push(fam);

    Ok(HsReport { p: p.get(), degree_bound, families })
}
