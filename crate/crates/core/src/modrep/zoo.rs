//! Named module families with the closed-form data they should reproduce.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::Prime;
use crate::classify::{build_induced_residue, build_tiny, build_u, maximal_ideal_data};
use crate::coeff::{FieldSpec, UniPoly};
use crate::dring::{DOp, RingSpec};
use crate::error::{Error, Result};
use crate::series::{ps_from_formula, PoincareSeries, SeriesKind};

use super::{
    hilbert_function_default, mr_breakpoints, Algebra, CyclicQuotient, Element, ExplicitModule, Factor, IndexSet,
    LambdaInner, MrConstruction, TkInner,
};

/// Parameters of a zoo request, also the JSON module spec.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZooParams {
    pub family: String,
    #[serde(default)]
    pub p: Option<u32>,
    #[serde(default)]
    pub n: Option<usize>,
    /// `Fp` or `Fp(t)`; by default `Fp(t)` exactly when a literal mentions `t`.
    #[serde(default)]
    pub field: Option<String>,
    #[serde(default)]
    pub k: Option<u32>,
    #[serde(default)]
    pub s: Option<usize>,
    #[serde(default)]
    pub t: Option<usize>,
    #[serde(default)]
    pub ks: Option<Vec<u32>>,
    /// Minimal polynomials, one per variable.
    #[serde(default)]
    pub g: Option<Vec<String>>,
    /// Growth exponent `a/b` for `Mr`.
    #[serde(default)]
    pub r: Option<String>,
    /// Number of breakpoints for `Mr`.
    #[serde(default)]
    pub count: Option<usize>,
    /// Left-ideal generators for `cyclic`.
    #[serde(default)]
    pub generators: Option<Vec<String>>,
    #[serde(default, rename = "N")]
    pub level: Option<usize>,
    #[serde(default, rename = "B")]
    pub buffer: Option<usize>,
}

impl ZooParams {
    pub fn family(name: &str, p: u32) -> ZooParams {
        ZooParams { family: name.into(), p: Some(p), ..ZooParams::default() }
    }

    fn prime(&self) -> Result<Prime> {
        Prime::new(self.p.ok_or_else(|| Error::Parameter("missing p".into()))?)
    }

    fn req<T: Clone>(v: &Option<T>, name: &str, family: &str) -> Result<T> {
        v.clone().ok_or_else(|| Error::Parameter(format!("family {family} needs parameter {name}")))
    }

    fn field(&self) -> Result<FieldSpec> {
        let p = self.prime()?;
        let mentions_t = self.g.iter().chain(self.generators.iter()).flatten().any(|s| s.contains('t'));
        match self.field.as_deref() {
            Some(name) => field_from_name(name, p),
            None if mentions_t => Ok(FieldSpec::rational(p)),
            None => Ok(FieldSpec::prime_field(p)),
        }
    }
}

/// `Fp`/`F_p` or `Fp(t)`/`F_p(t)`.
pub fn field_from_name(name: &str, p: Prime) -> Result<FieldSpec> {
    match name.replace('_', "").as_str() {
        "Fp" | "fp" | "prime" => Ok(FieldSpec::prime_field(p)),
        "Fp(t)" | "fp(t)" | "rational" => Ok(FieldSpec::rational(p)),
        other => Err(Error::Parameter(format!("unknown field {other:?}; use Fp or Fp(t)"))),
    }
}

/// A module in one of the supported representations.
#[derive(Clone, Debug, PartialEq)]
pub enum ModuleRep {
    Explicit(ExplicitModule),
    Cyclic(CyclicQuotient),
}

impl ModuleRep {
    pub fn ring(&self) -> &RingSpec {
        match self {
            ModuleRep::Explicit(m) => m.ring(),
            ModuleRep::Cyclic(c) => c.ring(),
        }
    }

    /// Hilbert function up to `n`: weight counts for explicit modules (whose
    /// weight-0 block generates the filtration by construction), truncated
    /// ideal reduction for cyclic quotients.
    pub fn dims(&self, n: usize) -> Result<Vec<u64>> {
        match self {
            ModuleRep::Explicit(m) => Ok(m.weight_profile(n)),
            ModuleRep::Cyclic(c) => self.cyclic_dims(c, n),
        }
    }

    /// Hilbert function up to `n` by exact rank of `F_i · M_0`.
    pub fn dims_by_rank(&self, n: usize) -> Result<Vec<u64>> {
        match self {
            ModuleRep::Explicit(m) => hilbert_function_default(m, n),
            ModuleRep::Cyclic(c) => self.cyclic_dims(c, n),
        }
    }

    fn cyclic_dims(&self, c: &CyclicQuotient, n: usize) -> Result<Vec<u64>> {
        if n == c.level() {
            return Ok(c.hilbert()?.dims);
        }
        let q = CyclicQuotient::new(c.ring(), c.generators().to_vec(), n, c.buffer().max(n))?;
        Ok(q.hilbert()?.dims)
    }
}

/// A zoo module with its expected invariants where closed forms exist.
#[derive(Clone, Debug)]
pub struct ZooEntry {
    pub name: String,
    pub rep: ModuleRep,
    pub expected_series: Option<PoincareSeries>,
    /// Expected growth degree `Dim`.
    pub expected_dim: Option<u32>,
    pub expected_multiplicity: Option<BigRational>,
    /// Marked generator for cyclic explicit modules.
    pub generator: Option<Element>,
    /// Breakpoint data for `Mr` families.
    pub construction: Option<MrConstruction>,
}

impl ZooEntry {
    fn explicit(name: &str, m: ExplicitModule) -> ZooEntry {
        ZooEntry {
            name: name.into(),
            rep: ModuleRep::Explicit(m),
            expected_series: None,
            expected_dim: None,
            expected_multiplicity: None,
            generator: None,
            construction: None,
        }
    }

    fn with_series(mut self, s: PoincareSeries) -> Result<ZooEntry> {
        let (d, e) = s.leading_multiplicity()?;
        self.expected_dim = Some(d);
        self.expected_multiplicity = Some(e);
        self.expected_series = Some(s);
        Ok(self)
    }

    pub fn module(&self) -> Option<&ExplicitModule> {
        match &self.rep {
            ModuleRep::Explicit(m) => Some(m),
            ModuleRep::Cyclic(_) => None,
        }
    }
}

/// Family names with one-line descriptions.
pub fn zoo_names() -> &'static [(&'static str, &'static str)] {
    &[
        ("Pn", "polynomial module P_n; params p, n"),
        ("D", "D(P_n) acting on itself; params p, n"),
        ("M(k,s)", "holonomic-defect module with multiplicity 1/p^k; params p, n, k, s < n"),
        ("U", "simple module of a maximal ideal; params p, g (one polynomial per variable)"),
        ("tiny", "P_t ⊗ U of a maximal ideal of P_s; params p, t, g"),
        ("Tk", "D ⊗_{T_k} K[x]/(g), n = 1; params p, k, g"),
        ("induced-residue", "D ⊗_{P_n} P_n/m; params p, g"),
        ("Mk", "Λ-module Λ/Λ(∂^[j] : j ∉ {0, p^k_1, ...}), n = 1; params p, ks"),
        ("induced-Mk", "P_{n-1} ⊗ (D ⊗_Λ M(k)); params p, n, ks"),
        ("Mr", "Λ-module with growth degree r, n = 1; params p, r, count"),
        ("induced-Mr", "P_{n-1} ⊗ (D ⊗_Λ M_r); params p, n, r, count"),
        ("cyclic", "D(P_n)/Σ D g_j truncated; params p, n, generators, N, B"),
    ]
}

fn parse_polys(params: &ZooParams, field: &FieldSpec) -> Result<Vec<UniPoly>> {
    let g = ZooParams::req(&params.g, "g", &params.family)?;
    if let Some(n) = params.n {
        if n != g.len() {
            return Err(Error::Parameter(format!("n = {n} but {} polynomials were given", g.len())));
        }
    }
    g.iter().map(|s| UniPoly::parse(s, field)).collect()
}

fn parse_ratio(s: &str) -> Result<(u32, u32)> {
    let bad = || Error::Parameter(format!("r must look like a/b, got {s:?}"));
    let (a, b) = s.split_once('/').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn mr(params: &ZooParams, p: Prime) -> Result<MrConstruction> {
    let r = parse_ratio(&params.r.clone().unwrap_or_else(|| "1/2".into()))?;
    mr_breakpoints(r, p, params.count.unwrap_or(3))
}

fn polynomial_factors(count: usize) -> Vec<Factor> {
    vec![Factor::InducedLambda { inner: LambdaInner::Trivial }; count]
}

/// Build a named module.
pub fn zoo(params: &ZooParams) -> Result<ZooEntry> {
    let p = params.prime()?;
    let field = params.field()?;
    let fam = params.family.as_str();
    let n = params.n.unwrap_or(1);
    let ring = || RingSpec::new(n, field.clone());
    match fam {
        "Pn" => {
            let m = ExplicitModule::tensor(&ring()?, Algebra::D, polynomial_factors(n), format!("P_{n}"))?;
            let g = m.ground_block().pop();
            let mut e = ZooEntry::explicit(fam, m).with_series(ps_from_formula(&SeriesKind::Pn { n: n as u32 })?)?;
            e.generator = g;
            Ok(e)
        }
        "D" => {
            let m = ExplicitModule::tensor(&ring()?, Algebra::D, vec![Factor::Regular; n], format!("D(P_{n})"))?;
            let g = m.ground_block().pop();
            let mut e = ZooEntry::explicit(fam, m).with_series(ps_from_formula(&SeriesKind::Dn { n: n as u32 })?)?;
            e.generator = g;
            Ok(e)
        }
        "M(k,s)" => {
            let k = ZooParams::req(&params.k, "k", fam)?;
            let s = ZooParams::req(&params.s, "s", fam)?;
            if s >= n {
                return Err(Error::Parameter(format!("M(k,s) needs s < n, got s = {s}, n = {n}")));
            }
            let x = UniPoly::parse("x", &field)?;
            let mut factors = vec![Factor::InducedTk { k, inner: TkInner::PolyRing }];
            factors.extend(vec![Factor::Regular; s]);
            factors.extend(vec![Factor::InducedTk { k: 0, inner: TkInner::Quotient(x) }; n - s - 1]);
            let m = ExplicitModule::tensor(&ring()?, Algebra::D, factors, format!("M({k},{s})"))?;
            let q = p.pow(k).ok_or_else(|| Error::Parameter("p^k overflows".into()))? as u32;
            let series = PoincareSeries::new(&[1], &[(1, (n + s + 1) as u32), (q, 1)])?;
            ZooEntry::explicit(fam, m).with_series(series)
        }
        "U" => {
            let data = maximal_ideal_data(&parse_polys(params, &field)?)?;
            let b = build_u(&data)?;
            let mut e = ZooEntry::explicit(fam, b.module).with_series(b.expected_series)?;
            e.generator = Some(b.generator);
            Ok(e)
        }
        "tiny" => {
            let t = ZooParams::req(&params.t, "t", fam)?;
            let polys = parse_polys(&ZooParams { n: None, ..params.clone() }, &field)?;
            let data = maximal_ideal_data(&polys)?;
            let b = build_tiny(t, &data)?;
            let mut e = ZooEntry::explicit(fam, b.module).with_series(b.expected_series)?;
            e.generator = Some(b.generator);
            Ok(e)
        }
        "Tk" => {
            let k = ZooParams::req(&params.k, "k", fam)?;
            let polys = parse_polys(params, &field)?;
            let [g] = polys.as_slice() else {
                return Err(Error::Parameter("Tk is defined for n = 1".into()));
            };
            let g = g.monic();
            g.certify_irreducible()?;
            let ring = RingSpec::new(1, field.clone())?;
            let deg = g.degree().expect("certified") as i64;
            let factor = Factor::InducedTk { k, inner: TkInner::Quotient(g.clone()) };
            let m = ExplicitModule::tensor(&ring, Algebra::D, vec![factor], format!("D ⊗_T{k} K[x]/({g})"))?;
            let q = p.pow(k).expect("validated") as u32;
            ZooEntry::explicit(fam, m).with_series(PoincareSeries::new(&[deg], &[(1, 1), (q, 1)])?)
        }
        "induced-residue" => {
            let data = maximal_ideal_data(&parse_polys(params, &field)?)?;
            let m = build_induced_residue(&data)?;
            let deg = data.residue_degree as i64;
            let series = PoincareSeries::new(&[deg], &[(1, data.n() as u32 + 1)])?;
            ZooEntry::explicit(fam, m).with_series(series)
        }
        "Mk" | "Mr" => {
            if n != 1 {
                return Err(Error::Parameter(format!("{fam} is a module over Λ in one variable")));
            }
            let (set, construction) = if fam == "Mk" {
                (IndexSet::powers(p, &ZooParams::req(&params.ks, "ks", fam)?)?, None)
            } else {
                let c = mr(params, p)?;
                (c.index_set.clone(), Some(c))
            };
            let factor = Factor::LambdaModule { inner: LambdaInner::Monomial(set) };
            let m = ExplicitModule::tensor(&ring()?, Algebra::Lambda, vec![factor], fam)?;
            let mut e = ZooEntry::explicit(fam, m);
            e.construction = construction;
            e.expected_dim = Some(0);
            Ok(e)
        }
        "induced-Mk" | "induced-Mr" => {
            let (set, construction) = if fam == "induced-Mk" {
                (IndexSet::powers(p, &ZooParams::req(&params.ks, "ks", fam)?)?, None)
            } else {
                let c = mr(params, p)?;
                (c.index_set.clone(), Some(c))
            };
            let mut factors = polynomial_factors(n - 1);
            factors.push(Factor::InducedLambda { inner: LambdaInner::Monomial(set) });
            let m = ExplicitModule::tensor(&ring()?, Algebra::D, factors, fam)?;
            let mut e = ZooEntry::explicit(fam, m);
            e.construction = construction;
            Ok(e)
        }
        "cyclic" => {
            let ring = ring()?;
            let gens = ZooParams::req(&params.generators, "generators", fam)?
                .iter()
                .map(|s| DOp::parse(s, &ring))
                .collect::<Result<Vec<_>>>()?;
            let level = params.level.unwrap_or(10);
            let q = match params.buffer {
                Some(b) => CyclicQuotient::new(&ring, gens, level, b)?,
                None => CyclicQuotient::with_default_buffer(&ring, gens, level)?,
            };
            Ok(ZooEntry {
                name: fam.into(),
                rep: ModuleRep::Cyclic(q),
                expected_series: None,
                expected_dim: None,
                expected_multiplicity: None,
                generator: None,
                construction: None,
            })
        }
        other => {
            let known: Vec<&str> = zoo_names().iter().map(|e| e.0).collect();
            Err(Error::Parameter(format!("unknown family {other:?}; known: {}", known.join(", "))))
        }
    }
}

/// `C(i + n, n) + Σ_{m ∈ I, 0 < m ≤ i} C(i + n - m, n)`, the dimension of
/// `P_{n-1} ⊗ (D ⊗_Λ M)` for a monomial quotient `M` with index set `I`.
pub fn induced_monomial_count(set: &IndexSet, n: usize, i: u64) -> BigInt {
    set.members_up_to(i).into_iter().map(|m| binom(i - m + n as u64, n as u64)).sum()
}

fn binom(a: u64, b: u64) -> BigInt {
    (0..b).fold(BigInt::one(), |acc, j| acc * BigInt::from(a - j) / BigInt::from(j + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_build() {
        let e = zoo(&ZooParams { n: Some(2), ..ZooParams::family("Pn", 3) }).unwrap();
        assert_eq!(e.rep.dims(4).unwrap(), vec![1, 3, 6, 10, 15]);
        assert_eq!(e.expected_dim, Some(2));

        let e = zoo(&ZooParams { n: Some(2), k: Some(1), s: Some(0), ..ZooParams::family("M(k,s)", 2) }).unwrap();
        assert_eq!(e.expected_dim, Some(3));
        assert_eq!(e.expected_multiplicity.unwrap(), BigRational::new(1.into(), 2.into()));

        let e = zoo(&ZooParams { g: Some(vec!["x1^3 - t".into()]), ..ZooParams::family("U", 3) }).unwrap();
        let dims = e.rep.dims(8).unwrap();
        assert_eq!(dims, (0..=8).map(|i| 3 * (i / 3 + 1)).collect::<Vec<u64>>());

        assert!(zoo(&ZooParams::family("nope", 2)).is_err());
        assert!(zoo(&ZooParams { k: Some(1), s: Some(1), ..ZooParams::family("M(k,s)", 2) }).is_err());
        let set = IndexSet::powers(Prime::new(2).unwrap(), &[1, 3]).unwrap();
        assert_eq!(induced_monomial_count(&set, 1, 4), BigInt::from(5 + 3));
    }
}
