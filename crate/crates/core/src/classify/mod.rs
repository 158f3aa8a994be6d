//! Maximal ideals given by per-variable minimal polynomials, the simple
//! modules attached to them, and the finite-dimensional simple modules of
//! `T_k = Λ_{[p^k]} ⊗ P_1`.

mod algebra;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::coeff::unipoly::Certificate;
use crate::coeff::{FieldSpec, UniPoly};
use crate::dring::RingSpec;
use crate::error::{Error, Result};
use crate::modrep::{Algebra, Element, ExplicitModule, Factor, LambdaInner, TkInner};
use crate::series::{ps_from_formula, PoincareSeries, SeriesKind};

pub use algebra::{build_tk_simple, verify_matrix_algebra, AlgebraReport, TkSimple};

/// `𝔪 = (g_1(x_1), ..., g_n(x_n))` with each `g_i = f_i(x_i^{p^{k_i}})`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MaxIdealData {
    #[serde(serialize_with = "ser_field")]
    pub field: FieldSpec,
    #[serde(serialize_with = "ser_polys")]
    pub g: Vec<UniPoly>,
    #[serde(serialize_with = "ser_polys")]
    pub f: Vec<UniPoly>,
    /// `k(𝔪)`.
    pub k: Vec<u32>,
    pub certificates: Vec<Certificate>,
    /// `[K[x_i]/(g_i) : K]`.
    pub residue_degrees: Vec<u64>,
    /// `[P_n/𝔪 : K]`.
    pub residue_degree: u64,
    /// `[(P_n/𝔪)^sep : K]`.
    pub sep_degree: u64,
}

fn ser_field<S: serde::Serializer>(f: &FieldSpec, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&f.to_string())
}

fn ser_polys<S: serde::Serializer>(v: &[UniPoly], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Certify each `g_i`, split off its inseparable exponent and check that the
/// residue fields combine into a field.
///
/// Supported: linear `g_i` freely; constant-coefficient `g_i` of pairwise
/// coprime degrees (finite fields `F_{p^a} ⊗ F_{p^b}` are fields exactly
/// then); and at most one further `g_i` that is Eisenstein at `t`, whose
/// residue field is totally ramified and so keeps `F_p` as constant field.
pub fn maximal_ideal_data(g: &[UniPoly]) -> Result<MaxIdealData> {
    let Some(first) = g.first() else {
        return Err(Error::Domain("a maximal ideal of P_s needs s >= 1 generators".into()));
    };
    let field = first.field().clone();
    let mut out = MaxIdealData {
        field: field.clone(),
        g: Vec::new(),
        f: Vec::new(),
        k: Vec::new(),
        certificates: Vec::new(),
        residue_degrees: Vec::new(),
        residue_degree: 1,
        sep_degree: 1,
    };
    let mut eisenstein = 0;
    let mut finite_degrees: Vec<u64> = Vec::new();
    for gi in g {
        if gi.field() != &field {
            return Err(Error::Field(format!("{gi} is over {}, expected {field}", gi.field())));
        }
        let cert = gi.certify_irreducible()?;
        let gi = gi.monic();
        let (fi, ki) = gi.separable_decompose()?;
        let d = gi.degree().expect("certified") as u64;
        match cert {
            Certificate::Linear => {}
            Certificate::TrialDivision => finite_degrees.push(d),
            Certificate::EisensteinAtT => eisenstein += 1,
            Certificate::Asserted => {
                return Err(Error::Unsupported(format!("{gi}: asserted irreducibility is not enough here")))
            }
        }
        out.residue_degree *= d;
        out.sep_degree *= fi.degree().expect("nonconstant") as u64;
        out.residue_degrees.push(d);
        out.certificates.push(cert);
        out.k.push(ki);
        out.f.push(fi);
        out.g.push(gi);
    }
    if eisenstein > 1 {
        return Err(Error::Unsupported("at most one t-dependent nonlinear generator is supported".into()));
    }
    for (i, &a) in finite_degrees.iter().enumerate() {
        if finite_degrees[i + 1..].iter().any(|&b| gcd(a, b) != 1) {
            return Err(Error::Unsupported(
                "constant-coefficient generators need pairwise coprime degrees for P_n/m to be a field".into(),
            ));
        }
    }
    Ok(out)
}

impl MaxIdealData {
    pub fn n(&self) -> usize {
        self.g.len()
    }

    pub fn p(&self) -> u32 {
        self.field.characteristic().get()
    }

    fn u_factors(&self) -> Vec<Factor> {
        self.g
            .iter()
            .zip(&self.k)
            .map(|(g, &k)| Factor::InducedTk { k, inner: TkInner::Quotient(g.clone()) })
            .collect()
    }
}

/// A constructed module with its marked generator and the closed-form data
/// it should reproduce.
#[derive(Clone, Debug)]
pub struct BuiltModule {
    pub module: ExplicitModule,
    pub generator: Element,
    pub expected_series: PoincareSeries,
    /// Expected growth degree `Dim`.
    pub expected_dim: u32,
    pub expected_multiplicity: BigRational,
}

fn ground_generator(m: &ExplicitModule) -> Element {
    let key = m.basis_at(0).into_iter().find(|k| k.slots.iter().all(|&s| s == (0, 0))).expect("1 ⊗ 1 has weight 0");
    Element::basis(key, m.field())
}

/// `U(𝔪) = ⊗_i D(P_1) ⊗_{T_{k_i}} K[x_i]/(g_i)`, with `k_i = k(g_i)`.
///
/// Basis `∂^[a p^{k_i}] ⊗ x^j` per variable with weight `Σ a_i p^{k_i}`.
pub fn build_u(data: &MaxIdealData) -> Result<BuiltModule> {
    let ring = RingSpec::new(data.n(), data.field.clone())?;
    let module = ExplicitModule::tensor(&ring, Algebra::D, data.u_factors(), format!("U({})", ideal_label(data)))?;
    let expected_series =
        ps_from_formula(&SeriesKind::U { p: data.p(), ks: data.k.clone(), sep_degree: data.sep_degree })?;
    Ok(BuiltModule {
        generator: ground_generator(&module),
        module,
        expected_series,
        expected_dim: data.n() as u32,
        expected_multiplicity: BigRational::from_integer(BigInt::from(data.sep_degree)),
    })
}

/// `P_t ⊗ U(𝔪)` over `D(P_{t+s})`, the first `t` variables polynomial.
pub fn build_tiny(t: usize, data: &MaxIdealData) -> Result<BuiltModule> {
    if t == 0 {
        return Err(Error::Domain("the tiny module needs t >= 1 polynomial variables".into()));
    }
    let ring = RingSpec::new(t + data.n(), data.field.clone())?;
    let mut factors = vec![Factor::InducedLambda { inner: LambdaInner::Trivial }; t];
    factors.extend(data.u_factors());
    let module = ExplicitModule::tensor(&ring, Algebra::D, factors, format!("P_{t} ⊗ U({})", ideal_label(data)))?;
    let expected_series = ps_from_formula(&SeriesKind::Tiny {
        t: t as u32,
        p: data.p(),
        ks: data.k.clone(),
        sep_degree: data.sep_degree,
    })?;
    Ok(BuiltModule {
        generator: ground_generator(&module),
        module,
        expected_series,
        expected_dim: (t + data.n()) as u32,
        expected_multiplicity: BigRational::from_integer(BigInt::from(data.sep_degree)),
    })
}

/// `D(P_n) ⊗_{P_n} P_n/𝔪`.
pub fn build_induced_residue(data: &MaxIdealData) -> Result<ExplicitModule> {
    let ring = RingSpec::new(data.n(), data.field.clone())?;
    let factors = data.g.iter().map(|g| Factor::InducedTk { k: 0, inner: TkInner::Quotient(g.clone()) }).collect();
    ExplicitModule::tensor(&ring, Algebra::D, factors, format!("D ⊗ P/({})", ideal_label(data)))
}

/// `[P_n/𝔪 : K] / [(P_n/𝔪)^sep : K]`, the number of copies of `U(𝔪)` in
/// `D(P_n) ⊗_{P_n} P_n/𝔪`.
pub fn induced_splitting_count(data: &MaxIdealData) -> u64 {
    data.residue_degree / data.sep_degree
}

/// Closed-form data for the simple `T_𝐤`-module attached to `𝔪`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TkFormulas {
    pub dim: u64,
    /// `r(𝐤, 𝔪) = dim / (p^{|𝐤|} [(P_n/𝔪)^sep : K])`, always `p^{r_exponent}`.
    pub r: u64,
    pub r_exponent: u32,
    pub end_dim: u64,
}

/// Per variable, `dim = p^{k_i - min(k_i, k(g_i))} deg g_i` and
/// `End = K[x^{p^{min}}]/(g_i)` of dimension `deg g_i / p^{min}`.
pub fn tk_dimension_formulas(ks: &[u32], data: &MaxIdealData) -> Result<TkFormulas> {
    if ks.len() != data.n() {
        return Err(Error::Dimension { expected: data.n(), found: ks.len() });
    }
    let p = data.p() as u64;
    let (mut dim, mut end_dim, mut r_exponent) = (1u64, 1u64, 0u32);
    for ((&k, &km), &d) in ks.iter().zip(&data.k).zip(&data.residue_degrees) {
        let m = k.min(km);
        dim *= p.pow(k - m) * d;
        end_dim *= d / p.pow(m);
        r_exponent += km - m;
    }
    Ok(TkFormulas { dim, r: p.pow(r_exponent), r_exponent, end_dim })
}

fn ideal_label(data: &MaxIdealData) -> String {
    data.g.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Prime;

    fn rat(p: u32) -> FieldSpec {
        FieldSpec::rational(Prime::new(p).unwrap())
    }

    #[test]
    fn ideal_records() {
        let k = rat(3);
        let d = maximal_ideal_data(&[UniPoly::parse("x^3 - t", &k).unwrap()]).unwrap();
        assert_eq!((d.k.clone(), d.residue_degree, d.sep_degree), (vec![1], 3, 1));
        assert_eq!(induced_splitting_count(&d), 3);

        let f2 = FieldSpec::prime_field(Prime::new(2).unwrap());
        let d = maximal_ideal_data(&[UniPoly::parse("x^2 + x + 1", &f2).unwrap()]).unwrap();
        assert_eq!((d.k.clone(), d.sep_degree), (vec![0], 2));
        assert_eq!(induced_splitting_count(&d), 1);

        let g1 = UniPoly::parse("x1^3 - t", &k).unwrap();
        let g2 = UniPoly::parse("x2 - 1", &k).unwrap();
        let d = maximal_ideal_data(&[g1, g2]).unwrap();
        assert_eq!((d.k.clone(), d.sep_degree), (vec![1, 0], 1));

        assert!(maximal_ideal_data(&[]).is_err());
        let red = UniPoly::parse("x^2 + 1", &f2).unwrap();
        assert!(matches!(maximal_ideal_data(&[red]), Err(Error::Domain(_))));
        let q = UniPoly::parse("x^2 + x + 1", &f2).unwrap();
        assert!(matches!(maximal_ideal_data(&[q.clone(), q]), Err(Error::Unsupported(_))));
    }

    #[test]
    fn formulas_match_cases() {
        let k = rat(2);
        let d = maximal_ideal_data(&[UniPoly::parse("x^4 - t", &k).unwrap()]).unwrap();
        let table: Vec<(u64, u64)> = (0..4)
            .map(|k| {
                let f = tk_dimension_formulas(&[k], &d).unwrap();
                (f.dim, f.end_dim)
            })
            .collect();
        assert_eq!(table, vec![(4, 4), (4, 2), (4, 1), (8, 1)]);
        let f = tk_dimension_formulas(&[3], &d).unwrap();
        assert_eq!(f.r, 1);
        assert_eq!(tk_dimension_formulas(&[0], &d).unwrap().r, 4);
    }
}
