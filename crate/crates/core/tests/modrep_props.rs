use num_bigint::BigInt;
use proptest::prelude::*;

use dpn::arith::Prime;
use dpn::coeff::FieldSpec;
use dpn::dring::{filtration_basis, DOp, RingSpec};
use dpn::modrep::{
    check_relations, endomorphism_dim, hilbert_function, hom_from_cyclic_dim, holonomic_witness_search, zoo, Algebra,
    CyclicQuotient, Element, ExplicitModule, Factor, IndexSet, LambdaInner, ModuleRep, WitnessBounds, ZooParams,
};
use dpn::Error;

fn fam(name: &str, p: u32) -> ZooParams {
    ZooParams::family(name, p)
}

fn g(list: &[&str]) -> Option<Vec<String>> {
    Some(list.iter().map(|s| s.to_string()).collect())
}

/// Every explicit family with small parameters.
fn explicit_zoo() -> Vec<ZooParams> {
    vec![
        ZooParams { n: Some(1), ..fam("Pn", 2) },
        ZooParams { n: Some(2), ..fam("Pn", 3) },
        ZooParams { n: Some(1), ..fam("D", 3) },
        ZooParams { n: Some(2), ..fam("D", 2) },
        ZooParams { n: Some(2), k: Some(1), s: Some(0), ..fam("M(k,s)", 2) },
        ZooParams { n: Some(2), k: Some(2), s: Some(1), ..fam("M(k,s)", 2) },
        ZooParams { g: g(&["x1^3 - t"]), ..fam("U", 3) },
        ZooParams { g: g(&["x1^4 - t"]), ..fam("U", 2) },
        ZooParams { g: g(&["x1^2 + x1 + 1"]), ..fam("U", 2) },
        ZooParams { g: g(&["x1^3 - t", "x2 - 1"]), ..fam("U", 3) },
        ZooParams { t: Some(1), g: g(&["x1^2 - t"]), ..fam("tiny", 2) },
        ZooParams { k: Some(1), g: g(&["x1^2 - t"]), ..fam("Tk", 2) },
        ZooParams { k: Some(2), g: g(&["x1^4 - t"]), ..fam("Tk", 2) },
        ZooParams { g: g(&["x1^3 - t"]), ..fam("induced-residue", 3) },
        ZooParams { ks: Some(vec![1, 2]), ..fam("Mk", 2) },
        ZooParams { n: Some(2), ks: Some(vec![1, 3]), ..fam("induced-Mk", 2) },
        ZooParams { r: Some("1/2".into()), count: Some(2), ..fam("Mr", 2) },
        ZooParams { r: Some("1/2".into()), count: Some(2), ..fam("induced-Mr", 2) },
    ]
}

fn module(params: &ZooParams) -> ExplicitModule {
    match zoo(params).unwrap().rep {
        ModuleRep::Explicit(m) => m,
        ModuleRep::Cyclic(_) => panic!("explicit family expected"),
    }
}

#[test]
fn relations_hold_on_every_zoo_module() {
    for params in explicit_zoo() {
        let m = module(&params);
        let w = if m.ring().n() == 1 { 16 } else { 12 };
        check_relations(&m, w, 9).unwrap_or_else(|e| panic!("{}: {e}", params.family));
    }
}

#[test]
fn weight_counts_agree_with_rank() {
    for params in explicit_zoo() {
        let e = zoo(&params).unwrap();
        assert_eq!(e.rep.dims(10).unwrap(), e.rep.dims_by_rank(10).unwrap(), "{}", params.family);
    }
}

#[test]
fn expected_series_match_dims() {
    for params in explicit_zoo() {
        let e = zoo(&params).unwrap();
        if let Some(s) = &e.expected_series {
            let want = s.expand_integers(30).unwrap();
            let got: Vec<BigInt> = e.rep.dims(30).unwrap().into_iter().map(BigInt::from).collect();
            assert_eq!(got, want, "{}", params.family);
        }
    }
}

#[test]
fn direct_sums_add() {
    let zs = explicit_zoo();
    for (a, b) in [(0, 6), (6, 8), (4, 4), (14, 14), (1, 9)] {
        let (ma, mb) = (module(&zs[a]), module(&zs[b]));
        let Ok(sum) = ma.direct_sum(&mb) else { continue };
        for route in [hilbert_function_weights, hilbert_function_ranks] {
            let (x, y, s) = (route(&ma), route(&mb), route(&sum));
            let added: Vec<u64> = x.iter().zip(&y).map(|(u, v)| u + v).collect();
            assert_eq!(s, added, "{} + {}", zs[a].family, zs[b].family);
        }
    }
    let p2 = module(&zs[0]);
    let q3 = module(&zs[6]);
    assert!(matches!(p2.direct_sum(&q3), Err(Error::RingMismatch(_))));
}

fn hilbert_function_weights(m: &ExplicitModule) -> Vec<u64> {
    m.weight_profile(12)
}

fn hilbert_function_ranks(m: &ExplicitModule) -> Vec<u64> {
    dpn::modrep::hilbert_function_default(m, 12).unwrap()
}

/// Dims generated by one vector grow at most as fast as `F_i`.
#[test]
fn cyclic_filtrations_are_monotone() {
    for params in explicit_zoo() {
        let e = zoo(&params).unwrap();
        let Some(v) = e.generator.clone() else { continue };
        let m = e.module().unwrap();
        let dims = hilbert_function(m, &[v], 10).unwrap();
        let f: Vec<u64> = (0..=10).map(|i| filtration_basis(m.ring(), i).len() as u64).collect();
        for i in 0..10 {
            assert!(dims[i] <= dims[i + 1], "{}", params.family);
            assert!(dims[i + 1] - dims[i] <= f[i + 1] - f[i], "{}", params.family);
        }
    }
}

#[test]
fn truncated_ideal_of_all_divided_powers_gives_polynomials() {
    for (n, p, level) in [(1usize, 2u32, 10usize), (1, 3, 12), (2, 2, 6), (2, 3, 6)] {
        let ring = RingSpec::new(n, FieldSpec::prime_field(Prime::new(p).unwrap())).unwrap();
        let gens: Vec<DOp> = (0..n).flat_map(|i| (1..=level as u32).map(move |k| (i, k))).map(|(i, k)| DOp::d(&ring, i, k)).collect();
        let q = CyclicQuotient::new(&ring, gens, level, level).unwrap();
        let dims = q.dims_with_buffer(level).unwrap();
        let pn = module(&ZooParams { n: Some(n), ..fam("Pn", p) });
        assert_eq!(dims, pn.weight_profile(level), "n = {n}, p = {p}");
    }
}

fn two_copies_of_p1() -> ExplicitModule {
    let ring = RingSpec::new(1, FieldSpec::prime_field(Prime::new(3).unwrap())).unwrap();
    let p1 = vec![Factor::InducedLambda { inner: LambdaInner::Trivial }];
    ExplicitModule::new(&ring, Algebra::D, vec![p1.clone(), p1], "P_1 + P_1").unwrap()
}

#[test]
fn endomorphisms_of_small_modules() {
    let m = two_copies_of_p1();
    let f = m.field().clone();
    let ground = m.ground_block();
    let mut diag = Element::zero();
    for v in &ground {
        diag.add_scaled(v, &f.one());
    }
    // (1, 1) generates only the diagonal copy.
    assert_eq!(hom_from_cyclic_dim(&m, &diag, 6, 12).unwrap(), 2);
    assert!(matches!(endomorphism_dim(&m, &diag, 6, 12), Err(Error::NotGenerating { level: 0 })));
    // (1, x) generates everything and End = M_2(K).
    let x_second = m.act_x(0, &ground[1]).unwrap();
    let mut v = ground[0].clone();
    v.add_scaled(&x_second, &f.one());
    let end = endomorphism_dim(&m, &v, 6, 12).unwrap();
    assert_eq!((end.dim, end.stabilized), (4, true));

    let p1 = zoo(&ZooParams { n: Some(1), ..fam("Pn", 2) }).unwrap();
    let end = endomorphism_dim(p1.module().unwrap(), p1.generator.as_ref().unwrap(), 8, 16).unwrap();
    assert_eq!(end.dim, 1);
    assert!(endomorphism_dim(&m, &v, 6, 5).is_err());
}

#[test]
fn witness_search_examples() {
    let bounds = WitnessBounds { s_max: 2, k_max: 2, level: 6 };
    for n in 1..=2 {
        let pn = module(&ZooParams { n: Some(n), ..fam("Pn", 2) });
        let w = holonomic_witness_search(&pn, bounds).unwrap().unwrap();
        assert_eq!((w.s, w.v.len()), (n, 1));
    }
    let d1 = module(&ZooParams { n: Some(1), ..fam("D", 2) });
    let w = holonomic_witness_search(&d1, bounds).unwrap().unwrap();
    assert_eq!(w.s, 1);
    let u = module(&ZooParams { g: g(&["x1^3 - t"]), ..fam("U", 3) });
    let w = holonomic_witness_search(&u, bounds).unwrap().unwrap();
    assert_eq!((w.s, w.ks.clone(), w.v.len()), (0, vec![1], 3));
    assert_eq!(w.rank, 3 * 3);
}

#[test]
fn cyclic_quotient_validation() {
    let ring = RingSpec::new(1, FieldSpec::prime_field(Prime::new(2).unwrap())).unwrap();
    let other = RingSpec::new(2, FieldSpec::prime_field(Prime::new(2).unwrap())).unwrap();
    assert!(matches!(
        CyclicQuotient::new(&ring, vec![DOp::x(&other, 1, 1)], 4, 4),
        Err(Error::RingMismatch(_))
    ));
    assert!(matches!(CyclicQuotient::new(&ring, vec![], 4, 3), Err(Error::Parameter(_))));
}

#[test]
fn power_index_sets_are_closed() {
    let p = Prime::new(2).unwrap();
    let set = IndexSet::powers(p, &[1, 3, 5]).unwrap();
    set.check_closure(p, 64).unwrap();
    assert_eq!(set.members_up_to(40), vec![0, 2, 8, 32]);
    assert!(IndexSet::finite([0, 3]).check_closure(p, 8).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Tensor products of polynomial and regular factors count like
    /// products of their series.
    #[test]
    fn tensor_counts_convolve(p in prop_oneof![Just(2u32), Just(3)], regular in 0usize..=2, poly in 0usize..=2) {
        let n = regular + poly;
        prop_assume!(n > 0);
        let ring = RingSpec::new(n, FieldSpec::prime_field(Prime::new(p).unwrap())).unwrap();
        let mut factors = vec![Factor::Regular; regular];
        factors.extend(vec![Factor::InducedLambda { inner: LambdaInner::Trivial }; poly]);
        let m = ExplicitModule::tensor(&ring, Algebra::D, factors, "mix").unwrap();
        let dims = m.weight_profile(8);
        // 1 / (1-w)^{2·regular + poly + 1}
        let e = (2 * regular + poly) as u64;
        let want: Vec<u64> = (0..=8u64).map(|i| (1..=e).fold(1u64, |acc, j| acc * (i + j) / j)).collect();
        prop_assert_eq!(&dims, &want);
        prop_assert_eq!(dims, dpn::modrep::hilbert_function_default(&m, 8).unwrap());
    }
}
