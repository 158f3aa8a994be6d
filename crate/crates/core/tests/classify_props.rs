use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dpn::arith::Prime;
use dpn::classify::{build_tk_simple, build_u, maximal_ideal_data, tk_dimension_formulas, verify_matrix_algebra};
use dpn::coeff::{FieldSpec, UniPoly};
use dpn::modrep::{endomorphism_dim, Element};
use dpn::Error;

fn rat(p: u32) -> FieldSpec {
    FieldSpec::rational(Prime::new(p).unwrap())
}

fn fp(p: u32) -> FieldSpec {
    FieldSpec::prime_field(Prime::new(p).unwrap())
}

fn poly(s: &str, f: &FieldSpec) -> UniPoly {
    UniPoly::parse(s, f).unwrap()
}

/// Irreducible moduli with their field.
fn moduli() -> Vec<UniPoly> {
    vec![
        poly("x^2 - t", &rat(2)),
        poly("x^4 - t", &rat(2)),
        poly("x^3 - t", &rat(3)),
        poly("x^6 - t", &rat(2)),
        poly("x^2 + x + 1", &fp(2)),
        poly("x^3 + x + 1", &fp(2)),
        poly("x - 1", &fp(3)),
    ]
}

/// `T_k` acts densely on `K[x]/(g)` for every admissible `k`.
#[test]
fn quotients_are_dense() {
    for g in moduli() {
        let (_, km) = g.separable_decompose().unwrap();
        for k in 0..=km {
            let r = verify_matrix_algebra(k, &g).unwrap();
            assert!(r.dense, "{g}, k = {k}");
            assert_eq!(r.kernel_dim + r.image_dim, r.total_dim, "{g}, k = {k}");
            assert_eq!(r.image_dim * r.end_dim, r.module_dim * r.module_dim);
        }
        assert!(matches!(verify_matrix_algebra(km + 1, &g), Err(Error::Domain(_))));
    }
}

/// Past `k(g)` each extra level multiplies the dimension by `p` and leaves
/// the commutant alone.
#[test]
fn simple_modules_scale_with_k() {
    for g in moduli() {
        let (_, km) = g.separable_decompose().unwrap();
        let p = g.field().characteristic().get() as usize;
        let base = build_tk_simple(km, &g).unwrap();
        let data = maximal_ideal_data(std::slice::from_ref(&g)).unwrap();
        for l in 0..=km + 2 {
            let s = build_tk_simple(l, &g).unwrap();
            assert!(s.dense, "{g}, l = {l}");
            assert_eq!((s.dim, s.end_dim), (s.expected_dim, s.expected_end_dim), "{g}, l = {l}");
            if l >= km {
                assert_eq!(s.dim, p.pow(l - km) * base.dim, "{g}, l = {l}");
                assert_eq!(s.end_dim, base.end_dim);
            }
            let f = tk_dimension_formulas(&[l], &data).unwrap();
            assert_eq!((f.dim as usize, f.end_dim as usize), (s.dim, s.end_dim), "{g}, l = {l}");
        }
    }
}

/// `U(𝔪)` is generated by any nonzero vector of its ground block, and its
/// endomorphisms are the separable part of the residue field.
#[test]
fn simple_modules_are_cyclic_with_small_commutant() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cases = [
        vec![poly("x^3 - t", &rat(3))],
        vec![poly("x^2 + x + 1", &fp(2))],
        vec![poly("x^4 - t", &rat(2))],
        vec![poly("x1^2 - t", &rat(2)), poly("x2 - 1", &rat(2))],
    ];
    for g in cases {
        let data = maximal_ideal_data(&g).unwrap();
        let u = build_u(&data).unwrap();
        let m = &u.module;
        let field = m.field().clone();
        let budget = 2 * data.k.iter().map(|&k| (data.p() as usize).pow(k)).max().unwrap();
        for _ in 0..2 {
            let mut v = Element::zero();
            for b in m.ground_block() {
                v.add_scaled(&b, &field.from_int(rng.gen_range(0..data.p() as i64)));
            }
            if v.is_zero() {
                continue;
            }
            let end = endomorphism_dim(m, &v, budget, 2 * budget).unwrap();
            assert_eq!(end.dim as u64, data.sep_degree, "{g:?}");
        }
    }
}

#[test]
fn reducible_moduli_are_rejected() {
    let f2 = fp(2);
    assert!(build_tk_simple(0, &poly("x^2 + 1", &f2)).is_err());
    assert!(maximal_ideal_data(&[poly("x^2", &f2)]).is_err());
}
