//! Finite-dimensional representations of `T_k` and the density count.

use serde::Serialize;

use crate::coeff::{FieldSpec, Matrix, Scalar, SpanBasis, UniPoly};
use crate::error::{Error, Result};
use crate::modrep::{Factor, Slot, TkInner};

/// What the representation of an algebra on a module looks like.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraReport {
    /// `dim_K` of the abstract algebra.
    pub total_dim: usize,
    pub kernel_dim: usize,
    pub image_dim: usize,
    /// `dim_K` of the module.
    pub module_dim: usize,
    /// `dim_K` of the commutant `End_A(M)`.
    pub end_dim: usize,
    pub center_dim: usize,
    /// `image_dim · end_dim = module_dim²`.
    pub dense: bool,
}

fn flatten(m: &Matrix) -> Vec<(usize, Scalar)> {
    let c = m.ncols();
    (0..m.nrows())
        .flat_map(|i| m.row(i).iter().enumerate().map(move |(j, a)| (i * c + j, a.clone())))
        .filter(|(_, a)| !a.is_zero())
        .collect()
}

/// Dimension of the span of `mats` and a basis of it.
fn span_of(field: &FieldSpec, mats: &[Matrix]) -> Vec<Matrix> {
    let mut span = SpanBasis::new(field);
    mats.iter().filter(|m| span.insert(&flatten(m))).cloned().collect()
}

/// Basis of the unital algebra generated by `gens`.
fn generated_algebra(field: &FieldSpec, d: usize, gens: &[Matrix]) -> Result<Vec<Matrix>> {
    let mut span = SpanBasis::new(field);
    let id = Matrix::identity(field, d);
    span.insert(&flatten(&id));
    let mut basis = vec![id];
    let mut next = 0;
    while next < basis.len() {
        let b = basis[next].clone();
        next += 1;
        for g in gens {
            let c = g.mul(&b)?;
            if span.insert(&flatten(&c)) {
                basis.push(c);
            }
        }
    }
    Ok(basis)
}

fn commutator(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let ab = a.mul(b)?;
    let ba = b.mul(a)?;
    let mut out = ab.clone();
    for i in 0..ab.nrows() {
        for j in 0..ab.ncols() {
            out.set(i, j, ab.get(i, j) - ba.get(i, j));
        }
    }
    Ok(out)
}

/// `dim {E : E G = G E for all G in gens}`.
fn commutant_dim(field: &FieldSpec, d: usize, gens: &[Matrix]) -> usize {
    let mut span = SpanBasis::new(field);
    // Unknown E_{ab} sits in column a·d + b.
    for g in gens {
        for i in 0..d {
            for j in 0..d {
                let mut row: Vec<(usize, Scalar)> = Vec::new();
                for b in 0..d {
                    let c = g.get(b, j);
                    if !c.is_zero() {
                        row.push((i * d + b, c.clone()));
                    }
                }
                for a in 0..d {
                    let c = g.get(i, a);
                    if !c.is_zero() {
                        match row.iter_mut().find(|e| e.0 == a * d + j) {
                            Some(e) => e.1 = &e.1 - c,
                            None => row.push((a * d + j, -c.clone())),
                        }
                    }
                }
                row.retain(|e| !e.1.is_zero());
                span.insert(&row);
            }
        }
    }
    d * d - span.rank()
}

/// `dim` of the center of the algebra with basis `basis` and generators `gens`.
fn center_dim(field: &FieldSpec, basis: &[Matrix], gens: &[Matrix]) -> Result<usize> {
    let comms: Vec<Vec<Matrix>> =
        basis.iter().map(|b| gens.iter().map(|g| commutator(b, g)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    let d = basis.first().map(Matrix::nrows).unwrap_or(0);
    let mut span = SpanBasis::new(field);
    for gi in 0..gens.len() {
        for i in 0..d {
            for j in 0..d {
                let row: Vec<(usize, Scalar)> = comms
                    .iter()
                    .enumerate()
                    .map(|(a, c)| (a, c[gi].get(i, j).clone()))
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                span.insert(&row);
            }
        }
    }
    Ok(basis.len() - span.rank())
}

/// Matrices of `x` and `∂^[i]`, `i < p^k`, on the `T_k`-module with basis
/// `∂^[a p^m] ⊗ x^j`, `a p^m < p^k`, `j < deg g`, where `m = min(k, k(g))`.
///
/// For `k ≤ k(g)` this is `K[x]/(g)` with the natural action. The span is
/// `T_k`-stable: `∂^[i] ∂^[a p^m]` with `i + a p^m ≥ p^k` has a carry and
/// vanishes.
struct TkRep {
    d: usize,
    x: Matrix,
    /// `∂^[i]` for `0 ≤ i < p^k`.
    ds: Vec<Matrix>,
}

fn tk_rep(k: u32, g: &UniPoly) -> Result<TkRep> {
    let field = g.field().clone();
    let p = field.characteristic();
    let g = g.monic();
    let (_, km) = g.separable_decompose()?;
    let m = k.min(km);
    let q = p.pow(k).ok_or_else(|| Error::Parameter("p^k overflows".into()))? as u32;
    let qm = p.pow(m).expect("m <= k") as u32;
    let deg = g.degree().expect("nonconstant") as u32;
    let blocks = q / qm;
    let d = (blocks * deg) as usize;
    let factor = Factor::InducedTk { k: m, inner: TkInner::Quotient(g.clone()) };
    let index = |s: Slot| -> Result<usize> {
        if s.0 < blocks && s.1 < deg {
            Ok((s.0 * deg + s.1) as usize)
        } else {
            Err(Error::Model(format!("slot {s:?} leaves the T_k-module")))
        }
    };
    let slots: Vec<Slot> = (0..blocks).flat_map(|a| (0..deg).map(move |j| (a, j))).collect();
    let build = |act: &dyn Fn(Slot) -> Result<Vec<(Slot, Scalar)>>| -> Result<Matrix> {
        let mut mat = Matrix::zeros(&field, d, d);
        for &s in &slots {
            let col = index(s)?;
            for (t, c) in act(s)? {
                let row = index(t)?;
                mat.set(row, col, mat.get(row, col) + &c);
            }
        }
        Ok(mat)
    };
    let x = build(&|s| factor.act_x(s, &field))?;
    let mut ds = vec![Matrix::identity(&field, d)];
    for i in 1..q {
        ds.push(build(&|s| factor.act_d(i, s, &field))?);
    }
    Ok(TkRep { d, x, ds })
}

fn pow_matrix(x: &Matrix, e: usize) -> Result<Matrix> {
    let mut out = Matrix::identity(x.field(), x.nrows());
    for _ in 0..e {
        out = out.mul(x)?;
    }
    Ok(out)
}

/// Represent `Ā = Λ_{[p^k]} ⊗ K[x]/(g)`, basis `∂^[i] x^j` with `i < p^k`,
/// `j < deg g`, on `K[x]/(g)` and run the density count. Requires
/// `g ∈ K[x^{p^k}]`, so that `Λ_{[p^k]}` acts on the quotient.
pub fn verify_matrix_algebra(k: u32, g: &UniPoly) -> Result<AlgebraReport> {
    let g = g.monic();
    let (_, km) = g.separable_decompose()?;
    if k > km {
        return Err(Error::Domain(format!("{g} is not a polynomial in x^(p^{k})")));
    }
    let field = g.field().clone();
    let rep = tk_rep(k, &g)?;
    let deg = g.degree().expect("nonconstant");
    let mut images = Vec::with_capacity(rep.ds.len() * deg);
    for dmat in &rep.ds {
        for j in 0..deg {
            images.push(dmat.mul(&pow_matrix(&rep.x, j)?)?);
        }
    }
    let total_dim = images.len();
    let basis = span_of(&field, &images);
    let image_dim = basis.len();
    let gens = generators(&rep, field.characteristic().get());
    let end_dim = commutant_dim(&field, rep.d, &gens);
    let center = center_dim(&field, &basis, &gens)?;
    Ok(AlgebraReport {
        total_dim,
        kernel_dim: total_dim - image_dim,
        image_dim,
        module_dim: rep.d,
        end_dim,
        center_dim: center,
        dense: image_dim * end_dim == rep.d * rep.d,
    })
}

/// `x` and `∂^[p^e]` for `p^e < p^k`; these generate the image of `T_k`,
/// since every `∂^[i]` with `i < p^k` is a unit multiple of a product of them.
fn generators(rep: &TkRep, p: u32) -> Vec<Matrix> {
    let mut gens = vec![rep.x.clone()];
    let mut e = 1usize;
    while e < rep.ds.len() {
        gens.push(rep.ds[e].clone());
        e *= p as usize;
    }
    gens
}

/// The simple `T_k`-module attached to `(g)`, `n = 1`, with its measured and
/// expected invariants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TkSimple {
    pub k: u32,
    pub k_m: u32,
    pub dim: usize,
    /// `p^{k - min(k, k(g))} · deg g`.
    pub expected_dim: usize,
    pub end_dim: usize,
    /// `deg g / p^{min(k, k(g))}`.
    pub expected_end_dim: usize,
    pub image_dim: usize,
    pub dense: bool,
}

/// Build the simple `T_k`-module: `K[x]/(g)` with the natural action when
/// `k ≤ k(g)`, else the module induced from `T_{k(g)}`. Simplicity is
/// certified by the density count together with generation from any
/// nonzero vector, which is implied by density over the commutant field.
pub fn build_tk_simple(k: u32, g: &UniPoly) -> Result<TkSimple> {
    let g = g.monic();
    g.certify_irreducible()?;
    let (_, km) = g.separable_decompose()?;
    let field = g.field().clone();
    let p = field.characteristic();
    let rep = tk_rep(k, &g)?;
    let gens = generators(&rep, p.get());
    let algebra = generated_algebra(&field, rep.d, &gens)?;
    let end_dim = commutant_dim(&field, rep.d, &gens);
    let deg = g.degree().expect("nonconstant");
    let m = k.min(km);
    let pm = p.pow(m).expect("small") as usize;
    Ok(TkSimple {
        k,
        k_m: km,
        dim: rep.d,
        expected_dim: p.pow(k - m).expect("small") as usize * deg,
        end_dim,
        expected_end_dim: deg / pm,
        image_dim: algebra.len(),
        dense: algebra.len() * end_dim == rep.d * rep.d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Prime;

    fn rat(p: u32) -> FieldSpec {
        FieldSpec::rational(Prime::new(p).unwrap())
    }

    #[test]
    fn matrix_algebra_reports() {
        let k2 = rat(2);
        let r = verify_matrix_algebra(1, &UniPoly::parse("x^2 - t", &k2).unwrap()).unwrap();
        assert_eq!((r.total_dim, r.kernel_dim, r.center_dim, r.end_dim), (4, 0, 1, 1));
        assert!(r.dense);
        let r = verify_matrix_algebra(1, &UniPoly::parse("x^4 - t", &k2).unwrap()).unwrap();
        assert_eq!((r.total_dim, r.kernel_dim, r.center_dim, r.end_dim), (8, 0, 2, 2));
        assert!(r.dense);
        let f3 = FieldSpec::prime_field(Prime::new(3).unwrap());
        let r = verify_matrix_algebra(0, &UniPoly::parse("x - 1", &f3).unwrap()).unwrap();
        assert_eq!((r.total_dim, r.image_dim, r.module_dim), (1, 1, 1));
        assert!(verify_matrix_algebra(1, &UniPoly::parse("x - 1", &f3).unwrap()).is_err());
    }

    #[test]
    fn tk_simple_table() {
        let g = UniPoly::parse("x^4 - t", &rat(2)).unwrap();
        for k in 0..4 {
            let s = build_tk_simple(k, &g).unwrap();
            assert_eq!(s.dim, s.expected_dim, "k = {k}");
            assert_eq!(s.end_dim, s.expected_end_dim, "k = {k}");
            assert!(s.dense, "k = {k}");
        }
        let f3 = FieldSpec::prime_field(Prime::new(3).unwrap());
        let s = build_tk_simple(2, &UniPoly::parse("x - 1", &f3).unwrap()).unwrap();
        assert_eq!((s.dim, s.end_dim), (9, 1));
        assert!(s.dense);
    }
}
