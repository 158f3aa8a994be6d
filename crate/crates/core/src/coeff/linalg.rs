//! Exact linear algebra over `F_p` and `F_p(t)`.
//!
//! Rows over `F_p(t)` are cleared of denominators and eliminated over
//! `F_p[t]` without fractions: each combination step cross-multiplies by the
//! pivots divided by their gcd, then strips the row content. Over `F_p` the
//! same code degenerates to ordinary Gaussian elimination with unit pivots.

use std::collections::HashMap;
use std::fmt::Debug;

use crate::coeff::{FieldSpec, Fp, FpPoly, RatFn, Scalar};
use crate::error::{Error, Result};

/// Integral domain operations needed by fraction-free elimination.
pub(crate) trait Domain: Clone + PartialEq + Debug + Send + Sync {
    fn is_zero(&self) -> bool;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Normalized gcd; for a field, 1 unless both are zero.
    fn gcd(&self, o: &Self) -> Self;
    fn div_exact(&self, o: &Self) -> Self;
    /// The unit `u` such that `self / u` is the normalized associate.
    fn unit(&self) -> Self;
    fn is_unit_one(&self) -> bool;
}

impl Domain for Fp {
    fn is_zero(&self) -> bool {
        Fp::is_zero(*self)
    }
    fn sub(&self, o: &Self) -> Self {
        Fp::sub(*self, *o)
    }
    fn mul(&self, o: &Self) -> Self {
        Fp::mul(*self, *o)
    }
    fn gcd(&self, o: &Self) -> Self {
        if Fp::is_zero(*self) && Fp::is_zero(*o) {
            *self
        } else {
            Fp::raw(1, self.modulus())
        }
    }
    fn div_exact(&self, o: &Self) -> Self {
        Fp::mul(*self, o.inv().expect("division by zero"))
    }
    fn unit(&self) -> Self {
        *self
    }
    fn is_unit_one(&self) -> bool {
        self.is_one()
    }
}

impl Domain for FpPoly {
    fn is_zero(&self) -> bool {
        FpPoly::is_zero(self)
    }
    fn sub(&self, o: &Self) -> Self {
        FpPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        FpPoly::mul(self, o)
    }
    fn gcd(&self, o: &Self) -> Self {
        FpPoly::gcd(self, o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        FpPoly::div_exact(self, o)
    }
    fn unit(&self) -> Self {
        FpPoly::constant(self.lead())
    }
    fn is_unit_one(&self) -> bool {
        self.is_one()
    }
}

type SparseRow<R> = Vec<(usize, R)>;

/// Divide out the content and normalize the leading entry.
fn make_primitive<R: Domain>(row: &mut SparseRow<R>) {
    if row.is_empty() {
        return;
    }
    let mut g = row[0].1.clone();
    for (_, a) in row.iter().skip(1) {
        if g.is_unit_one() {
            break;
        }
        g = g.gcd(a);
    }
    let u = row[0].1.div_exact(&g).unit();
    let d = g.mul(&u);
    if !d.is_unit_one() {
        for (_, a) in row.iter_mut() {
            *a = a.div_exact(&d);
        }
    }
}

/// `(a/g)·v − (b/g)·w` where `a`, `b` are the entries of `w`, `v` in column `c`.
fn eliminate<R: Domain>(v: &SparseRow<R>, w: &SparseRow<R>, c: usize) -> SparseRow<R> {
    let a = &w.iter().find(|(k, _)| *k == c).expect("pivot present").1;
    let b = &v.iter().find(|(k, _)| *k == c).expect("entry present").1;
    let g = a.gcd(b);
    let (sa, sb) = (a.div_exact(&g), b.div_exact(&g));
    let scale_v = !sa.is_unit_one();
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        let ci = v.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = w.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        let val;
        let col;
        if ci < cj {
            col = ci;
            val = if scale_v { v[i].1.mul(&sa) } else { v[i].1.clone() };
            i += 1;
        } else if cj < ci {
            col = cj;
            let z = sb.mul(&w[j].1);
            val = zero_like(&z).sub(&z);
            j += 1;
        } else {
            col = ci;
            let left = if scale_v { v[i].1.mul(&sa) } else { v[i].1.clone() };
            val = left.sub(&sb.mul(&w[j].1));
            i += 1;
            j += 1;
        }
        if !val.is_zero() {
            out.push((col, val));
        }
    }
    make_primitive(&mut out);
    out
}

fn zero_like<R: Domain>(a: &R) -> R {
    a.sub(a)
}

/// Rows in semi-echelon form: pairwise distinct leading (smallest) columns.
#[derive(Clone, Debug)]
pub(crate) struct SparseEchelon<R: Domain> {
    rows: Vec<SparseRow<R>>,
    lead: HashMap<usize, usize>,
}

impl<R: Domain> SparseEchelon<R> {
    fn new() -> Self {
        SparseEchelon { rows: Vec::new(), lead: HashMap::new() }
    }

    fn reduce(&self, mut v: SparseRow<R>) -> SparseRow<R> {
        make_primitive(&mut v);
        while let Some(&(c, _)) = v.first() {
            match self.lead.get(&c) {
                Some(&ri) => v = eliminate(&v, &self.rows[ri], c),
                None => break,
            }
        }
        v
    }

    fn insert(&mut self, v: SparseRow<R>) -> bool {
        let v = self.reduce(v);
        match v.first() {
            None => false,
            Some(&(c, _)) => {
                self.lead.insert(c, self.rows.len());
                self.rows.push(v);
                true
            }
        }
    }
}

#[derive(Clone, Debug)]
enum SpanInner {
    Prime(SparseEchelon<Fp>),
    Rational(SparseEchelon<FpPoly>),
}

/// Incrementally grown span of sparse vectors with exact membership tests.
///
/// Vectors are lists of `(column, value)`; the leading column of a stored row
/// is its smallest column index, so callers that number columns by
/// decreasing degree can read off filtered dimensions with
/// [`SpanBasis::leading_columns`].
#[derive(Clone, Debug)]
pub struct SpanBasis {
    field: FieldSpec,
    inner: SpanInner,
}

impl SpanBasis {
    pub fn new(field: &FieldSpec) -> SpanBasis {
        let inner = if field.is_rational() {
            SpanInner::Rational(SparseEchelon::new())
        } else {
            SpanInner::Prime(SparseEchelon::new())
        };
        SpanBasis { field: field.clone(), inner }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rank(&self) -> usize {
        match &self.inner {
            SpanInner::Prime(e) => e.rows.len(),
            SpanInner::Rational(e) => e.rows.len(),
        }
    }

    /// Add `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &[(usize, Scalar)]) -> bool {
        match &mut self.inner {
            SpanInner::Prime(e) => e.insert(to_fp_row(v)),
            SpanInner::Rational(e) => e.insert(to_poly_row(v)),
        }
    }

    /// Add `v` and return its reduced form when the span grew. Stored rows
    /// are primitive, so over `F_p(t)` the result is a scalar multiple of the
    /// exact reduction.
    pub fn insert_reduced(&mut self, v: &[(usize, Scalar)]) -> Option<Vec<(usize, Scalar)>> {
        match &mut self.inner {
            SpanInner::Prime(e) => {
                let grew = e.insert(to_fp_row(v));
                grew.then(|| e.rows.last().expect("just inserted").iter().map(|(c, a)| (*c, Scalar::Fp(*a))).collect())
            }
            SpanInner::Rational(e) => {
                let grew = e.insert(to_poly_row(v));
                grew.then(|| {
                    let row = e.rows.last().expect("just inserted");
                    row.iter().map(|(c, a)| (*c, Scalar::Rf(RatFn::from_poly(a.clone())))).collect()
                })
            }
        }
    }

    pub fn contains(&self, v: &[(usize, Scalar)]) -> bool {
        match &self.inner {
            SpanInner::Prime(e) => e.reduce(to_fp_row(v)).is_empty(),
            SpanInner::Rational(e) => e.reduce(to_poly_row(v)).is_empty(),
        }
    }

    /// Leading column of every stored row.
    pub fn leading_columns(&self) -> Vec<usize> {
        match &self.inner {
            SpanInner::Prime(e) => e.rows.iter().map(|r| r[0].0).collect(),
            SpanInner::Rational(e) => e.rows.iter().map(|r| r[0].0).collect(),
        }
    }
}

fn sorted<T: Clone>(v: &[(usize, T)]) -> Vec<(usize, T)> {
    let mut out = v.to_vec();
    out.sort_by_key(|e| e.0);
    debug_assert!(out.windows(2).all(|w| w[0].0 < w[1].0), "duplicate column");
    out
}

fn to_fp_row(v: &[(usize, Scalar)]) -> SparseRow<Fp> {
    sorted(v)
        .into_iter()
        .filter_map(|(c, s)| {
            let a = match s {
                Scalar::Fp(a) => a,
                Scalar::Rf(r) => r.as_constant().expect("non-constant entry over a prime field"),
            };
            (!a.is_zero()).then_some((c, a))
        })
        .collect()
}

/// Clear denominators of a row of rational functions.
fn to_poly_row(v: &[(usize, Scalar)]) -> SparseRow<FpPoly> {
    let v: Vec<(usize, RatFn)> = sorted(v)
        .into_iter()
        .filter(|(_, s)| !s.is_zero())
        .map(|(c, s)| {
            (
                c,
                match s {
                    Scalar::Fp(a) => RatFn::from_fp(a),
                    Scalar::Rf(r) => r,
                },
            )
        })
        .collect();
    let Some(first) = v.first() else { return Vec::new() };
    let mut l = first.1.den().clone();
    for (_, r) in v.iter().skip(1) {
        if !r.den().is_one() {
            let g = l.gcd(r.den());
            l = l.mul(&r.den().div_exact(&g));
        }
    }
    v.into_iter().map(|(c, r)| (c, r.num().mul(&l.div_exact(r.den())))).collect()
}

/// Dense matrix over a [`FieldSpec`].
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Vec<Scalar>>,
}

impl Matrix {
    /// Build from rows, checking shapes and that every entry lies in `field`.
    pub fn from_rows(field: &FieldSpec, rows: Vec<Vec<Scalar>>, cols: usize) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows.len());
        for r in rows {
            if r.len() != cols {
                return Err(Error::Dimension { expected: cols, found: r.len() });
            }
            data.push(r.iter().map(|a| field.coerce(a)).collect::<Result<Vec<_>>>()?);
        }
        Ok(Matrix { field: field.clone(), rows: data.len(), cols, data })
    }

    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![vec![field.zero(); cols]; rows] }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i][i] = field.one();
        }
        m
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, a: Scalar) {
        self.data[i][j] = a;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i]
    }

    pub fn mul(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.rows {
            return Err(Error::Dimension { expected: self.cols, found: o.rows });
        }
        let mut out = Matrix::zeros(&self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] = &out.data[i][j] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::Dimension { expected: self.cols, found: v.len() });
        }
        Ok(self
            .data
            .iter()
            .map(|r| r.iter().zip(v).fold(self.field.zero(), |acc, (a, b)| if a.is_zero() || b.is_zero() { acc } else { &acc + &(a * b) }))
            .collect())
    }

    fn sparse_rows(&self, extra: Option<&[Scalar]>) -> Vec<Vec<(usize, Scalar)>> {
        self.data
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row: Vec<(usize, Scalar)> =
                    r.iter().enumerate().filter(|(_, a)| !a.is_zero()).map(|(j, a)| (j, a.clone())).collect();
                if let Some(b) = extra {
                    if !b[i].is_zero() {
                        row.push((self.cols, b[i].clone()));
                    }
                }
                row
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.rref(None).0.len()
    }

    /// Basis of `{v : M v = 0}`; each vector has a 1 at its free column.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (rows, pivots) = self.rref(None);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![self.field.zero(); self.cols];
            v[f] = self.field.one();
            for (row, &pc) in rows.iter().zip(&pivots) {
                let b = row.iter().find(|(c, _)| *c == f).map(|e| e.1.clone());
                if let Some(b) = b {
                    let a = &row[0].1;
                    v[pc] = -&b.div(a).expect("pivot nonzero");
                }
            }
            out.push(v);
        }
        out
    }

    /// A particular solution of `M x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension { expected: self.rows, found: b.len() });
        }
        for a in b {
            if !self.field.contains(a) {
                return Err(Error::Field(format!("right-hand side entry outside {}", self.field)));
            }
        }
        let (rows, pivots) = self.rref(Some(b));
        if pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &pc) in rows.iter().zip(&pivots) {
            if let Some((_, rhs)) = row.iter().find(|(c, _)| *c == self.cols) {
                x[pc] = rhs.div(&row[0].1).expect("pivot nonzero");
            }
        }
        Ok(Some(x))
    }

    /// Fully reduced row echelon form, returned as scalar rows and pivot columns.
    fn rref(&self, extra: Option<&[Scalar]>) -> (Vec<Vec<(usize, Scalar)>>, Vec<usize>) {
        let rows = self.sparse_rows(extra);
        if self.field.is_rational() {
            let rows: Vec<SparseRow<FpPoly>> = rows.iter().map(|r| to_poly_row(r)).collect();
            let (rows, piv) = rref_domain(rows);
            let rows = rows
                .into_iter()
                .map(|r| r.into_iter().map(|(c, a)| (c, Scalar::Rf(RatFn::from_poly(a)))).collect())
                .collect();
            (rows, piv)
        } else {
            let rows: Vec<SparseRow<Fp>> = rows.iter().map(|r| to_fp_row(r)).collect();
            let (rows, piv) = rref_domain(rows);
            let rows = rows.into_iter().map(|r| r.into_iter().map(|(c, a)| (c, Scalar::Fp(a))).collect()).collect();
            (rows, piv)
        }
    }
}

/// Fraction-free reduced echelon form; every pivot column is zero outside
/// its pivot row, and rows are sorted by pivot column.
fn rref_domain<R: Domain>(mut rows: Vec<SparseRow<R>>) -> (Vec<SparseRow<R>>, Vec<usize>) {
    rows.retain(|r| !r.is_empty());
    for r in rows.iter_mut() {
        make_primitive(r);
    }
    let mut done: Vec<SparseRow<R>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    loop {
        rows.retain(|r| !r.is_empty());
        let Some(c) = rows.iter().map(|r| r[0].0).min() else { break };
        let k = rows.iter().position(|r| r[0].0 == c).expect("exists");
        let piv = rows.swap_remove(k);
        for r in rows.iter_mut() {
            if r[0].0 == c {
                *r = eliminate(r, &piv, c);
            }
        }
        for d in done.iter_mut() {
            if d.iter().any(|(cc, _)| *cc == c) {
                *d = eliminate_at(d, &piv, c);
            }
        }
        done.push(piv);
        pivots.push(c);
    }
    (done, pivots)
}

/// Clear column `c` of `v` (not necessarily its leading column) using `w`.
fn eliminate_at<R: Domain>(v: &SparseRow<R>, w: &SparseRow<R>, c: usize) -> SparseRow<R> {
    let lead_before = v[0].0;
    let out = eliminate(v, w, c);
    debug_assert!(out.first().map(|e| e.0) == Some(lead_before));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Prime;
    use crate::coeff::rf_normalize;

    fn fp5() -> FieldSpec {
        FieldSpec::prime_field(Prime::new(5).unwrap())
    }

    #[test]
    fn identity_and_zero() {
        let m = Matrix::identity(&fp5(), 3);
        assert_eq!(m.rank(), 3);
        assert!(m.kernel().is_empty());
        let z = Matrix::zeros(&fp5(), 2, 4);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.kernel().len(), 4);
    }

    #[test]
    fn rational_function_kernel() {
        let p = Prime::new(2).unwrap();
        let f = FieldSpec::rational(p);
        let t = f.generator().unwrap();
        let m = Matrix::from_rows(&f, vec![vec![f.one(), t.clone()], vec![t.clone(), &t * &t]], 2).unwrap();
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![t.clone(), f.one()]);
        assert!(m.mul_vec(&k[0]).unwrap().iter().all(|a| a.is_zero()));
    }

    #[test]
    fn rational_entries_with_denominators() {
        let p = Prime::new(3).unwrap();
        let f = FieldSpec::rational(p);
        let r = |n: &[i64], d: &[i64]| Scalar::Rf(rf_normalize(FpPoly::from_coeffs(p, n), FpPoly::from_coeffs(p, d)).unwrap());
        let m = Matrix::from_rows(
            &f,
            vec![
                vec![r(&[1], &[1, 1]), r(&[0, 1], &[1]), r(&[2], &[0, 1])],
                vec![r(&[1], &[1]), r(&[0, 1, 1], &[1]), r(&[1, 0, 2], &[0, 1])],
                vec![r(&[2], &[1, 1]), r(&[0, 2], &[1]), r(&[1], &[0, 1])],
            ],
            3,
        )
        .unwrap();
        // third row is twice the first
        assert_eq!(m.rank(), 2);
        for v in m.kernel() {
            assert!(m.mul_vec(&v).unwrap().iter().all(|a| a.is_zero()));
        }
        let b = m.mul_vec(&[f.one(), f.generator().unwrap(), f.zero()]).unwrap();
        let x = m.solve(&b).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), b);
        let bad = vec![f.one(), f.zero(), f.zero()];
        assert!(m.solve(&bad).unwrap().is_none());
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let f5 = fp5();
        let f3 = FieldSpec::prime_field(Prime::new(3).unwrap());
        let err = Matrix::from_rows(&f5, vec![vec![f3.one()]], 1);
        assert!(matches!(err, Err(Error::Field(_))));
    }

    #[test]
    fn span_membership() {
        let f = fp5();
        let mut s = SpanBasis::new(&f);
        assert!(s.insert(&[(0, f.one()), (2, f.from_int(3))]));
        assert!(s.insert(&[(1, f.one())]));
        assert!(!s.insert(&[(0, f.from_int(2)), (1, f.from_int(4)), (2, f.from_int(1))]));
        assert!(s.contains(&[(2, f.from_int(3)), (0, f.one())]));
        assert!(!s.contains(&[(2, f.one())]));
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn kernel_dimension_matches_rank_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let f = FieldSpec::prime_field(Prime::new(3).unwrap());
        for _ in 0..50 {
            let (r, c) = (rng.gen_range(1..6), rng.gen_range(1..7));
            let rows = (0..r).map(|_| (0..c).map(|_| f.from_int(rng.gen_range(0..3))).collect()).collect();
            let m = Matrix::from_rows(&f, rows, c).unwrap();
            let k = m.kernel();
            assert_eq!(m.rank() + k.len(), c);
            for v in &k {
                assert!(m.mul_vec(v).unwrap().iter().all(|a| a.is_zero()));
            }
        }
    }
}
