//! Almost-polynomial fitting and growth-degree estimates.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::Prime;
use crate::error::{Error, Result};

/// Largest residue-polynomial degree tried before giving up.
const MAX_DEGREE: usize = 8;

/// Points held out per residue class to validate a candidate fit.
const HOLDOUT: usize = 2;

/// An eventually quasi-polynomial fit whose residue polynomials share their
/// degree and leading coefficient.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HilbertProfile {
    pub period: u64,
    pub degree: u32,
    #[serde(serialize_with = "ser_rat")]
    pub leading: BigRational,
    /// `d! · leading`.
    #[serde(serialize_with = "ser_rat")]
    pub multiplicity: BigRational,
    /// Residue class `r` uses `residue_polys[r]`, coefficients in `i`,
    /// constant term first.
    #[serde(serialize_with = "ser_polys")]
    pub residue_polys: Vec<Vec<BigRational>>,
    /// First index from which every residue polynomial reproduces the input.
    pub onset: usize,
}

fn ser_rat<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ser_polys<S: serde::Serializer>(v: &[Vec<BigRational>], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for p in v {
        seq.serialize_element(&p.iter().map(ToString::to_string).collect::<Vec<_>>())?;
    }
    seq.end()
}

impl HilbertProfile {
    /// Evaluate the fitted quasi-polynomial at `i`.
    pub fn eval(&self, i: u64) -> BigRational {
        eval(&self.residue_polys[(i % self.period) as usize], i)
    }
}

fn eval(poly: &[BigRational], i: u64) -> BigRational {
    let x = BigRational::from_integer(BigInt::from(i));
    poly.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
}

/// Lagrange interpolation through `(x_j, y_j)`; coefficients constant-first.
fn interpolate(points: &[(u64, BigRational)]) -> Vec<BigRational> {
    let n = points.len();
    let mut out = vec![BigRational::zero(); n];
    for (j, (xj, yj)) in points.iter().enumerate() {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (m, (xm, _)) in points.iter().enumerate() {
            if m == j {
                continue;
            }
            let xm_r = BigRational::from_integer(BigInt::from(*xm));
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * &xm_r;
            }
            basis = next;
            denom *= BigRational::from_integer(BigInt::from(*xj as i64 - *xm as i64));
        }
        let scale = yj / denom;
        for (k, c) in basis.into_iter().enumerate() {
            out[k] += c * &scale;
        }
    }
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

fn factorial(d: u32) -> BigRational {
    BigRational::from_integer((1..=d as u64).fold(BigInt::one(), |a, b| a * b))
}

fn as_rat(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Fit `seq` by an almost polynomial of period `p^k` for the smallest
/// `k ≤ k_max` that validates.
///
/// Each residue class is interpolated through the `d + 1` points preceding a
/// held-out pair at the tail, for the smallest `d` that predicts the pair.
/// The onset is found by scanning backward from the tail until the fit
/// breaks, then adding one period of slack. The run from the onset must
/// cover the fitted points, the holdout and one further period `p^{k_max}`.
pub fn fit_almost_polynomial(seq: &[u64], p: Prime, k_max: u32) -> Result<HilbertProfile> {
    if seq.iter().rev().take(4).all(|&v| v == 0) {
        return Err(Error::Fit("the sequence is eventually zero".into()));
    }
    let len = seq.len();
    // Every accepted fit must also hold over one extra period of the largest
    // size considered, so a short lucky tail cannot pass for a small period.
    let margin = p.pow(k_max).ok_or_else(|| Error::Parameter("period overflows".into()))? as usize;
    for k in 0..=k_max {
        let period = p.pow(k).ok_or_else(|| Error::Parameter("period overflows".into()))? as usize;
        'degree: for d in 0..=MAX_DEGREE {
            let need = d + 1 + HOLDOUT;
            if len < need * period {
                break;
            }
            let mut polys = Vec::with_capacity(period);
            for r in 0..period {
                // Indices i ≡ r (mod period), the last `need` of them.
                let last = r + ((len - 1 - r) / period) * period;
                let idx: Vec<usize> = (0..need).rev().map(|s| last - s * period).collect();
                let pts: Vec<(u64, BigRational)> = idx[..d + 1].iter().map(|&i| (i as u64, as_rat(seq[i]))).collect();
                let q = interpolate(&pts);
                if idx[d + 1..].iter().any(|&i| eval(&q, i as u64) != as_rat(seq[i])) {
                    continue 'degree;
                }
                polys.push(q);
            }
            let deg = polys[0].len().saturating_sub(1);
            let lc = polys[0].last().cloned().unwrap_or_default();
            if polys.iter().any(|q| q.len().saturating_sub(1) != deg || q.last().cloned().unwrap_or_default() != lc) {
                // Residue classes disagree; a larger degree reproduces the same
                // interpolants, so move on to the next period.
                break;
            }
            let onset = match (0..len).rev().find(|&i| eval(&polys[i % period], i as u64) != as_rat(seq[i])) {
                Some(b) => (b + period).min(len),
                None => 0,
            };
            if len - onset < (d + 1 + HOLDOUT) * period + margin {
                continue;
            }
            let multiplicity = &lc * factorial(deg as u32);
            return Ok(HilbertProfile {
                period: period as u64,
                degree: deg as u32,
                leading: lc,
                multiplicity,
                residue_polys: polys,
                onset,
            });
        }
    }
    Err(Error::Fit(format!("no period p^k with k <= {k_max} and degree <= {MAX_DEGREE} fits {len} terms")))
}

/// Growth-degree estimate of a sequence.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GammaEstimate {
    /// `max log f(i) / log i` over the window, or the exact degree.
    pub value: f64,
    /// Set when an almost-polynomial fit validated.
    pub exact: Option<u32>,
    /// Inclusive index range inspected.
    pub window: (usize, usize),
}

/// Estimate `inf{r : f(i) ≤ i^r for i ≫ 0}` from finitely many terms.
///
/// With `p` given, an almost-polynomial fit is tried first and its degree is
/// reported exactly. Otherwise the estimate is the largest `log f(i)/log i`
/// over the last `window` terms (default: the last third, at least 8).
pub fn gamma_degree(seq: &[u64], window: Option<usize>, p: Option<Prime>) -> Result<GammaEstimate> {
    let len = seq.len();
    let window = window.unwrap_or((len / 3).max(8));
    if window < 4 || len < window {
        return Err(Error::Parameter(format!("need at least {window} >= 4 terms, got {len}")));
    }
    let start = (len - window).max(2);
    let range = (start, len - 1);
    if seq[start..].iter().all(|&v| v == 0) {
        return Err(Error::Domain("the tail is zero; growth is undefined".into()));
    }
    if let Some(p) = p {
        if let Ok(profile) = fit_almost_polynomial(seq, p, 3) {
            return Ok(GammaEstimate { value: profile.degree as f64, exact: Some(profile.degree), window: range });
        }
    }
    let value = (start..len)
        .filter(|&i| seq[i] > 0)
        .map(|i| (seq[i] as f64).ln() / (i as f64).ln())
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(GammaEstimate { value, exact: None, window: range })
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> Result<f64> {
    let pts: Vec<(f64, f64)> = points.iter().filter(|(x, y)| *x > 0.0 && *y > 0.0).map(|(x, y)| (x.ln(), y.ln())).collect();
    if pts.len() < 2 {
        return Err(Error::Parameter("need two positive points for a slope".into()));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::Parameter("all abscissae coincide".into()));
    }
    Ok(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1u64, |a, j| a * (n - j) / (j + 1))
    }

    fn prime(p: u32) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn exact_polynomials() {
        for n in 1..=3u64 {
            let seq: Vec<u64> = (0..40).map(|i| binom(i + 2 * n, 2 * n)).collect();
            let f = fit_almost_polynomial(&seq, prime(2), 3).unwrap();
            assert_eq!((f.period, f.degree), (1, 2 * n as u32));
            assert!(f.multiplicity.is_one());
            assert_eq!(f.onset, 0);
        }
    }

    #[test]
    fn quasi_polynomial_with_period_three() {
        let seq: Vec<u64> = (0..30).map(|i| 3 * (i / 3 + 1)).collect();
        let f = fit_almost_polynomial(&seq, prime(3), 2).unwrap();
        assert_eq!((f.period, f.degree), (3, 1));
        assert!(f.leading.is_one() && f.multiplicity.is_one());
        for (i, &v) in seq.iter().enumerate().skip(f.onset) {
            assert_eq!(f.eval(i as u64), as_rat(v));
        }
    }

    #[test]
    fn onset_detection() {
        let mut seq: Vec<u64> = (0..30).map(|i| 2 * i + 5).collect();
        seq[0] = 1;
        seq[1] = 2;
        let f = fit_almost_polynomial(&seq, prime(2), 2).unwrap();
        assert_eq!(f.degree, 1);
        assert_eq!(f.onset, 2);
    }

    #[test]
    fn failures_are_reported() {
        assert!(fit_almost_polynomial(&[0; 20], prime(2), 2).is_err());
        let exp: Vec<u64> = (0..30).map(|i| 1u64 << i).collect();
        assert!(matches!(fit_almost_polynomial(&exp, prime(2), 2), Err(Error::Fit(_))));
    }

    #[test]
    fn gamma_estimates() {
        let seq: Vec<u64> = (0..40).map(|i| binom(i + 2, 2)).collect();
        let g = gamma_degree(&seq, None, Some(prime(2))).unwrap();
        assert_eq!(g.exact, Some(2));
        let g = gamma_degree(&seq, None, None).unwrap();
        assert!(g.exact.is_none() && g.value > 1.5 && g.value < 2.5);
        assert!(gamma_degree(&[0; 20], None, None).is_err());
        let s = loglog_slope(&[(4.0, 2.0), (16.0, 4.0), (64.0, 8.0)]).unwrap();
        assert!((s - 0.5).abs() < 1e-12);
    }
}
