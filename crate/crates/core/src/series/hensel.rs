//! Newton lifting of power-series roots and the branch data read off them.

use std::cmp::Ordering;

use serde_json::{json, Value};

use super::{Series, SeriesError};
use crate::arith::{BPoly, Scalar, UPoly};

const MAX_NEWTON_STEPS: usize = 200;

fn mul_trunc<S: Scalar>(a: &[S], b: &[S], w: usize) -> Vec<S> {
    let mut out = vec![S::zero(); w.min((a.len() + b.len()).saturating_sub(1))];
    for (i, x) in a.iter().enumerate().take(out.len()) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(out.len() - i) {
            out[i + j] = out[i + j].clone() + x.clone() * y;
        }
    }
    out
}

fn add_into<S: Scalar>(acc: &mut Vec<S>, p: &[S], w: usize) {
    let len = w.min(p.len());
    if acc.len() < len {
        acc.resize(len, S::zero());
    }
    for (i, c) in p.iter().enumerate().take(len) {
        acc[i] = acc[i].clone() + c;
    }
}

/// `f(X, y(X)) mod X^w`.
pub(crate) fn eval_trunc<S: Scalar>(f: &BPoly<S>, y: &[S], w: usize) -> Vec<S> {
    let mut acc: Vec<S> = Vec::new();
    for a in f.ycoeffs().iter().rev() {
        acc = mul_trunc(&acc, y, w);
        add_into(&mut acc, a.coeffs(), w);
    }
    while acc.last().is_some_and(|c| c.is_zero()) {
        acc.pop();
    }
    acc
}

fn ord_of<S: Scalar>(v: &[S]) -> Option<usize> {
    v.iter().position(|c| !c.is_zero())
}

/// A root of `f` in `K[X]` has degree at most
/// `max_j (deg a_j - deg a_n) / (n - j)`, else the leading term cannot cancel.
fn polynomial_root_degree_bound<S: Scalar>(f: &BPoly<S>) -> usize {
    let n = f.deg_y();
    let dn = f.y_coeff(n).degree().unwrap_or(0);
    (0..n)
        .filter_map(|j| f.y_coeff(j).degree().map(|d| d.saturating_sub(dn) / (n - j)))
        .max()
        .unwrap_or(0)
}

/// Unit power series inverse modulo `X^w`.
fn inv_trunc<S: Scalar>(u: &[S], w: usize) -> Vec<S> {
    let inv0 = u[0].try_inv().expect("unit");
    let mut out = vec![inv0.clone()];
    for k in 1..w {
        let mut acc = S::zero();
        for i in 1..=k.min(u.len() - 1) {
            acc = acc + u[i].clone() * &out[k - i];
        }
        out.push(-(acc * &inv0));
    }
    out
}

/// Lifts an approximate root `y0` of `f(X, Y)` to the unique power series
/// root `y` with `ord(y - y0) > kappa`, correct modulo `X^(n+1)`.
///
/// Requires `ord f(X, y0) > 2 kappa` and `ord f'_Y(X, y0) = kappa`. An exact
/// polynomial root is returned as an exact series.
///
/// ```
/// use covercert::arith::{int, rat, BPoly, UPoly};
/// use covercert::series::hensel_lift;
///
/// // Y^2 - (1 + X)
/// let f = BPoly::from_matrix(&[vec![int(-1), int(0), int(1)], vec![int(-1)]]);
/// let y = hensel_lift(&f, &UPoly::constant(int(1)), 0, 3).unwrap();
/// assert_eq!(y.coeffs_range(0, 3).unwrap(), vec![int(1), rat(1, 2), rat(-1, 8), rat(1, 16)]);
/// assert_eq!(y.prec(), Some(4));
/// ```
pub fn hensel_lift<S: Scalar>(f: &BPoly<S>, y0: &UPoly<S>, kappa: usize, n: usize) -> Result<Series<S>, SeriesError> {
    let fy = f.derivative_y();
    let r0 = f.eval_y_poly(y0);
    if r0.is_zero() {
        return Ok(Series::from_upoly(y0));
    }
    if r0.ord().unwrap() <= 2 * kappa {
        return Err(SeriesError::HypothesisFailed(format!(
            "ord f(X, y0) = {} is not above 2*kappa = {}",
            r0.ord().unwrap(),
            2 * kappa
        )));
    }
    let d0 = fy.eval_y_poly(y0);
    if d0.ord() != Some(kappa) {
        return Err(SeriesError::HypothesisFailed(format!(
            "ord f'_Y(X, y0) = {} differs from kappa = {kappa}",
            d0.ord().map_or("infinity".to_string(), |o| o.to_string())
        )));
    }
    let keep = n + 1;
    let w = keep + kappa;
    let mut y: Vec<S> = y0.coeffs().to_vec();
    y.truncate(keep.max(y0.coeffs().len()));
    // correct modulo X^t; one step at precision t' + kappa reaches 2t - kappa
    let mut t = kappa + 1;
    while t < keep {
        let next = (2 * t - kappa).min(keep);
        let r = eval_trunc(f, &y, next + kappa);
        if !r.is_empty() {
            let d = eval_trunc(&fy, &y, next + kappa);
            let rr: Vec<S> = r.get(kappa..).map(<[S]>::to_vec).unwrap_or_default();
            let q = mul_trunc(&rr, &inv_trunc(&d[kappa..], next), next);
            if y.len() < next {
                y.resize(next, S::zero());
            }
            for (i, c) in q.iter().enumerate() {
                y[i] = y[i].clone() - c;
            }
            while y.last().is_some_and(|c| c.is_zero()) {
                y.pop();
            }
        }
        t = next;
    }
    for _ in 0..MAX_NEWTON_STEPS {
        let r = eval_trunc(f, &y, w);
        if r.is_empty() {
            if y.len() <= polynomial_root_degree_bound(f) + 1 && f.eval_y_poly(&UPoly::new(y.clone())).is_zero() {
                return Ok(Series::exact(0, y));
            }
            return Ok(Series::new(0, y, Some(keep as i64)));
        }
        let d = eval_trunc(&fy, &y, w);
        debug_assert_eq!(ord_of(&d), Some(kappa));
        debug_assert!(ord_of(&r).unwrap() > kappa);
        let rr: Vec<S> = r.get(kappa..).map(<[S]>::to_vec).unwrap_or_default();
        let dd: Vec<S> = d[kappa..].to_vec();
        let q = mul_trunc(&rr, &inv_trunc(&dd, keep), keep);
        if y.len() < keep {
            y.resize(keep, S::zero());
        }
        for (i, c) in q.iter().enumerate() {
            y[i] = y[i].clone() - c;
        }
        while y.last().is_some_and(|c| c.is_zero()) {
            y.pop();
        }
    }
    Err(SeriesError::NoConvergence)
}

/// A power-series (or Laurent) root together with its `kappa` and its
/// segment: the coefficients from the leading exponent up to `kappa` (shifted
/// by the pole order at infinity).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchData<S> {
    pub branch: Series<S>,
    pub kappa: usize,
    pub segment: Vec<S>,
}

impl<S: Scalar> BranchData<S> {
    pub fn to_json(&self) -> Value {
        json!({
            "branch": self.branch.to_json(),
            "kappa": self.kappa,
            "segment": self.segment.iter().map(Scalar::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Descending `kappa`, ties broken lexicographically on segments.
pub(crate) fn sort_branches<S: Scalar>(v: &mut [BranchData<S>]) {
    v.sort_by(|a, b| {
        b.kappa.cmp(&a.kappa).then_with(|| {
            for (x, y) in a.segment.iter().zip(&b.segment) {
                let c = x.canonical_cmp(y);
                if c != Ordering::Equal {
                    return c;
                }
            }
            a.segment.len().cmp(&b.segment.len())
        })
    });
}

/// `kappa = ord f'_Y(X, y)` and the segment of `y` through `X^kappa`, with
/// both properties of the segment re-checked exactly.
pub fn branch_kappa<S: Scalar>(f: &BPoly<S>, y: &Series<S>) -> Result<BranchData<S>, SeriesError> {
    let x = Series::monomial(S::one(), 1);
    let fy = Series::eval_bpoly(&f.derivative_y(), &x, y);
    let kappa = match fy.ord()? {
        Some(k) if k >= 0 => k as usize,
        Some(k) => return Err(SeriesError::HypothesisFailed(format!("negative order {k}"))),
        None => return Err(SeriesError::HypothesisFailed("f'_Y vanishes on the branch".into())),
    };
    let segment = y.coeffs_range(0, kappa as i64)?;
    let seg = UPoly::new(segment.clone());
    let r = f.eval_y_poly(&seg);
    if r.ord().is_some_and(|o| o <= 2 * kappa) {
        return Err(SeriesError::HypothesisFailed("segment residual too large".into()));
    }
    if f.derivative_y().eval_y_poly(&seg).ord() != Some(kappa) {
        return Err(SeriesError::HypothesisFailed("segment changes ord f'_Y".into()));
    }
    Ok(BranchData { branch: y.clone(), kappa, segment })
}

/// Least `k` where the two segments differ.
pub fn separation_index<S: Scalar>(a: &[S], b: &[S]) -> Result<usize, SeriesError> {
    a.iter()
        .zip(b)
        .position(|(x, y)| x != y)
        .ok_or(SeriesError::PrefixCoincidence)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, Rat};

    fn bp(rows: &[&[i64]]) -> BPoly<Rat> {
        BPoly::from_matrix(&rows.iter().map(|r| r.iter().map(|&c| int(c)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn exact_root_stays_exact() {
        // Y - X
        let f = bp(&[&[0, 1], &[-1]]);
        let y = hensel_lift(&f, &UPoly::new(vec![int(0), int(1)]), 0, 5).unwrap();
        assert!(y.is_exact());
        assert_eq!(y.coeff(1), Some(int(1)));
    }

    #[test]
    fn kappa_one_lift() {
        // Y^2 - X^2 (1 + X), root X sqrt(1 + X)
        let f = bp(&[&[0, 0, 1], &[0], &[-1], &[-1]]);
        let y0 = UPoly::new(vec![int(0), int(1)]);
        let y = hensel_lift(&f, &y0, 1, 4).unwrap();
        assert_eq!(y.coeffs_range(0, 4).unwrap(), vec![int(0), int(1), rat(1, 2), rat(-1, 8), rat(1, 16)]);
        let b = branch_kappa(&f, &y).unwrap();
        assert_eq!(b.kappa, 1);
        assert_eq!(b.segment, vec![int(0), int(1)]);
    }

    #[test]
    fn hypotheses_are_checked() {
        let f = bp(&[&[0, 0, 1], &[-1]]);
        assert!(matches!(
            hensel_lift(&f, &UPoly::zero(), 0, 3),
            Err(SeriesError::HypothesisFailed(_))
        ));
    }

    #[test]
    fn separation() {
        assert_eq!(separation_index(&[int(1), int(2)], &[int(1), int(3)]).unwrap(), 1);
        assert!(matches!(separation_index(&[int(1)], &[int(1), int(3)]), Err(SeriesError::PrefixCoincidence)));
    }
}
