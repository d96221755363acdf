//! Laurent expansions of the branches over the point at infinity.

use serde_json::{json, Value};

use super::branches::power_series_roots;
use super::hensel::{hensel_lift, sort_branches};
use super::{branch_kappa, BranchData, Series, SeriesError};
use crate::arith::{discriminant_y, BPoly, Scalar, UPoly};

/// `g(T, Y) = T^m f(1/T, Y)`.
pub fn g_at_infinity<S: Scalar>(f: &BPoly<S>, m: usize) -> BPoly<S> {
    f.reverse_x(m)
}

/// `h(T, Y) = T^(m(n+1)) f(1/T, T^(-m) Y)`.
pub fn h_at_infinity<S: Scalar>(f: &BPoly<S>, m: usize) -> BPoly<S> {
    let n = f.deg_y();
    weighted_reverse(f, m, m * (n + 1))
}

/// `T^top f(1/T, T^(-e) Y)`; every exponent `top - i - e j` must be `>= 0`.
fn weighted_reverse<S: Scalar>(f: &BPoly<S>, e: usize, top: usize) -> BPoly<S> {
    let mut rows = Vec::new();
    for (j, p) in f.ycoeffs().iter().enumerate() {
        let mut c = vec![S::zero(); top + 1];
        for (i, a) in p.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let k = top.checked_sub(i + e * j).expect("weight too small");
            c[k] = a.clone();
        }
        rows.push(UPoly::new(c));
    }
    BPoly::new(rows)
}

/// The `n` branches at infinity of a `Y`-monic plane model with
/// `deg_X f = m`, `deg_Y f = n`: the pole branch `y_1` (Laurent, leading
/// term `c_{-m} t^{-m}`) first, then `y_2..y_n` in `K[[t]]` sorted by
/// descending `kappa`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfinityData<S> {
    pub m: usize,
    /// `kappa` of the pole branch is `ord h'_Y(t, t^m y_1)`; its segment holds
    /// the coefficients of `t^-m, ..., t^(kappa - m)`.
    pub pole: BranchData<S>,
    pub finite: Vec<BranchData<S>>,
    pub c_minus_m: S,
    pub c_0: S,
    /// `ord g'_Y(t, y_1)`, possibly negative.
    pub g_order: i64,
}

impl<S: Scalar> InfinityData<S> {
    /// `y_1 = t^-m + O(t)`.
    pub fn normalized(&self) -> bool {
        self.c_minus_m.is_one() && self.c_0.is_zero()
    }

    pub fn n(&self) -> usize {
        1 + self.finite.len()
    }

    /// `kappa_1 = m(n-1) + ord g'_Y(t, y_1)` by the chain rule.
    pub fn chain_rule_holds(&self) -> bool {
        self.pole.kappa as i64 == (self.m * (self.n() - 1)) as i64 + self.g_order
    }

    pub fn kappas(&self) -> Vec<usize> {
        std::iter::once(self.pole.kappa).chain(self.finite.iter().map(|b| b.kappa)).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "pole": self.pole.to_json(),
            "finite": self.finite.iter().map(BranchData::to_json).collect::<Vec<_>>(),
            "c_minus_m": self.c_minus_m.to_json(),
            "c_0": self.c_0.to_json(),
            "normalized": self.normalized(),
            "g_order": self.g_order,
            "chain_rule_holds": self.chain_rule_holds(),
        })
    }
}

/// Expansions of the branches of `f` at infinity.
///
/// ```
/// use covercert::arith::{int, rat, BPoly};
/// use covercert::series::expansions_at_infinity;
///
/// // Y^2 - X Y + 1/4
/// let f = BPoly::from_matrix(&[vec![rat(1, 4), int(0), int(1)], vec![int(0), int(-1)]]);
/// let inf = expansions_at_infinity(&f).unwrap();
/// assert_eq!(inf.kappas(), vec![1, 0]);
/// assert!(inf.normalized());
/// assert_eq!(inf.pole.branch.coeffs_range(-1, 1).unwrap(), vec![int(1), int(0), rat(-1, 4)]);
/// ```
pub fn expansions_at_infinity<S: Scalar>(f: &BPoly<S>) -> Result<InfinityData<S>, SeriesError> {
    if !f.is_monic_in_y() {
        return Err(SeriesError::NotMonic);
    }
    let (m, n) = (f.deg_x(), f.deg_y());
    if m == 0 || n == 0 {
        return Err(SeriesError::WrongPoleShape("X-degree and Y-degree must be positive".into()));
    }
    let a = f.coeff(m, n - 1);
    if a.is_zero() {
        return Err(SeriesError::WrongPoleShape(format!("coefficient of X^{m} Y^{} vanishes", n - 1)));
    }

    // pole branch: w = t^m y_1 is a simple root of h / t^m at w(0) = -a
    let h = h_at_infinity(f, m);
    let h_red = h.div_xk(m);
    let g = g_at_infinity(f, m);
    let mut prec = m * n + m + 4;
    let (pole, g_order) = loop {
        let w = hensel_lift(&h_red, &UPoly::constant(-a.clone()), 0, prec)?;
        let x = Series::monomial(S::one(), 1);
        let kappa = match Series::eval_bpoly(&h.derivative_y(), &x, &w).ord() {
            Ok(Some(k)) => k as usize,
            Ok(None) => return Err(SeriesError::HypothesisFailed("h'_Y vanishes on the pole branch".into())),
            Err(_) => {
                prec *= 2;
                continue;
            }
        };
        let y1 = w.shift(-(m as i64));
        let g_order = match Series::eval_bpoly(&g.derivative_y(), &x, &y1).ord() {
            Ok(Some(k)) => k,
            Ok(None) => return Err(SeriesError::HypothesisFailed("g'_Y vanishes on the pole branch".into())),
            Err(_) => {
                prec *= 2;
                continue;
            }
        };
        if w.prec().is_some_and(|p| p <= kappa as i64) {
            prec *= 2;
            continue;
        }
        let segment = w.coeffs_range(0, kappa as i64)?;
        break (BranchData { branch: y1, kappa, segment }, g_order);
    };
    let c_minus_m = pole.segment[0].clone();
    let c_0 = pole.branch.coeff(0).ok_or(SeriesError::InsufficientPrecision(0))?;

    let dg = discriminant_y(&g);
    let ord_dg = dg.ord().ok_or_else(|| SeriesError::HypothesisFailed("discriminant vanishes identically".into()))?;
    let found = power_series_roots(&g, ord_dg + 2, ord_dg + 1)?;
    let mut finite = Vec::with_capacity(found.roots.len());
    for y in &found.roots {
        finite.push(branch_kappa(&g, y)?);
    }
    if finite.len() != n - 1 {
        if found.outside_field {
            return Err(SeriesError::RootsOutsideField("above infinity".into()));
        }
        return Err(SeriesError::RamifiedAtInfinity(format!(
            "{} of {} regular branches lie in K[[t]]",
            finite.len(),
            n - 1
        )));
    }
    sort_branches(&mut finite);
    Ok(InfinityData { m, pole, finite, c_minus_m, c_0, g_order })
}

/// All `n` Laurent branches at infinity of a `Y`-monic `F(x, y)`, as series in
/// `t = 1/x`.
pub fn laurent_branches_at_infinity<S: Scalar>(f: &BPoly<S>, prec: usize) -> Result<Vec<Series<S>>, SeriesError> {
    if !f.is_monic_in_y() {
        return Err(SeriesError::NotMonic);
    }
    let n = f.deg_y();
    // pole order of every branch is at most e
    let e = (0..n)
        .map(|j| {
            let dj = f.y_coeff(j).degree().unwrap_or(0);
            dj.div_ceil(n - j)
        })
        .max()
        .unwrap_or(0);
    let gg = weighted_reverse(f, e, e * n);
    let dg = discriminant_y(&gg);
    let ord_dg = dg.ord().ok_or_else(|| SeriesError::HypothesisFailed("discriminant vanishes identically".into()))?;
    let found = power_series_roots(&gg, prec + e, ord_dg + 1)?;
    if found.roots.len() != n {
        if found.outside_field {
            return Err(SeriesError::RootsOutsideField("above infinity".into()));
        }
        return Err(SeriesError::RamifiedAtInfinity(format!("{} of {n} branches are Laurent series", found.roots.len())));
    }
    let mut out: Vec<Series<S>> = found.roots.into_iter().map(|w| w.shift(-(e as i64))).collect();
    out.sort_by(|a, b| {
        let ka = a.ord().ok().flatten().unwrap_or(i64::MAX);
        let kb = b.ord().ok().flatten().unwrap_or(i64::MAX);
        ka.cmp(&kb).then_with(|| {
            let ca = a.coeff(ka).unwrap_or_else(S::zero);
            let cb = b.coeff(kb).unwrap_or_else(S::zero);
            ca.canonical_cmp(&cb)
        })
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, Rat};

    fn e1() -> BPoly<Rat> {
        // Y^2 - (X^2 + 5/2) Y + 5/2 X^2 + 9/16
        BPoly::from_matrix(&[vec![rat(9, 16), rat(-5, 2), int(1)], vec![int(0)], vec![rat(5, 2), int(-1)]])
    }

    #[test]
    fn pole_branch_of_second_example() {
        let inf = expansions_at_infinity(&e1()).unwrap();
        assert_eq!(inf.kappas(), vec![2, 0]);
        assert!(inf.normalized());
        assert!(inf.chain_rule_holds());
        assert_eq!(inf.g_order, 0);
        assert_eq!(inf.pole.segment.len(), 3);
    }

    #[test]
    fn wrong_pole_shape() {
        // Y^2 - X^2 - 1 has no X^m Y^(n-1) term
        let f = BPoly::from_matrix(&[vec![int(-1), int(0), int(1)], vec![int(0)], vec![int(-1)]]);
        assert!(matches!(expansions_at_infinity(&f), Err(SeriesError::WrongPoleShape(_))));
    }

    #[test]
    fn laurent_branches_of_hyperbola() {
        // y^2 - x^2 + 1: y = +-(1/t)(1 - t^2/2 - ...)
        let f = BPoly::from_matrix(&[vec![int(1), int(0), int(1)], vec![int(0)], vec![int(-1)]]);
        let br = laurent_branches_at_infinity(&f, 4).unwrap();
        assert_eq!(br.len(), 2);
        assert_eq!(br[0].coeffs_range(-1, 1).unwrap(), vec![int(-1), int(0), rat(1, 2)]);
        assert_eq!(br[1].coeffs_range(-1, 1).unwrap(), vec![int(1), int(0), rat(-1, 2)]);
    }
}
