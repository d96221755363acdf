//! All power-series roots of a polynomial at a finite point, and the
//! split-or-ramified verdict.

use serde_json::{json, Value};

use super::hensel::{hensel_lift, sort_branches};
use super::{branch_kappa, BranchData, Series, SeriesError};
use crate::arith::{discriminant_y, BPoly, Scalar, UPoly};

/// Power-series roots of `F(Z, Y)` found by the finder, and whether some
/// residual equation had roots outside the scalar field.
pub(crate) struct Found<S> {
    pub roots: Vec<Series<S>>,
    pub outside_field: bool,
}

/// Every root `y` in `K[[Z]]` of `F` (monic or not), to relative precision
/// `prec`, looking at most `depth` coefficients deep for separating repeated
/// constant terms.
pub(crate) fn power_series_roots<S: Scalar>(f: &BPoly<S>, prec: usize, depth: usize) -> Result<Found<S>, SeriesError> {
    let mut out = Found { roots: Vec::new(), outside_field: false };
    if f.is_zero() {
        return Err(SeriesError::HypothesisFailed("zero polynomial".into()));
    }
    let f = f.div_xk(f.x_adic_content());
    let f0 = UPoly::new(f.ycoeffs().iter().map(|p| p.coeff(0)).collect());
    if f0.deg() == 0 {
        return Ok(out);
    }
    let split = S::split_roots(&f0)?;
    if !split.is_complete() {
        out.outside_field = true;
    }
    for (c, mult) in split.roots {
        if mult == 1 {
            out.roots.push(hensel_lift(&f, &UPoly::constant(c), 0, prec)?);
            continue;
        }
        if depth == 0 || prec == 0 {
            continue;
        }
        // Y = c + Z W
        let sub = BPoly::new(vec![UPoly::constant(c.clone()), UPoly::new(vec![S::zero(), S::one()])]);
        let q = f.compose_y(&sub);
        let inner = power_series_roots(&q, prec - 1, depth - 1)?;
        out.outside_field |= inner.outside_field;
        for w in inner.roots {
            out.roots.push(&Series::constant(c.clone()) + &w.shift(1));
        }
    }
    Ok(out)
}

/// What happens above a finite point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BranchVerdict<S> {
    /// `n` power-series branches with `sum kappa = ord d`.
    Split(Vec<BranchData<S>>),
    /// Fewer than `n` branches in `K[[Z]]`, or the kappa sum falls short.
    Ramified { found: usize, kappa_sum: usize, ord_disc: usize },
}

impl<S: Scalar> BranchVerdict<S> {
    pub fn to_json(&self) -> Value {
        match self {
            BranchVerdict::Split(b) => json!({
                "verdict": "split",
                "branches": b.iter().map(BranchData::to_json).collect::<Vec<_>>(),
            }),
            BranchVerdict::Ramified { found, kappa_sum, ord_disc } => json!({
                "verdict": "ramified",
                "found": found,
                "kappa_sum": kappa_sum,
                "ord_disc": ord_disc,
            }),
        }
    }
}

/// The branches of a `Y`-monic `f` at `X = beta`, in the local parameter
/// `Z = X - beta`, sorted by descending `kappa`.
///
/// ```
/// use covercert::arith::{int, rat, BPoly};
/// use covercert::series::{all_branches_at, BranchVerdict};
///
/// // Y^2 - X Y + 1/4 ramifies over X = 1
/// let f = BPoly::from_matrix(&[vec![rat(1, 4), int(0), int(1)], vec![int(0), int(-1)]]);
/// assert!(matches!(all_branches_at(&f, &int(1)).unwrap(), BranchVerdict::Ramified { .. }));
/// ```
pub fn all_branches_at<S: Scalar>(f: &BPoly<S>, beta: &S) -> Result<BranchVerdict<S>, SeriesError> {
    if !f.is_monic_in_y() {
        return Err(SeriesError::NotMonic);
    }
    let n = f.deg_y();
    let d = discriminant_y(f);
    if d.is_zero() {
        return Err(SeriesError::HypothesisFailed("discriminant vanishes identically".into()));
    }
    let ord_disc = d.root_multiplicity(beta);
    let g = f.shift_x(beta);
    let found = power_series_roots(&g, ord_disc + 2, ord_disc + 1)?;
    let mut branches = Vec::with_capacity(found.roots.len());
    for y in &found.roots {
        branches.push(branch_kappa(&g, y)?);
    }
    let kappa_sum: usize = branches.iter().map(|b| b.kappa).sum();
    if branches.len() == n && kappa_sum == ord_disc {
        sort_branches(&mut branches);
        return Ok(BranchVerdict::Split(branches));
    }
    if found.outside_field {
        return Err(SeriesError::RootsOutsideField(format!("above X = {beta}")));
    }
    Ok(BranchVerdict::Ramified { found: branches.len(), kappa_sum, ord_disc })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, Rat};

    fn bp(rows: &[&[i64]]) -> BPoly<Rat> {
        BPoly::from_matrix(&rows.iter().map(|r| r.iter().map(|&c| int(c)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn node_splits() {
        // (Y - X)(Y + X) = Y^2 - X^2 at X = 0: kappas (1, 1), ord d = 2
        let f = bp(&[&[0, 0, 1], &[0], &[-1]]);
        let BranchVerdict::Split(b) = all_branches_at(&f, &int(0)).unwrap() else { panic!() };
        assert_eq!(b.iter().map(|x| x.kappa).collect::<Vec<_>>(), vec![1, 1]);
        assert_eq!(b[0].segment, vec![int(0), int(-1)]);
        assert_eq!(b[1].segment, vec![int(0), int(1)]);
    }

    #[test]
    fn tangency_needs_depth() {
        // (Y - X)(Y - X^2): separation at order 1
        let f = BPoly::new(vec![
            UPoly::new(vec![int(0), int(0), int(0), int(1)]),
            UPoly::new(vec![int(0), int(-1), int(-1)]),
            UPoly::one(),
        ]);
        let BranchVerdict::Split(b) = all_branches_at(&f, &int(0)).unwrap() else { panic!() };
        assert_eq!(b.len(), 2);
        assert_eq!(b[0].kappa + b[1].kappa, 2);
    }

    #[test]
    fn cusp_is_ramified() {
        // Y^2 - X^3
        let f = bp(&[&[0, 0, 1], &[0], &[0], &[-1]]);
        assert!(matches!(all_branches_at(&f, &int(0)).unwrap(), BranchVerdict::Ramified { .. }));
    }

    #[test]
    fn irrational_constants() {
        // Y^2 - 2 - X^2 over Q at X = 0 has no branch in Q[[X]]
        let f = bp(&[&[-2, 0, 1], &[0], &[-1]]);
        assert!(matches!(all_branches_at(&f, &int(0)), Err(SeriesError::RootsOutsideField(_))));
    }
}
