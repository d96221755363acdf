use serde_json::{json, Value};

use super::CoverError;
use crate::arith::{BPoly, Scalar};
use crate::series::{laurent_branches_at_infinity, Series, SeriesError};

/// `y_expr = (u - c'_0) / c'_{-m}` and the expansion data it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization<S> {
    pub y_expr: BPoly<S>,
    pub m: usize,
    /// Leading and constant coefficients of the seed along its pole branch.
    pub seed_c_minus_m: S,
    pub seed_c_0: S,
    /// Index of the pole branch among the sorted branches of `F0` at infinity.
    pub pole_branch: usize,
    pub pole_branch_expansion: Series<S>,
}

impl<S: Scalar> Normalization<S> {
    pub fn is_identity(&self) -> bool {
        self.seed_c_minus_m.is_one() && self.seed_c_0.is_zero()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "y_expr": self.y_expr.display_with("x", "y0"),
            "m": self.m,
            "seed_c_minus_m": self.seed_c_minus_m.to_json(),
            "seed_c_0": self.seed_c_0.to_json(),
            "pole_branch": self.pole_branch,
            "pole_branch_expansion": self.pole_branch_expansion.to_json(),
        })
    }
}

/// Rescales the seed `u(x, y0)` so that along its unique pole branch at
/// infinity it expands as `t^-m + 0 + O(t)`. With `m = None` the pole order
/// of the seed is taken as `m`.
///
/// ```
/// use covercert::arith::{int, rat, BPoly};
/// use covercert::cover::normalize_at_infinity;
///
/// let f0 = BPoly::from_matrix(&[vec![int(1), int(0), int(1)], vec![int(0)], vec![int(-1)]]);
/// let u = &BPoly::y() + &BPoly::x();
/// let nrm = normalize_at_infinity(&f0, &u, Some(1)).unwrap();
/// assert_eq!((nrm.seed_c_minus_m.clone(), nrm.seed_c_0.clone()), (int(2), int(0)));
/// assert_eq!(nrm.y_expr, u.scale(&rat(1, 2)));
/// ```
pub fn normalize_at_infinity<S: Scalar>(
    f0: &BPoly<S>,
    u: &BPoly<S>,
    m: Option<usize>,
) -> Result<Normalization<S>, CoverError> {
    normalize_at_infinity_capped(f0, u, m, DEFAULT_PREC_CAP)
}

/// Largest number of Laurent terms tried before giving up.
pub const DEFAULT_PREC_CAP: usize = 1024;

/// As [`normalize_at_infinity`], with an explicit cap on the expansion
/// precision.
pub fn normalize_at_infinity_capped<S: Scalar>(
    f0: &BPoly<S>,
    u: &BPoly<S>,
    m: Option<usize>,
    cap: usize,
) -> Result<Normalization<S>, CoverError> {
    let lc = f0.lc_y();
    if f0.is_zero() || lc.deg() != 0 {
        return Err(CoverError::NotMonic);
    }
    let f0 = f0.scale(&lc.lc().try_inv()?);
    let x = Series::monomial(S::one(), -1);
    let mut prec = u.deg_x() + f0.deg_x() * u.deg_y().max(1) + 4;
    loop {
        if prec > cap {
            return Err(SeriesError::InsufficientPrecision(cap as i64).into());
        }
        let branches = laurent_branches_at_infinity(&f0, prec)?;
        let vals: Vec<Series<S>> = branches.iter().map(|b| Series::eval_bpoly(u, &x, b)).collect();
        let mut poles = Vec::new();
        let mut undecided = false;
        for (i, v) in vals.iter().enumerate() {
            match v.ord() {
                Ok(Some(k)) if k < 0 => poles.push((i, (-k) as usize)),
                Ok(_) => {}
                Err(SeriesError::IndeterminateOrder(p)) if p <= 0 => undecided = true,
                Err(_) => {}
            }
        }
        if undecided {
            prec *= 2;
            continue;
        }
        if poles.len() != 1 {
            return Err(CoverError::SeedPoles(poles.len()));
        }
        let (idx, order) = poles[0];
        if let Some(mm) = m {
            if mm != order {
                return Err(CoverError::WrongPoleOrder { expected: mm, found: order });
            }
        }
        let v = &vals[idx];
        let Some(c0) = v.coeff(0) else {
            prec *= 2;
            continue;
        };
        let lead = v.coeff(-(order as i64)).expect("leading coefficient is known");
        let y_expr = (u - &BPoly::constant(c0.clone())).scale(&lead.try_inv()?);
        return Ok(Normalization {
            y_expr,
            m: order,
            seed_c_minus_m: lead,
            seed_c_0: c0,
            pole_branch: idx,
            pole_branch_expansion: branches[idx].clone(),
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, Rat};

    fn f0_e1() -> BPoly<Rat> {
        BPoly::from_matrix(&[vec![int(-4), int(0), int(1)], vec![int(0)], vec![int(5)], vec![int(0)], vec![int(-1)]])
    }

    #[test]
    fn second_fixture_seed() {
        // u = y0 + x^2 - 5/2
        let u = BPoly::from_matrix(&[vec![rat(-5, 2), int(1)], vec![int(0)], vec![int(1)]]);
        let nrm = normalize_at_infinity(&f0_e1(), &u, None).unwrap();
        assert_eq!(nrm.m, 2);
        assert_eq!(nrm.seed_c_minus_m, int(2));
        assert_eq!(nrm.seed_c_0, int(-5));
        let expect = BPoly::from_matrix(&[vec![rat(5, 4), rat(1, 2)], vec![int(0)], vec![rat(1, 2)]]);
        assert_eq!(nrm.y_expr, expect);
    }

    #[test]
    fn normalized_seed_is_fixed() {
        let u = BPoly::from_matrix(&[vec![rat(5, 4), rat(1, 2)], vec![int(0)], vec![rat(1, 2)]]);
        let nrm = normalize_at_infinity(&f0_e1(), &u, Some(2)).unwrap();
        assert!(nrm.is_identity());
        assert_eq!(nrm.y_expr, u);
    }

    #[test]
    fn bad_seeds() {
        // y0 alone has a pole on both branches
        assert!(matches!(normalize_at_infinity(&f0_e1(), &BPoly::y(), None), Err(CoverError::SeedPoles(2))));
        let u = BPoly::from_matrix(&[vec![int(0), int(1)], vec![int(0)], vec![int(1)]]);
        assert!(matches!(
            normalize_at_infinity(&f0_e1(), &u, Some(3)),
            Err(CoverError::WrongPoleOrder { expected: 3, found: 2 })
        ));
    }
}
