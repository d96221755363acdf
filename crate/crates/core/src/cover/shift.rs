use serde_json::{json, Value};

use super::CoverError;
use crate::arith::{BPoly, Scalar};
use crate::heights::{height_vector, transform_rho, LogValue};

/// The integer `rho` of least `|rho|` (positive first on ties) outside
/// `bad_xs` with `|rho| <= m^3`.
pub fn find_rho<S: Scalar>(bad_xs: &[S], m: usize) -> Result<i64, CoverError> {
    let cap = (m as i64).pow(3);
    for r in 0..=cap {
        for cand in if r == 0 { vec![0] } else { vec![r, -r] } {
            if !bad_xs.contains(&S::from_i64(cand)) {
                return Ok(cand);
            }
        }
    }
    Err(CoverError::NoAdmissibleShift(cap))
}

/// The model in the coordinate `(x - rho)^-1` with its branch points, and
/// the height bounds `h_new <= h + log(2 max(1, |rho|)) <= h + 3 log(2m)`.
#[derive(Clone, Debug)]
pub struct GeneralCase<S> {
    pub rho: i64,
    pub f: BPoly<S>,
    pub alphas: Vec<S>,
    pub h_before: LogValue,
    pub h_after: LogValue,
    pub tight_bound: LogValue,
    pub bound: LogValue,
    pub poly_check: crate::heights::BoundCheck,
}

impl<S: Scalar> GeneralCase<S> {
    pub fn holds(&self) -> Option<bool> {
        Some(self.h_after.le(&self.tight_bound)? && self.tight_bound.le(&self.bound)?)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rho": self.rho,
            "f": self.f.to_string(),
            "alphas": self.alphas.iter().map(Scalar::to_json).collect::<Vec<_>>(),
            "h_before": self.h_before.to_json(),
            "h_after": self.h_after.to_json(),
            "tight_bound": self.tight_bound.to_json(),
            "bound": self.bound.to_json(),
            "holds": self.holds(),
        })
    }
}

fn max_height<S: Scalar>(v: &[S]) -> Result<LogValue, CoverError> {
    let mut best = LogValue::zero();
    for a in v {
        let h = height_vector(std::slice::from_ref(a))?;
        if h.compare(&best) == Some(std::cmp::Ordering::Greater) {
            best = h;
        }
    }
    Ok(best)
}

/// Moves the point `rho` to infinity: `x -> (x - rho)^-1`.
///
/// ```
/// use covercert::arith::{int, BPoly};
/// use covercert::cover::general_case_transform;
///
/// // Y - X with rho = 1 becomes X Y - Y - 1
/// let g = &BPoly::y() - &BPoly::x();
/// let gc = general_case_transform(&g, 1, &[], &[int(0)]).unwrap();
/// assert_eq!(gc.rho, 1);
/// assert_eq!(gc.f.to_string(), "X*Y - Y - 1");
/// ```
pub fn general_case_transform<S: Scalar>(
    g: &BPoly<S>,
    m: usize,
    alphas: &[S],
    bad_xs: &[S],
) -> Result<GeneralCase<S>, CoverError> {
    let mut bad: Vec<S> = bad_xs.to_vec();
    bad.extend(alphas.iter().cloned());
    let rho = find_rho(&bad, m)?;
    let rs = S::from_i64(rho);
    let t = transform_rho(g, m, &rs)?;
    let mut new_alphas = Vec::with_capacity(alphas.len());
    for a in alphas {
        new_alphas.push((a.clone() - &rs).try_inv()?);
    }
    let h_before = max_height(alphas)?;
    let h_after = max_height(&new_alphas)?;
    let tight_bound = &h_before + &LogValue::log_int(2 * rho.abs().max(1));
    let bound = &h_before + &LogValue::log_int(2 * m as i64).scale_int(3);
    Ok(GeneralCase { rho, f: t.f, alphas: new_alphas, h_before, h_after, tight_bound, bound, poly_check: t.check })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, Rat};

    #[test]
    fn rho_scan() {
        assert_eq!(find_rho(&[int(0)], 1).unwrap(), 1);
        assert_eq!(find_rho(&[int(1), int(-1), int(2)], 2).unwrap(), 0);
        let bad: Vec<Rat> = (-8..=8).filter(|&k| k != -7).map(int).collect();
        assert_eq!(find_rho(&bad, 2).unwrap(), -7);
        let all: Vec<Rat> = (-1..=1).map(int).collect();
        assert!(matches!(find_rho(&all, 1), Err(CoverError::NoAdmissibleShift(1))));
    }

    #[test]
    fn shifted_branch_points() {
        let f = BPoly::from_matrix(&[vec![rat(1, 4), int(0), int(1)], vec![int(0), int(-1)]]);
        let bad: Vec<Rat> = vec![int(0)];
        // with m = 1 only -1, 0, 1 are candidates and all are bad
        assert!(general_case_transform(&f, 1, &[int(1), int(-1)], &bad).is_err());
        let gc = general_case_transform(&f, 2, &[int(1), int(-1)], &bad).unwrap();
        assert_eq!(gc.rho, 2);
        assert_eq!(gc.alphas, vec![int(-1), rat(-1, 3)]);
        assert_eq!(gc.h_after, LogValue::log_int(3));
        assert_eq!(gc.holds(), Some(true));
        assert_eq!(gc.poly_check.holds(), Some(true));
    }
}
