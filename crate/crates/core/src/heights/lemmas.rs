//! Height inequalities for products, substitutions, determinants, the
//! `rho`-transform and relative discriminants. Each calculator returns both
//! sides; the inequality `lhs <= rhs` is a theorem, so a failure means a bug.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::height::{height_algebraic, height_system, height_vector, primitive_integer_form, PolyHeight};
use super::{HeightError, LogValue};
use crate::arith::{mpoly_det, trial_factor, BPoly, MPoly, Rat, Scalar, UPoly};

/// The two sides of a height inequality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub lhs: LogValue,
    pub rhs: LogValue,
}

impl BoundCheck {
    /// `Some(true)` when `lhs <= rhs` is certified.
    pub fn holds(&self) -> Option<bool> {
        self.lhs.le(&self.rhs)
    }

    pub fn is_tight(&self) -> bool {
        self.lhs.compare(&self.rhs) == Some(Ordering::Equal)
    }
}

fn ln(n: usize) -> LogValue {
    LogValue::log_int(n as i64)
}

fn arity<S: Scalar>(ps: &[&MPoly<S>]) -> usize {
    ps.iter().flat_map(|p| p.vars()).collect::<BTreeSet<_>>().len()
}

/// The larger of two values; an undecided pair yields their joint hull.
pub fn max_log(a: &LogValue, b: &LogValue) -> LogValue {
    match a.compare(b) {
        Some(Ordering::Less) => b.clone(),
        Some(_) => a.clone(),
        None => {
            let (alo, ahi) = a.enclosure(96);
            let (blo, bhi) = b.enclosure(96);
            LogValue::interval(alo.max(blo), ahi.max(bhi))
        }
    }
}

/// `h(prod f_i) <= sum h(f_i) + log(n+1) sum_{i<s} deg f_i`, with `n` the
/// number of variables that occur and `deg` the total degree.
pub fn bound_product<S: Scalar>(fs: &[MPoly<S>]) -> Result<BoundCheck, HeightError> {
    if fs.is_empty() || fs.iter().any(MPoly::is_zero) {
        return Err(HeightError::ZeroPolynomial);
    }
    let n = arity(&fs.iter().collect::<Vec<_>>());
    let prod = fs.iter().skip(1).fold(fs[0].clone(), |acc, f| &acc * f);
    let lhs = prod.height()?;
    let mut rhs = LogValue::zero();
    for f in fs {
        rhs = rhs + f.height()?;
    }
    let degs: usize = fs[..fs.len() - 1].iter().map(|f| f.total_degree().unwrap_or(0)).sum();
    rhs = rhs + ln(n + 1).scale_int(degs);
    Ok(BoundCheck { lhs, rhs })
}

/// `h(g(f_1, ..., f_s, T)) <= h(g) + (h + log(s+1) + d log(n+1)) deg_Y g`,
/// where `subs` maps the variables `Y_i` of `g` to `f_i`, the remaining
/// variables `T` of `g` pass through, `h` is the joint height and `d` the
/// largest total degree of the `f_i`, and `n` counts their variables.
pub fn bound_compose<S: Scalar>(g: &MPoly<S>, subs: &BTreeMap<u32, MPoly<S>>) -> Result<BoundCheck, HeightError> {
    if g.is_zero() || subs.is_empty() {
        return Err(HeightError::ZeroPolynomial);
    }
    let fvars: BTreeSet<u32> = subs.values().flat_map(|f| f.vars()).collect();
    let passthrough: BTreeSet<u32> = g.vars().into_iter().filter(|v| !subs.contains_key(v)).collect();
    if !fvars.is_disjoint(&passthrough) {
        return Err(HeightError::OverlappingVariables);
    }
    let comp = g.substitute(subs);
    if comp.is_zero() {
        return Err(HeightError::DegenerateSubstitution);
    }
    let fs: Vec<MPoly<S>> = subs.values().cloned().collect();
    let h = height_system(&fs)?;
    let d = fs.iter().map(|f| f.total_degree().unwrap_or(0)).max().unwrap_or(0);
    let n = fvars.len();
    let deg_y = g.degree_in_vars(|v| subs.contains_key(&v));
    let inner = &(&h + &ln(subs.len() + 1)) + &ln(n + 1).scale_int(d);
    let rhs = &g.height()? + &inner.scale_int(deg_y);
    Ok(BoundCheck { lhs: comp.height()?, rhs })
}

/// `h(det) <= s (h + log s + d log(n+1))` for an `s x s` matrix whose entries
/// have degree at most `d` and height at most `h`.
pub fn bound_det<S: Scalar>(m: &[Vec<MPoly<S>>]) -> Result<BoundCheck, HeightError> {
    let s = m.len();
    if s == 0 || m.iter().any(|r| r.len() != s) {
        return Err(HeightError::NotSquare);
    }
    let det = mpoly_det(m);
    if det.is_zero() {
        return Err(HeightError::ZeroDeterminant);
    }
    let entries: Vec<&MPoly<S>> = m.iter().flatten().filter(|p| !p.is_zero()).collect();
    let mut h = LogValue::zero();
    for e in &entries {
        h = max_log(&h, &e.height()?);
    }
    let d = entries.iter().map(|p| p.total_degree().unwrap_or(0)).max().unwrap_or(0);
    let n = arity(&entries);
    let rhs = (&(&h + &ln(s)) + &ln(n + 1).scale_int(d)).scale_int(s);
    Ok(BoundCheck { lhs: det.height()?, rhs })
}

/// `f(X, Y) = (X - rho)^m g((X - rho)^-1, Y)` with the bound
/// `h(f) <= h(g) + m h(rho) + 2m log 2`.
#[derive(Clone, Debug)]
pub struct RhoTransform<S> {
    pub f: BPoly<S>,
    pub check: BoundCheck,
}

pub fn transform_rho<S: Scalar>(g: &BPoly<S>, m: usize, rho: &S) -> Result<RhoTransform<S>, HeightError> {
    if g.deg_x() > m {
        return Err(HeightError::DegreeTooLarge { deg: g.deg_x(), m });
    }
    let f = g.reverse_x(m).shift_x(&-rho.clone());
    let rhs = &(&g.height()? + &height_vector(std::slice::from_ref(rho))?.scale_int(m)) + &ln(2).scale_int(2 * m);
    let lhs = f.height()?;
    Ok(RhoTransform { f, check: BoundCheck { lhs, rhs } })
}

/// Inverse of [`transform_rho`]: `g(X, Y) = X^m f(X^-1 + rho, Y)`. For
/// `rho = 0` both maps coincide.
pub fn untransform_rho<S: Scalar>(f: &BPoly<S>, m: usize, rho: &S) -> BPoly<S> {
    f.shift_x(rho).reverse_x(m)
}

/// Right side of Silverman's inequality for `L = K(alpha)`:
/// `2([L:K] - 1) h(alpha) + log [L:K]`.
pub fn silverman_bound(h_alpha: &LogValue, deg_lk: usize) -> LogValue {
    assert!(deg_lk >= 1);
    &h_alpha.scale_int(2 * (deg_lk - 1)) + &ln(deg_lk)
}

/// Discriminant of the quadratic field generated by a root of `p`.
pub fn quadratic_field_discriminant(p: &UPoly<Rat>) -> Result<BigInt, HeightError> {
    if p.deg() != 2 {
        return Err(HeightError::NotQuadratic);
    }
    let c = primitive_integer_form(p);
    let disc = &c[1] * &c[1] - BigInt::from(4) * &c[2] * &c[0];
    if disc.is_zero() {
        return Err(HeightError::NotQuadratic);
    }
    let mut s = if disc.is_negative() { BigInt::from(-1) } else { BigInt::from(1) };
    for (q, e) in trial_factor(&disc.magnitude().clone()) {
        if e % 2 == 1 {
            s *= BigInt::from(q);
        }
    }
    if s == BigInt::from(1) {
        return Err(HeightError::NotQuadratic);
    }
    Ok(if s.mod_floor(&BigInt::from(4)) == BigInt::from(1) { s } else { s * 4 })
}

/// Silverman's inequality over `K = Q` for the quadratic field of `p`:
/// `lhs = log|D_L| / 2`, `rhs = 2 h(alpha) + log 2`.
pub fn silverman_check_quadratic(p: &UPoly<Rat>) -> Result<BoundCheck, HeightError> {
    let d = quadratic_field_discriminant(p)?;
    let lhs = LogValue::log_of(Rat::from_integer(d.abs())).scale(&Rat::new(1.into(), 2.into()));
    let rhs = silverman_bound(&height_algebraic(p)?, 2);
    Ok(BoundCheck { lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    type P = MPoly<Rat>;

    #[test]
    fn product_equality_case() {
        let x1 = &P::var(0) + &P::one();
        let c = bound_product(&[x1.clone(), x1]).unwrap();
        assert_eq!(c.lhs.as_log_of(), Some(int(2)));
        assert!(c.is_tight());
        let c = bound_product(&[P::var(0), P::var(0)]).unwrap();
        assert_eq!(c.lhs, LogValue::zero());
        assert_eq!(c.rhs.as_log_of(), Some(int(2)));
    }

    #[test]
    fn compose_examples() {
        let g = P::var(10).pow(2);
        let subs = [(10, &P::var(0) + &P::one())].into_iter().collect();
        let c = bound_compose(&g, &subs).unwrap();
        assert_eq!(c.lhs.as_log_of(), Some(int(2)));
        assert_eq!(c.rhs.as_log_of(), Some(int(16)));
        let zero_out = [(10, P::zero())].into_iter().collect();
        assert_eq!(bound_compose(&P::var(10), &zero_out), Err(HeightError::DegenerateSubstitution));
    }

    #[test]
    fn det_examples() {
        let x = P::var(0);
        let c = bound_det(&[vec![x.clone(), P::one()], vec![P::one(), x]]).unwrap();
        assert_eq!(c.lhs, LogValue::zero());
        assert_eq!(c.rhs.as_log_of(), Some(int(16)));
        let id = bound_det(&[vec![P::one(), P::zero()], vec![P::zero(), P::one()]]).unwrap();
        assert_eq!(id.rhs.as_log_of(), Some(int(4)));
        assert_eq!(
            bound_det(&[vec![P::one(), P::one()], vec![P::one(), P::one()]]),
            Err(HeightError::ZeroDeterminant)
        );
    }

    #[test]
    fn rho_transform() {
        // g = Y - X
        let g = BPoly::from_matrix(&[vec![int(0), int(1)], vec![int(-1)]]);
        let t = transform_rho(&g, 1, &int(1)).unwrap();
        assert_eq!(t.f, BPoly::from_matrix(&[vec![int(-1), int(-1)], vec![int(0), int(1)]]));
        assert_eq!(t.check.lhs, LogValue::zero());
        assert_eq!(t.check.rhs.as_log_of(), Some(int(4)));
        assert_eq!(untransform_rho(&t.f, 1, &int(1)), g);
        let t0 = transform_rho(&g, 1, &int(0)).unwrap();
        assert_eq!(transform_rho(&t0.f, 1, &int(0)).unwrap().f, g);
        let t2 = transform_rho(&t.f, 1, &int(1)).unwrap();
        assert_ne!(t2.f, g);
    }

    #[test]
    fn silverman_quadratics() {
        let sqrt2 = UPoly::new(vec![int(-2), int(0), int(1)]);
        assert_eq!(quadratic_field_discriminant(&sqrt2).unwrap(), BigInt::from(8));
        let c = silverman_check_quadratic(&sqrt2).unwrap();
        assert_eq!(c.holds(), Some(true));
        let phi = UPoly::new(vec![int(-1), int(-1), int(1)]);
        assert_eq!(quadratic_field_discriminant(&phi).unwrap(), BigInt::from(5));
        assert_eq!(silverman_check_quadratic(&phi).unwrap().holds(), Some(true));
        let gauss = UPoly::new(vec![int(1), int(0), int(1)]);
        assert_eq!(quadratic_field_discriminant(&gauss).unwrap(), BigInt::from(-4));
        assert_eq!(silverman_bound(&LogValue::log_int(5), 1), LogValue::zero());
    }
}
