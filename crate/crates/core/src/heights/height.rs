//! Absolute logarithmic heights.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{HeightError, LogValue};
use crate::arith::real::ln_enclosure;
use crate::arith::{
    ceil_dyadic, common_denominator, complex_roots_with_cap, floor_dyadic, rational_roots, BPoly, MPoly, NFElem, Rat,
    Scalar, UPoly, DEFAULT_PRECISION_CAP,
};

/// Root enclosures used for Mahler measures are refined to this many bits.
const MAHLER_BITS: u32 = 64;

/// `h(v)` for a rational vector: `log max(|a_1|, ..., |a_N|, b)` where
/// `v = (a_i / b)` over the least common denominator.
pub fn height_rational_vector<'a>(v: impl IntoIterator<Item = &'a Rat>) -> LogValue {
    let v: Vec<&Rat> = v.into_iter().collect();
    let den = common_denominator(v.iter().copied());
    let mut best = den.clone();
    for x in v {
        let a = (x.numer() * (&den / x.denom())).abs();
        if a > best {
            best = a;
        }
    }
    LogValue::log_of(Rat::from_integer(best))
}

/// Primitive integer form of a rational polynomial, positive leading
/// coefficient.
pub fn primitive_integer_form(p: &UPoly<Rat>) -> Vec<BigInt> {
    let den = common_denominator(p.coeffs());
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if ints.last().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
    ints.into_iter().map(|c| c / &g * &sign).collect()
}

/// `h(alpha)` for a root of the irreducible polynomial `p`, by the Mahler
/// measure `M(p) = |lc| prod max(1, |root|)` of its primitive integer form:
/// `h = log M / deg p`.
///
/// The result is exact when every root is rational or when all roots are
/// certified to lie on one side of the unit circle (then `M` is `|a_0|` or
/// `|lc|`); otherwise it is a certified interval.
pub fn height_algebraic(p: &UPoly<Rat>) -> Result<LogValue, HeightError> {
    let d = p.degree().filter(|&d| d >= 1).ok_or(HeightError::ConstantPolynomial)?;
    let ints = primitive_integer_form(p);
    let q = UPoly::new(ints.iter().cloned().map(Rat::from_integer).collect());
    let lc = Rat::from_integer(ints[d].abs());
    let inv_d = Rat::new(BigInt::one(), BigInt::from(d));
    let split = rational_roots(&q);
    if split.is_complete() {
        let m = split.roots.iter().fold(lc, |acc, (r, k)| {
            let r = r.abs();
            if r > Rat::one() {
                acc * num_traits::pow(r, *k)
            } else {
                acc
            }
        });
        return Ok(LogValue::log_of(m).scale(&inv_d));
    }
    let boxes = complex_roots_with_cap(&q, MAHLER_BITS, DEFAULT_PRECISION_CAP)?;
    let moduli: Vec<(Rat, Rat, usize)> = boxes
        .iter()
        .map(|b| {
            let (lo, hi) = b.abs_enclosure(MAHLER_BITS + 8);
            (lo, hi, b.multiplicity)
        })
        .collect();
    if moduli.iter().all(|(lo, _, _)| lo > &Rat::one()) {
        return Ok(LogValue::log_of(Rat::from_integer(ints[0].abs())).scale(&inv_d));
    }
    if moduli.iter().all(|(_, hi, _)| hi < &Rat::one()) {
        return Ok(LogValue::log_of(lc).scale(&inv_d));
    }
    // log M = log|lc| + sum log max(1, |z|), each term enclosed
    let bits = MAHLER_BITS;
    let (mut lo, mut hi) = ln_enclosure(&lc, bits);
    for (mlo, mhi, k) in &moduli {
        let k = Rat::from_integer(BigInt::from(*k));
        if mhi > &Rat::one() {
            let h = ln_enclosure(mhi, bits).1;
            hi += &k * h;
        }
        if mlo > &Rat::one() {
            let l = ln_enclosure(mlo, bits).0;
            lo += &k * l;
        }
    }
    let lo = floor_dyadic(&(lo * &inv_d), bits);
    let hi = ceil_dyadic(&(hi * &inv_d), bits);
    Ok(LogValue::interval(lo, hi))
}

/// `h(a)` for a number-field element, via its characteristic polynomial over
/// `Q` (a power of its minimal polynomial, which leaves the Mahler-measure
/// height unchanged).
pub fn height_nf(a: &NFElem) -> Result<LogValue, HeightError> {
    match a.as_rat() {
        Some(r) => Ok(height_rational_vector([&r])),
        None => height_algebraic(&a.charpoly()),
    }
}

/// Height of a vector of scalars. Exact for rational vectors; over a proper
/// number field the certified enclosure `[max_i h(a_i), sum_i h(a_i)]`.
pub fn height_vector<S: Scalar>(v: &[S]) -> Result<LogValue, HeightError> {
    let rats: Option<Vec<Rat>> = v.iter().map(|c| c.as_rat()).collect();
    if let Some(rats) = rats {
        return Ok(height_rational_vector(&rats));
    }
    let mut lo = Rat::zero();
    let mut hi = Rat::zero();
    for c in v {
        let (l, h) = height_nf(&c.to_nf())?.enclosure(MAHLER_BITS);
        if l > lo {
            lo = l;
        }
        hi += h;
    }
    Ok(LogValue::interval(lo, hi))
}

/// Height of a polynomial: the height of its vector of nonzero coefficients.
pub trait PolyHeight {
    fn height(&self) -> Result<LogValue, HeightError>;
}

impl<S: Scalar> PolyHeight for UPoly<S> {
    fn height(&self) -> Result<LogValue, HeightError> {
        let cs: Vec<S> = self.coeffs().iter().filter(|c| !c.is_zero()).cloned().collect();
        height_vector(&cs)
    }
}

impl<S: Scalar> PolyHeight for BPoly<S> {
    fn height(&self) -> Result<LogValue, HeightError> {
        height_vector(&self.nonzero_coeffs())
    }
}

impl<S: Scalar> PolyHeight for MPoly<S> {
    fn height(&self) -> Result<LogValue, HeightError> {
        let cs: Vec<S> = self.coeffs().cloned().collect();
        height_vector(&cs)
    }
}

/// Joint height of several polynomials (all their nonzero coefficients).
pub fn height_system<S: Scalar>(ps: &[MPoly<S>]) -> Result<LogValue, HeightError> {
    let cs: Vec<S> = ps.iter().flat_map(|p| p.coeffs().cloned()).collect();
    height_vector(&cs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, NumberField};
    use std::cmp::Ordering;

    #[test]
    fn rational_vectors() {
        assert_eq!(height_rational_vector(&[int(1)]), LogValue::zero());
        assert_eq!(height_rational_vector(&[int(2), rat(1, 2)]).as_log_of(), Some(int(4)));
        assert_eq!(height_rational_vector(&[rat(3, 2)]).as_log_of(), Some(int(3)));
        assert_eq!(height_rational_vector(&[rat(-3, 2)]).as_log_of(), Some(int(3)));
        assert_eq!(height_rational_vector(&[int(0)]), LogValue::zero());
    }

    #[test]
    fn polynomial_heights() {
        // Y^2 - X Y + 1/4
        let f = BPoly::from_matrix(&[vec![rat(1, 4), int(0), int(1)], vec![int(0), int(-1)]]);
        assert_eq!(f.height().unwrap().as_log_of(), Some(int(4)));
        let e1 = BPoly::from_matrix(&[
            vec![rat(9, 16), rat(-5, 2), int(1)],
            vec![int(0), int(0)],
            vec![rat(5, 2), int(-1)],
        ]);
        assert_eq!(e1.height().unwrap().as_log_of(), Some(int(40)));
    }

    #[test]
    fn algebraic_heights() {
        let h = height_algebraic(&UPoly::new(vec![int(-1), int(1)])).unwrap();
        assert_eq!(h, LogValue::zero());
        let h = height_algebraic(&UPoly::new(vec![int(-2), int(0), int(1)])).unwrap();
        assert_eq!(h.compare(&LogValue::scaled_log(rat(1, 2), int(2))), Some(Ordering::Equal));
        // golden ratio: h = (1/2) log phi, log phi = 0.48121182505960344...
        let h = height_algebraic(&UPoly::new(vec![int(-1), int(-1), int(1)])).unwrap();
        let (lo, hi) = h.enclosure(60);
        assert!(hi - lo < rat(1, 1_000_000_000_000));
        assert!((h.to_f64() - 0.240_605_912_529_801_7).abs() < 1e-12);
        // 2X - 3 : h(3/2) = log 3
        let h = height_algebraic(&UPoly::new(vec![int(-3), int(2)])).unwrap();
        assert_eq!(h.as_log_of(), Some(int(3)));
    }

    #[test]
    fn number_field_element_height() {
        let k = NumberField::new(UPoly::new(vec![int(-2), int(0), int(1)])).unwrap();
        let h = height_nf(&k.generator()).unwrap();
        assert_eq!(h.compare(&LogValue::scaled_log(rat(1, 2), int(2))), Some(Ordering::Equal));
        let v = height_vector(&[k.generator(), NFElem::rational(int(3))]).unwrap();
        assert!(!v.is_exact());
        let (lo, hi) = v.enclosure(60);
        let ln3 = 3f64.ln();
        assert!(crate::arith::to_f64(&lo) <= ln3 + 1e-12 && ln3 <= crate::arith::to_f64(&hi));
    }
}
