//! Certified rational enclosures of logarithms and square roots.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rat::{ceil_dyadic, floor_dyadic, mul_pow2};
use super::Rat;

/// Enclosure of `2 atanh(z)` for `|z| <= 1/3`, error below `2^-bits`.
fn two_atanh(z: &Rat, bits: u32) -> (Rat, Rat) {
    let work = bits + 16;
    let zd = floor_dyadic(z, work);
    let z2 = &zd * &zd;
    let mut term = zd.clone();
    let mut sum = Rat::zero();
    let mut k = 0u64;
    let mut err = Rat::zero();
    let tiny = mul_pow2(&Rat::one(), -(work as i64));
    // |z| <= 1/3 so each odd power shrinks by 1/9; 2 * bits terms is plenty
    loop {
        let t = &term / Rat::from_integer(BigInt::from(2 * k + 1));
        sum += floor_dyadic(&t, work);
        err += &tiny;
        term = floor_dyadic(&(&term * &z2), work + 8);
        err += &tiny;
        k += 1;
        let bound = term.abs() * Rat::new(BigInt::from(9), BigInt::from(8));
        if bound < mul_pow2(&Rat::one(), -(bits as i64 + 4)) {
            err += bound;
            break;
        }
    }
    // approximating z itself: d/dz atanh <= 9/8 on |z| <= 1/3
    err += tiny * Rat::new(BigInt::from(9), BigInt::from(8));
    let two = Rat::from_integer(BigInt::from(2));
    ((&sum - &err) * &two, (&sum + &err) * &two)
}

/// `log 2` to within `2^-bits`.
pub fn ln2_enclosure(bits: u32) -> (Rat, Rat) {
    two_atanh(&Rat::new(BigInt::one(), BigInt::from(3)), bits)
}

/// Certified `[lo, hi]` containing `ln(a)` for rational `a > 0`, of width
/// roughly `2^-bits` (times `1 + |log2 a|`).
pub fn ln_enclosure(a: &Rat, bits: u32) -> (Rat, Rat) {
    assert!(a.is_positive(), "logarithm of a non-positive number");
    if a.is_one() {
        return (Rat::zero(), Rat::zero());
    }
    let mut k = a.numer().bits() as i64 - a.denom().bits() as i64;
    let mut b = mul_pow2(a, -k);
    let four_thirds = Rat::new(BigInt::from(4), BigInt::from(3));
    let two_thirds = Rat::new(BigInt::from(2), BigInt::from(3));
    while b > four_thirds {
        b = mul_pow2(&b, -1);
        k += 1;
    }
    while b < two_thirds {
        b = mul_pow2(&b, 1);
        k -= 1;
    }
    let extra = 64 - (k.unsigned_abs().max(1)).leading_zeros();
    let z = (&b - Rat::one()) / (&b + Rat::one());
    let (blo, bhi) = two_atanh(&z, bits + 2);
    let (l2lo, l2hi) = ln2_enclosure(bits + 2 + extra);
    let kr = Rat::from_integer(BigInt::from(k));
    let (klo, khi) = if k >= 0 {
        (&kr * &l2lo, &kr * &l2hi)
    } else {
        (&kr * &l2hi, &kr * &l2lo)
    };
    (klo + blo, khi + bhi)
}

/// Certified `[lo, hi]` containing `sqrt(x)`, `x >= 0`, of width `2^-bits`.
pub fn sqrt_enclosure(x: &Rat, bits: u32) -> (Rat, Rat) {
    assert!(!x.is_negative(), "square root of a negative number");
    if x.is_zero() {
        return (Rat::zero(), Rat::zero());
    }
    // floor(sqrt(x * 4^bits)) / 2^bits
    let scaled = mul_pow2(x, 2 * bits as i64).floor().to_integer();
    let s = scaled.sqrt();
    let den = BigInt::one() << bits as usize;
    let lo = Rat::new(s.clone(), den.clone());
    let hi = if &s * &s == scaled && lo.clone() * &lo == *x {
        lo.clone()
    } else {
        Rat::new(s + 1, den)
    };
    (lo, hi)
}

/// Upper bound for `sqrt(x)` rounded to a dyadic.
pub fn sqrt_upper(x: &Rat, bits: u32) -> Rat {
    ceil_dyadic(&sqrt_enclosure(x, bits).1, bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, to_f64};

    #[test]
    fn ln2_matches_float() {
        let (lo, hi) = ln2_enclosure(60);
        assert!(lo <= hi);
        assert!(to_f64(&lo) <= std::f64::consts::LN_2 + 1e-15);
        assert!(to_f64(&hi) >= std::f64::consts::LN_2 - 1e-15);
        assert!(to_f64(&(&hi - &lo)) < 1e-17);
    }

    #[test]
    fn ln_of_various() {
        for (n, d) in [(3, 1), (1, 7), (40, 1), (1000003, 999), (5, 4)] {
            let (lo, hi) = ln_enclosure(&rat(n, d), 50);
            let v = (n as f64 / d as f64).ln();
            assert!(to_f64(&lo) <= v + 1e-12 && v - 1e-12 <= to_f64(&hi), "{n}/{d}");
            assert!(to_f64(&(&hi - &lo)) < 1e-13);
        }
        assert_eq!(ln_enclosure(&rat(1, 1), 10), (Rat::zero(), Rat::zero()));
    }

    #[test]
    fn sqrt_brackets() {
        let (lo, hi) = sqrt_enclosure(&rat(2, 1), 40);
        assert!(&lo * &lo <= rat(2, 1) && &hi * &hi >= rat(2, 1));
        assert_eq!(sqrt_enclosure(&rat(9, 4), 8), (rat(3, 2), rat(3, 2)));
    }
}
