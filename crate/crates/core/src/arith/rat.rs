//! Rational numbers and the small amount of glue the rest of the crate needs
//! around them.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ArithError;

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rat = BigRational;

/// `n/d` from machine integers. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"p"`, `"-p/q"` or a plain decimal such as `"2.5"`.
pub fn parse_rat(s: &str) -> Result<Rat, ArithError> {
    let s = s.trim();
    let bad = || ArithError::Parse(s.to_string());
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rat::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let neg = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        let n: BigInt = digits.parse().map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let r = Rat::new(n, d);
        return Ok(if neg { -r } else { r });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rat::from_integer(n))
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn fmt_rat(r: &Rat) -> String {
    r.to_string()
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn abs_uint(n: &BigInt) -> BigUint {
    n.abs().to_biguint().expect("absolute value is nonnegative")
}

/// `r * 2^k` for any sign of `k`.
pub fn mul_pow2(r: &Rat, k: i64) -> Rat {
    if k >= 0 {
        Rat::new(r.numer() << (k as usize), r.denom().clone())
    } else {
        Rat::new(r.numer().clone(), r.denom() << ((-k) as usize))
    }
}

/// Largest dyadic `m / 2^bits` that is `<= r`.
pub fn floor_dyadic(r: &Rat, bits: u32) -> Rat {
    let scaled = mul_pow2(r, bits as i64);
    let f = scaled.floor().to_integer();
    Rat::new(f, BigInt::one() << bits as usize)
}

/// Smallest dyadic `m / 2^bits` that is `>= r`.
pub fn ceil_dyadic(r: &Rat, bits: u32) -> Rat {
    let scaled = mul_pow2(r, bits as i64);
    let c = scaled.ceil().to_integer();
    Rat::new(c, BigInt::one() << bits as usize)
}

/// Nearest dyadic with `bits` fractional bits (ties away from zero).
pub fn round_dyadic(r: &Rat, bits: u32) -> Rat {
    let scaled = mul_pow2(r, bits as i64);
    Rat::new(scaled.round().to_integer(), BigInt::one() << bits as usize)
}

pub fn to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    match r.to_f64() {
        Some(v) if v.is_finite() => v,
        _ => {
            // scale down huge operands before converting
            let shift = r.numer().bits() as i64 - r.denom().bits() as i64;
            let m = mul_pow2(r, -shift).to_f64().unwrap_or(0.0);
            m * 2f64.powi(shift.clamp(-1074, 1023) as i32)
        }
    }
}

pub fn from_f64(x: f64) -> Rat {
    Rat::from_float(x).unwrap_or_else(Rat::zero)
}

/// Factors of `n` by trial division. Intended for the small integers that show
/// up in field discriminants and test data.
pub fn trial_factor(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut p = BigUint::from(2u32);
    while &p * &p <= n {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += 1u32;
    }
    if n > BigUint::one() {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("-2.5").unwrap(), rat(-5, 2));
        assert_eq!(parse_rat(" 7 ").unwrap(), int(7));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn lowest_terms_and_zero() {
        let z = rat(0, -5);
        assert_eq!(z.denom(), &BigInt::one());
        assert_eq!(fmt_rat(&rat(4, -6)), "-2/3");
        assert_eq!(fmt_rat(&int(5)), "5");
    }

    #[test]
    fn dyadic_rounding_brackets() {
        let r = rat(1, 3);
        let lo = floor_dyadic(&r, 10);
        let hi = ceil_dyadic(&r, 10);
        assert!(lo <= r && r <= hi);
        assert_eq!(&hi - &lo, rat(1, 1024));
    }

    #[test]
    fn factors() {
        let f = trial_factor(&BigUint::from(360u32));
        assert_eq!(f.len(), 3);
        assert_eq!(f[0], (BigUint::from(2u32), 3));
    }
}
