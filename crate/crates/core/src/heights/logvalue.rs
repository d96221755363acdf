//! Logarithmic quantities kept exact as `sum c_k log a_k + r` with rational
//! `c_k`, `a_k > 1` and `r`, or as a certified real interval.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::arith::real::ln_enclosure;
use crate::arith::{ceil_dyadic, floor_dyadic, fmt_rat, to_f64, Rat};

/// Products above this many bits are not formed when deciding signs exactly.
const EXACT_PRODUCT_BITS: u64 = 1 << 16;
/// Working precision limit for interval refinement.
const MAX_BITS: u32 = 1 << 12;
/// Merged arguments are kept below this size.
const MERGE_BITS: u64 = 256;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogForm {
    /// `(a, c)` pairs sorted by `a`, every `a > 1` and `c != 0`.
    terms: Vec<(Rat, Rat)>,
    constant: Rat,
}

impl LogForm {
    fn normalized(raw: impl IntoIterator<Item = (Rat, Rat)>, constant: Rat) -> Self {
        let mut terms: Vec<(Rat, Rat)> = Vec::new();
        for (a, c) in raw {
            assert!(a.is_positive(), "logarithm of a non-positive number");
            if a.is_one() || c.is_zero() {
                continue;
            }
            let (a, c) = if a < Rat::one() { (a.recip(), -c) } else { (a, c) };
            match terms.binary_search_by(|(b, _)| b.cmp(&a)) {
                Ok(i) => terms[i].1 += c,
                Err(i) => terms.insert(i, (a, c)),
            }
        }
        terms.retain(|(_, c)| !c.is_zero());
        // k log a = log(a^k) for small integers k
        for (a, c) in terms.iter_mut() {
            if c.is_integer() {
                let k = c.to_integer().magnitude().clone();
                if let Ok(k) = u32::try_from(k) {
                    if k > 1 && rat_bits(a) * k as u64 <= MERGE_BITS {
                        *a = num_traits::pow(a.clone(), k as usize);
                        *c = if c.is_positive() { Rat::one() } else { -Rat::one() };
                    }
                }
            }
        }
        // c log a + c log b = c log(ab) for small arguments
        let mut merged: Vec<(Rat, Rat)> = Vec::new();
        for (a, c) in terms {
            if let Some(slot) = merged
                .iter_mut()
                .find(|(b, d)| *d == c && rat_bits(b) + rat_bits(&a) <= MERGE_BITS)
            {
                slot.0 = &slot.0 * &a;
            } else {
                merged.push((a, c));
            }
        }
        merged.sort_by(|x, y| x.0.cmp(&y.0));
        LogForm { terms: merged, constant }
    }

    pub fn terms(&self) -> &[(Rat, Rat)] {
        &self.terms
    }

    pub fn constant(&self) -> &Rat {
        &self.constant
    }

    fn enclosure(&self, bits: u32) -> (Rat, Rat) {
        let extra = 4 + usize::BITS - self.terms.len().leading_zeros();
        let (mut lo, mut hi) = (self.constant.clone(), self.constant.clone());
        for (a, c) in &self.terms {
            let cb = c.numer().bits().saturating_sub(c.denom().bits()) as u32;
            let (l, h) = ln_enclosure(a, bits + extra + cb);
            if c.is_positive() {
                lo += c * l;
                hi += c * h;
            } else {
                lo += c * h;
                hi += c * l;
            }
        }
        (lo, hi)
    }

    /// Sign of the value, decided exactly whenever possible.
    fn signum(&self) -> Option<Ordering> {
        if self.terms.is_empty() {
            return Some(self.constant.cmp(&Rat::zero()));
        }
        if self.constant.is_zero() {
            if let Some(o) = self.exact_product_sign() {
                return Some(o);
            }
        }
        let mut bits = 64;
        while bits <= MAX_BITS {
            let (lo, hi) = self.enclosure(bits);
            if lo.is_positive() {
                return Some(Ordering::Greater);
            }
            if hi.is_negative() {
                return Some(Ordering::Less);
            }
            bits *= 2;
        }
        None
    }

    /// Compares `prod a^(c D)` with 1, `D` the common denominator of the `c`.
    fn exact_product_sign(&self) -> Option<Ordering> {
        let den = self.terms.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let mut size = 0u64;
        let mut exps = Vec::with_capacity(self.terms.len());
        for (a, c) in &self.terms {
            let e = (c * Rat::from_integer(den.clone())).to_integer();
            let e64: u64 = e.abs().try_into().ok()?;
            size = size.checked_add(e64.checked_mul(rat_bits(a))?)?;
            if size > EXACT_PRODUCT_BITS {
                return None;
            }
            exps.push((a, e));
        }
        let (mut pos, mut neg) = (Rat::one(), Rat::one());
        for (a, e) in exps {
            let k: u32 = e.abs().try_into().ok()?;
            let p = num_traits::pow(a.clone(), k as usize);
            if e.is_positive() {
                pos *= p;
            } else {
                neg *= p;
            }
        }
        Some(pos.cmp(&neg))
    }
}

fn rat_bits(a: &Rat) -> u64 {
    a.numer().bits() + a.denom().bits()
}

/// A real number that is the logarithm-type quantity of a height or a bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LogValue {
    Exact(LogForm),
    /// Certified enclosure `lo <= value <= hi` with dyadic endpoints.
    Interval { lo: Rat, hi: Rat },
}

impl LogValue {
    pub fn zero() -> Self {
        LogValue::Exact(LogForm { terms: Vec::new(), constant: Rat::zero() })
    }

    /// `log a` for rational `a > 0`.
    pub fn log_of(a: Rat) -> Self {
        Self::Exact(LogForm::normalized([(a, Rat::one())], Rat::zero()))
    }

    pub fn log_int(n: i64) -> Self {
        Self::log_of(Rat::from_integer(n.into()))
    }

    pub fn rational(r: Rat) -> Self {
        Self::Exact(LogForm { terms: Vec::new(), constant: r })
    }

    /// `c log a`.
    pub fn scaled_log(c: Rat, a: Rat) -> Self {
        Self::Exact(LogForm::normalized([(a, c)], Rat::zero()))
    }

    pub fn interval(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "empty interval");
        LogValue::Interval { lo, hi }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, LogValue::Exact(_))
    }

    /// `Some(a)` if the value is exactly `log a`.
    pub fn as_log_of(&self) -> Option<Rat> {
        match self {
            LogValue::Exact(f) if f.constant.is_zero() => match f.terms.as_slice() {
                [] => Some(Rat::one()),
                [(a, c)] if c.is_one() => Some(a.clone()),
                [(a, c)] if c == &-Rat::one() => Some(a.recip()),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn scale(&self, k: &Rat) -> Self {
        match self {
            LogValue::Exact(f) => LogValue::Exact(LogForm::normalized(
                f.terms.iter().map(|(a, c)| (a.clone(), c * k)),
                &f.constant * k,
            )),
            LogValue::Interval { lo, hi } => {
                let (a, b) = (lo * k, hi * k);
                if k.is_negative() {
                    LogValue::Interval { lo: b, hi: a }
                } else {
                    LogValue::Interval { lo: a, hi: b }
                }
            }
        }
    }

    pub fn scale_int(&self, k: impl Into<BigInt>) -> Self {
        self.scale(&Rat::from_integer(k.into()))
    }

    /// Certified enclosure of absolute width about `2^-bits`, dyadic
    /// endpoints.
    pub fn enclosure(&self, bits: u32) -> (Rat, Rat) {
        match self {
            LogValue::Exact(f) => {
                let (lo, hi) = f.enclosure(bits + 2);
                (floor_dyadic(&lo, bits + 2), ceil_dyadic(&hi, bits + 2))
            }
            LogValue::Interval { lo, hi } => (lo.clone(), hi.clone()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.enclosure(64);
        (to_f64(&lo) + to_f64(&hi)) / 2.0
    }

    /// Certified comparison; `None` when an interval operand leaves the order
    /// undecided.
    pub fn compare(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (LogValue::Exact(a), LogValue::Exact(b)) => {
                let diff = LogForm::normalized(
                    a.terms.iter().cloned().chain(b.terms.iter().map(|(x, c)| (x.clone(), -c))),
                    &a.constant - &b.constant,
                );
                diff.signum()
            }
            _ => {
                // refining the exact side far below the width of the interval
                // side cannot decide anything
                let needed = [self, other]
                    .iter()
                    .filter_map(|v| match v {
                        LogValue::Interval { lo, hi } if hi > lo => {
                            let w = hi - lo;
                            Some((w.denom().bits() as i64 - w.numer().bits() as i64 + 24).max(64) as u32)
                        }
                        _ => None,
                    })
                    .max()
                    .unwrap_or(MAX_BITS)
                    .min(MAX_BITS);
                let mut bits = 64;
                loop {
                    let (alo, ahi) = self.enclosure(bits);
                    let (blo, bhi) = other.enclosure(bits);
                    if ahi < blo {
                        return Some(Ordering::Less);
                    }
                    if alo > bhi {
                        return Some(Ordering::Greater);
                    }
                    if alo == ahi && blo == bhi && alo == blo {
                        return Some(Ordering::Equal);
                    }
                    // only the exact side can still tighten
                    if bits >= needed || (!self.is_exact() && !other.is_exact()) {
                        return None;
                    }
                    bits *= 2;
                }
            }
        }
    }

    /// `Some(true)` iff `self <= other` is certified.
    pub fn le(&self, other: &Self) -> Option<bool> {
        self.compare(other).map(|o| o != Ordering::Greater)
    }

    pub fn certainly_le(&self, other: &Self) -> bool {
        self.le(other) == Some(true)
    }

    pub fn to_json(&self) -> Value {
        if let Some(a) = self.as_log_of() {
            return json!({ "log_of": fmt_rat(&a) });
        }
        match self {
            LogValue::Exact(f) => json!({
                "terms": f.terms.iter().map(|(a, c)| json!({"coeff": fmt_rat(c), "log_of": fmt_rat(a)})).collect::<Vec<_>>(),
                "constant": fmt_rat(&f.constant),
            }),
            LogValue::Interval { lo, hi } => json!({ "interval": [fmt_rat(lo), fmt_rat(hi)] }),
        }
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        match (self, other) {
            (LogValue::Exact(a), LogValue::Exact(b)) => {
                let sign = if negate { -Rat::one() } else { Rat::one() };
                LogValue::Exact(LogForm::normalized(
                    a.terms.iter().cloned().chain(b.terms.iter().map(|(x, c)| (x.clone(), c * &sign))),
                    &a.constant + &b.constant * &sign,
                ))
            }
            _ => {
                let (alo, ahi) = self.enclosure(96);
                let (blo, bhi) = other.enclosure(96);
                if negate {
                    LogValue::Interval { lo: alo - bhi, hi: ahi - blo }
                } else {
                    LogValue::Interval { lo: alo + blo, hi: ahi + bhi }
                }
            }
        }
    }
}

impl Add for &LogValue {
    type Output = LogValue;
    fn add(self, o: &LogValue) -> LogValue {
        self.combine(o, false)
    }
}

impl Sub for &LogValue {
    type Output = LogValue;
    fn sub(self, o: &LogValue) -> LogValue {
        self.combine(o, true)
    }
}

impl Add for LogValue {
    type Output = LogValue;
    fn add(self, o: LogValue) -> LogValue {
        self.combine(&o, false)
    }
}

impl Sub for LogValue {
    type Output = LogValue;
    fn sub(self, o: LogValue) -> LogValue {
        self.combine(&o, true)
    }
}

impl Neg for &LogValue {
    type Output = LogValue;
    fn neg(self) -> LogValue {
        self.scale(&-Rat::one())
    }
}

impl std::iter::Sum for LogValue {
    fn sum<I: Iterator<Item = LogValue>>(it: I) -> LogValue {
        it.fold(LogValue::zero(), |a, b| a + b)
    }
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogValue::Exact(form) => {
                let mut parts: Vec<String> = form
                    .terms
                    .iter()
                    .map(|(a, c)| {
                        let arg = format!("log({})", fmt_rat(a));
                        if c.is_one() {
                            arg
                        } else if c == &-Rat::one() {
                            format!("-{arg}")
                        } else {
                            format!("{}*{arg}", fmt_rat(c))
                        }
                    })
                    .collect();
                if !form.constant.is_zero() || parts.is_empty() {
                    parts.push(fmt_rat(&form.constant));
                }
                f.write_str(&parts.join(" + ").replace("+ -", "- "))
            }
            LogValue::Interval { lo, hi } => write!(f, "[{:.15}, {:.15}]", to_f64(lo), to_f64(hi)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn exact_identities() {
        let l4 = LogValue::log_int(4);
        let two_l2 = LogValue::log_int(2).scale(&int(2));
        assert_eq!(l4.compare(&two_l2), Some(Ordering::Equal));
        assert_eq!((&LogValue::log_int(4) + &LogValue::log_int(10)).as_log_of(), Some(int(40)));
        assert_eq!(LogValue::log_of(rat(1, 3)).compare(&-&LogValue::log_int(3)), Some(Ordering::Equal));
        assert_eq!(LogValue::log_int(1), LogValue::zero());
    }

    #[test]
    fn mixed_comparisons() {
        // log 3 vs 1 + log 1 : e < 3
        let one = LogValue::rational(int(1));
        assert_eq!(LogValue::log_int(3).compare(&one), Some(Ordering::Greater));
        assert_eq!(LogValue::log_int(2).compare(&one), Some(Ordering::Less));
        // 2^10 > 10^3
        let a = LogValue::log_int(2).scale(&int(10));
        let b = LogValue::log_int(10).scale(&int(3));
        assert_eq!(a.compare(&b), Some(Ordering::Greater));
        let iv = LogValue::interval(rat(1, 2), rat(3, 4));
        assert_eq!(iv.compare(&LogValue::log_int(2)), None);
        assert_eq!(iv.compare(&LogValue::log_int(3)), Some(Ordering::Less));
    }

    #[test]
    fn huge_exponents_fall_back_to_intervals() {
        let big = Rat::from_integer(BigInt::from(2).pow(200));
        let lhs = LogValue::log_int(40);
        let rhs = LogValue::log_int(16).scale(&big);
        assert!(lhs.certainly_le(&rhs));
        assert!(!rhs.certainly_le(&lhs));
    }

    #[test]
    fn json_forms() {
        assert_eq!(LogValue::log_int(4).to_json(), json!({"log_of": "4"}));
        assert_eq!(LogValue::zero().to_json(), json!({"log_of": "1"}));
        let v = LogValue::scaled_log(rat(1, 2), int(2));
        assert_eq!(v.to_json()["terms"][0]["coeff"], json!("1/2"));
        assert_eq!(v.to_string(), "1/2*log(2)");
    }
}
