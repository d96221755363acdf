//! Truncated Laurent series `sum_k c_k t^k + O(t^prec)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{json, Value};

use super::SeriesError;
use crate::arith::{BPoly, Scalar, UPoly};

/// Laurent series with exact coefficients. `prec` is the exclusive exponent
/// cap (`None` for an exactly known Laurent polynomial). The first stored
/// coefficient is nonzero unless nothing is stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series<S> {
    offset: i64,
    coeffs: Vec<S>,
    prec: Option<i64>,
}

fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl<S: Scalar> Series<S> {
    pub fn new(offset: i64, coeffs: Vec<S>, prec: Option<i64>) -> Self {
        let mut s = Series { offset, coeffs, prec };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if let Some(p) = self.prec {
            let keep = (p - self.offset).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(k) => {
                self.coeffs.drain(..k);
                self.offset += k as i64;
                while self.coeffs.last().is_some_and(|c| c.is_zero()) {
                    self.coeffs.pop();
                }
            }
            None => {
                self.coeffs.clear();
                self.offset = 0;
            }
        }
    }

    pub fn exact(offset: i64, coeffs: Vec<S>) -> Self {
        Self::new(offset, coeffs, None)
    }

    pub fn from_upoly(p: &UPoly<S>) -> Self {
        Self::exact(0, p.coeffs().to_vec())
    }

    pub fn constant(c: S) -> Self {
        Self::exact(0, vec![c])
    }

    /// `c t^k`
    pub fn monomial(c: S, k: i64) -> Self {
        Self::exact(k, vec![c])
    }

    /// `O(t^prec)`
    pub fn zero_to(prec: i64) -> Self {
        Series { offset: 0, coeffs: Vec::new(), prec: Some(prec) }
    }

    pub fn prec(&self) -> Option<i64> {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// Exponent of the first stored coefficient.
    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn stored(&self) -> &[S] {
        &self.coeffs
    }

    /// A certified lower bound for the valuation.
    fn val_lower(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            self.prec
        } else {
            Some(self.offset)
        }
    }

    /// Order of vanishing: `Ok(None)` for an exact zero.
    pub fn ord(&self) -> Result<Option<i64>, SeriesError> {
        if !self.coeffs.is_empty() {
            return Ok(Some(self.offset));
        }
        match self.prec {
            None => Ok(None),
            Some(p) => Err(SeriesError::IndeterminateOrder(p)),
        }
    }

    /// Coefficient of `t^k`; `None` beyond the precision.
    pub fn coeff(&self, k: i64) -> Option<S> {
        if self.prec.is_some_and(|p| k >= p) {
            return None;
        }
        if k < self.offset || k >= self.offset + self.coeffs.len() as i64 {
            return Some(S::zero());
        }
        Some(self.coeffs[(k - self.offset) as usize].clone())
    }

    /// Coefficients of `t^lo, ..., t^hi`, all of which must be known.
    pub fn coeffs_range(&self, lo: i64, hi: i64) -> Result<Vec<S>, SeriesError> {
        (lo..=hi).map(|k| self.coeff(k).ok_or(SeriesError::InsufficientPrecision(k))).collect()
    }

    /// Drops everything at exponents `>= prec`.
    pub fn truncate(&self, prec: i64) -> Self {
        Self::new(self.offset, self.coeffs.clone(), min_prec(self.prec, Some(prec)))
    }

    /// Exact Laurent polynomial of the terms up to exponent `hi` inclusive.
    pub fn segment(&self, hi: i64) -> Result<Self, SeriesError> {
        if self.prec.is_some_and(|p| hi >= p) {
            return Err(SeriesError::InsufficientPrecision(hi));
        }
        let t = self.truncate(hi + 1);
        Ok(Self::exact(t.offset, t.coeffs))
    }

    /// `t^k * self`
    pub fn shift(&self, k: i64) -> Self {
        Series { offset: self.offset + k, coeffs: self.coeffs.clone(), prec: self.prec.map(|p| p + k) }
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(self.offset, self.coeffs.iter().map(|a| a.clone() * c).collect(), self.prec)
    }

    /// Multiplicative inverse with `terms` coefficients of relative precision
    /// for exact input.
    pub fn inverse(&self, terms: usize) -> Result<Self, SeriesError> {
        let v = self.ord()?.ok_or(SeriesError::DivisionByZero)?;
        let rel = match self.prec {
            Some(p) => ((p - v) as usize).min(terms.max(1)),
            None => terms.max(1),
        };
        let u: Vec<S> = (0..rel).map(|k| self.coeffs.get(k).cloned().unwrap_or_else(S::zero)).collect();
        let inv0 = u[0].try_inv().map_err(|_| SeriesError::DivisionByZero)?;
        let mut out = vec![inv0.clone()];
        for k in 1..rel {
            let mut acc = S::zero();
            for i in 1..=k {
                acc = acc + u[i].clone() * &out[k - i];
            }
            out.push(-(acc * &inv0));
        }
        Ok(Self::new(-v, out, Some(-v + rel as i64)))
    }

    /// `f(x, y)` for a polynomial with scalar coefficients.
    pub fn eval_bpoly(f: &BPoly<S>, x: &Series<S>, y: &Series<S>) -> Series<S> {
        let mut acc = Series::exact(0, Vec::new());
        for a in f.ycoeffs().iter().rev() {
            acc = &(&acc * y) + &Self::eval_upoly(a, x);
        }
        acc
    }

    pub fn eval_upoly(p: &UPoly<S>, x: &Series<S>) -> Series<S> {
        let mut acc = Series::exact(0, Vec::new());
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * x) + &Series::constant(c.clone());
        }
        acc
    }

    /// The stored part as a polynomial; requires `offset >= 0`.
    pub fn to_upoly(&self) -> UPoly<S> {
        assert!(self.coeffs.is_empty() || self.offset >= 0, "negative exponents");
        let mut v = vec![S::zero(); self.offset.max(0) as usize];
        v.extend(self.coeffs.iter().cloned());
        UPoly::new(v)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "offset": self.offset,
            "coeffs": self.coeffs.iter().map(Scalar::to_json).collect::<Vec<_>>(),
            "prec": self.prec,
        })
    }
}

impl<S: Scalar> fmt::Display for Series<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = self.offset + i as i64;
            let mono = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            parts.push((c.to_string(), mono));
        }
        let mut s = crate::arith::format_terms(parts.into_iter());
        if let Some(p) = self.prec {
            if s == "0" {
                s = format!("O(t^{p})");
            } else {
                s.push_str(&format!(" + O(t^{p})"));
            }
        }
        f.write_str(&s)
    }
}

impl<S: Scalar> Add for &Series<S> {
    type Output = Series<S>;
    fn add(self, o: &Series<S>) -> Series<S> {
        let prec = min_prec(self.prec, o.prec);
        if self.coeffs.is_empty() {
            return Series::new(o.offset, o.coeffs.clone(), prec);
        }
        if o.coeffs.is_empty() {
            return Series::new(self.offset, self.coeffs.clone(), prec);
        }
        let lo = self.offset.min(o.offset);
        let hi = (self.offset + self.coeffs.len() as i64).max(o.offset + o.coeffs.len() as i64);
        let hi = prec.map_or(hi, |p| hi.min(p));
        let mut v = vec![S::zero(); (hi - lo).max(0) as usize];
        for (s, src) in [(self.offset, &self.coeffs), (o.offset, &o.coeffs)] {
            for (i, c) in src.iter().enumerate() {
                let k = s + i as i64 - lo;
                if (k as usize) < v.len() {
                    v[k as usize] = v[k as usize].clone() + c;
                }
            }
        }
        Series::new(lo, v, prec)
    }
}

impl<S: Scalar> Neg for &Series<S> {
    type Output = Series<S>;
    fn neg(self) -> Series<S> {
        Series { offset: self.offset, coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(), prec: self.prec }
    }
}

impl<S: Scalar> Sub for &Series<S> {
    type Output = Series<S>;
    fn sub(self, o: &Series<S>) -> Series<S> {
        self + &(-o)
    }
}

impl<S: Scalar> Mul for &Series<S> {
    type Output = Series<S>;
    fn mul(self, o: &Series<S>) -> Series<S> {
        let pa = match (self.prec, o.val_lower()) {
            (Some(p), Some(v)) => Some(p + v),
            (Some(_), None) => None,
            (None, _) => None,
        };
        let pb = match (o.prec, self.val_lower()) {
            (Some(p), Some(v)) => Some(p + v),
            (Some(_), None) => None,
            (None, _) => None,
        };
        // an exact zero factor makes the product exactly zero
        let exact_zero = (self.coeffs.is_empty() && self.prec.is_none()) || (o.coeffs.is_empty() && o.prec.is_none());
        if exact_zero {
            return Series::exact(0, Vec::new());
        }
        let prec = min_prec(pa, pb);
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Series::new(0, Vec::new(), prec);
        }
        let off = self.offset + o.offset;
        let mut len = self.coeffs.len() + o.coeffs.len() - 1;
        if let Some(p) = prec {
            len = len.min((p - off).max(0) as usize);
        }
        let mut v = vec![S::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len || a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(len - i) {
                v[i + j] = v[i + j].clone() + a.clone() * b;
            }
        }
        Series::new(off, v, prec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, Rat};

    type R = Series<Rat>;

    #[test]
    fn orders() {
        assert_eq!(R::exact(2, vec![int(1), int(1)]).ord().unwrap(), Some(2));
        assert_eq!(R::exact(0, vec![]).ord().unwrap(), None);
        assert!(matches!(R::zero_to(5).ord(), Err(SeriesError::IndeterminateOrder(5))));
        assert_eq!(R::exact(0, vec![int(0), int(0), int(3)]).offset(), 2);
    }

    #[test]
    fn precision_tracking() {
        let a = R::new(0, vec![int(1), int(1)], Some(4));
        let b = R::monomial(int(1), -1);
        let p = &a * &b;
        assert_eq!(p.prec(), Some(3));
        assert_eq!(p.coeff(-1), Some(int(1)));
        let s = &a + &R::zero_to(2);
        assert_eq!(s.prec(), Some(2));
    }

    #[test]
    fn inverse_of_one_plus_t() {
        let a = R::exact(0, vec![int(1), int(1)]);
        let inv = a.inverse(5).unwrap();
        assert_eq!(inv.coeffs_range(0, 4).unwrap(), vec![int(1), int(-1), int(1), int(-1), int(1)]);
        let t2 = R::exact(2, vec![int(2)]).inverse(3).unwrap();
        assert_eq!(t2.coeff(-2), Some(rat(1, 2)));
        assert_eq!(t2.prec(), Some(1));
    }

    #[test]
    fn display() {
        let s = R::new(-1, vec![int(1), int(0), rat(-1, 4)], Some(3));
        assert_eq!(s.to_string(), "t^-1 - (1/4)*t + O(t^3)");
    }
}
