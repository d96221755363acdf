use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::Scalar;

/// Dense univariate polynomial, lowest degree first. The zero polynomial has
/// no coefficients; otherwise the last coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct UPoly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> UPoly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    /// `c * X^k`
    pub fn monomial(c: S, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut v = vec![S::zero(); k];
        v.push(c);
        UPoly { coeffs: v }
    }

    /// The polynomial `X - a`.
    pub fn linear_root(a: &S) -> Self {
        Self::new(vec![-a.clone(), S::one()])
    }

    pub fn from_rats(cs: &[super::Rat]) -> Self {
        Self::new(cs.iter().cloned().map(S::from_rat).collect())
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> S {
        self.coeffs.get(i).cloned().unwrap_or_else(S::zero)
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> S {
        self.coeffs.last().cloned().unwrap_or_else(S::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Lowest exponent with a nonzero coefficient, `None` for zero.
    pub fn ord(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c).collect())
    }

    pub fn mul_xk(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![S::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        UPoly { coeffs: v }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = self.lc().try_inv().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    pub fn eval(&self, x: &S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * &S::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(q(X))`
    pub fn compose(&self, q: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &Self::constant(c.clone());
        }
        acc
    }

    /// `self(X + a)`
    pub fn shift(&self, a: &S) -> Self {
        self.compose(&Self::new(vec![a.clone(), S::one()]))
    }

    /// Euclidean division over the field. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.deg();
        if self.coeffs.len() < d.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let inv = d.lc().try_inv().expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        let mut q = vec![S::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].clone() * &inv;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    r[k + i] = r[k + i].clone() - c.clone() * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Quotient of an exact division; `None` if there is a remainder.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().try_inv().expect("nonzero");
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Product of the distinct irreducible factors (monic).
    pub fn squarefree_part(&self) -> Self {
        if self.deg() == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).deg() == 0
    }

    /// Multiplicity of `a` as a root.
    pub fn root_multiplicity(&self, a: &S) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = Self::linear_root(a);
        let mut p = self.clone();
        let mut k = 0;
        while let Some(q) = p.exact_div(&lin) {
            p = q;
            k += 1;
        }
        k
    }

    /// Pretty form using the given variable name.
    pub fn display_with(&self, var: &str) -> String {
        format_terms(
            self.coeffs
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| {
                    let mono = match i {
                        0 => String::new(),
                        1 => var.to_string(),
                        _ => format!("{var}^{i}"),
                    };
                    (c.to_string(), mono)
                }),
        )
    }
}

/// Joins `(coefficient, monomial)` pairs into `a*m + b*n - ...`.
pub(crate) fn format_terms(terms: impl Iterator<Item = (String, String)>) -> String {
    let mut out = String::new();
    for (c, mono) in terms {
        let (neg, mag) = match c.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, c),
        };
        let body = if mono.is_empty() {
            mag
        } else if mag == "1" {
            mono
        } else if mag.contains('/') || mag.contains(' ') || mag.contains('+') {
            format!("({mag})*{mono}")
        } else {
            format!("{mag}*{mono}")
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<S: Scalar> fmt::Display for UPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("X"))
    }
}

impl<'a, S: Scalar> Add<&'a UPoly<S>> for &'a UPoly<S> {
    type Output = UPoly<S>;
    fn add(self, o: &UPoly<S>) -> UPoly<S> {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<'a, S: Scalar> Sub<&'a UPoly<S>> for &'a UPoly<S> {
    type Output = UPoly<S>;
    fn sub(self, o: &UPoly<S>) -> UPoly<S> {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<'a, S: Scalar> Mul<&'a UPoly<S>> for &'a UPoly<S> {
    type Output = UPoly<S>;
    fn mul(self, o: &UPoly<S>) -> UPoly<S> {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![S::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b;
            }
        }
        UPoly::new(v)
    }
}

impl<S: Scalar> Neg for &UPoly<S> {
    type Output = UPoly<S>;
    fn neg(self) -> UPoly<S> {
        UPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl<S: Scalar> $tr for UPoly<S> {
            type Output = UPoly<S>;
            fn $m(self, o: UPoly<S>) -> UPoly<S> {
                (&self).$m(&o)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<S: Scalar> Zero for UPoly<S> {
    fn zero() -> Self {
        UPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<S: Scalar> One for UPoly<S> {
    fn one() -> Self {
        UPoly::one()
    }
}
