use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::upoly::format_terms;
use super::{Scalar, UPoly};

/// Polynomial in `X` and `Y`, stored as a polynomial in `Y` whose
/// coefficients are dense polynomials in `X`: `f = sum_j a_j(X) Y^j`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct BPoly<S> {
    ycoeffs: Vec<UPoly<S>>,
}

impl<S: Scalar> BPoly<S> {
    pub fn new(mut ycoeffs: Vec<UPoly<S>>) -> Self {
        while ycoeffs.last().is_some_and(|c| c.is_zero()) {
            ycoeffs.pop();
        }
        BPoly { ycoeffs }
    }

    pub fn zero() -> Self {
        BPoly { ycoeffs: Vec::new() }
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![UPoly::constant(c)])
    }

    pub fn x() -> Self {
        Self::new(vec![UPoly::monomial(S::one(), 1)])
    }

    pub fn y() -> Self {
        Self::new(vec![UPoly::zero(), UPoly::one()])
    }

    /// `c X^i Y^j`
    pub fn monomial(c: S, i: usize, j: usize) -> Self {
        let mut v = vec![UPoly::zero(); j];
        v.push(UPoly::monomial(c, i));
        Self::new(v)
    }

    pub fn from_x(p: UPoly<S>) -> Self {
        Self::new(vec![p])
    }

    pub fn from_y(p: &UPoly<S>) -> Self {
        Self::new(p.coeffs().iter().map(|c| UPoly::constant(c.clone())).collect())
    }

    /// Builds from a matrix with `rows[i][j]` the coefficient of `X^i Y^j`.
    pub fn from_matrix(rows: &[Vec<S>]) -> Self {
        let ny = rows.iter().map(Vec::len).max().unwrap_or(0);
        Self::new(
            (0..ny)
                .map(|j| {
                    UPoly::new(
                        rows.iter()
                            .map(|r| r.get(j).cloned().unwrap_or_else(S::zero))
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    /// `(deg_x + 1) x (deg_y + 1)` matrix, `[i][j]` = coefficient of `X^i Y^j`.
    pub fn to_matrix(&self) -> Vec<Vec<S>> {
        if self.is_zero() {
            return Vec::new();
        }
        (0..=self.deg_x())
            .map(|i| (0..=self.deg_y()).map(|j| self.coeff(i, j)).collect())
            .collect()
    }

    pub fn ycoeffs(&self) -> &[UPoly<S>] {
        &self.ycoeffs
    }

    pub fn y_coeff(&self, j: usize) -> UPoly<S> {
        self.ycoeffs.get(j).cloned().unwrap_or_else(UPoly::zero)
    }

    pub fn coeff(&self, i: usize, j: usize) -> S {
        self.ycoeffs.get(j).map(|p| p.coeff(i)).unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.ycoeffs.is_empty()
    }

    pub fn deg_y(&self) -> usize {
        self.ycoeffs.len().saturating_sub(1)
    }

    pub fn deg_x(&self) -> usize {
        self.ycoeffs.iter().map(UPoly::deg).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> usize {
        self.ycoeffs
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(j, p)| j + p.deg())
            .max()
            .unwrap_or(0)
    }

    /// Leading coefficient with respect to `Y`.
    pub fn lc_y(&self) -> UPoly<S> {
        self.ycoeffs.last().cloned().unwrap_or_else(UPoly::zero)
    }

    /// Coefficient of `Y^n` is the constant `1`.
    pub fn is_monic_in_y(&self) -> bool {
        self.lc_y() == UPoly::one()
    }

    /// All nonzero coefficients, ordered by `(j, i)`.
    pub fn nonzero_coeffs(&self) -> Vec<S> {
        self.ycoeffs
            .iter()
            .flat_map(|p| p.coeffs().iter().filter(|c| !c.is_zero()).cloned())
            .collect()
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(self.ycoeffs.iter().map(|p| p.scale(c)).collect())
    }

    pub fn scale_x(&self, p: &UPoly<S>) -> Self {
        Self::new(self.ycoeffs.iter().map(|q| q * p).collect())
    }

    /// `f(a, Y)`
    pub fn eval_x(&self, a: &S) -> UPoly<S> {
        UPoly::new(self.ycoeffs.iter().map(|p| p.eval(a)).collect())
    }

    /// `f(X, b)`
    pub fn eval_y(&self, b: &S) -> UPoly<S> {
        let mut acc = UPoly::zero();
        for p in self.ycoeffs.iter().rev() {
            acc = &acc.scale(b) + p;
        }
        acc
    }

    /// `f(X, q(X))`
    pub fn eval_y_poly(&self, q: &UPoly<S>) -> UPoly<S> {
        let mut acc = UPoly::zero();
        for p in self.ycoeffs.iter().rev() {
            acc = &(&acc * q) + p;
        }
        acc
    }

    pub fn derivative_y(&self) -> Self {
        Self::new(
            self.ycoeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, p)| p.scale(&S::from_i64(j as i64)))
                .collect(),
        )
    }

    pub fn derivative_x(&self) -> Self {
        Self::new(self.ycoeffs.iter().map(UPoly::derivative).collect())
    }

    /// `f(X + a, Y)`
    pub fn shift_x(&self, a: &S) -> Self {
        Self::new(self.ycoeffs.iter().map(|p| p.shift(a)).collect())
    }

    /// `f(Y, X)`
    pub fn swap(&self) -> Self {
        let m = self.to_matrix();
        if m.is_empty() {
            return Self::zero();
        }
        let t: Vec<Vec<S>> = (0..m[0].len())
            .map(|j| m.iter().map(|row| row[j].clone()).collect())
            .collect();
        Self::from_matrix(&t)
    }

    /// `X^k f(1/X, Y)`; requires `k >= deg_x`.
    pub fn reverse_x(&self, k: usize) -> Self {
        assert!(k >= self.deg_x() || self.is_zero());
        Self::new(
            self.ycoeffs
                .iter()
                .map(|p| {
                    let mut c = p.coeffs().to_vec();
                    c.resize(k + 1, S::zero());
                    c.reverse();
                    UPoly::new(c)
                })
                .collect(),
        )
    }

    /// `f(X, g(X, Y))`
    pub fn compose_y(&self, g: &Self) -> Self {
        let mut acc = Self::zero();
        for p in self.ycoeffs.iter().rev() {
            acc = &(&acc * g) + &Self::from_x(p.clone());
        }
        acc
    }

    /// Divides every `X`-coefficient by `X^k`; they must all be divisible.
    pub fn div_xk(&self, k: usize) -> Self {
        Self::new(
            self.ycoeffs
                .iter()
                .map(|p| {
                    if p.is_zero() {
                        return UPoly::zero();
                    }
                    assert!(p.ord().unwrap() >= k, "not divisible by X^{k}");
                    UPoly::new(p.coeffs()[k..].to_vec())
                })
                .collect(),
        )
    }

    /// Largest `k` with `X^k` dividing `f`.
    pub fn x_adic_content(&self) -> usize {
        self.ycoeffs.iter().filter_map(UPoly::ord).min().unwrap_or(0)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(S::one());
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

    pub fn display_with(&self, xv: &str, yv: &str) -> String {
        let mut terms = Vec::new();
        for j in (0..self.ycoeffs.len()).rev() {
            let p = &self.ycoeffs[j];
            for i in (0..p.coeffs().len()).rev() {
                let c = &p.coeffs()[i];
                if c.is_zero() {
                    continue;
                }
                let xm = match i {
                    0 => String::new(),
                    1 => xv.to_string(),
                    _ => format!("{xv}^{i}"),
                };
                let ym = match j {
                    0 => String::new(),
                    1 => yv.to_string(),
                    _ => format!("{yv}^{j}"),
                };
                let mono = match (xm.is_empty(), ym.is_empty()) {
                    (true, _) => ym,
                    (_, true) => xm,
                    _ => format!("{xm}*{ym}"),
                };
                terms.push((c.to_string(), mono));
            }
        }
        format_terms(terms.into_iter())
    }
}

impl<S: Scalar> fmt::Display for BPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("X", "Y"))
    }
}

impl<'a, S: Scalar> Add<&'a BPoly<S>> for &'a BPoly<S> {
    type Output = BPoly<S>;
    fn add(self, o: &BPoly<S>) -> BPoly<S> {
        let n = self.ycoeffs.len().max(o.ycoeffs.len());
        BPoly::new((0..n).map(|j| &self.y_coeff(j) + &o.y_coeff(j)).collect())
    }
}

impl<'a, S: Scalar> Sub<&'a BPoly<S>> for &'a BPoly<S> {
    type Output = BPoly<S>;
    fn sub(self, o: &BPoly<S>) -> BPoly<S> {
        let n = self.ycoeffs.len().max(o.ycoeffs.len());
        BPoly::new((0..n).map(|j| &self.y_coeff(j) - &o.y_coeff(j)).collect())
    }
}

impl<'a, S: Scalar> Mul<&'a BPoly<S>> for &'a BPoly<S> {
    type Output = BPoly<S>;
    fn mul(self, o: &BPoly<S>) -> BPoly<S> {
        if self.is_zero() || o.is_zero() {
            return BPoly::zero();
        }
        let mut v = vec![UPoly::zero(); self.ycoeffs.len() + o.ycoeffs.len() - 1];
        for (i, a) in self.ycoeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.ycoeffs.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        BPoly::new(v)
    }
}

impl<S: Scalar> Neg for &BPoly<S> {
    type Output = BPoly<S>;
    fn neg(self) -> BPoly<S> {
        BPoly::new(self.ycoeffs.iter().map(|p| -p).collect())
    }
}

impl<S: Scalar> Zero for BPoly<S> {
    fn zero() -> Self {
        BPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.ycoeffs.is_empty()
    }
}

impl<S: Scalar> Add for BPoly<S> {
    type Output = BPoly<S>;
    fn add(self, o: BPoly<S>) -> BPoly<S> {
        &self + &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, Rat};

    fn e0() -> BPoly<Rat> {
        // Y^2 - X Y + 1/4
        BPoly::from_matrix(&[vec![rat(1, 4), int(0), int(1)], vec![int(0), int(-1)]])
    }

    #[test]
    fn degrees_and_monic() {
        let f = e0();
        assert_eq!((f.deg_x(), f.deg_y()), (1, 2));
        assert!(f.is_monic_in_y());
        assert_eq!(f.coeff(1, 1), int(-1));
        assert_eq!(f.to_string(), "Y^2 - X*Y + 1/4");
    }

    #[test]
    fn evaluation_and_derivatives() {
        let f = e0();
        assert_eq!(f.eval_x(&int(1)), UPoly::new(vec![rat(1, 4), int(-1), int(1)]));
        assert_eq!(f.derivative_y().to_string(), "2*Y - X");
        let swapped = f.swap();
        assert_eq!(swapped.coeff(1, 1), int(-1));
        assert_eq!(swapped.coeff(2, 0), int(1));
    }

    #[test]
    fn reversal() {
        // X^1 f(1/X, Y) = X Y^2 - Y + X/4
        let g = e0().reverse_x(1);
        assert_eq!(g.to_string(), "X*Y^2 - Y + (1/4)*X");
    }

    #[test]
    fn compose_identity() {
        let f = e0();
        assert_eq!(f.compose_y(&BPoly::y()), f);
        let sh = f.compose_y(&(&BPoly::y() + &BPoly::constant(int(1))));
        assert_eq!(sh.eval_x(&int(0)).eval(&int(-1)), rat(1, 4));
    }
}
