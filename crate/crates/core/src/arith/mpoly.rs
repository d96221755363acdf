//! Sparse multivariate polynomials over an indexed set of variables.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::upoly::format_terms;
use super::{BPoly, Scalar, UPoly};

/// Exponent vector as `(variable, exponent)` pairs, sorted by variable, with
/// every exponent positive.
pub type Monomial = Vec<(u32, u32)>;

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn mono_degree(m: &Monomial) -> usize {
    m.iter().map(|&(_, e)| e as usize).sum()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MPoly<S> {
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> MPoly<S> {
    pub fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::monomial(c, Vec::new())
    }

    pub fn var(v: u32) -> Self {
        Self::monomial(S::one(), vec![(v, 1)])
    }

    pub fn monomial(c: S, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, S)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// `p(v)` as a polynomial in the single variable `v`.
    pub fn from_upoly(p: &UPoly<S>, v: u32) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (if i == 0 { vec![] } else { vec![(v, i as u32)] }, c.clone())),
        )
    }

    /// `f(x, y)` with `X -> x` and `Y -> y`.
    pub fn from_bpoly(f: &BPoly<S>, x: u32, y: u32) -> Self {
        let mut p = Self::zero();
        for (j, a) in f.ycoeffs().iter().enumerate() {
            for (i, c) in a.coeffs().iter().enumerate() {
                let mut m = Vec::new();
                if i > 0 {
                    m.push((x, i as u32));
                }
                if j > 0 {
                    m.push((y, j as u32));
                }
                m.sort();
                p.add_term(m, c.clone());
            }
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = &S> {
        self.terms.values()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<S> {
        match self.terms.len() {
            0 => Some(S::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(mono_degree).max()
    }

    pub fn degree_in(&self, v: u32) -> usize {
        self.degree_in_vars(|w| w == v)
    }

    /// Total degree in the variables selected by `sel`.
    pub fn degree_in_vars(&self, sel: impl Fn(u32) -> bool) -> usize {
        self.terms
            .keys()
            .map(|m| m.iter().filter(|(w, _)| sel(*w)).map(|&(_, e)| e as usize).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<u32> {
        self.terms.keys().flat_map(|m| m.iter().map(|&(v, _)| v)).collect()
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c)).collect() }
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

    /// Full evaluation; `val` must cover every variable present.
    pub fn eval(&self, val: impl Fn(u32) -> S) -> S {
        let mut cache: HashMap<u32, S> = HashMap::new();
        let mut acc = S::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m {
                let x = cache.entry(v).or_insert_with(|| val(v)).clone();
                for _ in 0..e {
                    t = t * &x;
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Simultaneous substitution of the mapped variables; others stay.
    pub fn substitute(&self, map: &BTreeMap<u32, MPoly<S>>) -> Self {
        let mut powers: HashMap<(u32, u32), MPoly<S>> = HashMap::new();
        let mut acc = Self::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut t = Self::constant(c.clone());
            for &(v, e) in m {
                match map.get(&v) {
                    Some(q) => {
                        let qe = powers.entry((v, e)).or_insert_with(|| q.pow(e)).clone();
                        t = &t * &qe;
                    }
                    None => kept.push((v, e)),
                }
            }
            let t = &t * &Self::monomial(S::one(), kept);
            acc = &acc + &t;
        }
        acc
    }

    /// Coefficients with respect to `v`: `self = sum_k c_k v^k`.
    pub fn coeffs_in(&self, v: u32) -> Vec<MPoly<S>> {
        let mut out = vec![Self::zero(); self.degree_in(v) + 1];
        for (m, c) in &self.terms {
            let k = m.iter().find(|(w, _)| *w == v).map_or(0, |&(_, e)| e as usize);
            let rest: Monomial = m.iter().copied().filter(|(w, _)| *w != v).collect();
            out[k].add_term(rest, c.clone());
        }
        out
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> MPoly<T> {
        MPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn display_with(&self, name: &dyn Fn(u32) -> String) -> String {
        format_terms(self.terms.iter().rev().map(|(m, c)| {
            let mono = m
                .iter()
                .map(|&(v, e)| if e == 1 { name(v) } else { format!("{}^{}", name(v), e) })
                .collect::<Vec<_>>()
                .join("*");
            (c.to_string(), mono)
        }))
    }
}

impl<S: Scalar> fmt::Display for MPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&|v| format!("x{v}")))
    }
}

impl<S: Scalar> Add for &MPoly<S> {
    type Output = MPoly<S>;
    fn add(self, o: &MPoly<S>) -> MPoly<S> {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }
}

impl<S: Scalar> Sub for &MPoly<S> {
    type Output = MPoly<S>;
    fn sub(self, o: &MPoly<S>) -> MPoly<S> {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), -c.clone());
        }
        r
    }
}

impl<S: Scalar> Mul for &MPoly<S> {
    type Output = MPoly<S>;
    fn mul(self, o: &MPoly<S>) -> MPoly<S> {
        let mut r = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                r.add_term(mono_mul(ma, mb), ca.clone() * cb);
            }
        }
        r
    }
}

impl<S: Scalar> Neg for &MPoly<S> {
    type Output = MPoly<S>;
    fn neg(self) -> MPoly<S> {
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl<S: Scalar> $tr for MPoly<S> {
            type Output = MPoly<S>;
            fn $f(self, o: MPoly<S>) -> MPoly<S> {
                (&self).$f(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl<S: Scalar> Zero for MPoly<S> {
    fn zero() -> Self {
        MPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<S: Scalar> One for MPoly<S> {
    fn one() -> Self {
        MPoly::one()
    }
}

/// Determinant by cofactor expansion along rows, memoized on the set of
/// columns still available. Division free, so valid over any commutative
/// ring; intended for matrices up to size about 12.
pub fn mpoly_det<S: Scalar>(m: &[Vec<MPoly<S>>]) -> MPoly<S> {
    let n = m.len();
    assert!(n < 32 && m.iter().all(|r| r.len() == n), "square matrix expected");
    let mut memo: HashMap<u32, MPoly<S>> = HashMap::new();
    minor(m, 0, (1u32 << n) - 1, &mut memo)
}

fn minor<S: Scalar>(m: &[Vec<MPoly<S>>], row: usize, cols: u32, memo: &mut HashMap<u32, MPoly<S>>) -> MPoly<S> {
    if row == m.len() {
        return MPoly::one();
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let mut acc = MPoly::zero();
    let mut sign_pos = true;
    for c in 0..m.len() {
        if cols & (1 << c) == 0 {
            continue;
        }
        if !m[row][c].is_zero() {
            let sub = minor(m, row + 1, cols & !(1 << c), memo);
            let t = &m[row][c] * &sub;
            acc = if sign_pos { &acc + &t } else { &acc - &t };
        }
        sign_pos = !sign_pos;
    }
    memo.insert(cols, acc.clone());
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, Rat};

    type P = MPoly<Rat>;

    #[test]
    fn arithmetic_and_substitution() {
        let (x, y) = (P::var(0), P::var(1));
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p, &x.pow(2) - &y.pow(2));
        assert_eq!(p.total_degree(), Some(2));
        let map = [(1, &x + &P::one())].into_iter().collect();
        // x^2 - (x+1)^2 = -2x - 1
        assert_eq!(p.substitute(&map), &x.scale(&int(-2)) - &P::one());
        assert_eq!(p.eval(|v| int(v as i64 + 2)), int(4 - 9));
        let cs = p.coeffs_in(1);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[2], P::constant(int(-1)));
    }

    #[test]
    fn determinant_matches_formula() {
        let (a, b, c, d) = (P::var(0), P::var(1), P::var(2), P::var(3));
        let det = mpoly_det(&[vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]]);
        assert_eq!(det, &(&a * &d) - &(&b * &c));
        let i3: Vec<Vec<P>> =
            (0..3).map(|i| (0..3).map(|j| if i == j { P::one() } else { P::zero() }).collect()).collect();
        assert_eq!(mpoly_det(&i3), P::one());
    }

    #[test]
    fn bpoly_roundtrip_degree() {
        let f = BPoly::from_matrix(&[vec![int(1), int(0), int(1)], vec![int(0), int(-1)]]);
        let p = P::from_bpoly(&f, 0, 1);
        assert_eq!(p.degree_in(1), 2);
        assert_eq!(p.total_degree(), Some(2));
        assert_eq!(p.len(), 3);
    }
}
