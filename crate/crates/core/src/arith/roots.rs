//! Roots lying in the coefficient field.

use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::complex::{aberth, complex_roots_with_cap, DEFAULT_PRECISION_CAP};
use super::rat::{abs_uint, trial_factor};
use super::{common_denominator, to_f64, ArithError, NFElem, NumberField, Rat, Scalar, UPoly};

/// Roots of a polynomial in the scalar field with their multiplicities,
/// sorted canonically, and what remains after dividing them out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSplit<S> {
    pub roots: Vec<(S, usize)>,
    pub cofactor: UPoly<S>,
}

impl<S: Scalar> RootSplit<S> {
    fn assemble(p: &UPoly<S>, mut distinct: Vec<S>) -> Self {
        distinct.sort_by(|a, b| a.canonical_cmp(b));
        distinct.dedup();
        let mut cofactor = p.clone();
        let mut roots = Vec::with_capacity(distinct.len());
        for r in distinct {
            let lin = UPoly::linear_root(&r);
            let mut k = 0;
            while let Some(q) = cofactor.exact_div(&lin) {
                cofactor = q;
                k += 1;
            }
            roots.push((r, k));
        }
        RootSplit { roots, cofactor }
    }

    /// Whether the polynomial splits into linear factors over the field.
    pub fn is_complete(&self) -> bool {
        self.cofactor.deg() == 0
    }
}

/// Yun's squarefree decomposition: pairs `(s_k, k)` with `p = lc * prod s_k^k`
/// and every `s_k` monic, squarefree and of positive degree.
pub fn squarefree_decomposition<S: Scalar>(p: &UPoly<S>) -> Vec<(UPoly<S>, usize)> {
    let mut out = Vec::new();
    if p.deg() == 0 {
        return out;
    }
    let f = p.monic();
    let df = f.derivative();
    let a = f.gcd(&df);
    let mut b = f.exact_div(&a).expect("gcd divides");
    let c = df.exact_div(&a).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut k = 1;
    while b.deg() > 0 {
        let a = b.gcd(&d);
        let nb = b.exact_div(&a).expect("gcd divides");
        let c = d.exact_div(&a).expect("gcd divides");
        d = &c - &nb.derivative();
        if a.deg() > 0 {
            out.push((a, k));
        }
        b = nb;
        k += 1;
    }
    out
}

/// Rational roots by the rational root theorem, falling back to rounding
/// certified complex enclosures when the extreme coefficients are too large
/// to factor by trial division.
pub fn rational_roots(p: &UPoly<Rat>) -> RootSplit<Rat> {
    if p.is_zero() {
        return RootSplit { roots: Vec::new(), cofactor: UPoly::zero() };
    }
    let s = p.squarefree_part();
    let den = Rat::from_integer(common_denominator(s.coeffs()));
    let ints: Vec<BigInt> = s.coeffs().iter().map(|c| (c * &den).to_integer()).collect();
    let mut found = Vec::new();
    let lead = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if lead > 0 {
        found.push(Rat::zero());
    }
    let ints = &ints[lead..];
    let s = UPoly::new(ints.iter().cloned().map(Rat::from_integer).collect());
    if s.deg() >= 1 {
        let (a0, an) = (&ints[0], &ints[ints.len() - 1]);
        if a0.bits() <= 48 && an.bits() <= 48 {
            found.extend(divisor_candidates(&s, a0, an));
        } else {
            found.extend(numeric_candidates(&s, an));
        }
    }
    RootSplit::assemble(p, found)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut ds = vec![BigInt::one()];
    for (p, e) in trial_factor(&abs_uint(n)) {
        let p = BigInt::from(p);
        let mut next = Vec::with_capacity(ds.len() * (e as usize + 1));
        for d in &ds {
            let mut q = d.clone();
            for _ in 0..=e {
                next.push(q.clone());
                q *= &p;
            }
        }
        ds = next;
    }
    ds
}

fn divisor_candidates(s: &UPoly<Rat>, a0: &BigInt, an: &BigInt) -> Vec<Rat> {
    // every root is bounded by 1 + max |a_i / a_n|
    let bound = s.coeffs().iter().map(|c| (c / s.lc()).abs()).max().unwrap_or_else(Rat::zero) + Rat::one();
    let qs = divisors(an);
    let mut out = Vec::new();
    for num in divisors(a0) {
        for q in &qs {
            for sgn in [1, -1] {
                let r = Rat::new(&num * sgn, q.clone());
                if r.abs() <= bound && r.denom() == q && s.eval(&r).is_zero() {
                    out.push(r);
                }
            }
        }
    }
    out
}

fn numeric_candidates(s: &UPoly<Rat>, an: &BigInt) -> Vec<Rat> {
    let bound = s.coeffs().iter().map(|c| (c / s.lc()).abs()).max().unwrap_or_else(Rat::zero) + Rat::one();
    let target = (an.bits() + bound.to_integer().bits() + 4) as u32;
    let Ok(boxes) = complex_roots_with_cap(s, target, DEFAULT_PRECISION_CAP.max(4 * target)) else {
        return Vec::new();
    };
    let anr = Rat::from_integer(an.clone());
    boxes
        .iter()
        .filter(|b| b.meets_real_axis())
        .map(|b| Rat::new((&b.re * &anr).round().to_integer(), an.clone()))
        .filter(|r| s.eval(r).is_zero())
        .collect()
}

/// Best rational approximation with denominator at most `max_den`, accepted
/// only if it lies within `tol` of `x`.
fn approx_rational(x: f64, max_den: i64, tol: f64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1, mut k0, mut k1) = (0i128, 1i128, 1i128, 0i128);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        if a.abs() > 1e18 {
            break;
        }
        let ai = a as i128;
        let (h2, k2) = (ai * h1 + h0, ai * k1 + k0);
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if ((h1 as f64) / (k1 as f64) - x).abs() <= tol {
            return Some(Rat::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let frac = v - a;
        if frac == 0.0 {
            break;
        }
        v = 1.0 / frac;
    }
    ((h1 as f64 / k1 as f64) - x).abs().le(&tol).then(|| Rat::new(BigInt::from(h1), BigInt::from(k1)))
}

fn embed(a: &NFElem, theta: Complex64) -> Complex64 {
    let mut acc = Complex64::zero();
    for c in a.coords().iter().rev() {
        acc = acc * theta + to_f64(c);
    }
    acc
}

fn solve(mut m: Vec<Vec<Complex64>>, mut rhs: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let n = rhs.len();
    for k in 0..n {
        let piv = (k..n).max_by(|&a, &b| m[a][k].norm().total_cmp(&m[b][k].norm()))?;
        if m[piv][k].norm() == 0.0 {
            return None;
        }
        m.swap(k, piv);
        rhs.swap(k, piv);
        for i in k + 1..n {
            let f = m[i][k] / m[k][k];
            for j in k..n {
                let t = m[k][j];
                m[i][j] -= f * t;
            }
            let t = rhs[k];
            rhs[i] -= f * t;
        }
    }
    let mut x = vec![Complex64::zero(); n];
    for k in (0..n).rev() {
        let s: Complex64 = (k + 1..n).map(|j| m[k][j] * x[j]).sum();
        x[k] = (rhs[k] - s) / m[k][k];
    }
    Some(x)
}

const MAX_TUPLES: usize = 1 << 16;

/// Roots in `K` of a polynomial over `K`.
///
/// A root `a = sum c_i t^i` is determined by its images under the complex
/// embeddings `t -> theta_k`; candidate image tuples are drawn from the roots
/// of the embedded polynomials, the coordinates `c_i` recovered by a
/// Vandermonde solve and rounded to nearby rationals, and every candidate is
/// verified exactly. Roots whose coordinates have denominators beyond `f64`
/// reach are missed, never invented.
pub fn nf_roots(p: &UPoly<NFElem>, field: &Arc<NumberField>) -> Result<RootSplit<NFElem>, ArithError> {
    if p.is_zero() {
        return Ok(RootSplit { roots: Vec::new(), cofactor: UPoly::zero() });
    }
    let q = p.squarefree_part();
    let n = q.deg();
    if n == 0 {
        return Ok(RootSplit::assemble(p, Vec::new()));
    }
    if n == 1 {
        let r = -q.coeff(0).div_by(&q.coeff(1));
        return Ok(RootSplit::assemble(p, vec![r]));
    }
    let d = field.degree();
    let thetas: Vec<Complex64> = complex_roots_with_cap(field.minpoly(), 50, DEFAULT_PRECISION_CAP)?
        .iter()
        .map(|b| {
            let (re, im) = b.center_f64();
            Complex64::new(re, im)
        })
        .collect();
    let images: Vec<Vec<Complex64>> = thetas
        .iter()
        .map(|&th| aberth(&q.coeffs().iter().map(|c| embed(c, th)).collect::<Vec<_>>()))
        .collect();
    let vander: Vec<Vec<Complex64>> =
        thetas.iter().map(|&th| (0..d).map(|i| th.powu(i as u32)).collect()).collect();
    let mut found: Vec<NFElem> = Vec::new();
    let mut idx = vec![0usize; d];
    let total = n.checked_pow(d as u32).unwrap_or(usize::MAX).min(MAX_TUPLES);
    for _ in 0..total {
        if found.len() == n {
            break;
        }
        let rhs: Vec<Complex64> = (0..d).map(|k| images[k][idx[k]]).collect();
        if let Some(c) = solve(vander.clone(), rhs) {
            let coords: Option<Vec<Rat>> = c
                .iter()
                .map(|ci| {
                    let tol = 1e-7 * ci.re.abs().max(1.0);
                    (ci.im.abs() <= tol).then(|| approx_rational(ci.re, 1 << 30, tol)).flatten()
                })
                .collect();
            if let Some(coords) = coords {
                let a = NFElem::new(field, coords);
                if !found.contains(&a) && q.eval(&a).is_zero() {
                    found.push(a);
                }
            }
        }
        for k in 0..d {
            idx[k] += 1;
            if idx[k] < n {
                break;
            }
            idx[k] = 0;
        }
    }
    Ok(RootSplit::assemble(p, found))
}

/// `split_roots` for number-field scalars: purely rational input goes through
/// the rational root theorem.
pub(crate) fn nf_split_roots(p: &UPoly<NFElem>) -> Result<RootSplit<NFElem>, ArithError> {
    let field = p.coeffs().iter().find_map(|c| c.field().cloned());
    let rational: Option<Vec<Rat>> = p.coeffs().iter().map(|c| c.as_rat()).collect();
    match (field, rational) {
        (Some(f), Some(_)) if f.degree() > 1 => nf_roots(p, &f),
        (_, Some(cs)) => {
            let split = rational_roots(&UPoly::new(cs));
            Ok(RootSplit {
                roots: split.roots.into_iter().map(|(r, k)| (NFElem::rational(r), k)).collect(),
                cofactor: UPoly::new(split.cofactor.into_coeffs().into_iter().map(NFElem::rational).collect()),
            })
        }
        (Some(f), None) => nf_roots(p, &f),
        (None, None) => unreachable!("irrational coefficients carry their field"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn up(cs: &[i64]) -> UPoly<Rat> {
        UPoly::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // 4 (X - 1/2)^2 (X + 3) X
        let p = &(&up(&[-1, 2]) * &up(&[-1, 2])) * &(&up(&[3, 1]) * &up(&[0, 1]));
        let s = rational_roots(&p);
        assert_eq!(s.roots, vec![(int(-3), 1), (int(0), 1), (rat(1, 2), 2)]);
        assert_eq!(s.cofactor, up(&[4]));
        assert!(rational_roots(&up(&[-2, 0, 1])).roots.is_empty());
    }

    #[test]
    fn large_coefficients_use_enclosures() {
        let big = Rat::from_integer(BigInt::from(10).pow(30) + 7);
        let p = &UPoly::new(vec![-big.clone(), int(1)]) * &up(&[1, 0, 1]);
        let s = rational_roots(&p);
        assert_eq!(s.roots, vec![(big, 1)]);
    }

    #[test]
    fn yun() {
        let p = &up(&[-1, 1]).pow(3) * &up(&[1, 1]);
        let d = squarefree_decomposition(&p.scale(&int(5)));
        assert_eq!(d, vec![(up(&[1, 1]), 1), (up(&[-1, 1]), 3)]);
    }

    #[test]
    fn roots_in_quadratic_field() {
        let k = NumberField::new(up(&[-2, 0, 1])).unwrap();
        let s = k.generator();
        // (Y - sqrt2)(Y + 1/3 - sqrt2/5)
        let r2 = NFElem::new(&k, vec![rat(-1, 3), rat(1, 5)]);
        let p = &UPoly::linear_root(&s) * &UPoly::linear_root(&r2);
        let split = nf_roots(&p, &k).unwrap();
        assert_eq!(split.roots.len(), 2);
        assert!(split.is_complete());
        assert!(split.roots.iter().any(|(r, _)| *r == s));
        assert!(split.roots.iter().any(|(r, _)| *r == r2));
        // Y^2 - 3 has no root in Q(sqrt 2)
        let p3 = UPoly::new(vec![NFElem::rational(int(-3)), NFElem::zero(), NFElem::one()]);
        let p3 = UPoly::new(p3.into_coeffs().into_iter().map(|c| c * &NFElem::new(&k, vec![int(1)])).collect());
        assert!(nf_roots(&p3, &k).unwrap().roots.is_empty());
    }
}
