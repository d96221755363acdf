//! Resultants and discriminants with respect to `Y`, with coefficients in
//! `K[X]`.
//!
//! The production path is the fraction-free subresultant PRS. The Sylvester
//! determinant (Bareiss elimination over `K[X]`) is kept as an independent
//! route for cross-checking.

use super::{BPoly, Scalar, UPoly};

type Coeff<S> = UPoly<S>;

fn ydeg<S: Scalar>(p: &[Coeff<S>]) -> usize {
    p.len() - 1
}

fn trim<S: Scalar>(mut p: Vec<Coeff<S>>) -> Vec<Coeff<S>> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn exact<S: Scalar>(a: &Coeff<S>, d: &Coeff<S>) -> Coeff<S> {
    a.exact_div(d).expect("subresultant division is exact")
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) a = q b + r`.
fn prem<S: Scalar>(a: &[Coeff<S>], b: &[Coeff<S>]) -> Vec<Coeff<S>> {
    let db = ydeg(b);
    let lb = b[db].clone();
    let mut r = a.to_vec();
    let mut e = ydeg(a) + 1 - db;
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        // r <- lb * r - lr * Y^(dr-db) * b
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        for (i, bc) in b.iter().enumerate() {
            let k = dr - db + i;
            r[k] = &r[k] - &(&lr * bc);
        }
        r = trim(r);
        e -= 1;
    }
    let scale = lb.pow(e as u32);
    trim(r.into_iter().map(|c| &c * &scale).collect())
}

fn upow<S: Scalar>(p: &Coeff<S>, e: usize) -> Coeff<S> {
    p.pow(e as u32)
}

/// `Res_Y(p, q)` by the subresultant algorithm.
pub fn resultant_y<S: Scalar>(p: &BPoly<S>, q: &BPoly<S>) -> UPoly<S> {
    if p.is_zero() || q.is_zero() {
        return UPoly::zero();
    }
    let mut a = p.ycoeffs().to_vec();
    let mut b = q.ycoeffs().to_vec();
    let mut sign_neg = false;
    if ydeg(&a) < ydeg(&b) {
        if ydeg(&a) % 2 == 1 && ydeg(&b) % 2 == 1 {
            sign_neg = true;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if ydeg(&b) == 0 {
        let r = upow(&b[0], ydeg(&a));
        return if sign_neg { -&r } else { r };
    }
    let mut g = Coeff::<S>::one();
    let mut h = Coeff::<S>::one();
    loop {
        let (da, db) = (ydeg(&a), ydeg(&b));
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign_neg = !sign_neg;
        }
        let r = prem(&a, &b);
        a = b;
        if r.is_empty() {
            return UPoly::zero();
        }
        let denom = &g * &upow(&h, delta);
        b = r.iter().map(|c| exact(c, &denom)).collect();
        g = a[ydeg(&a)].clone();
        h = if delta == 0 {
            h
        } else {
            exact(&upow(&g, delta), &upow(&h, delta - 1))
        };
        if ydeg(&b) == 0 {
            break;
        }
    }
    let da = ydeg(&a);
    let res = if da == 0 {
        Coeff::<S>::one()
    } else {
        exact(&upow(&b[0], da), &upow(&h, da - 1))
    };
    if sign_neg {
        -&res
    } else {
        res
    }
}

/// Determinant of a square matrix over `K[X]` by fraction-free Bareiss
/// elimination.
pub(crate) fn bareiss_det<S: Scalar>(mut m: Vec<Vec<Coeff<S>>>) -> Coeff<S> {
    let n = m.len();
    if n == 0 {
        return Coeff::<S>::one();
    }
    let mut sign_neg = false;
    let mut prev = Coeff::<S>::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(piv) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return UPoly::zero();
            };
            m.swap(k, piv);
            sign_neg = !sign_neg;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = exact(&num, &prev);
            }
            m[i][k] = UPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_neg {
        -&d
    } else {
        d
    }
}

/// `Res_Y(p, q)` as the determinant of the Sylvester matrix.
pub fn resultant_sylvester<S: Scalar>(p: &BPoly<S>, q: &BPoly<S>) -> UPoly<S> {
    if p.is_zero() || q.is_zero() {
        return UPoly::zero();
    }
    let (dp, dq) = (p.deg_y(), q.deg_y());
    if dp == 0 && dq == 0 {
        return UPoly::one();
    }
    let size = dp + dq;
    let mut rows = Vec::with_capacity(size);
    for r in 0..dq {
        let mut row = vec![UPoly::zero(); size];
        for j in 0..=dp {
            row[r + j] = p.y_coeff(dp - j);
        }
        rows.push(row);
    }
    for r in 0..dp {
        let mut row = vec![UPoly::zero(); size];
        for j in 0..=dq {
            row[r + j] = q.y_coeff(dq - j);
        }
        rows.push(row);
    }
    bareiss_det(rows)
}

/// `(-1)^(n(n-1)/2) Res_Y(f, f'_Y) / lc_Y(f)` for `n = deg_Y f >= 1`.
pub fn discriminant_y<S: Scalar>(f: &BPoly<S>) -> UPoly<S> {
    let n = f.deg_y();
    assert!(n >= 1, "discriminant needs positive Y-degree");
    let r = resultant_y(f, &f.derivative_y());
    let d = r.exact_div(&f.lc_y()).expect("leading coefficient divides the resultant");
    if (n * (n - 1) / 2) % 2 == 1 {
        -&d
    } else {
        d
    }
}

/// Resultant of two univariate polynomials over the field.
pub fn uresultant<S: Scalar>(a: &UPoly<S>, b: &UPoly<S>) -> S {
    if a.is_zero() || b.is_zero() {
        return S::zero();
    }
    let (da, db) = (a.deg(), b.deg());
    if db == 0 {
        return pow_s(&b.lc(), da);
    }
    if da == 0 {
        return pow_s(&a.lc(), db);
    }
    // Res(a, b) = (-1)^(da db) lc(b)^(da - dr) Res(b, r), r = a mod b
    let r = a.rem(b);
    if r.is_zero() {
        return S::zero();
    }
    let dr = r.deg();
    let mut out = pow_s(&b.lc(), da - dr) * &uresultant(b, &r);
    if (da * db) % 2 == 1 {
        out = -out;
    }
    out
}

pub fn udiscriminant<S: Scalar>(a: &UPoly<S>) -> S {
    let n = a.deg();
    let r = uresultant(a, &a.derivative()).div_by(&a.lc());
    if (n * (n.saturating_sub(1)) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

fn pow_s<S: Scalar>(s: &S, e: usize) -> S {
    (0..e).fold(S::one(), |acc, _| acc * s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, Rat};

    fn bp(rows: &[&[i64]]) -> BPoly<Rat> {
        BPoly::from_matrix(&rows.iter().map(|r| r.iter().map(|&c| int(c)).collect()).collect::<Vec<_>>())
    }

    fn x_poly(cs: &[i64]) -> UPoly<Rat> {
        UPoly::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn small_resultants() {
        // Y - X and Y + X
        let p = bp(&[&[0, 1], &[-1]]);
        let q = bp(&[&[0, 1], &[1]]);
        assert_eq!(resultant_y(&p, &q), x_poly(&[0, 2]));
        assert_eq!(resultant_sylvester(&p, &q), x_poly(&[0, 2]));
        // Y^2 - X and 2Y: the 3x3 Sylvester determinant is -4X
        let p = bp(&[&[0, 0, 1], &[-1]]);
        let q = bp(&[&[0, 2]]);
        assert_eq!(resultant_y(&p, &q), x_poly(&[0, -4]));
        assert_eq!(resultant_sylvester(&p, &q), x_poly(&[0, -4]));
        assert_eq!(resultant_y(&q, &p), x_poly(&[0, -4]));
        // Y and Y share a root
        let y = bp(&[&[0, 1]]);
        assert!(resultant_y(&y, &y).is_zero());
    }

    #[test]
    fn quadratic_discriminants() {
        let f = bp(&[&[0, 0, 1], &[-1]]);
        assert_eq!(discriminant_y(&f), x_poly(&[0, 4]));
        let e0 = BPoly::from_matrix(&[vec![rat(1, 4), int(0), int(1)], vec![int(0), int(-1)]]);
        assert_eq!(discriminant_y(&e0), x_poly(&[-1, 0, 1]));
        let c = bp(&[&[-1, 0, 1]]);
        assert_eq!(discriminant_y(&c), x_poly(&[4]));
    }

    #[test]
    fn cubic_matches_sylvester() {
        // Y^3 + X Y^2 - (X^2 + 1) Y + 3X
        let f = bp(&[&[0, -1, 0, 1], &[3, 0, 1], &[0, -1]]);
        let fy = f.derivative_y();
        assert_eq!(resultant_y(&f, &fy), resultant_sylvester(&f, &fy));
        let g = bp(&[&[2, 1], &[0, 0, 1], &[1]]);
        assert_eq!(resultant_y(&f, &g), resultant_sylvester(&f, &g));
        assert_eq!(resultant_y(&g, &f), resultant_sylvester(&g, &f));
    }

    #[test]
    fn univariate() {
        let a = x_poly(&[-2, 0, 1]);
        assert_eq!(udiscriminant(&a), int(8));
        let b = x_poly(&[1, 1]);
        // Res(X^2 - 2, X + 1) = (-1)^2 - 2
        assert_eq!(uresultant(&a, &b), int(-1));
    }
}
