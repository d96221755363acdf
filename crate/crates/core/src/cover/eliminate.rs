use super::CoverError;
use crate::arith::{discriminant_y, BPoly, Scalar, UPoly};

/// Coordinates of `p mod F0` in the basis `1, Y0, ..., Y0^(n-1)`.
fn reduce<S: Scalar>(p: &BPoly<S>, f0: &BPoly<S>) -> Vec<UPoly<S>> {
    let n = f0.deg_y();
    let mut c: Vec<UPoly<S>> = p.ycoeffs().to_vec();
    while c.len() > n {
        let top = c.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let shift = c.len() - n;
        for (j, a) in f0.ycoeffs().iter().enumerate().take(n) {
            c[shift + j] = &c[shift + j] - &(&top * a);
        }
    }
    c.resize(n, UPoly::zero());
    c
}

fn times_y0<S: Scalar>(v: &[UPoly<S>], f0: &BPoly<S>) -> Vec<UPoly<S>> {
    let mut shifted = vec![UPoly::zero()];
    shifted.extend(v.iter().cloned());
    reduce(&BPoly::new(shifted), f0)
}

type Mat<S> = Vec<Vec<UPoly<S>>>;

fn mat_mul<S: Scalar>(a: &Mat<S>, b: &Mat<S>) -> Mat<S> {
    let n = a.len();
    let mut out = vec![vec![UPoly::zero(); n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            for (k, bk) in b.iter().enumerate() {
                if !a[i][k].is_zero() && !bk[j].is_zero() {
                    *cell = &*cell + &(&a[i][k] * &bk[j]);
                }
            }
        }
    }
    out
}

/// Characteristic polynomial `det(Y I - A)` over `K[X]` by Faddeev-LeVerrier.
fn charpoly<S: Scalar>(a: &Mat<S>) -> BPoly<S> {
    let n = a.len();
    let mut c = vec![UPoly::zero(); n + 1];
    c[n] = UPoly::one();
    let mut mk: Mat<S> = vec![vec![UPoly::zero(); n]; n];
    for k in 1..=n {
        let mut next = mat_mul(a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] = &row[i] + &c[n - k + 1];
        }
        mk = next;
        let am = mat_mul(a, &mk);
        let tr = am.iter().enumerate().fold(UPoly::zero(), |acc, (i, r)| &acc + &r[i]);
        c[n - k] = tr.scale(&-S::from_i64(k as i64).try_inv().expect("nonzero"));
    }
    BPoly::new(c)
}

/// `g` monic in `Y` with `g^k = f`, if it exists.
pub fn kth_root_y<S: Scalar>(f: &BPoly<S>, k: usize) -> Option<BPoly<S>> {
    let n = f.deg_y();
    if k == 0 || n % k != 0 || !f.is_monic_in_y() {
        return None;
    }
    let d = n / k;
    let inv_k = S::from_i64(k as i64).try_inv().ok()?;
    let mut g: Vec<UPoly<S>> = vec![UPoly::zero(); d + 1];
    g[d] = UPoly::one();
    for r in 1..=d {
        let p = BPoly::new(g.clone()).pow(k as u32);
        let diff = &f.y_coeff(n - r) - &p.y_coeff(n - r);
        g[d - r] = diff.scale(&inv_k);
    }
    let g = BPoly::new(g);
    (g.pow(k as u32) == *f).then_some(g)
}

/// Minimal polynomial of `y = y_expr(x, y0)` over `K(x)` where
/// `F0(x, y0) = 0`: the characteristic polynomial of multiplication by
/// `y_expr` on `K[x][y0]/(F0)`, which equals `Res_Y0(F0, Y - y_expr)` up to
/// sign.
///
/// ```
/// use covercert::arith::{int, rat, BPoly};
/// use covercert::cover::eliminate;
///
/// // F0 = Y0^2 - X^2 + 1 and y = (Y0 + X)/2
/// let f0 = BPoly::from_matrix(&[vec![int(1), int(0), int(1)], vec![int(0)], vec![int(-1)]]);
/// let y = BPoly::from_matrix(&[vec![int(0), rat(1, 2)], vec![rat(1, 2)]]);
/// let f = eliminate(&f0, &y).unwrap();
/// assert_eq!(f.to_string(), "Y^2 - X*Y + 1/4");
/// ```
pub fn eliminate<S: Scalar>(f0: &BPoly<S>, y_expr: &BPoly<S>) -> Result<BPoly<S>, CoverError> {
    if f0.is_zero() || f0.deg_y() == 0 {
        return Err(CoverError::NotMonic);
    }
    let lc = f0.lc_y();
    if lc.deg() != 0 {
        return Err(CoverError::NotMonic);
    }
    let f0 = f0.scale(&lc.lc().try_inv()?);
    let n = f0.deg_y();
    let mut col = reduce(y_expr, &f0);
    let mut cols = Vec::with_capacity(n);
    for _ in 0..n {
        cols.push(col.clone());
        col = times_y0(&col, &f0);
    }
    // column j holds y_expr * Y0^j
    let a: Mat<S> = (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect();
    let f = charpoly(&a);
    if f.deg_y() >= 1 && !discriminant_y(&f).is_zero() {
        return Ok(f);
    }
    for k in (2..=n).rev() {
        if let Some(g) = kth_root_y(&f, k) {
            return Err(CoverError::NotSquarefreeAfterReduction { root: g.to_string(), power: k });
        }
    }
    Err(CoverError::NotSquarefree)
}
