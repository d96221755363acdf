//! Rational solutions of two bivariate equations.

use super::HeightError;
use crate::arith::{rational_roots, resultant_y, BPoly, Rat, UPoly};

fn content_x(p: &BPoly<Rat>) -> UPoly<Rat> {
    p.ycoeffs().iter().fold(UPoly::zero(), |g, c| g.gcd(c))
}

/// All solutions of `p = q = 0` with both coordinates rational, sorted.
///
/// Candidates for `x` are the rational roots of `Res_Y(p, q)`; for each the
/// common rational roots in `Y` are read off `gcd(p(x, Y), q(x, Y))`. Every
/// `y` is cross-checked against the rational roots of `Res_X(p, q)`.
pub fn solve_bivariate(p: &BPoly<Rat>, q: &BPoly<Rat>) -> Result<Vec<(Rat, Rat)>, HeightError> {
    if p.is_zero() || q.is_zero() {
        return Err(HeightError::PositiveDimensional);
    }
    if content_x(p).gcd(&content_x(q)).deg() > 0 {
        return Err(HeightError::PositiveDimensional);
    }
    let rx = resultant_y(p, q);
    let ry = resultant_y(&p.swap(), &q.swap());
    if rx.is_zero() || ry.is_zero() {
        return Err(HeightError::PositiveDimensional);
    }
    let ys: Vec<Rat> = rational_roots(&ry).roots.into_iter().map(|(r, _)| r).collect();
    let mut out = Vec::new();
    for (x, _) in rational_roots(&rx).roots {
        let (px, qx) = (p.eval_x(&x), q.eval_x(&x));
        let g = px.gcd(&qx);
        for (y, _) in rational_roots(&g).roots {
            assert!(ys.contains(&y), "solution missed by the X-resultant");
            out.push((x.clone(), y));
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn bp(rows: &[&[i64]]) -> BPoly<Rat> {
        BPoly::from_matrix(&rows.iter().map(|r| r.iter().map(|&c| int(c)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn circle_and_diagonal() {
        // X^2 + Y^2 - 2, X - Y
        let p = bp(&[&[-2, 0, 1], &[0], &[1]]);
        let q = bp(&[&[0, -1], &[1]]);
        assert_eq!(solve_bivariate(&p, &q).unwrap(), vec![(int(-1), int(-1)), (int(1), int(1))]);
    }

    #[test]
    fn trivial_and_irrational() {
        assert_eq!(solve_bivariate(&bp(&[&[0], &[1]]), &bp(&[&[0, 1]])).unwrap(), vec![(int(0), int(0))]);
        assert!(solve_bivariate(&bp(&[&[-2], &[0], &[1]]), &bp(&[&[0, 1]])).unwrap().is_empty());
    }

    #[test]
    fn common_component() {
        // X (Y - 1) and X (Y + 1)
        let p = bp(&[&[0], &[-1, 1]]);
        let q = bp(&[&[0], &[1, 1]]);
        assert_eq!(solve_bivariate(&p, &q), Err(HeightError::PositiveDimensional));
        let p = bp(&[&[-1, 1], &[0]]);
        assert_eq!(solve_bivariate(&p, &p), Err(HeightError::PositiveDimensional));
    }
}
