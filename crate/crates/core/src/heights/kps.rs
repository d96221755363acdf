//! Arithmetic Bezout bounds for isolated solutions of polynomial systems.

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

use super::{HeightError, LogValue};
use crate::arith::{fmt_rat, Rat};

/// `nabla`, `Sigma` and the three bounds for a system in `N` unknowns:
/// `[L:K] <= nabla`, `[L:K] h(alpha) <= nabla Sigma h + 2 nabla N log(N+1)`
/// and the discriminant bound `2 nabla Sigma h + 5 nabla N log(N+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KpsBound {
    pub nabla: BigInt,
    pub sigma: Rat,
    pub height_bound: LogValue,
    pub degree_bound: BigInt,
    pub disc_bound: LogValue,
    pub n: usize,
}

impl KpsBound {
    pub fn to_json(&self) -> Value {
        json!({
            "nabla": self.nabla.to_string(),
            "sigma": fmt_rat(&self.sigma),
            "height_bound": self.height_bound.to_json(),
            "degree_bound": self.degree_bound.to_string(),
            "disc_bound": self.disc_bound.to_json(),
            "N": self.n,
        })
    }
}

/// Bounds from the equation degrees (any order; the `N` largest are used),
/// the maximal equation height `h`, and the number of unknowns `N`.
pub fn kps_bound(degrees: &[usize], h: &LogValue, n: usize) -> Result<KpsBound, HeightError> {
    if degrees.len() < n || n == 0 {
        return Err(HeightError::TooFewEquations { have: degrees.len(), need: n.max(1) });
    }
    if degrees.contains(&0) {
        return Err(HeightError::ConstantPolynomial);
    }
    let mut d = degrees.to_vec();
    d.sort_unstable_by(|a, b| b.cmp(a));
    let top = &d[..n];
    let nabla: BigInt = top.iter().map(|&k| BigInt::from(k)).product();
    let sigma: Rat = top.iter().map(|&k| Rat::new(BigInt::one(), BigInt::from(k))).sum();
    let nabla_r = Rat::from_integer(nabla.clone());
    let ns = &nabla_r * &sigma;
    let tail = LogValue::log_int(n as i64 + 1).scale(&(&nabla_r * Rat::from_integer(BigInt::from(n))));
    let height_bound = &h.scale(&ns) + &tail.scale_int(2);
    let disc_bound = &h.scale(&(&ns * Rat::from_integer(2.into()))) + &tail.scale_int(5);
    Ok(KpsBound { degree_bound: nabla.clone(), nabla, sigma, height_bound, disc_bound, n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use std::cmp::Ordering;

    #[test]
    fn conic_pair() {
        let b = kps_bound(&[2, 2], &LogValue::log_int(3), 2).unwrap();
        assert_eq!(b.nabla, BigInt::from(4));
        assert_eq!(b.sigma, int(1));
        let expect = &LogValue::log_int(3).scale_int(4) + &LogValue::log_int(3).scale_int(16);
        assert_eq!(b.height_bound.compare(&expect), Some(Ordering::Equal));
    }

    #[test]
    fn single_linear_equation() {
        let b = kps_bound(&[1], &LogValue::zero(), 1).unwrap();
        assert_eq!((b.nabla.clone(), b.sigma.clone()), (BigInt::from(1), int(1)));
        assert_eq!(b.height_bound.compare(&LogValue::log_int(2).scale_int(2)), Some(Ordering::Equal));
        assert_eq!(b.disc_bound.compare(&LogValue::log_int(2).scale_int(5)), Some(Ordering::Equal));
    }

    #[test]
    fn uses_largest_degrees() {
        let b = kps_bound(&[1, 3, 2], &LogValue::zero(), 2).unwrap();
        assert_eq!(b.nabla, BigInt::from(6));
        assert!(matches!(kps_bound(&[2], &LogValue::zero(), 2), Err(HeightError::TooFewEquations { .. })));
    }
}
