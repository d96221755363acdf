use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use super::CoverError;
use crate::arith::{BPoly, NumberField, Scalar};

/// `f(X, Y)` monic in `Y` with `deg_X f = m >= 1` and `deg_Y f = n >= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneModel<S> {
    pub f: BPoly<S>,
    pub field: Option<Arc<NumberField>>,
    pub m: usize,
    pub n: usize,
}

impl<S: Scalar> PlaneModel<S> {
    pub fn new(f: BPoly<S>, field: Option<Arc<NumberField>>) -> Result<Self, CoverError> {
        if f.is_zero() || !f.is_monic_in_y() {
            return Err(CoverError::NotMonic);
        }
        let (m, n) = (f.deg_x(), f.deg_y());
        if m < 1 || n < 2 {
            return Err(CoverError::DegreeTooSmall { m, n });
        }
        Ok(PlaneModel { f, field, m, n })
    }

    /// `theta_ij`, the coefficient of `X^i Y^j` for `j < n`.
    pub fn theta(&self) -> Vec<Vec<S>> {
        (0..=self.m).map(|i| (0..self.n).map(|j| self.f.coeff(i, j)).collect()).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "f": self.f.to_matrix().iter().map(|r| r.iter().map(Scalar::to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "f_text": self.f.to_string(),
            "m": self.m,
            "n": self.n,
            "field": self.field.as_ref().map(|k| k.to_json()),
        })
    }
}

/// A point of the base: the `i`-th extra discriminant root (1-based) or
/// infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PointLabel {
    Beta(usize),
    Infinity,
}

impl fmt::Display for PointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointLabel::Beta(i) => write!(f, "{i}"),
            PointLabel::Infinity => f.write_str("inf"),
        }
    }
}

/// The coefficients `gamma_{i j k}` for `k = kmin, ..., kmin + len - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaBlock<S> {
    pub point: PointLabel,
    /// 1-based branch index.
    pub j: usize,
    pub kmin: i64,
    pub values: Vec<S>,
}

/// `phi = (theta, alpha, beta, gamma, delta)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiVector<S> {
    pub theta: Vec<Vec<S>>,
    pub alpha: Vec<S>,
    pub beta: Vec<S>,
    pub gamma: Vec<GammaBlock<S>>,
    pub delta: S,
}

impl<S: Scalar> PhiVector<S> {
    /// All coordinates in atlas order.
    pub fn flatten(&self) -> Vec<S> {
        let mut v: Vec<S> = self.theta.iter().flatten().cloned().collect();
        v.extend(self.alpha.iter().cloned());
        v.extend(self.beta.iter().cloned());
        for b in &self.gamma {
            v.extend(b.values.iter().cloned());
        }
        v.push(self.delta.clone());
        v
    }

    pub fn dimension(&self) -> usize {
        self.theta.iter().map(Vec::len).sum::<usize>()
            + self.alpha.len()
            + self.beta.len()
            + self.gamma.iter().map(|b| b.values.len()).sum::<usize>()
            + 1
    }

    pub fn to_json(&self) -> Value {
        let s = |v: &[S]| v.iter().map(Scalar::to_json).collect::<Vec<_>>();
        json!({
            "theta": self.theta.iter().map(|r| s(r)).collect::<Vec<_>>(),
            "alpha": s(&self.alpha),
            "beta": s(&self.beta),
            "gamma": self.gamma.iter().map(|b| json!({
                "point": b.point.to_string(),
                "j": b.j,
                "kmin": b.kmin,
                "values": s(&b.values),
            })).collect::<Vec<_>>(),
            "delta": self.delta.to_json(),
        })
    }
}
