use std::cmp::Ordering;

use serde_json::{json, Value};

use super::system::{Tag, VSystem, WKind, WSystem};
use super::VsetError;
use crate::arith::{MPoly, Scalar};
use crate::cover::PhiVector;
use crate::heights::{LogValue, PolyHeight};

/// Outcome of evaluating `V` and `W` at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipReport {
    pub v_checked: usize,
    /// Equations of `V` that do not vanish, as `(tag, label)`.
    pub v_failures: Vec<(Tag, String)>,
    pub w_checked: usize,
    /// Components of `W` containing the point.
    pub w_hits: Vec<(WKind, String)>,
}

impl MembershipReport {
    pub fn in_v(&self) -> bool {
        self.v_failures.is_empty()
    }

    pub fn outside_w(&self) -> bool {
        self.w_hits.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.in_v() && self.outside_w()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "v_checked": self.v_checked,
            "v_failures": self.v_failures.iter().map(|(t, l)| json!({"tag": t.to_string(), "label": l})).collect::<Vec<_>>(),
            "w_checked": self.w_checked,
            "w_hits": self.w_hits.iter().map(|(k, l)| json!({"kind": k.to_string(), "label": l})).collect::<Vec<_>>(),
            "in_v": self.in_v(),
            "outside_w": self.outside_w(),
        })
    }
}

fn eval_at<S: Scalar>(p: &MPoly<S>, point: &[S]) -> S {
    p.eval(|v| point[v as usize].clone())
}

/// Evaluates every equation of `V` and every component of `W` at `phi`.
pub fn verify_membership<S: Scalar>(
    v: &VSystem<S>,
    w: &WSystem<S>,
    phi: &PhiVector<S>,
) -> Result<MembershipReport, VsetError> {
    let point = phi.flatten();
    if point.len() != v.atlas.total() || point.len() != w.atlas.total() {
        return Err(VsetError::DimensionMismatch { expected: v.atlas.total(), got: point.len() });
    }
    let v_failures = v
        .equations
        .iter()
        .filter(|e| !eval_at(&e.poly, &point).is_zero())
        .map(|e| (e.tag, e.label.clone()))
        .collect();
    let w_hits = w
        .components
        .iter()
        .filter(|c| c.polys.iter().all(|p| eval_at(p, &point).is_zero()))
        .map(|c| (c.kind, c.label.clone()))
        .collect();
    Ok(MembershipReport { v_checked: v.equations.len(), v_failures, w_checked: w.components.len(), w_hits })
}

/// Degrees and heights of the equations of `V` against `2mn^2` and
/// `h + 12(mn)^3`.
#[derive(Clone, Debug)]
pub struct AuditReport {
    pub max_degree: usize,
    pub degree_cap: usize,
    pub max_degree_label: String,
    pub max_height: LogValue,
    pub height_cap: LogValue,
    pub max_height_label: String,
    pub degrees: Vec<usize>,
}

impl AuditReport {
    pub fn degree_ok(&self) -> bool {
        self.max_degree <= self.degree_cap
    }

    pub fn height_ok(&self) -> Option<bool> {
        self.max_height.le(&self.height_cap)
    }

    pub fn passed(&self) -> bool {
        self.degree_ok() && self.height_ok() == Some(true)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "max_degree": self.max_degree,
            "degree_cap": self.degree_cap,
            "degree_ok": self.degree_ok(),
            "max_degree_equation": self.max_degree_label,
            "max_height": self.max_height.to_json(),
            "height_cap": self.height_cap.to_json(),
            "height_ok": self.height_ok(),
            "max_height_equation": self.max_height_label,
        })
    }
}

/// Audits `V` given `h`, the largest height of a branch point.
pub fn audit<S: Scalar>(v: &VSystem<S>, h: &LogValue) -> Result<AuditReport, VsetError> {
    let (m, n) = (v.atlas.m, v.atlas.n);
    let mut max_degree = 0;
    let mut max_degree_label = String::new();
    let mut max_height = LogValue::zero();
    let mut max_height_label = String::new();
    let mut degrees = Vec::with_capacity(v.equations.len());
    for e in &v.equations {
        let d = e.poly.total_degree().unwrap_or(0);
        degrees.push(d);
        if d > max_degree || max_degree_label.is_empty() {
            max_degree = d.max(max_degree);
            max_degree_label = format!("{} {}", e.tag, e.label);
        }
        let ht = e.poly.height()?;
        if max_height_label.is_empty() || ht.compare(&max_height) == Some(Ordering::Greater) {
            max_height = ht;
            max_height_label = format!("{} {}", e.tag, e.label);
        }
    }
    let mn = (m * n) as i64;
    let height_cap = h + &LogValue::rational(crate::arith::int(12 * mn * mn * mn));
    Ok(AuditReport {
        max_degree,
        degree_cap: 2 * m * n * n,
        max_degree_label,
        max_height,
        height_cap,
        max_height_label,
        degrees,
    })
}
