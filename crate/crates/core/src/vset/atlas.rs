use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::arith::Scalar;
use crate::cover::{CoverReport, PointLabel};

/// One coordinate of the parameter space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum AtlasVar {
    Theta { i: usize, j: usize },
    Alpha(usize),
    Beta(usize),
    Gamma { point: PointLabel, j: usize, k: i64 },
    Delta,
}

impl fmt::Display for AtlasVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AtlasVar::Theta { i, j } => write!(f, "Theta_{i}_{j}"),
            AtlasVar::Alpha(i) => write!(f, "A_{i}"),
            AtlasVar::Beta(i) => write!(f, "B_{i}"),
            AtlasVar::Gamma { point, j, k } => write!(f, "G_{point}_{j}_{k}"),
            AtlasVar::Delta => f.write_str("Delta"),
        }
    }
}

/// Indexing of the indeterminates `(Theta, A, B, Gamma, Delta)`, followed by
/// the auxiliary variables `X`, `Y`, `T`, `Z` used while building equations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarAtlas {
    pub m: usize,
    pub n: usize,
    vars: Vec<AtlasVar>,
    index: BTreeMap<AtlasVar, u32>,
}

impl VarAtlas {
    fn from_vars(m: usize, n: usize, vars: Vec<AtlasVar>) -> Self {
        let index = vars.iter().enumerate().map(|(k, v)| (*v, k as u32)).collect();
        VarAtlas { m, n, vars, index }
    }

    /// Number of indeterminates, `Omega`.
    pub fn total(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[AtlasVar] {
        &self.vars
    }

    pub fn id(&self, v: AtlasVar) -> u32 {
        *self.index.get(&v).unwrap_or_else(|| panic!("{v} is not in the atlas"))
    }

    pub fn get(&self, v: AtlasVar) -> Option<u32> {
        self.index.get(&v).copied()
    }

    pub fn x(&self) -> u32 {
        self.vars.len() as u32
    }

    pub fn y(&self) -> u32 {
        self.vars.len() as u32 + 1
    }

    pub fn t(&self) -> u32 {
        self.vars.len() as u32 + 2
    }

    pub fn z(&self) -> u32 {
        self.vars.len() as u32 + 3
    }

    pub fn name(&self, id: u32) -> String {
        match self.vars.get(id as usize) {
            Some(v) => v.to_string(),
            None => ["X", "Y", "T", "Z"][id as usize - self.vars.len()].to_string(),
        }
    }

    /// Sizes of the `Theta`, `A`, `B`, `Gamma`, `Delta` blocks.
    pub fn block_sizes(&self) -> [usize; 5] {
        let mut s = [0; 5];
        for v in &self.vars {
            let k = match v {
                AtlasVar::Theta { .. } => 0,
                AtlasVar::Alpha(_) => 1,
                AtlasVar::Beta(_) => 2,
                AtlasVar::Gamma { .. } => 3,
                AtlasVar::Delta => 4,
            };
            s[k] += 1;
        }
        s
    }

    pub fn to_json(&self) -> Value {
        let b = self.block_sizes();
        json!({
            "total": self.total(),
            "blocks": {"theta": b[0], "alpha": b[1], "beta": b[2], "gamma": b[3], "delta": b[4]},
            "names": self.vars.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// The atlas whose block shapes are read off the report.
pub fn build_atlas<S: Scalar>(report: &CoverReport<S>) -> VarAtlas {
    let (m, n) = (report.model.m, report.model.n);
    let mut vars = Vec::with_capacity(report.omega);
    for i in 0..=m {
        for j in 0..n {
            vars.push(AtlasVar::Theta { i, j });
        }
    }
    vars.extend((1..=report.mu()).map(AtlasVar::Alpha));
    vars.extend((1..=report.nu()).map(AtlasVar::Beta));
    for g in report.phi().gamma {
        for k in 0..g.values.len() as i64 {
            vars.push(AtlasVar::Gamma { point: g.point, j: g.j, k: g.kmin + k });
        }
    }
    vars.push(AtlasVar::Delta);
    VarAtlas::from_vars(m, n, vars)
}
