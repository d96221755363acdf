use std::collections::BTreeSet;

use serde_json::{json, Value};

use super::{CoverError, GammaBlock, PhiVector, PlaneModel, PointLabel};
use crate::arith::{discriminant_y, Scalar, UPoly};
use crate::series::{all_branches_at, expansions_at_infinity, separation_index, BranchData, BranchVerdict, InfinityData};

/// `lambda(i, j1, j2)`: least index where the segments of branches `j1 < j2`
/// (1-based) differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaEntry {
    pub j1: usize,
    pub j2: usize,
    pub lambda: usize,
}

impl LambdaEntry {
    fn to_json(&self) -> Value {
        json!({"j1": self.j1, "j2": self.j2, "lambda": self.lambda})
    }
}

/// Branches above an extra discriminant root `beta` of order `tau`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaTable<S> {
    pub beta: S,
    pub tau: usize,
    /// All `n` branches, by descending `kappa`.
    pub branches: Vec<BranchData<S>>,
    /// Number of branches with `kappa > 0`.
    pub ell: usize,
    pub lambda: Vec<LambdaEntry>,
}

impl<S: Scalar> BetaTable<S> {
    pub fn kappas(&self) -> Vec<usize> {
        self.branches.iter().map(|b| b.kappa).collect()
    }

    fn to_json(&self) -> Value {
        json!({
            "beta": self.beta.to_json(),
            "tau": self.tau,
            "kappa": self.kappas(),
            "ell": self.ell,
            "branches": self.branches.iter().map(BranchData::to_json).collect::<Vec<_>>(),
            "lambda": self.lambda.iter().map(LambdaEntry::to_json).collect::<Vec<_>>(),
        })
    }
}

/// The inequalities checked on every report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalityAudit {
    /// `sum_j kappa_ij = tau_i` at every extra root.
    pub kappa_sums: bool,
    /// `sum_{i, j <= ell_i} (kappa_ij + 1) <= 2 deg d`.
    pub finite_gamma: bool,
    /// `sum_j kappa_inf_j <= mn + deg d`.
    pub infinity_kappa: bool,
    /// `sum_j (kappa_inf_j + 1) <= (m + 1) n + deg d`.
    pub infinity_gamma: bool,
    /// `Omega <= 10mn + 2n - 8m + 1`.
    pub omega: bool,
    /// `mu + nu <= deg d <= 2m(n - 1)`.
    pub root_count: bool,
    /// `kappa_inf_1 = m(n - 1) + ord g'_Y(t, y_inf_1)`.
    pub chain_rule: bool,
    /// Whether `kappa_inf_1 = mn + ord g'_Y(t, y_inf_1)` also holds.
    pub mn_variant: bool,
}

impl InequalityAudit {
    pub fn all_hold(&self) -> bool {
        self.kappa_sums
            && self.finite_gamma
            && self.infinity_kappa
            && self.infinity_gamma
            && self.omega
            && self.root_count
            && self.chain_rule
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kappa_sums": self.kappa_sums,
            "finite_gamma": self.finite_gamma,
            "infinity_kappa": self.infinity_kappa,
            "infinity_gamma": self.infinity_gamma,
            "omega": self.omega,
            "root_count": self.root_count,
            "chain_rule": self.chain_rule,
            "mn_variant": self.mn_variant,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverReport<S> {
    pub model: PlaneModel<S>,
    pub disc: UPoly<S>,
    pub alphas: Vec<(S, usize)>,
    pub betas: Vec<(S, usize)>,
    pub delta: S,
    pub finite: Vec<BetaTable<S>>,
    pub infinity: InfinityData<S>,
    /// Pairs `2 <= j1 < j2 <= n` at infinity.
    pub infinity_lambda: Vec<LambdaEntry>,
    pub omega: usize,
    pub audit: InequalityAudit,
    pub notes: Vec<String>,
}

fn lambda_table<S: Scalar>(branches: &[&BranchData<S>], first: usize) -> Result<Vec<LambdaEntry>, CoverError> {
    let mut out = Vec::new();
    for a in 0..branches.len() {
        for b in a + 1..branches.len() {
            let lambda = separation_index(&branches[a].segment, &branches[b].segment)?;
            out.push(LambdaEntry { j1: a + first, j2: b + first, lambda });
        }
    }
    Ok(out)
}

/// Classifies the discriminant roots of the model into the declared branch
/// points and the extra roots, computes branch tables above the extra roots
/// and above infinity, and `Omega`.
///
/// ```
/// use covercert::arith::{int, rat, BPoly};
/// use covercert::cover::{analyze, PlaneModel};
///
/// let f = BPoly::from_matrix(&[vec![rat(1, 4), int(0), int(1)], vec![int(0), int(-1)]]);
/// let model = PlaneModel::new(f, None).unwrap();
/// let report = analyze(&model, &[int(1), int(-1)]).unwrap();
/// assert_eq!(report.omega, 10);
/// assert_eq!(report.infinity.kappas(), vec![1, 0]);
/// ```
pub fn analyze<S: Scalar>(model: &PlaneModel<S>, declared: &[S]) -> Result<CoverReport<S>, CoverError> {
    let (m, n) = (model.m, model.n);
    for (i, a) in declared.iter().enumerate() {
        if declared[..i].contains(a) {
            return Err(CoverError::DuplicateDeclaredPoint(a.to_string()));
        }
    }
    let disc = discriminant_y(&model.f);
    if disc.is_zero() {
        return Err(CoverError::NotSquarefree);
    }
    let split = S::split_roots(&disc)?;
    if !split.is_complete() {
        return Err(CoverError::UnclassifiedDiscriminantRoot(split.cofactor.to_string()));
    }
    let delta = disc.lc();
    let mut alphas = Vec::with_capacity(declared.len());
    for a in declared {
        let Some((_, s)) = split.roots.iter().find(|(r, _)| r == a) else {
            return Err(CoverError::DeclaredPointNotInDiscriminant(a.to_string()));
        };
        alphas.push((a.clone(), *s));
    }
    let betas: Vec<(S, usize)> = split.roots.iter().filter(|(r, _)| !declared.contains(r)).cloned().collect();

    let mut finite = Vec::with_capacity(betas.len());
    for (beta, tau) in &betas {
        let BranchVerdict::Split(branches) = all_branches_at(&model.f, beta)? else {
            return Err(CoverError::RamifiedAtDeclaredBeta(beta.to_string()));
        };
        let ell = branches.iter().filter(|b| b.kappa > 0).count();
        let positive: Vec<&BranchData<S>> = branches[..ell].iter().collect();
        let lambda = lambda_table(&positive, 1)?;
        finite.push(BetaTable { beta: beta.clone(), tau: *tau, branches, ell, lambda });
    }

    let infinity = expansions_at_infinity(&model.f)?;
    let regular: Vec<&BranchData<S>> = infinity.finite.iter().collect();
    let infinity_lambda = lambda_table(&regular, 2)?;

    let mu = alphas.len();
    let nu = betas.len();
    let deg_d = disc.deg();
    let finite_gamma: usize =
        finite.iter().map(|t| t.branches[..t.ell].iter().map(|b| b.kappa + 1).sum::<usize>()).sum();
    let inf_kappas = infinity.kappas();
    let inf_gamma: usize = inf_kappas.iter().map(|k| k + 1).sum();
    let omega = (m + 1) * n + mu + nu + finite_gamma + inf_gamma + 1;

    let audit = InequalityAudit {
        kappa_sums: finite.iter().all(|t| t.kappas().iter().sum::<usize>() == t.tau),
        finite_gamma: finite_gamma <= 2 * deg_d,
        infinity_kappa: inf_kappas.iter().sum::<usize>() <= m * n + deg_d,
        infinity_gamma: inf_gamma <= (m + 1) * n + deg_d,
        omega: omega <= 10 * m * n + 2 * n + 1 - 8 * m,
        root_count: mu + nu <= deg_d && deg_d <= 2 * m * (n - 1),
        chain_rule: infinity.chain_rule_holds(),
        mn_variant: infinity.pole.kappa as i64 == (m * n) as i64 + infinity.g_order,
    };
    let mut notes = vec![format!(
        "kappa_inf_1 = {} = m(n-1) + ord g'_Y(t, y_inf_1) = {} + {}; the form mn + ord g'_Y would give {}",
        infinity.pole.kappa,
        m * (n - 1),
        infinity.g_order,
        (m * n) as i64 + infinity.g_order
    )];
    if !infinity.normalized() {
        notes.push("pole branch is not normalized: c_{-m} != 1 or c_0 != 0".into());
    }
    let declared_set: BTreeSet<String> = declared.iter().map(|a| a.to_string()).collect();
    if declared_set.len() != declared.len() {
        notes.push("duplicate declared points".into());
    }

    Ok(CoverReport {
        model: model.clone(),
        disc,
        alphas,
        betas,
        delta,
        finite,
        infinity,
        infinity_lambda,
        omega,
        audit,
        notes,
    })
}

impl<S: Scalar> CoverReport<S> {
    pub fn mu(&self) -> usize {
        self.alphas.len()
    }

    pub fn nu(&self) -> usize {
        self.betas.len()
    }

    /// `delta prod (X - alpha)^sigma prod (X - beta)^tau`.
    pub fn reconstruct_disc(&self) -> UPoly<S> {
        let mut p = UPoly::constant(self.delta.clone());
        for (r, k) in self.alphas.iter().chain(&self.betas) {
            p = &p * &UPoly::linear_root(r).pow(*k as u32);
        }
        p
    }

    /// The point `phi` of the parameter space realized by this model.
    pub fn phi(&self) -> PhiVector<S> {
        let mut gamma = Vec::new();
        for (i, t) in self.finite.iter().enumerate() {
            for (j, b) in t.branches[..t.ell].iter().enumerate() {
                gamma.push(GammaBlock { point: PointLabel::Beta(i + 1), j: j + 1, kmin: 0, values: b.segment.clone() });
            }
        }
        gamma.push(GammaBlock {
            point: PointLabel::Infinity,
            j: 1,
            kmin: -(self.model.m as i64),
            values: self.infinity.pole.segment.clone(),
        });
        for (j, b) in self.infinity.finite.iter().enumerate() {
            gamma.push(GammaBlock { point: PointLabel::Infinity, j: j + 2, kmin: 0, values: b.segment.clone() });
        }
        PhiVector {
            theta: self.model.theta(),
            alpha: self.alphas.iter().map(|(a, _)| a.clone()).collect(),
            beta: self.betas.iter().map(|(b, _)| b.clone()).collect(),
            gamma,
            delta: self.delta.clone(),
        }
    }

    pub fn to_json(&self) -> Value {
        let pairs = |v: &[(S, usize)], key: &str| {
            v.iter().map(|(r, k)| json!({"value": r.to_json(), key: k})).collect::<Vec<_>>()
        };
        json!({
            "model": self.model.to_json(),
            "disc": self.disc.coeffs().iter().map(Scalar::to_json).collect::<Vec<_>>(),
            "disc_text": self.disc.to_string(),
            "alphas": pairs(&self.alphas, "sigma"),
            "betas": pairs(&self.betas, "tau"),
            "delta": self.delta.to_json(),
            "mu": self.mu(),
            "nu": self.nu(),
            "branch_tables": self.finite.iter().map(BetaTable::to_json).collect::<Vec<_>>(),
            "infinity": {
                "kappa": self.infinity.kappas(),
                "ell": self.infinity.n(),
                "expansions": self.infinity.to_json(),
                "lambda": self.infinity_lambda.iter().map(LambdaEntry::to_json).collect::<Vec<_>>(),
            },
            "omega": self.omega,
            "omega_cap": 10 * self.model.m * self.model.n + 2 * self.model.n + 1 - 8 * self.model.m,
            "inequality_audit": self.audit.to_json(),
            "notes": self.notes,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, BPoly, Rat};

    fn e0() -> PlaneModel<Rat> {
        PlaneModel::new(BPoly::from_matrix(&[vec![rat(1, 4), int(0), int(1)], vec![int(0), int(-1)]]), None).unwrap()
    }

    #[test]
    fn first_fixture() {
        let r = analyze(&e0(), &[int(1), int(-1)]).unwrap();
        assert_eq!(r.disc, UPoly::new(vec![int(-1), int(0), int(1)]));
        assert_eq!(r.alphas, vec![(int(1), 1), (int(-1), 1)]);
        assert!(r.betas.is_empty());
        assert_eq!(r.delta, int(1));
        assert_eq!(r.omega, 10);
        assert!(r.audit.all_hold());
        assert!(!r.audit.mn_variant);
        assert_eq!(r.reconstruct_disc(), r.disc);
        assert_eq!(r.phi().dimension(), 10);
    }

    #[test]
    fn undeclared_branch_point() {
        let err = analyze(&e0(), &[int(1)]).unwrap_err();
        assert_eq!(err, CoverError::RamifiedAtDeclaredBeta("-1".into()));
        let err = analyze(&e0(), &[int(1), int(-1), int(3)]).unwrap_err();
        assert!(matches!(err, CoverError::DeclaredPointNotInDiscriminant(_)));
    }

    #[test]
    fn extra_root_with_node() {
        // Y^2 - (X^2 - 1) Y over Q: y = 0 and y = X^2 - 1 cross above X = +-1
        let f = BPoly::from_matrix(&[vec![int(0), int(1), int(1)], vec![int(0)], vec![int(0), int(-1)]]);
        let model = PlaneModel::new(f, None).unwrap();
        let r = analyze(&model, &[]).unwrap();
        assert_eq!(r.nu(), 2);
        assert_eq!(r.finite[0].kappas(), vec![1, 1]);
        assert_eq!(r.finite[0].lambda, vec![LambdaEntry { j1: 1, j2: 2, lambda: 1 }]);
        assert!(r.audit.kappa_sums);
    }
}
