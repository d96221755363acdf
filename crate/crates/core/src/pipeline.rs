//! The end-to-end certification run behind `covercert verify`.
//!
//! Every stage contributes named checks. A stage that cannot run because an
//! earlier clause failed records that failure and stops the run; the report
//! keeps everything computed up to that point.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::arith::{BPoly, Scalar};
use crate::bounds::{theorem_check, BoundsError};
use crate::cover::{
    analyze, eliminate, general_case_transform, normalize_at_infinity_capped, CoverError, CoverReport, Normalization,
    PlaneModel,
};
use crate::heights::{height_vector, max_log, HeightError, LogValue};
use crate::io::{Curve, CurveInput};
use crate::series::SeriesError;
use crate::vset::{audit, build_v, build_w, expected_equation_count, verify_membership, Tag, VSystem, VsetError, WKind, WSystem};

pub const SCHEMA: u32 = 1;

/// Problems with the input itself, as opposed to failed checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("input curve: {0}")]
    Precondition(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub clause: &'static str,
    pub passed: bool,
    pub message: String,
}

impl Check {
    fn new(clause: &'static str, passed: bool, message: impl Into<String>) -> Self {
        Check { clause, passed, message: message.into() }
    }

    pub fn to_json(&self) -> Value {
        json!({"clause": self.clause, "passed": self.passed, "message": self.message})
    }
}

/// What each clause asserts, used in failure messages.
pub fn clause_statement(clause: &str) -> &'static str {
    match clause {
        "normalization" => "the seed has a single pole of order m at infinity and generates the function field",
        "model" => "f is monic in Y, squarefree, with deg_X f = m >= 1 and deg_Y f = n >= 2",
        "analysis" => "the branch data of f can be computed over the working field",
        "inequalities" => "the branch-order inequalities and the closed form of Omega hold",
        "V.count" => "V has the closed-form number of equations",
        "V.ram" => "A_i equals the declared ramification point alpha_i",
        "V.disc" => "d(X) = Delta prod (X - A_i)^sigma_i prod (X - B_j)^tau_j",
        "V.ser" => "every finite branch has ord F(Z, Gamma) > 2 kappa and ord F'_Y >= kappa",
        "V.ser_inf" => "every branch at infinity has ord G > 2 kappa and ord G'_Y >= kappa (H on the pole branch)",
        "V.uni" => "the pole branch at infinity expands as t^-m + 0 + O(t)",
        "W1" => "Delta is nonzero",
        "W2" => "the A_i and B_j are distinct",
        "W3" => "the B_j are pairwise distinct",
        "W4" => "the orders of F'_Y along the branches are exactly kappa",
        "W5" => "branches differ at their separation index",
        "audit.degree" => "every equation of V has degree at most 2mn^2",
        "audit.height" => "every equation of V has height at most h + 12(mn)^3",
        "theorem.degrees" => "deg_X f = m and deg_Y f = n",
        "theorem.lambda_prime" => "h(f) <= Lambda'(m, n) (h + 1)",
        "theorem.lambda" => "h(f) <= Lambda(m - 1, n) (h + 1)",
        "theorem.lambda_order" => "Lambda'(m, n) <= Lambda(m - 1, n)",
        "theorem.chain" => "h(f) <= nabla Sigma (h + 12(mn)^3) + 2 nabla Omega log(Omega + 1)",
        "general_case" => "the rho-shifted model obeys the height bound of the general case",
        _ => "",
    }
}

fn cover_clause(e: &CoverError) -> &'static str {
    match e {
        CoverError::NotSquarefree
        | CoverError::UnclassifiedDiscriminantRoot(_)
        | CoverError::DeclaredPointNotInDiscriminant(_)
        | CoverError::DuplicateDeclaredPoint(_) => "V.disc",
        CoverError::RamifiedAtDeclaredBeta(_) => "V.ser",
        CoverError::Series(SeriesError::RamifiedAtInfinity(_) | SeriesError::WrongPoleShape(_)) => "V.ser_inf",
        CoverError::WrongPoleOrder { .. } | CoverError::SeedPoles(_) | CoverError::NotSquarefreeAfterReduction { .. } => {
            "normalization"
        }
        CoverError::NoAdmissibleShift(_) => "general_case",
        _ => "analysis",
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    /// Cap on the number of Laurent terms used while normalizing the seed.
    pub prec_cap: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { prec_cap: crate::cover::DEFAULT_PREC_CAP }
    }
}

/// Checks and report sections accumulated by a run.
#[derive(Clone, Debug, Default)]
pub struct Verification {
    pub checks: Vec<Check>,
    pub sections: Map<String, Value>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn get(&self, clause: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.clause == clause)
    }

    fn push(&mut self, clause: &'static str, passed: bool, detail: impl Into<String>) {
        let detail = detail.into();
        let message = if passed || detail.is_empty() {
            clause_statement(clause).to_string()
        } else {
            format!("{}: {detail}", clause_statement(clause))
        };
        self.checks.push(Check::new(clause, passed, message));
    }

    fn fail_with(&mut self, e: &CoverError) {
        self.push(cover_clause(e), false, e.to_string());
    }

    fn section(&mut self, key: &str, v: Value) {
        self.sections.insert(key.to_string(), v);
    }

    pub fn to_json(&self) -> Value {
        let mut out = self.sections.clone();
        out.insert("schema".into(), json!(SCHEMA));
        out.insert("checks".into(), Value::Array(self.checks.iter().map(Check::to_json).collect()));
        out.insert("first_failure".into(), self.first_failure().map_or(Value::Null, Check::to_json));
        out.insert("passed".into(), json!(self.passed()));
        Value::Object(out)
    }
}

/// The model `f` and its analysis, before any symbolic work.
pub struct Prepared<S> {
    pub normalization: Option<Normalization<S>>,
    pub report: CoverReport<S>,
}

fn precondition(e: &CoverError) -> Option<PipelineError> {
    match e {
        CoverError::NotMonic | CoverError::DegreeTooSmall { .. } => Some(PipelineError::Precondition(e.to_string())),
        _ => None,
    }
}

/// Normalizes (when `F0` is given) and analyzes. `Ok(None)` means a clause
/// failed and was recorded in `out`.
pub fn prepare<S: Scalar>(
    input: &CurveInput<S>,
    opts: &Options,
    out: &mut Verification,
) -> Result<Option<Prepared<S>>, PipelineError> {
    let mut normalization = None;
    let f = match (&input.f0, &input.f) {
        (Some(f0), _) => {
            let u = input.seed_u.as_ref().expect("parser requires a seed with F0");
            let staged = normalize_at_infinity_capped(f0, u, input.m, opts.prec_cap)
                .and_then(|n| eliminate(f0, &n.y_expr).map(|f| (n, f)));
            match staged {
                Ok((n, f)) => {
                    out.section("normalization", n.to_json());
                    out.push("normalization", true, "");
                    normalization = Some(n);
                    f
                }
                Err(e) => {
                    if let Some(p) = precondition(&e) {
                        return Err(p);
                    }
                    out.push("normalization", false, e.to_string());
                    return Ok(None);
                }
            }
        }
        (None, Some(f)) => f.clone(),
        (None, None) => return Err(PipelineError::Precondition("no curve given".into())),
    };
    let model = match PlaneModel::new(f, input.field.clone()) {
        Ok(m) => m,
        Err(e) => {
            if input.f0.is_none() {
                if let Some(p) = precondition(&e) {
                    return Err(p);
                }
            }
            out.push("model", false, e.to_string());
            return Ok(None);
        }
    };
    let degree_ok = input.m.is_none_or(|m| m == model.m);
    out.push("model", degree_ok, format!("deg_X f = {} but m = {}", model.m, input.m.unwrap_or(0)));
    out.section("model", model.to_json());
    if !degree_ok {
        return Ok(None);
    }
    match analyze(&model, &input.declared) {
        Ok(report) => {
            out.section("cover", report.to_json());
            out.push("inequalities", report.audit.all_hold(), format!("{}", report.audit.to_json()));
            Ok(Some(Prepared { normalization, report }))
        }
        Err(e) => {
            out.fail_with(&e);
            Ok(None)
        }
    }
}

/// `h`: the largest height among the ramification points.
pub fn alpha_height<S: Scalar>(report: &CoverReport<S>) -> Result<LogValue, HeightError> {
    let mut h = LogValue::zero();
    for (a, _) in &report.alphas {
        h = max_log(&h, &height_vector(std::slice::from_ref(a))?);
    }
    Ok(h)
}

/// Builds `V` and `W` and evaluates them at the report's point.
pub fn membership_checks<S: Scalar>(
    report: &CoverReport<S>,
    out: &mut Verification,
) -> Result<(VSystem<S>, WSystem<S>), VsetError> {
    let v = build_v(report);
    let w = build_w(report);
    let expected = expected_equation_count(report);
    out.push("V.count", v.total_count() == expected, format!("{} equations, expected {expected}", v.total_count()));
    out.section(
        "v",
        json!({
            "stored": v.equations.len(),
            "dropped": v.dropped.len(),
            "total": v.total_count(),
            "expected": expected,
            "omega": v.atlas.total(),
        }),
    );
    let mr = verify_membership(&v, &w, &report.phi())?;
    out.section("membership", mr.to_json());
    let tag_clauses: [(&'static str, &[Tag]); 4] = [
        ("V.ram", &[Tag::Ram]),
        ("V.disc", &[Tag::Disc]),
        ("V.ser", &[Tag::Ser]),
        ("V.ser_inf", &[Tag::SerInfG, Tag::SerInfH]),
    ];
    for (clause, tags) in tag_clauses.into_iter().chain([("V.uni", &[Tag::Uni][..])]) {
        let bad: Vec<&str> = mr.v_failures.iter().filter(|(t, _)| tags.contains(t)).map(|(_, l)| l.as_str()).collect();
        out.push(clause, bad.is_empty(), format!("nonzero at {}", bad.join(", ")));
    }
    for (clause, kind) in [("W1", WKind::W1), ("W2", WKind::W2), ("W3", WKind::W3), ("W4", WKind::W4), ("W5", WKind::W5)] {
        let hits: Vec<&str> = mr.w_hits.iter().filter(|(k, _)| *k == kind).map(|(_, l)| l.as_str()).collect();
        out.push(clause, hits.is_empty(), format!("phi lies in {}", hits.join(", ")));
    }
    Ok((v, w))
}

fn run<S: Scalar>(input: &CurveInput<S>, opts: &Options) -> Result<Verification, PipelineError> {
    let mut out = Verification::default();
    let Some(prep) = prepare(input, opts, &mut out)? else {
        return Ok(out);
    };
    let report = &prep.report;
    let f: &BPoly<S> = &report.model.f;
    let internal = |e: String| PipelineError::Precondition(e);
    let (v, _w) = membership_checks(report, &mut out).map_err(|e| internal(e.to_string()))?;
    let h = match alpha_height(report) {
        Ok(h) => h,
        Err(e) => {
            out.push("audit.height", false, e.to_string());
            return Ok(out);
        }
    };
    match audit(&v, &h) {
        Ok(au) => {
            out.push("audit.degree", au.degree_ok(), format!("degree {} at {}", au.max_degree, au.max_degree_label));
            out.push("audit.height", au.height_ok() == Some(true), format!("height cap exceeded at {}", au.max_height_label));
            out.section("audit", au.to_json());
        }
        Err(e) => out.push("audit.height", false, e.to_string()),
    }
    match theorem_check(report, f, &h, Some(&v)) {
        Ok(tc) => {
            out.push("theorem.degrees", tc.deg_x_ok && tc.deg_y_ok, "degree mismatch");
            out.push("theorem.lambda_prime", tc.prime_ok == Some(true), "not certified");
            out.push("theorem.lambda", tc.main_ok == Some(true), "not certified");
            out.push("theorem.lambda_order", tc.lambda_order_ok, "");
            let chain_ok = tc.chain.as_ref().is_some_and(|c| c.ok == Some(true) && c.nabla_sigma.nabla_ok() && c.nabla_sigma.sigma_ok());
            out.push("theorem.chain", chain_ok, "not certified");
            out.section("theorem", tc.to_json());
        }
        Err(BoundsError::Height(e)) => out.push("theorem.lambda", false, e.to_string()),
        Err(e) => out.push("theorem.degrees", false, e.to_string()),
    }
    if let Some(bad_xs) = &input.bad_xs {
        let alphas: Vec<S> = report.alphas.iter().map(|(a, _)| a.clone()).collect();
        match general_case_transform(f, report.model.m, &alphas, bad_xs) {
            Ok(gc) => {
                out.push("general_case", gc.holds() == Some(true), "bound not certified");
                out.section("general_case", gc.to_json());
            }
            Err(e) => out.fail_with(&e),
        }
    }
    Ok(out)
}

/// Runs every stage on a parsed curve.
pub fn verify(curve: &Curve, opts: &Options) -> Result<Verification, PipelineError> {
    let mut out = match curve {
        Curve::Rational(c) => run(c, opts)?,
        Curve::NumberField(c) => run(c, opts)?,
    };
    out.section("field", match curve {
        Curve::Rational(_) => Value::Null,
        Curve::NumberField(c) => c.field.as_ref().map_or(Value::Null, |k| k.to_json()),
    });
    Ok(out)
}

/// Normalization and analysis only.
pub fn analyze_only(curve: &Curve, opts: &Options) -> Result<Verification, PipelineError> {
    let mut out = Verification::default();
    match curve {
        Curve::Rational(c) => prepare(c, opts, &mut out).map(|_| ())?,
        Curve::NumberField(c) => prepare(c, opts, &mut out).map(|_| ())?,
    }
    Ok(out)
}

/// Up to membership, also returning the serialized `V` and `W`.
pub fn vset_only(curve: &Curve, opts: &Options) -> Result<(Verification, Option<Value>), PipelineError> {
    fn go<S: Scalar>(c: &CurveInput<S>, opts: &Options) -> Result<(Verification, Option<Value>), PipelineError> {
        let mut out = Verification::default();
        let Some(prep) = prepare(c, opts, &mut out)? else {
            return Ok((out, None));
        };
        let (v, w) = membership_checks(&prep.report, &mut out).map_err(|e| PipelineError::Precondition(e.to_string()))?;
        let emitted = json!({"schema": SCHEMA, "V": v.to_json(), "W": w.to_json()});
        Ok((out, Some(emitted)))
    }
    match curve {
        Curve::Rational(c) => go(c, opts),
        Curve::NumberField(c) => go(c, opts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_curve;

    const E0: &str = r#"{"F0": [["1","0","1"],["0"],["-1"]], "seed_u": {"add": ["y0","x"]}, "m": 1,
                        "declared_branch_points": ["1","-1"]}"#;

    #[test]
    fn first_fixture_passes() {
        let v = verify(&parse_curve(E0).unwrap(), &Options::default()).unwrap();
        assert!(v.passed(), "{:?}", v.first_failure());
        assert_eq!(v.sections["cover"]["omega"], json!(10));
        assert_eq!(v.sections["model"]["f_text"], json!("Y^2 - X*Y + 1/4"));
    }

    #[test]
    fn second_fixture_passes() {
        let e1 = r#"{"F0": [["-4","0","1"],["0"],["5"],["0"],["-1"]], "seed_u": {"add": ["y0", {"pow": ["x", 2]}, "-5/2"]},
                     "m": 2, "declared_branch_points": ["1","-1","2","-2"]}"#;
        let v = verify(&parse_curve(e1).unwrap(), &Options::default()).unwrap();
        assert!(v.passed(), "{:?}", v.first_failure());
        assert_eq!(v.sections["cover"]["omega"], json!(15));
        assert_eq!(v.sections["v"]["total"], json!(19));
        assert_eq!(v.sections["v"]["stored"], json!(15));
    }

    #[test]
    fn corrupted_coefficient_fails_the_discriminant_clause() {
        let bad = E0.replace(r#"[["1","0","1"]"#, r#"[["2","0","1"]"#);
        let v = verify(&parse_curve(&bad).unwrap(), &Options::default()).unwrap();
        assert!(!v.passed());
        assert_eq!(v.first_failure().unwrap().clause, "V.disc");
    }

    #[test]
    fn non_monic_input_is_a_precondition_error() {
        let c = parse_curve(r#"{"f": [["1","0","1"],["0","0","1"]]}"#).unwrap();
        assert!(verify(&c, &Options::default()).is_err());
    }
}
