//! Closed-form bounds: `Lambda`, `Lambda'`, the arithmetic Bezout data of
//! the system `V`, and the checks of the main conclusions on a model.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Signed, ToPrimitive};
use serde_json::{json, Value};
use thiserror::Error;

use crate::arith::{int, BPoly, Rat, Scalar};
use crate::cover::CoverReport;
use crate::heights::{kps_bound, HeightError, KpsBound, LogValue, PolyHeight};
use crate::vset::VSystem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("need n >= 2 (got {0})")]
    DegreeTooSmall(usize),
    #[error("need m >= 1")]
    ZeroM,
    #[error(transparent)]
    Height(#[from] HeightError),
}

/// `Lambda = (2(g+1)n^2)^(10gn + 12n)`.
///
/// ```
/// use covercert::bounds::lambda_main;
/// use num_bigint::BigUint;
///
/// assert_eq!(lambda_main(0, 2).unwrap(), BigUint::from(2u32).pow(72));
/// ```
pub fn lambda_main(g: usize, n: usize) -> Result<BigUint, BoundsError> {
    if n < 2 {
        return Err(BoundsError::DegreeTooSmall(n));
    }
    let base = BigUint::from(2 * (g + 1) * n * n);
    Ok(Pow::pow(&base, (10 * g * n + 12 * n) as u32))
}

/// `Lambda' = (2mn^2)^(10mn + 2n - 3)`.
pub fn lambda_prime(m: usize, n: usize) -> Result<BigUint, BoundsError> {
    if n < 2 {
        return Err(BoundsError::DegreeTooSmall(n));
    }
    if m == 0 {
        return Err(BoundsError::ZeroM);
    }
    let base = BigUint::from(2 * m * n * n);
    Ok(Pow::pow(&base, (10 * m * n + 2 * n - 3) as u32))
}

/// `(2mn^2)^Omega`.
pub fn nabla_cap(m: usize, n: usize, omega: usize) -> BigUint {
    Pow::pow(&BigUint::from(2 * m * n * n), omega as u32)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MainBounds {
    pub lambda: BigUint,
    pub lambda_prime: BigUint,
    pub nabla_cap: BigUint,
    pub omega: usize,
    pub sigma_cap: usize,
}

impl MainBounds {
    pub fn new(m: usize, n: usize, omega: usize) -> Result<Self, BoundsError> {
        if m == 0 {
            return Err(BoundsError::ZeroM);
        }
        Ok(MainBounds {
            lambda: lambda_main(m - 1, n)?,
            lambda_prime: lambda_prime(m, n)?,
            nabla_cap: nabla_cap(m, n, omega),
            omega,
            sigma_cap: omega,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "Lambda": self.lambda.to_string(),
            "LambdaPrime": self.lambda_prime.to_string(),
            "nabla_cap": self.nabla_cap.to_string(),
            "omega": self.omega,
            "sigma_cap": self.sigma_cap,
        })
    }
}

/// `Lambda(g, n)`, `Lambda'(g + 1, n)`, their order and, given `h`, both
/// multiplied by `h + 1`.
///
/// ```
/// use covercert::bounds::bounds_table;
///
/// let t = bounds_table(0, 2, None).unwrap();
/// assert_eq!(t["Lambda"], (1u128 << 72).to_string());
/// assert_eq!(t["LambdaPrime_le_Lambda"], true);
/// ```
pub fn bounds_table(genus: usize, degree: usize, h: Option<&Rat>) -> Result<Value, BoundsError> {
    let lambda = lambda_main(genus, degree)?;
    let lambda_prime = lambda_prime(genus + 1, degree)?;
    let mut out = json!({
        "genus": genus,
        "degree": degree,
        "Lambda": lambda.to_string(),
        "LambdaPrime": lambda_prime.to_string(),
        "LambdaPrime_le_Lambda": lambda_prime <= lambda,
    });
    if let Some(h) = h {
        let h1 = h + Rat::one();
        out["h"] = json!(crate::arith::fmt_rat(h));
        out["Lambda_h1"] = json!(crate::arith::fmt_rat(&(&to_rat(&lambda) * &h1)));
        out["LambdaPrime_h1"] = json!(crate::arith::fmt_rat(&(&to_rat(&lambda_prime) * &h1)));
    }
    Ok(out)
}

fn to_rat(n: &BigUint) -> Rat {
    Rat::from_integer(BigInt::from(n.clone()))
}

/// A rational strictly below `1 / log 2`.
fn inv_ln2_lower() -> Rat {
    Rat::new(BigInt::from(14_426_950_408u64), BigInt::from(10_000_000_000u64))
}

/// Whether `value <= bound`. When `value = log M` exactly with `M >= 1` an
/// integer-exponent test is tried first: `M < 2^b` and `b <= lo(bound) / log 2`
/// give `M <= e^bound` without any transcendental evaluation.
pub fn log_le(value: &LogValue, bound: &LogValue) -> Option<bool> {
    if let Some(arg) = value.as_log_of() {
        if arg >= int(1) {
            let (lo, _) = bound.enclosure(64);
            if lo.is_positive() {
                let ceil_arg = arg.ceil().to_integer();
                let bits = ceil_arg.bits() as i64 + 1;
                let k = (lo * inv_ln2_lower()).floor().to_integer();
                if k.to_i64().is_none_or(|k| k >= bits) {
                    return Some(true);
                }
            }
        }
    }
    value.le(bound)
}

/// Bezout data of `V` in `N` unknowns.
#[derive(Clone, Debug)]
pub struct NablaSigma {
    pub nabla: BigInt,
    pub sigma: Rat,
    pub kps: KpsBound,
    pub nabla_cap: BigUint,
    pub n_unknowns: usize,
}

impl NablaSigma {
    pub fn nabla_ok(&self) -> bool {
        self.nabla <= BigInt::from(self.nabla_cap.clone())
    }

    pub fn sigma_ok(&self) -> bool {
        self.sigma <= int(self.n_unknowns as i64)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "nabla": self.nabla.to_string(),
            "sigma": crate::arith::fmt_rat(&self.sigma),
            "nabla_cap": self.nabla_cap.to_string(),
            "nabla_ok": self.nabla_ok(),
            "sigma_ok": self.sigma_ok(),
            "kps": self.kps.to_json(),
        })
    }
}

/// `nabla`, `Sigma` over the `N` largest equation degrees of `V`, with the
/// height input `h + 12(mn)^3`.
pub fn system_nabla_sigma<S: Scalar>(v: &VSystem<S>, n: usize, h: &LogValue) -> Result<NablaSigma, BoundsError> {
    let (m, nn) = (v.atlas.m, v.atlas.n);
    let degrees: Vec<usize> = v.equations.iter().map(|e| e.poly.total_degree().unwrap_or(0)).collect();
    let mn = (m * nn) as i64;
    let heq = h + &LogValue::rational(int(12 * mn * mn * mn));
    let kps = kps_bound(&degrees, &heq, n)?;
    Ok(NablaSigma { nabla: kps.nabla.clone(), sigma: kps.sigma.clone(), kps, nabla_cap: nabla_cap(m, nn, n), n_unknowns: n })
}

/// The main conclusions checked on one model.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub m: usize,
    pub n: usize,
    pub deg_x_ok: bool,
    pub deg_y_ok: bool,
    pub h_f: LogValue,
    pub h: LogValue,
    pub bounds: MainBounds,
    pub prime_bound: LogValue,
    pub main_bound: LogValue,
    pub prime_ok: Option<bool>,
    pub main_ok: Option<bool>,
    pub lambda_order_ok: bool,
    pub chain: Option<ChainCheck>,
}

/// `h(f) <= nabla Sigma (h + 12(mn)^3) + 2 nabla Omega log(Omega + 1)`.
#[derive(Clone, Debug)]
pub struct ChainCheck {
    pub nabla_sigma: NablaSigma,
    pub ok: Option<bool>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.deg_x_ok
            && self.deg_y_ok
            && self.prime_ok == Some(true)
            && self.main_ok == Some(true)
            && self.lambda_order_ok
            && self.chain.as_ref().is_none_or(|c| c.ok == Some(true) && c.nabla_sigma.nabla_ok() && c.nabla_sigma.sigma_ok())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "deg_x_ok": self.deg_x_ok,
            "deg_y_ok": self.deg_y_ok,
            "h_f": self.h_f.to_json(),
            "h": self.h.to_json(),
            "bounds": self.bounds.to_json(),
            "prime_ok": self.prime_ok,
            "main_ok": self.main_ok,
            "lambda_order_ok": self.lambda_order_ok,
            "chain": self.chain.as_ref().map(|c| json!({
                "nabla_sigma": c.nabla_sigma.to_json(),
                "ok": c.ok,
            })),
            "passed": self.passed(),
        })
    }
}

/// Checks `deg_X f = m`, `deg_Y f = n`, `h(f) <= Lambda'(h + 1)` and
/// `h(f) <= Lambda(h + 1)` with `g = m - 1`, and, given `V`, the unsimplified
/// Bezout chain.
pub fn theorem_check<S: Scalar>(
    report: &CoverReport<S>,
    f: &BPoly<S>,
    h: &LogValue,
    v: Option<&VSystem<S>>,
) -> Result<CheckReport, BoundsError> {
    let (m, n) = (report.model.m, report.model.n);
    let bounds = MainBounds::new(m, n, report.omega)?;
    let h_f = f.height()?;
    let h1 = h + &LogValue::rational(Rat::one());
    let prime_bound = h1.scale(&to_rat(&bounds.lambda_prime));
    let main_bound = h1.scale(&to_rat(&bounds.lambda));
    let chain = match v {
        Some(v) => {
            let ns = system_nabla_sigma(v, report.omega, h)?;
            let ok = log_le(&h_f, &ns.kps.height_bound);
            Some(ChainCheck { nabla_sigma: ns, ok })
        }
        None => None,
    };
    Ok(CheckReport {
        m,
        n,
        deg_x_ok: f.deg_x() == m,
        deg_y_ok: f.deg_y() == n,
        prime_ok: log_le(&h_f, &prime_bound),
        main_ok: log_le(&h_f, &main_bound),
        lambda_order_ok: bounds.lambda_prime <= bounds.lambda,
        h_f,
        h: h.clone(),
        bounds,
        prime_bound,
        main_bound,
        chain,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formulas() {
        assert_eq!(lambda_main(1, 2).unwrap(), Pow::pow(&BigUint::from(16u32), 44u32));
        assert_eq!(lambda_prime(1, 2).unwrap(), Pow::pow(&BigUint::from(8u32), 21u32));
        assert_eq!(lambda_prime(2, 2).unwrap(), Pow::pow(&BigUint::from(16u32), 41u32));
        for m in 1..=5 {
            for n in 2..=6 {
                assert!(lambda_prime(m, n).unwrap() <= lambda_main(m - 1, n).unwrap());
            }
        }
    }

    #[test]
    fn exponent_test_agrees_with_refinement() {
        let big = LogValue::rational(int(1000));
        assert_eq!(log_le(&LogValue::log_int(40), &big), Some(true));
        let huge = LogValue::log_of(Rat::from_integer(BigInt::from(2).pow(2000u32)));
        assert_eq!(log_le(&huge, &big), Some(false));
        assert_eq!(log_le(&LogValue::log_int(2), &LogValue::rational(Rat::new(7.into(), 10.into()))), Some(true));
        assert_eq!(log_le(&LogValue::log_int(3), &LogValue::rational(int(1))), Some(false));
    }
}
