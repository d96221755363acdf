//! Curve input files.
//!
//! ```json
//! {
//!   "field": {"minpoly": ["-2", "0", "1"]},
//!   "F0": [["1", "0", "1"], ["0"], ["-1"]],
//!   "declared_branch_points": ["1", "-1"],
//!   "seed_u": {"add": ["y0", "x"]},
//!   "m": 1,
//!   "bad_xs": ["0"]
//! }
//! ```
//!
//! Row `i` of a coefficient matrix holds the coefficients of `X^i Y^0, X^i
//! Y^1, ...`. A scalar is a rational string such as `"-3/4"`, or, when a
//! field is declared, an array of coordinates in the power basis of its
//! generator `t`.

use std::sync::Arc;

use serde_json::Value;
use thiserror::Error;

use crate::arith::{parse_rat, ArithError, BPoly, NFElem, NumberField, Rat, Scalar, UPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("missing field {0:?}")]
    Missing(&'static str),
    #[error("field {field:?}: {msg}")]
    Bad { field: String, msg: String },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

fn bad(field: &str, msg: impl Into<String>) -> InputError {
    InputError::Bad { field: field.to_string(), msg: msg.into() }
}

/// A parsed curve description over `Q` or over a number field.
#[derive(Clone, Debug)]
pub struct CurveInput<S> {
    pub field: Option<Arc<NumberField>>,
    /// Either an `F0` to be normalized by `seed_u`, or a model `f` used as is.
    pub f0: Option<BPoly<S>>,
    pub f: Option<BPoly<S>>,
    pub declared: Vec<S>,
    pub seed_u: Option<BPoly<S>>,
    pub m: Option<usize>,
    pub bad_xs: Option<Vec<S>>,
}

#[derive(Clone, Debug)]
pub enum Curve {
    Rational(CurveInput<Rat>),
    NumberField(CurveInput<NFElem>),
}

trait ParseScalar: Scalar {
    fn parse(v: &Value, field: Option<&Arc<NumberField>>, name: &str) -> Result<Self, InputError>;
}

fn parse_rat_value(v: &Value, name: &str) -> Result<Rat, InputError> {
    match v {
        Value::String(s) => Ok(parse_rat(s)?),
        Value::Number(n) if n.is_i64() => Ok(Rat::from_integer(n.as_i64().unwrap().into())),
        _ => Err(bad(name, format!("expected a rational string, got {v}"))),
    }
}

impl ParseScalar for Rat {
    fn parse(v: &Value, _: Option<&Arc<NumberField>>, name: &str) -> Result<Self, InputError> {
        parse_rat_value(v, name)
    }
}

impl ParseScalar for NFElem {
    fn parse(v: &Value, field: Option<&Arc<NumberField>>, name: &str) -> Result<Self, InputError> {
        let field = field.expect("number-field parsing needs a field");
        match v {
            Value::Array(cs) => {
                let coords = cs.iter().map(|c| parse_rat_value(c, name)).collect::<Result<Vec<_>, _>>()?;
                Ok(NFElem::new(field, coords))
            }
            _ => Ok(NFElem::new(field, vec![parse_rat_value(v, name)?])),
        }
    }
}

fn parse_list<S: ParseScalar>(v: &Value, field: Option<&Arc<NumberField>>, name: &str) -> Result<Vec<S>, InputError> {
    let items = v.as_array().ok_or_else(|| bad(name, "expected an array"))?;
    items.iter().map(|x| S::parse(x, field, name)).collect()
}

fn parse_matrix<S: ParseScalar>(v: &Value, field: Option<&Arc<NumberField>>, name: &str) -> Result<BPoly<S>, InputError> {
    let rows = v.as_array().ok_or_else(|| bad(name, "expected an array of rows"))?;
    let rows = rows.iter().map(|r| parse_list(r, field, name)).collect::<Result<Vec<Vec<S>>, _>>()?;
    Ok(BPoly::from_matrix(&rows))
}

/// Expression tree in `x` and `y0`.
fn parse_expr<S: ParseScalar>(v: &Value, field: Option<&Arc<NumberField>>) -> Result<BPoly<S>, InputError> {
    const NAME: &str = "seed_u";
    let args = |a: &Value| -> Result<Vec<BPoly<S>>, InputError> {
        a.as_array().ok_or_else(|| bad(NAME, "operator needs an array"))?.iter().map(|e| parse_expr(e, field)).collect()
    };
    match v {
        Value::String(s) if s == "x" => Ok(BPoly::x()),
        Value::String(s) if s == "y0" => Ok(BPoly::y()),
        Value::String(_) | Value::Number(_) => Ok(BPoly::constant(S::parse(v, field, NAME)?)),
        Value::Object(map) if map.len() == 1 => {
            let (op, arg) = map.iter().next().unwrap();
            match op.as_str() {
                "add" => Ok(args(arg)?.iter().fold(BPoly::zero(), |acc, p| &acc + p)),
                "mul" => Ok(args(arg)?.iter().fold(BPoly::constant(S::one()), |acc, p| &acc * p)),
                "sub" => match args(arg)?.as_slice() {
                    [a, b] => Ok(a - b),
                    _ => Err(bad(NAME, "sub takes two operands")),
                },
                "neg" => Ok(-&parse_expr(arg, field)?),
                "pow" => {
                    let pair = arg.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad(NAME, "pow takes [base, exponent]"))?;
                    let e = pair[1].as_u64().ok_or_else(|| bad(NAME, "exponent must be a nonnegative integer"))?;
                    Ok(parse_expr(&pair[0], field)?.pow(e as u32))
                }
                "var" => match arg.as_str() {
                    Some("x") => Ok(BPoly::x()),
                    Some("y0") => Ok(BPoly::y()),
                    _ => Err(bad(NAME, format!("unknown variable {arg}"))),
                },
                "const" => Ok(BPoly::constant(S::parse(arg, field, NAME)?)),
                "poly" => parse_matrix(arg, field, NAME),
                _ => Err(bad(NAME, format!("unknown operator {op:?}"))),
            }
        }
        _ => Err(bad(NAME, format!("cannot read {v}"))),
    }
}

fn parse_input<S: ParseScalar>(obj: &serde_json::Map<String, Value>, field: Option<Arc<NumberField>>) -> Result<CurveInput<S>, InputError> {
    let fld = field.as_ref();
    let f0 = obj.get("F0").map(|v| parse_matrix(v, fld, "F0")).transpose()?;
    let f = obj.get("f").map(|v| parse_matrix(v, fld, "f")).transpose()?;
    match (&f0, &f) {
        (None, None) => return Err(InputError::Missing("F0")),
        (Some(_), Some(_)) => return Err(bad("F0", "give either F0 or f, not both")),
        _ => {}
    }
    let declared = match obj.get("declared_branch_points") {
        Some(v) => parse_list(v, fld, "declared_branch_points")?,
        None => Vec::new(),
    };
    let seed_u = obj.get("seed_u").map(|v| parse_expr(v, fld)).transpose()?;
    if f0.is_some() && seed_u.is_none() {
        return Err(InputError::Missing("seed_u"));
    }
    let m = match obj.get("m") {
        Some(v) => Some(v.as_u64().filter(|&m| m >= 1).ok_or_else(|| bad("m", "expected a positive integer"))? as usize),
        None => None,
    };
    let bad_xs = obj.get("bad_xs").map(|v| parse_list(v, fld, "bad_xs")).transpose()?;
    Ok(CurveInput { field, f0, f, declared, seed_u, m, bad_xs })
}

/// Parses a curve file.
///
/// ```
/// use covercert::io::{parse_curve, Curve};
///
/// let c = parse_curve(r#"{"F0": [["1","0","1"],["0"],["-1"]], "seed_u": {"add": ["y0", "x"]}}"#).unwrap();
/// let Curve::Rational(c) = c else { panic!() };
/// assert_eq!(c.f0.unwrap().to_string(), "Y^2 - X^2 + 1");
/// assert_eq!(c.seed_u.unwrap().to_string(), "Y + X");
/// ```
pub fn parse_curve(text: &str) -> Result<Curve, InputError> {
    let v: Value = serde_json::from_str(text).map_err(|e| InputError::Json(e.to_string()))?;
    let obj = v.as_object().ok_or_else(|| InputError::Json("top level must be an object".into()))?;
    match obj.get("field") {
        None | Some(Value::Null) => Ok(Curve::Rational(parse_input(obj, None)?)),
        Some(fv) => {
            let mp = fv.get("minpoly").ok_or(InputError::Missing("field.minpoly"))?;
            let cs = mp.as_array().ok_or_else(|| bad("field.minpoly", "expected an array"))?;
            let cs = cs.iter().map(|c| parse_rat_value(c, "field.minpoly")).collect::<Result<Vec<_>, _>>()?;
            let field = NumberField::new(UPoly::new(cs))?;
            if field.degree() == 1 {
                return Ok(Curve::Rational(parse_input(obj, None)?));
            }
            Ok(Curve::NumberField(parse_input(obj, Some(field))?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn expression_tree() {
        let c = parse_curve(
            r#"{"f": [["0","1"]], "seed_u": {"sub": [{"pow": [{"var": "x"}, 2]}, {"mul": ["3/2", "y0", {"neg": "x"}]}]}}"#,
        )
        .unwrap();
        let Curve::Rational(c) = c else { panic!() };
        let expect = BPoly::from_matrix(&[vec![int(0)], vec![int(0), rat(3, 2)], vec![int(1)]]);
        assert_eq!(c.seed_u.unwrap(), expect);
    }

    #[test]
    fn number_field_scalars() {
        let c = parse_curve(r#"{"field": {"minpoly": ["-2","0","1"]}, "f": [["0","1"],[["0","1"]]], "declared_branch_points": [["1","1"]]}"#)
            .unwrap();
        let Curve::NumberField(c) = c else { panic!() };
        let field = c.field.clone().unwrap();
        assert_eq!(c.declared, vec![NFElem::new(&field, vec![int(1), int(1)])]);
        assert_eq!(c.f.unwrap().coeff(1, 0), field.generator());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_curve("[1]"), Err(InputError::Json(_))));
        assert!(matches!(parse_curve("{}"), Err(InputError::Missing("F0"))));
        assert!(matches!(parse_curve(r#"{"F0": [["1"]]}"#), Err(InputError::Missing("seed_u"))));
        assert!(matches!(parse_curve(r#"{"f": [["1/0"]]}"#), Err(InputError::Arith(_))));
        assert!(matches!(parse_curve(r#"{"f": [["1"]], "m": 0}"#), Err(InputError::Bad { .. })));
        assert!(matches!(parse_curve(r#"{"field": {"minpoly": ["-4","0","1"]}, "f": [["1"]]}"#), Err(InputError::Arith(_))));
    }
}
