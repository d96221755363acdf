//! Exact arithmetic: rationals, number fields, dense polynomials in one and
//! two variables, resultants, root extraction and certified complex roots.

mod bpoly;
mod complex;
mod mpoly;
mod numfield;
mod rat;
pub(crate) mod real;
mod resultant;
mod roots;
mod upoly;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde_json::Value;
use thiserror::Error;

pub use bpoly::BPoly;
pub use mpoly::{mpoly_det, MPoly, Monomial};
pub use complex::{complex_roots, complex_roots_with_cap, ComplexBox, DEFAULT_PRECISION_CAP};
pub use numfield::{Irreducibility, NFElem, NumberField};
pub use rat::{
    ceil_dyadic, common_denominator, floor_dyadic, fmt_rat, int, parse_rat, rat, to_f64, trial_factor, Rat,
};
pub use real::{ln_enclosure, sqrt_enclosure};
pub use resultant::{discriminant_y, resultant_sylvester, resultant_y, uresultant, udiscriminant};
pub use roots::{nf_roots, rational_roots, squarefree_decomposition, RootSplit};
pub use upoly::UPoly;
pub(crate) use upoly::format_terms;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("attempted to invert zero")]
    ZeroInverse,
    #[error("minimal polynomial is reducible: nontrivial factor {0}")]
    ReducibleField(String),
    #[error("minimal polynomial must be monic, squarefree and of degree >= 1: {0}")]
    BadMinpoly(String),
    #[error("root enclosure could not be certified within {0} bits")]
    PrecisionExhausted(u32),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("elements of different number fields were combined")]
    FieldMismatch,
}

/// The coefficient field of every exact computation: either `Q` itself or a
/// number field given as a quotient of `Q[t]`.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn from_rat(r: Rat) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rat(int(n))
    }

    fn try_inv(&self) -> Result<Self, ArithError>;

    /// `self / other`, panicking on division by zero.
    fn div_by(&self, other: &Self) -> Self {
        self.clone() * &other.try_inv().expect("division by zero")
    }

    /// `Some(r)` if the value is rational.
    fn as_rat(&self) -> Option<Rat>;

    /// Total order used only for deterministic output (branch sorting etc.).
    fn canonical_cmp(&self, other: &Self) -> Ordering;

    fn to_json(&self) -> Value;

    /// Roots of `p` lying in the scalar field, with multiplicities, and the
    /// cofactor left after dividing them out.
    fn split_roots(p: &UPoly<Self>) -> Result<RootSplit<Self>, ArithError>;

    /// The same value as a number-field element (for heights).
    fn to_nf(&self) -> NFElem;
}

impl Scalar for Rat {
    fn from_rat(r: Rat) -> Self {
        r
    }

    fn try_inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            Err(ArithError::ZeroInverse)
        } else {
            Ok(self.recip())
        }
    }

    fn as_rat(&self) -> Option<Rat> {
        Some(self.clone())
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }

    fn to_json(&self) -> Value {
        Value::String(fmt_rat(self))
    }

    fn split_roots(p: &UPoly<Self>) -> Result<RootSplit<Self>, ArithError> {
        Ok(rational_roots(p))
    }

    fn to_nf(&self) -> NFElem {
        NFElem::rational(self.clone())
    }
}
