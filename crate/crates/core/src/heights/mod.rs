//! Heights of algebraic numbers, vectors and polynomials, and the height
//! inequalities built on them.

mod height;
mod kps;
mod lemmas;
mod logvalue;
mod solve;

use thiserror::Error;

use crate::arith::ArithError;

pub use height::{
    height_algebraic, height_nf, height_rational_vector, height_system, height_vector, primitive_integer_form,
    PolyHeight,
};
pub use kps::{kps_bound, KpsBound};
pub use lemmas::{
    bound_compose, bound_det, bound_product, max_log, quadratic_field_discriminant, silverman_bound,
    silverman_check_quadratic, transform_rho, untransform_rho, BoundCheck, RhoTransform,
};
pub use logvalue::{LogForm, LogValue};
pub use solve::solve_bivariate;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeightError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("a constant polynomial has no algebraic roots")]
    ConstantPolynomial,
    #[error("the zero polynomial has no height")]
    ZeroPolynomial,
    #[error("substitution produced the zero polynomial")]
    DegenerateSubstitution,
    #[error("substituted polynomials share variables with the untouched ones")]
    OverlappingVariables,
    #[error("the determinant vanishes identically")]
    ZeroDeterminant,
    #[error("matrix is not square")]
    NotSquare,
    #[error("X-degree {deg} exceeds m = {m}")]
    DegreeTooLarge { deg: usize, m: usize },
    #[error("polynomial does not define a quadratic field")]
    NotQuadratic,
    #[error("{have} equations cannot isolate a point in dimension {need}")]
    TooFewEquations { have: usize, need: usize },
    #[error("the two curves share a component")]
    PositiveDimensional,
}
