//! Plane models of covers: construction of the canonical model from a seed
//! function, discriminant classification, branch tables and the shift used
//! when infinity is a bad point.

mod analyze;
mod eliminate;
mod model;
mod normalize;
mod shift;

use thiserror::Error;

use crate::arith::ArithError;
use crate::heights::HeightError;
use crate::series::SeriesError;

pub use analyze::{analyze, BetaTable, CoverReport, InequalityAudit, LambdaEntry};
pub use eliminate::{eliminate, kth_root_y};
pub use model::{GammaBlock, PhiVector, PlaneModel, PointLabel};
pub use normalize::{normalize_at_infinity, normalize_at_infinity_capped, Normalization, DEFAULT_PREC_CAP};
pub use shift::{find_rho, general_case_transform, GeneralCase};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Height(#[from] HeightError),
    #[error("polynomial must be monic in Y (or have a constant leading coefficient)")]
    NotMonic,
    #[error("model needs deg_Y f >= 2 and deg_X f >= 1, got n = {n}, m = {m}")]
    DegreeTooSmall { m: usize, n: usize },
    #[error("Y-discriminant vanishes identically")]
    NotSquarefree,
    #[error("y generates a proper subfield: f is the {power}-th power of {root}")]
    NotSquarefreeAfterReduction { root: String, power: usize },
    #[error("discriminant factor {0} has no root in the working field; extend the field")]
    UnclassifiedDiscriminantRoot(String),
    #[error("declared branch point {0} is not a root of the discriminant")]
    DeclaredPointNotInDiscriminant(String),
    #[error("declared branch points must be pairwise distinct; {0} repeats")]
    DuplicateDeclaredPoint(String),
    #[error("x ramifies over the undeclared discriminant root {0}")]
    RamifiedAtDeclaredBeta(String),
    #[error("seed has a pole of order {found} on its pole branch, expected {expected}")]
    WrongPoleOrder { expected: usize, found: usize },
    #[error("seed must have a pole along exactly one branch at infinity, found {0}")]
    SeedPoles(usize),
    #[error("every integer in [-{0}, {0}] is a bad point")]
    NoAdmissibleShift(i64),
}
