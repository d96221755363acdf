//! Truncated power and Laurent series, Newton lifting, and the branch
//! structure of a plane model above finite points and above infinity.

mod branches;
mod hensel;
mod infinity;
mod laurent;

use thiserror::Error;

use crate::arith::ArithError;

pub use branches::{all_branches_at, BranchVerdict};
pub use hensel::{branch_kappa, hensel_lift, separation_index, BranchData};
pub use infinity::{expansions_at_infinity, g_at_infinity, h_at_infinity, laurent_branches_at_infinity, InfinityData};
pub use laurent::Series;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("series is zero to precision {0}; its order is unknown")]
    IndeterminateOrder(i64),
    #[error("coefficient of t^{0} lies beyond the known precision")]
    InsufficientPrecision(i64),
    #[error("division by a zero series")]
    DivisionByZero,
    #[error("lifting hypothesis fails: {0}")]
    HypothesisFailed(String),
    #[error("Newton iteration did not converge")]
    NoConvergence,
    #[error("segments agree on their common prefix")]
    PrefixCoincidence,
    #[error("polynomial must be monic in Y")]
    NotMonic,
    #[error("branch constants lie outside the coefficient field {0}")]
    RootsOutsideField(String),
    #[error("cover ramifies over infinity: {0}")]
    RamifiedAtInfinity(String),
    #[error("pole shape at infinity is wrong: {0}")]
    WrongPoleShape(String),
}
