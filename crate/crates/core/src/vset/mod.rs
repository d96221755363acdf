//! The algebraic sets `V` and `W` in the parameter space of plane models:
//! the indeterminate atlas, the symbolic equations, exact membership of the
//! point realized by a model, and the degree and height audit.

mod atlas;
mod membership;
mod system;

use thiserror::Error;

use crate::heights::HeightError;

pub use atlas::{build_atlas, AtlasVar, VarAtlas};
pub use membership::{audit, verify_membership, AuditReport, MembershipReport};
pub use system::{
    build_v, build_w, expected_equation_count, symbolic_discriminant, symbolic_f, Equation, Tag, VSystem, WComponent,
    WKind, WSystem,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VsetError {
    #[error("point has {got} coordinates, the atlas has {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Height(#[from] HeightError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, BPoly, Rat};
    use crate::cover::{analyze, PlaneModel};

    fn e0_report() -> crate::cover::CoverReport<Rat> {
        let f = BPoly::from_matrix(&[vec![rat(1, 4), int(0), int(1)], vec![int(0), int(-1)]]);
        analyze(&PlaneModel::new(f, None).unwrap(), &[int(1), int(-1)]).unwrap()
    }

    #[test]
    fn atlas_blocks() {
        let a = build_atlas(&e0_report());
        assert_eq!(a.total(), 10);
        assert_eq!(a.block_sizes(), [4, 2, 0, 3, 1]);
    }

    #[test]
    fn generic_quadratic_discriminant() {
        let a = build_atlas(&e0_report());
        let d: crate::arith::MPoly<Rat> = symbolic_discriminant(&a);
        let c = d.coeffs_in(a.x());
        let th = |i, j| crate::arith::MPoly::<Rat>::var(a.id(AtlasVar::Theta { i, j }));
        assert_eq!(c[2], th(1, 1).pow(2));
        assert_eq!(c[1], &(&th(0, 1) * &th(1, 1)).scale(&int(2)) - &th(1, 0).scale(&int(4)));
        assert_eq!(c[0], &th(0, 1).pow(2) - &th(0, 0).scale(&int(4)));
    }

    #[test]
    fn first_fixture_membership() {
        let r = e0_report();
        let v = build_v(&r);
        let w = build_w(&r);
        assert_eq!(v.total_count(), 12);
        assert_eq!(v.equations.len(), 10);
        assert_eq!(v.total_count(), expected_equation_count(&r));
        assert_eq!(w.of_kind(WKind::W5).count(), 0);
        let m = verify_membership(&v, &w, &r.phi()).unwrap();
        assert!(m.passed(), "{m:?}");

        let mut bad = r.phi();
        bad.delta = int(0);
        let m = verify_membership(&v, &w, &bad).unwrap();
        assert!(m.v_failures.iter().any(|(t, _)| *t == Tag::Disc));
        assert!(m.w_hits.iter().any(|(k, _)| *k == WKind::W1));

        let au = audit(&v, &crate::heights::LogValue::zero()).unwrap();
        assert!(au.passed());
        assert!(au.max_degree <= 4);
    }
}
