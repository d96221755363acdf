//! Exact certification of plane models of covers of the projective line.
//!
//! The modules build on each other: [`arith`] supplies rationals, number
//! fields and polynomials; [`heights`] and [`series`] supply heights and
//! branch expansions; [`cover`] turns a curve and a seed function into a
//! model with branch data; [`vset`] builds the algebraic systems and checks
//! the model against them; [`bounds`] evaluates the height bounds.
//! [`pipeline`] runs everything on a parsed [`io::Curve`].

pub mod arith;
pub mod bounds;
pub mod cover;
pub mod heights;
pub mod io;
pub mod pipeline;
pub mod series;
pub mod suite;
pub mod vset;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/arithmetic.md")]
    mod arithmetic {}
    #[doc = include_str!("../../../book/src/heights.md")]
    mod heights {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/covers.md")]
    mod covers {}
    #[doc = include_str!("../../../book/src/vset.md")]
    mod vset {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/suite.md")]
    mod suite {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
