//! Exact symbolic workbench for finite Lie conformal algebras.
#![allow(clippy::needless_range_loop)]

pub mod cder;
pub mod cmod;
pub mod coeff;
pub mod cohom;
pub mod driver;
pub mod dsl;
pub mod gdb;
pub mod lca;
pub mod linalg;
pub mod poly;
pub mod report;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/format.md")]
    mod format {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/axioms.md")]
    mod axioms {}
    #[doc = include_str!("../../../book/src/cohomology.md")]
    mod cohomology {}
    #[doc = include_str!("../../../book/src/derivations.md")]
    mod derivations {}
    #[doc = include_str!("../../../book/src/coefficients.md")]
    mod coefficients {}
    #[doc = include_str!("../../../book/src/bialgebras.md")]
    mod bialgebras {}
    #[doc = include_str!("../../../book/src/modules.md")]
    mod modules {}
}
