//! Exact enumeration of exceptional sequences for Dynkin quivers of type `A`
//! and `D4`.

pub mod catalog;
pub mod cycle;
pub mod error;
pub mod excseq;
pub mod forests;
pub mod formulas;
pub mod genfun;
pub mod linalg;
pub mod orthogonality;
pub mod poly;
pub mod quiver;
pub mod rep;
pub mod verify;

pub use catalog::{IndecCatalog, MemberSet};
pub use error::{Error, Result};
pub use quiver::{DynkinType, Quiver};
pub use rep::Representation;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/quivers.md")]
    mod quivers {}
    #[doc = include_str!("../../../book/src/perpendicular.md")]
    mod perpendicular {}
    #[doc = include_str!("../../../book/src/enumeration.md")]
    mod enumeration {}
    #[doc = include_str!("../../../book/src/cycles.md")]
    mod cycles {}
    #[doc = include_str!("../../../book/src/generating-functions.md")]
    mod generating_functions {}
    #[doc = include_str!("../../../book/src/forests.md")]
    mod forests {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
