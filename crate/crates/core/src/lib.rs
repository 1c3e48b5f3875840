//! Value sets of fractional ideals on reduced curve singularities,
//! logarithmic residues, Poincaré series and Tjurina strata.
//!
//! The guide in `book/` walks through the concepts; its snippets are
//! compiled and run as doctests of this crate.

pub mod catalog;
pub mod coeffs;
pub mod curve;
pub mod error;
pub mod io;
pub mod ideal;
pub mod lattice;
pub mod linalg;
pub mod logres;
pub mod poincare;
pub mod poly;
pub mod series;
mod span;
pub mod strata;

pub use coeffs::{Field, FieldElement, FieldSpec};
pub use curve::{BranchParam, BranchSeed, BranchSource, Curve, Equations};
pub use error::{Error, Result};
pub use poly::Poly;
pub use series::{Coord, MultiValue, SeriesVector, TruncatedSeries};
pub use ideal::{FractionalIdeal, Preset};
pub use lattice::ValueSet;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/overview.md")]
    mod overview {}
    #[doc = include_str!("../../../book/src/curves.md")]
    mod curves {}
    #[doc = include_str!("../../../book/src/values.md")]
    mod values {}
    #[doc = include_str!("../../../book/src/residues.md")]
    mod residues {}
    #[doc = include_str!("../../../book/src/poincare.md")]
    mod poincare {}
    #[doc = include_str!("../../../book/src/strata.md")]
    mod strata {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
