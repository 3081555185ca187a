//! Exact dimension calculus for definable sets over valued fields.
//!
//! - [`lowerset`]: lower subsets of ℕ² and ℕ³, the values of mixed dimension.
//! - [`semilinear`]: linear formulas over the value group, elimination, cells.
//! - [`mixedcell`]: one valued-field variable over finite Puiseux elements.
//! - [`trop`]: tropical hypersurfaces and monomial images.

pub mod dim;
pub mod error;
mod lex;
pub mod lowerset;
pub mod mixedcell;
pub mod rat;
pub mod semilinear;
pub mod trop;

pub use dim::Dim;
pub use error::{Error, Result};
pub use lowerset::{DimPoint, DimPoint2, DimPoint3, LowerSet, LowerSet2, LowerSet3};
pub use rat::Rat;
