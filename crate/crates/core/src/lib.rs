//! Exact computations with valuated matroids, tropical linear spaces and
//! the combinatorial model of compactified Bruhat–Tits buildings.
//!
//! Seminorm classes on `(K^{r+1})*` are projected to tropical linear spaces
//! by [`linspace::project_pi`] and lifted back by [`linspace::section_j`].
//! Everything is computed over ℚ ∪ {∞} without rounding.

pub mod building;
pub mod cli;
pub mod error;
pub mod field;
pub mod json;
pub mod lattice;
pub mod linspace;
pub mod matroid;
pub mod sample;
pub mod trop;

pub use error::{Error, Result};
pub use field::{Elem, FieldKind, FieldSpec, Mat, ValuedScalar};
pub use trop::{min_attained_twice, TropPoint, TropVal};
