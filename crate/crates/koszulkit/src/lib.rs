//! Exact computations with finite-dimensional graded quiver algebras: modules,
//! resolutions, Ext algebras, Koszul duals and higher representation type.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod error;
pub mod hereditary;
pub mod homology;
pub mod koszul;
pub mod linalg;
pub mod module;
pub mod presentation;

pub use error::{Error, Result};
