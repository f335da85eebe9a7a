//! Exact linear algebra over prime fields and quiver representations.

pub mod complex;
pub mod matrix;
pub mod rep;

pub use complex::{homotopy_hom_dim, PathCombo, ProjComplex};
pub use matrix::{Field, Matrix};
pub use rep::{GlobalDimension, RepMap, Representation};
