//! Gentle algebras, their string modules and surface models, with exhaustive
//! searches for d-cluster tilting subcategories in module and derived categories.

pub mod corpus;
pub mod derived;
pub mod error;
pub mod linalg;
pub mod module_dct;
pub mod quiver;
pub mod render;
pub mod string;
pub mod surface;

pub use error::{Error, Result};
pub use quiver::{BoundQuiverAlgebra, Shape};
