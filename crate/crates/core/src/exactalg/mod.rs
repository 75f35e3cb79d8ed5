//! Exact field and matrix arithmetic underlying every other module.

pub mod field;
pub mod mat;

pub use field::{Field, FieldSpec, Rat, Scalar};
pub use mat::{Mat, Ring};
