//! Homogeneous polynomials: ternary forms in (x, y, z), binary forms in (ξ, η),
//! and exact multivariate polynomials for operator calculus.

mod binary;
mod multi;
mod ternary;

pub use binary::{BinaryForm, ExactBinary, FloatBinary};
pub use multi::MultiPoly;
pub use ternary::{ExactTernary, Exponents, FloatTernary, TernaryPoly};
