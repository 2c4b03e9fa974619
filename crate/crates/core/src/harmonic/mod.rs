//! Solid harmonics, harmonic projection and the correspondence with binary forms on the null cone.

mod conic;
mod projection;
mod solid;

pub use conic::{conic_representative, reconstruct_from_conic, reconstruct_harmonic, restrict_to_conic, HarmonicNormalForm};
pub use projection::{gauss_constant, gauss_decompose, harmonic_projection, GaussDecomposition};
pub use solid::{
    compose_harmonics, contracted_product, expansion_poly, normal_constant, normal_constant_sq, solid_harmonic,
    solid_harmonic_exact, solid_harmonic_upper, CompositionTerm,
};
