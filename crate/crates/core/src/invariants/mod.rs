//! Binary invariant theory: polars, transvectants, apolarity, annihilators, projectors,
//! induced substitutions, and the ternary constructions built on them.

mod annihilators;
mod quantic;
mod ternary;
mod transform;

pub use annihilators::{
    annihilator_o, annihilator_o_primed, annihilator_omega, annihilator_omega_primed, hilbert_project, isobaric_weight_twice,
    loewdin_project, monomial_weight_twice, weight_operator, GradientSpace,
};
pub use quantic::{apolar, apolar_by_coupling, hessian, joint_invariant, polar, polar_coupling, transvectant};
pub use ternary::{clebsch_upsilon, quartic_resolvent, schlesinger_check, QuarticResolvent, SchlesingerReport};
pub use transform::{equal_root_system, induced_transform};
