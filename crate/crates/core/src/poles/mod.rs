//! Maxwell poles: roots of the restricted form, antipodal pairing, and the decomposition
//! Φ = C·∏(r·p_i) + r²G.

mod decomposition;
mod pairing;
mod roots;
mod trace;

pub use decomposition::{
    maxwell_poles, pole_product, verify_decomposition, Diagnostics, MaxwellOptions, PoleDecomposition, VerificationReport,
    POLE_MERGE_RADIUS, VERIFICATION_CONE_POINTS,
};
pub use pairing::{pair_conjugate_roots, RootPair, PAIRING_TOLERANCE};
pub use roots::{find_projective_roots, ProjectiveRoot, ProjectiveRootSet, CLUSTER_RADIUS, DEFLATION_THRESHOLD, MAX_BACKWARD_ERROR};
pub use trace::{rank4_trace_residual, tetrahedral_quartic, tetrahedron_poles, TraceResidual, TETRAHEDRON_COEFFICIENT};
