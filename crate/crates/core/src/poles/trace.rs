use crate::error::{Error, Result};
use crate::numcore::{ExactScalar, Scalar};
use crate::poly::{ExactTernary, TernaryPoly};

/// Trace structure of a symmetrized product of four unit vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceResidual<S: Scalar> {
    /// Σ over the six pairs of (p_i·p_j)(r·p_k)(r·p_l).
    pub pair_traces: TernaryPoly<S>,
    /// Σ over the three pairings of (p_i·p_j)(p_k·p_l).
    pub double_traces: S,
    /// r²·pair_traces/7 − r⁴·double_traces/35.
    pub trace_terms: TernaryPoly<S>,
}

impl<S: Scalar> TraceResidual<S> {
    /// −C·trace_terms/r², the remainder G implied by a pole product with coefficient C.
    pub fn implied_remainder(&self, c: &S) -> TernaryPoly<S> {
        let (q, _) = self.trace_terms.divide_by_r2();
        (-&q).scale(c)
    }
}

fn dot<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> S {
    a.iter().zip(b).fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Pair traces, double traces and the trace terms removed when detracing p₁⊗p₂⊗p₃⊗p₄ in three dimensions.
pub fn rank4_trace_residual<S: Scalar>(poles: &[[S; 3]]) -> Result<TraceResidual<S>> {
    if poles.len() != 4 {
        return Err(Error::arg(format!("trace residual needs 4 poles, got {}", poles.len())));
    }
    let lin: Vec<TernaryPoly<S>> = poles.iter().map(|p| TernaryPoly::linear(p.clone())).collect();
    let mut pair_traces = TernaryPoly::zero(2);
    for i in 0..4 {
        for j in i + 1..4 {
            let rest: Vec<usize> = (0..4).filter(|&k| k != i && k != j).collect();
            let term = (&lin[rest[0]] * &lin[rest[1]]).scale(&dot(&poles[i], &poles[j]));
            pair_traces = &pair_traces + &term;
        }
    }
    let double_traces = [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)]
        .iter()
        .fold(S::zero(), |acc, &(a, b, c, d)| acc + dot(&poles[a], &poles[b]) * dot(&poles[c], &poles[d]));
    let n = 3;
    let trace_terms = &pair_traces.mul_r2().scale(&S::from_ratio(1, n + 4))
        - &TernaryPoly::r2_pow(2).scale(&(double_traces.clone() * S::from_ratio(1, (n + 4) * (n + 2))));
    Ok(TraceResidual { pair_traces, double_traces, trace_terms })
}

/// The tetrahedral quartic
/// −3x⁴ − 3y⁴ − 8z⁴ − 6x²y² + 24y²z² + 24x²z² − 60√2x²yz + 20√2y³z.
pub fn tetrahedral_quartic() -> ExactTernary {
    let n = ExactScalar::from_int;
    let r2 = ExactScalar::sqrt2;
    TernaryPoly::from_terms(
        4,
        [
            ([4, 0, 0], n(-3)),
            ([0, 4, 0], n(-3)),
            ([0, 0, 4], n(-8)),
            ([2, 2, 0], n(-6)),
            ([0, 2, 2], n(24)),
            ([2, 0, 2], n(24)),
            ([2, 1, 1], &n(-60) * &r2()),
            ([0, 3, 1], &n(20) * &r2()),
        ],
    )
    .expect("degree 4 terms")
}

/// Poles of [`tetrahedral_quartic`] in the sign choice under which its coefficient is 135:
/// (0,0,1), (0,2√2,−1)/3, −(√6,√2,1)/3, (√6,−√2,−1)/3.
pub fn tetrahedron_poles() -> [[ExactScalar; 3]; 4] {
    let third = ExactScalar::ratio(1, 3);
    let s2 = &ExactScalar::sqrt2() * &third;
    let s6 = &ExactScalar::sqrt6() * &third;
    let zero = ExactScalar::zero();
    [
        [zero.clone(), zero.clone(), ExactScalar::from_int(1)],
        [zero.clone(), &s2 * &ExactScalar::from_int(2), -&third],
        [-&s6, -&s2, -&third],
        [s6, -s2, -third],
    ]
}

/// Coefficient C = 135 pairing [`tetrahedron_poles`] with [`tetrahedral_quartic`].
pub const TETRAHEDRON_COEFFICIENT: i64 = 135;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tetrahedron_traces() {
        let t = rank4_trace_residual(&tetrahedron_poles()).unwrap();
        assert_eq!(t.pair_traces, ExactTernary::r2().scale(&ExactScalar::ratio(2, 9)));
        assert_eq!(t.double_traces, ExactScalar::ratio(1, 3));
        assert_eq!(t.trace_terms, ExactTernary::r2_pow(2).scale(&ExactScalar::ratio(1, 45)));
        let g = t.implied_remainder(&ExactScalar::from_int(TETRAHEDRON_COEFFICIENT));
        assert_eq!(g, ExactTernary::r2().scale(&ExactScalar::from_int(-3)));
    }

    #[test]
    fn tetrahedral_identity_is_exact() {
        let poles = tetrahedron_poles();
        let mut product = ExactTernary::constant(ExactScalar::from_int(1));
        for p in &poles {
            product = &product * &TernaryPoly::linear(p.clone());
        }
        let h = tetrahedral_quartic();
        assert!(h.laplacian().is_zero());
        let identity = &(&h - &product.scale(&ExactScalar::from_int(135))) + &ExactTernary::r2_pow(2).scale(&ExactScalar::from_int(3));
        assert!(identity.is_zero());
    }

    #[test]
    fn aligned_poles_against_tensor_oracle() {
        let z = [ExactScalar::zero(), ExactScalar::zero(), ExactScalar::from_int(1)];
        let t = rank4_trace_residual(&[z.clone(), z.clone(), z.clone(), z]).unwrap();
        assert_eq!(t.double_traces, ExactScalar::from_int(3));
        assert_eq!(t.pair_traces, ExactTernary::monomial([0, 0, 2], ExactScalar::from_int(6)));
        // Detracing z⊗z⊗z⊗z leaves z⁴ − (6/7) r² z² + (3/35) r⁴, the harmonic part of z⁴.
        let z4 = ExactTernary::monomial([0, 0, 4], ExactScalar::from_int(1));
        let detraced = &z4 - &t.trace_terms;
        assert_eq!(detraced, crate::harmonic::harmonic_projection(&z4));
        let oracle = &(&z4 - &(&ExactTernary::r2() * &ExactTernary::monomial([0, 0, 2], ExactScalar::ratio(6, 7))))
            + &ExactTernary::r2_pow(2).scale(&ExactScalar::ratio(3, 35));
        assert_eq!(detraced, oracle);
    }

    #[test]
    fn wrong_count() {
        assert!(rank4_trace_residual::<ExactScalar>(&[]).is_err());
    }
}
