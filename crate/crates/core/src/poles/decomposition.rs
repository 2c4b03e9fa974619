use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::pairing::pair_conjugate_roots;
use super::roots::find_projective_roots;
use crate::error::{Error, Result};
use crate::harmonic::{harmonic_projection, restrict_to_conic};
use crate::numcore::Scalar;
use crate::poly::{FloatTernary, TernaryPoly};
use crate::spinor::{cartan_map, pole_from_root, Pole, TwoSpinor};

/// Poles closer than this (Euclidean, after sign canonicalization) are merged.
pub const POLE_MERGE_RADIUS: f64 = 1e-6;
const MAX_RESAMPLES: usize = 32;
const MIN_DENOMINATOR: f64 = 1e-6;

#[derive(Clone, Copy, Debug)]
pub struct MaxwellOptions {
    /// Relative Laplacian residual accepted as harmonic.
    pub harmonic_tol: f64,
    /// Relative imaginary part accepted as real.
    pub real_tol: f64,
    /// Apply harmonic projection before extracting poles.
    pub project: bool,
    pub seed: u64,
}

impl Default for MaxwellOptions {
    fn default() -> Self {
        MaxwellOptions { harmonic_tol: 1e-9, real_tol: 1e-9, project: false, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Diagnostics {
    /// ‖Φ − C∏ − r²G‖ / ‖Φ‖ in coefficient space.
    pub residual: f64,
    /// |Im C| / |C| at the sampling point.
    pub c_imaginary: f64,
    pub root_backward_error: f64,
    pub pairing_defect: f64,
    pub cone_samples: usize,
}

/// Φ = C·∏(r·p_i)^{m_i} + r²G.
#[derive(Clone, Debug, PartialEq)]
pub struct PoleDecomposition {
    pub degree: u32,
    pub c: f64,
    pub poles: Vec<Pole>,
    pub g: FloatTernary,
    pub diagnostics: Diagnostics,
}

impl PoleDecomposition {
    /// ∏(r·p_i)^{m_i}.
    pub fn product(&self) -> FloatTernary {
        pole_product(&self.poles)
    }

    pub fn reconstruct(&self) -> FloatTernary {
        let main = self.product().scale(&Complex64::new(self.c, 0.0));
        if self.degree < 2 {
            return main;
        }
        &main + &self.g.mul_r2()
    }
}

pub fn pole_product(poles: &[Pole]) -> FloatTernary {
    let mut acc = TernaryPoly::constant(Complex64::new(1.0, 0.0));
    for p in poles {
        let lin = TernaryPoly::linear(p.direction.map(|c| Complex64::new(c, 0.0)));
        for _ in 0..p.multiplicity {
            acc = &acc * &lin;
        }
    }
    acc
}

/// Merges coincident poles and orders them by (z, y, x), descending.
fn merge_poles(raw: Vec<Pole>) -> Vec<Pole> {
    let mut merged: Vec<Pole> = Vec::new();
    for p in raw {
        match merged.iter_mut().find(|q| (0..3).all(|k| (q.direction[k] - p.direction[k]).abs() < POLE_MERGE_RADIUS)) {
            Some(q) => q.multiplicity += p.multiplicity,
            None => merged.push(p),
        }
    }
    let key = |p: &Pole| [p.direction[2], p.direction[1], p.direction[0]];
    merged.sort_by(|a, b| {
        let (ka, kb) = (key(a), key(b));
        kb.iter().zip(ka.iter()).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
    });
    merged
}

/// Maxwell poles and the remainder G of a real harmonic polynomial.
pub fn maxwell_poles<S: Scalar>(phi: &TernaryPoly<S>, options: &MaxwellOptions) -> Result<PoleDecomposition> {
    let phi = if options.project { harmonic_projection(phi) } else { phi.clone() };
    let size = phi.norm();
    if phi.is_zero() || size == 0.0 {
        return Err(Error::arg("the zero polynomial has no poles"));
    }
    let residual = phi.laplacian().norm();
    if residual > options.harmonic_tol * size {
        return Err(Error::NotHarmonic { residual: residual / size });
    }
    let float = phi.to_complex();
    let imag = float.max_imag();
    if imag > options.real_tol * size {
        return Err(Error::NotReal(format!("coefficients carry imaginary parts up to {imag:.3e}")));
    }
    let degree = phi.degree();
    if degree == 0 {
        let c = float.coeff([0, 0, 0]).re;
        let diagnostics = Diagnostics { residual: 0.0, c_imaginary: 0.0, root_backward_error: 0.0, pairing_defect: 0.0, cone_samples: 0 };
        return Ok(PoleDecomposition { degree, c, poles: Vec::new(), g: TernaryPoly::zero(0), diagnostics });
    }

    let restricted = restrict_to_conic(&phi);
    let roots = find_projective_roots(&restricted)?;
    let pairs = pair_conjugate_roots(&roots)?;
    let pairing_defect = pairs.iter().map(|p| p.defect).fold(0.0, f64::max);
    let poles = merge_poles(pairs.iter().map(|p| pole_from_root(p.representative)).collect());
    let count: u32 = poles.iter().map(|p| p.multiplicity).sum();
    if count != degree {
        return Err(Error::Consistency(format!("found {count} poles for degree {degree}")));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut sampled = None;
    for attempt in 1..=MAX_RESAMPLES {
        let b = cartan_map(TwoSpinor::random_unit(&mut rng)).cartesian();
        let den: Complex64 = poles.iter().map(|p| p.dot_r(b).powu(p.multiplicity)).product();
        if den.norm() >= MIN_DENOMINATOR {
            sampled = Some((float.evaluate(b) / den, attempt));
            break;
        }
    }
    let Some((c_complex, cone_samples)) = sampled else {
        return Err(Error::Solver(format!("pole product vanished at {MAX_RESAMPLES} random cone points")));
    };
    let c = c_complex.re;
    let c_imaginary = c_complex.im.abs() / c_complex.norm().max(f64::MIN_POSITIVE);

    let product = pole_product(&poles);
    let difference = &float - &product.scale(&Complex64::new(c, 0.0));
    let (g, remainder) = if degree < 2 { (TernaryPoly::zero(0), difference) } else { difference.divide_by_r2() };
    let diagnostics = Diagnostics {
        residual: remainder.norm() / size,
        c_imaginary,
        root_backward_error: roots.backward_error,
        pairing_defect,
        cone_samples,
    };
    Ok(PoleDecomposition { degree, c, poles, g, diagnostics })
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    /// ‖Φ − C∏ − r²G‖ / ‖Φ‖.
    pub coefficient_residual: f64,
    /// max |Φ(b) − C∏(b)| / ‖Φ‖ over unit-spinor cone points b, where r²G drops out.
    pub cone_residual: f64,
    /// max |‖p_i‖ − 1|.
    pub unit_norm_deviation: f64,
    pub multiplicity_total: u32,
    pub cone_points: usize,
    pub tolerance: f64,
    pub passed: bool,
}

pub const VERIFICATION_CONE_POINTS: usize = 100;

pub fn verify_decomposition<S: Scalar>(phi: &TernaryPoly<S>, d: &PoleDecomposition, tol: f64, seed: u64) -> VerificationReport {
    let float = phi.to_complex();
    let size = float.norm().max(f64::MIN_POSITIVE);
    let rebuilt = d.reconstruct();
    let coefficient_residual = if rebuilt.degree() == float.degree() { (&float - &rebuilt).norm() / size } else { f64::INFINITY };
    let product = d.product();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let cone_residual = (0..VERIFICATION_CONE_POINTS)
        .map(|_| {
            let b = cartan_map(TwoSpinor::random_unit(&mut rng)).cartesian();
            (float.evaluate(b) - product.evaluate(b) * d.c).norm() / size
        })
        .fold(0.0, f64::max);
    let unit_norm_deviation =
        d.poles.iter().map(|p| (p.direction.iter().map(|c| c * c).sum::<f64>().sqrt() - 1.0).abs()).fold(0.0, f64::max);
    let multiplicity_total = d.poles.iter().map(|p| p.multiplicity).sum();
    let passed = coefficient_residual <= tol
        && cone_residual <= tol
        && unit_norm_deviation <= tol
        && multiplicity_total == float.degree();
    VerificationReport {
        coefficient_residual,
        cone_residual,
        unit_norm_deviation,
        multiplicity_total,
        cone_points: VERIFICATION_CONE_POINTS,
        tolerance: tol,
        passed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numcore::ExactScalar;

    fn int(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    #[test]
    fn linear_harmonic() {
        let d = maxwell_poles(&TernaryPoly::<ExactScalar>::z(), &MaxwellOptions::default()).unwrap();
        assert_eq!(d.poles.len(), 1);
        assert!((d.poles[0].direction[2] - 1.0).abs() < 1e-14);
        assert!((d.c - 1.0).abs() < 1e-14);
        assert!(d.g.is_zero());
    }

    #[test]
    fn quadric_double_pole() {
        let f = TernaryPoly::from_terms(2, [([1, 1, 0], int(1)), ([0, 1, 1], int(1)), ([1, 0, 1], int(1))]).unwrap();
        let d = maxwell_poles(&f, &MaxwellOptions::default()).unwrap();
        assert_eq!(d.poles.len(), 1);
        assert_eq!(d.poles[0].multiplicity, 2);
        let s = 1.0 / 3f64.sqrt();
        assert!(d.poles[0].direction.iter().all(|c| (c - s).abs() < 1e-10));
        assert!((d.c - 1.5).abs() < 1e-10);
        assert!((d.g.coeff([0, 0, 0]) - Complex64::new(-0.5, 0.0)).norm() < 1e-10);
        let report = verify_decomposition(&f, &d, 1e-9, 0);
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn rejects_bad_input() {
        let x2 = TernaryPoly::monomial([2, 0, 0], int(1));
        assert!(matches!(maxwell_poles(&x2, &MaxwellOptions::default()), Err(Error::NotHarmonic { .. })));
        let projected = maxwell_poles(&x2, &MaxwellOptions { project: true, ..Default::default() }).unwrap();
        assert_eq!(projected.poles[0].multiplicity + projected.poles.get(1).map_or(0, |p| p.multiplicity), 2);
        let iz = TernaryPoly::monomial([0, 0, 1], ExactScalar::i());
        assert!(matches!(maxwell_poles(&iz, &MaxwellOptions::default()), Err(Error::NotReal(_))));
        assert!(maxwell_poles(&TernaryPoly::<ExactScalar>::zero(2), &MaxwellOptions::default()).is_err());
    }

    #[test]
    fn perturbed_c_is_flagged() {
        let f = TernaryPoly::from_terms(2, [([1, 1, 0], int(1)), ([0, 1, 1], int(1)), ([1, 0, 1], int(1))]).unwrap();
        let mut d = maxwell_poles(&f, &MaxwellOptions::default()).unwrap();
        d.c *= 1.01;
        let report = verify_decomposition(&f, &d, 1e-9, 0);
        assert!(!report.passed);
        assert!(report.coefficient_residual > 1e-3);
    }
}
