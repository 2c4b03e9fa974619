use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::numcore::{factorial, Scalar};
use crate::poly::{BinaryForm, TernaryPoly};
use crate::spinor::{spherical_to_cartesian, TwoSpinor};

/// Υ = Σ_s (−1)^s [∏_{k<s} (n+k)/(n−k)] r^{2s} Δ^s Ω² / (2s)!, whose restriction to the
/// null cone is the square of the restriction of Ω.
pub fn clebsch_upsilon<S: Scalar>(omega: &TernaryPoly<S>) -> Result<TernaryPoly<S>> {
    let residual = omega.laplacian().norm();
    if residual > 1e-9 * omega.norm().max(f64::MIN_POSITIVE) {
        return Err(Error::NotHarmonic { residual });
    }
    let n = omega.degree() as i64;
    let square = omega * omega;
    let mut acc = square.clone();
    let mut lap = square.laplacian();
    let mut coefficient = num_rational::BigRational::from_integer(1.into());
    let mut s: i64 = 1;
    while !lap.is_zero() {
        let k = s - 1;
        if n - k == 0 {
            return Err(Error::Consistency("series did not terminate before its singular term".into()));
        }
        coefficient *= num_rational::BigRational::new((n + k).into(), (n - k).into());
        let c = coefficient.clone() / num_rational::BigRational::from_integer(factorial(2 * s as usize));
        let term = (&TernaryPoly::r2_pow(s as u32) * &lap).scale(&S::from_rational(&c));
        acc = if s % 2 == 0 { &acc + &term } else { &acc - &term };
        lap = lap.laplacian();
        s += 1;
    }
    Ok(acc)
}

/// Invariants of a binary quartic and the roots of its resolving cubic 4λ³ − Iλ + J.
#[derive(Clone, Debug, PartialEq)]
pub struct QuarticResolvent<S: Scalar> {
    pub i: S,
    pub j: S,
    /// I³ − 27J²; zero exactly when the cubic has a repeated root.
    pub discriminant: S,
    pub roots: Vec<Complex64>,
    /// The repeated root 3J/(2I) (or 0 when I = J = 0), present when the discriminant vanishes.
    pub repeated: Option<S>,
}

/// I = 4(a₀a₄ − 4a₁a₃ + 3a₂²), J = −8(a₀a₂a₄ + 2a₁a₂a₃ − a₂³ − a₀a₃² − a₁²a₄) in classical coefficients.
pub fn quartic_resolvent<S: Scalar>(b: &BinaryForm<S>) -> Result<QuarticResolvent<S>> {
    if b.degree() != 4 {
        return Err(Error::DegreeMismatch { expected: 4, found: b.degree() as u32 });
    }
    let a = b.to_classical();
    let k = |v: i64| S::from_i64(v);
    let p = |x: &[usize]| x.iter().fold(S::one(), |acc, &i| acc * a[i].clone());
    let i = k(4) * (p(&[0, 4]) - k(4) * p(&[1, 3]) + k(3) * p(&[2, 2]));
    let j = k(-8) * (p(&[0, 2, 4]) + k(2) * p(&[1, 2, 3]) - p(&[2, 2, 2]) - p(&[0, 3, 3]) - p(&[1, 1, 4]));
    let discriminant = i.pow(3) - k(27) * j.pow(2);
    let degenerate = discriminant.is_zero() || (!S::is_exact() && discriminant.magnitude() <= 1e-12 * i.magnitude().powi(3).max(1e-300));
    let repeated = if !degenerate {
        None
    } else if i.is_zero() {
        Some(S::zero())
    } else {
        Some(k(3) * j.clone() * (k(2) * i.clone()).inv().expect("nonzero I"))
    };
    let roots = match &repeated {
        Some(r) if !i.is_zero() => {
            // simple root −3J/I completes the double root
            let simple = -(k(3) * j.clone() * i.inv().expect("nonzero I"));
            vec![r.to_complex(), r.to_complex(), simple.to_complex()]
        }
        Some(_) => vec![Complex64::new(0.0, 0.0); 3],
        None => {
            let cubic = BinaryForm::new(vec![k(4), S::zero(), -i.clone(), j.clone()])?;
            let set = crate::poles::find_projective_roots(&cubic)?;
            set.flatten()
                .into_iter()
                .filter_map(|p| match p {
                    crate::spinor::ProjectivePoint::Finite(t) => Some(t),
                    crate::spinor::ProjectivePoint::Infinity => None,
                })
                .collect()
        }
    };
    Ok(QuarticResolvent { i, j, discriminant, roots, repeated })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SchlesingerReport {
    /// T(r(λ,μ)) / polarization, fitted on the first sample.
    pub constant: Complex64,
    /// Largest relative deviation from that constant over all samples.
    pub max_deviation: f64,
    pub samples: usize,
}

/// (n!/(2n)!)(λ·∇)^n B evaluated at μ.
fn polarization<S: Scalar>(b: &BinaryForm<S>, lambda: TwoSpinor, mu: TwoSpinor) -> Complex64 {
    let n = b.degree() / 2;
    let mut f = b.to_complex();
    for _ in 0..n {
        if f.degree() == 0 {
            f = BinaryForm::zero(0);
            break;
        }
        f = &f.derivative_xi().scale(&lambda.xi) + &f.derivative_eta().scale(&lambda.eta);
    }
    let c = num_rational::BigRational::new(factorial(n), factorial(2 * n)).to_f64().unwrap_or(0.0);
    f.evaluate_complex(mu.xi, mu.eta) * c
}

/// Compares T at r(λ,μ) = (λ₁μ₁, (λ₁μ₂ + λ₂μ₁)/√2, λ₂μ₂) (spherical components) with the
/// mixed polarization of B at random spinor pairs; `diagonal` sets λ = μ.
pub fn schlesinger_check<S: Scalar>(b: &BinaryForm<S>, t: &TernaryPoly<S>, samples: usize, seed: u64, diagonal: bool) -> Result<SchlesingerReport> {
    if b.degree() != 2 * t.degree() as usize {
        return Err(Error::DegreeMismatch { expected: 2 * t.degree(), found: b.degree() as u32 });
    }
    let tc = t.to_complex();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut constant = None;
    let mut max_deviation: f64 = 0.0;
    for _ in 0..samples.max(1) {
        let lambda = TwoSpinor::random_unit(&mut rng);
        let mu = if diagonal { lambda } else { TwoSpinor::random_unit(&mut rng) };
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let r = spherical_to_cartesian([lambda.xi * mu.xi, (lambda.xi * mu.eta + lambda.eta * mu.xi) * s, lambda.eta * mu.eta]);
        let lhs = tc.evaluate(r);
        let rhs = polarization(b, lambda, mu);
        match constant {
            None => {
                if rhs.norm() == 0.0 {
                    return Err(Error::Consistency("polarization vanished at the first sample".into()));
                }
                constant = Some(lhs / rhs);
            }
            Some(c) => {
                let scale = lhs.norm().max((c * rhs).norm()).max(f64::MIN_POSITIVE);
                max_deviation = max_deviation.max((lhs - c * rhs).norm() / scale);
            }
        }
    }
    Ok(SchlesingerReport { constant: constant.expect("at least one sample"), max_deviation, samples: samples.max(1) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::{reconstruct_harmonic, restrict_to_conic};
    use crate::numcore::ExactScalar;
    use crate::poly::ExactTernary;

    fn int(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    fn quadric() -> ExactTernary {
        TernaryPoly::from_terms(2, [([1, 1, 0], int(1)), ([0, 1, 1], int(1)), ([1, 0, 1], int(1))]).unwrap()
    }

    #[test]
    fn upsilon_examples() {
        let u = clebsch_upsilon(&quadric()).unwrap();
        let base = &ExactTernary::r2() - &quadric();
        assert_eq!(u, &base * &base);
        let z = clebsch_upsilon(&ExactTernary::z()).unwrap();
        let xy = &ExactTernary::monomial([2, 0, 0], int(-1)) - &ExactTernary::monomial([0, 2, 0], int(1));
        assert_eq!(z, xy);
        let x = clebsch_upsilon(&ExactTernary::x()).unwrap();
        assert_eq!(x, &ExactTernary::monomial([0, 2, 0], int(-1)) - &ExactTernary::monomial([0, 0, 2], int(1)));
        let b = restrict_to_conic(&quadric());
        assert_eq!(restrict_to_conic(&u), &b * &b);
        assert!(clebsch_upsilon(&ExactTernary::monomial([2, 0, 0], int(1))).is_err());
    }

    #[test]
    fn resolvent_of_quadric_restriction() {
        let r = quartic_resolvent(&restrict_to_conic(&quadric())).unwrap();
        assert_eq!(r.i, int(3));
        assert_eq!(r.j, int(-1));
        assert!(r.discriminant.is_zero());
        assert_eq!(r.repeated, Some(ExactScalar::ratio(-1, 2)));
        assert!((r.roots[2] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn resolvent_degenerate_and_generic() {
        let square = BinaryForm::new(vec![int(0), int(0), int(1), int(0), int(0)]).unwrap();
        let r = quartic_resolvent(&square).unwrap();
        assert_eq!(r.i, ExactScalar::ratio(1, 3));
        assert_eq!(r.j, ExactScalar::ratio(1, 27));
        assert!(r.repeated.is_some());
        let generic = BinaryForm::new(vec![int(1), int(0), int(0), int(0), int(1)]).unwrap();
        let r = quartic_resolvent(&generic).unwrap();
        assert_eq!(r.i, int(4));
        assert_eq!(r.j, int(0));
        assert!(r.repeated.is_none());
        assert_eq!(r.roots.len(), 3);
        for l in &r.roots {
            assert!((4.0 * l.powu(3) - 4.0 * l).norm() < 1e-12);
        }
        assert!(quartic_resolvent(&BinaryForm::new(vec![int(1), int(1)]).unwrap()).is_err());
    }

    #[test]
    fn schlesinger_round_trip() {
        let b = restrict_to_conic(&quadric());
        let report = schlesinger_check(&b, &quadric(), 10, 3, false).unwrap();
        assert!(report.max_deviation < 1e-10, "{report:?}");
        assert!((report.constant - Complex64::new(1.0, 0.0)).norm() < 1e-10);
        let b = BinaryForm::new(vec![int(1), int(-2), int(0), int(3), int(1), int(0), int(5)]).unwrap();
        let t = reconstruct_harmonic(&b).unwrap();
        let report = schlesinger_check(&b, &t, 10, 4, false).unwrap();
        assert!(report.max_deviation < 1e-10, "{report:?}");
        let diag = schlesinger_check(&b, &t, 5, 4, true).unwrap();
        assert!((diag.constant - Complex64::new(1.0, 0.0)).norm() < 1e-10);
    }
}
