//! Two-spinors, null (2j+1)-spinors, the Cartan map onto the null cone, and
//! the conversion of projective roots into real pole directions.

use std::f64::consts::SQRT_2;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::numcore::{binomial_f64, wigner_3j, HalfInt, Scalar};
use crate::poly::BinaryForm;

/// Zero test used when fixing the sign of a pole.
pub const CANONICAL_ZERO: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoSpinor {
    pub xi: Complex64,
    pub eta: Complex64,
}

impl TwoSpinor {
    pub fn new(xi: Complex64, eta: Complex64) -> Self {
        TwoSpinor { xi, eta }
    }

    pub fn real(xi: f64, eta: f64) -> Self {
        TwoSpinor::new(Complex64::new(xi, 0.0), Complex64::new(eta, 0.0))
    }

    /// Uniform sample from the unit sphere of ℂ².
    pub fn random_unit<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let v: [f64; 4] = std::array::from_fn(|_| gaussian(rng));
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > 1e-6 {
                return TwoSpinor::new(Complex64::new(v[0] / n, v[1] / n), Complex64::new(v[2] / n, v[3] / n));
            }
        }
    }

    pub fn norm(&self) -> f64 {
        (self.xi.norm_sqr() + self.eta.norm_sqr()).sqrt()
    }
}

pub(crate) fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(rand_distr::StandardNormal)
}

/// A point of the null cone x² + y² + z² = 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NullVector {
    /// Spherical components (b_1, b_0, b_{−1}).
    pub spherical: [Complex64; 3],
}

impl NullVector {
    /// Cartesian components (b_x, b_y, b_z).
    pub fn cartesian(&self) -> [Complex64; 3] {
        let [b1, b0, bm1] = self.spherical;
        let i = Complex64::i();
        [i * (bm1 - b1) / SQRT_2, (b1 + bm1) / SQRT_2, i * b0]
    }

    /// 2 b_1 b_{−1} − b_0², which vanishes on the cone.
    pub fn null_defect(&self) -> Complex64 {
        let [b1, b0, bm1] = self.spherical;
        2.0 * b1 * bm1 - b0 * b0
    }
}

/// Spherical components to Cartesian ones: x = i(r_{−1} − r_1)/√2, y = (r_1 + r_{−1})/√2, z = i r_0.
pub fn spherical_to_cartesian(s: [Complex64; 3]) -> [Complex64; 3] {
    NullVector { spherical: s }.cartesian()
}

pub fn cartan_map(psi: TwoSpinor) -> NullVector {
    let TwoSpinor { xi, eta } = psi;
    NullVector { spherical: [xi * xi, SQRT_2 * xi * eta, eta * eta] }
}

/// The Cartan map as three quadratic binary forms (images of x, y, z),
/// exact in any domain containing i and √2.
pub fn cartan_forms<S: Scalar>() -> [BinaryForm<S>; 3] {
    let i = S::imag_unit();
    let half_root2 = S::sqrt2() * S::from_ratio(1, 2);
    let zero = S::zero();
    let x = BinaryForm::new(vec![-(i.clone() * half_root2.clone()), zero.clone(), i.clone() * half_root2.clone()]);
    let y = BinaryForm::new(vec![half_root2.clone(), zero.clone(), half_root2]);
    let z = BinaryForm::new(vec![zero.clone(), i * S::sqrt2(), zero]);
    [x.expect("quadratic"), y.expect("quadratic"), z.expect("quadratic")]
}

/// ξ^{(j)}_m = C(2j, j−m)^{1/2} ξ^{j+m} η^{j−m}, listed for m = −j..j.
pub fn null_spinor(j: HalfInt, psi: TwoSpinor) -> Vec<Complex64> {
    let n = j.twice().max(0) as usize;
    (0..=n)
        .map(|i| {
            // i = j + m
            binomial_f64(n, n - i).sqrt() * psi.xi.powu(i as u32) * psi.eta.powu((n - i) as u32)
        })
        .collect()
}

/// Contraction Σ_m α^m ξ_m with the raised index of the first spinor.
pub fn spinor_contraction(j: HalfInt, alpha: &[Complex64], xi: &[Complex64]) -> Result<Complex64> {
    let raised = crate::numcore::raise_lower(alpha, j)?;
    if xi.len() != raised.len() {
        return Err(Error::arg("spinor lengths differ"));
    }
    Ok(raised.iter().zip(xi).map(|(a, b)| a * b).sum())
}

fn check_len(j: HalfInt, x: &[Complex64]) -> Result<()> {
    if j.twice() < 0 || x.len() != j.dim() {
        return Err(Error::arg(format!("spin {j} needs {} components, got {}", j.dim(), x.len())));
    }
    Ok(())
}

/// Coupling Σ_{m1,m2} x1_{m1} x2_{m2} (j1 j2 j3; m1 m2 −M)(−1)^{j3−M}, listed for M = −j3..j3.
pub fn couple(j1: HalfInt, x1: &[Complex64], j2: HalfInt, x2: &[Complex64], j3: HalfInt) -> Result<Vec<Complex64>> {
    check_len(j1, x1)?;
    check_len(j2, x2)?;
    let mut out = vec![Complex64::new(0.0, 0.0); j3.dim()];
    for (a, m1) in j1.projections().enumerate() {
        for (b, m2) in j2.projections().enumerate() {
            let big_m = m1 + m2;
            if big_m.abs() > j3 {
                continue;
            }
            let w = wigner_3j(j1, j2, j3, m1, m2, -big_m)?.to_f64();
            if w == 0.0 {
                continue;
            }
            let phase = if ((j3 - big_m).twice() / 2) % 2 == 0 { 1.0 } else { -1.0 };
            let idx = ((big_m + j3).twice() / 2) as usize;
            out[idx] += x1[a] * x2[b] * (w * phase);
        }
    }
    Ok(out)
}

/// Applies the multiplication law of null spinors: every product x1_{m1} x2_{m2}
/// equals (−1)^{2j1} (2J+1)^{1/2} (j1 j2 J; m1 m2 −M)(−1)^{J−M} ξ^{(J)}_M with J = j1 + j2.
///
/// Returns the spin-J null spinor read off from the products. Inconsistent readings
/// mean the two inputs were not built from the same two-spinor.
pub fn null_product(j1: HalfInt, x1: &[Complex64], j2: HalfInt, x2: &[Complex64]) -> Result<Vec<Complex64>> {
    check_len(j1, x1)?;
    check_len(j2, x2)?;
    let big_j = j1 + j2;
    let sign = if j1.twice() % 2 == 0 { 1.0 } else { -1.0 };
    let norm = ((big_j.twice() + 1) as f64).sqrt();
    let mut readings: Vec<Option<Complex64>> = vec![None; big_j.dim()];
    let scale = x1.iter().map(|c| c.norm()).fold(0.0, f64::max) * x2.iter().map(|c| c.norm()).fold(0.0, f64::max);
    for (a, m1) in j1.projections().enumerate() {
        for (b, m2) in j2.projections().enumerate() {
            let big_m = m1 + m2;
            let w = wigner_3j(j1, j2, big_j, m1, m2, -big_m)?.to_f64();
            let phase = if ((big_j - big_m).twice() / 2) % 2 == 0 { 1.0 } else { -1.0 };
            let factor = sign * norm * w * phase;
            let value = x1[a] * x2[b] / factor;
            let idx = ((big_m + big_j).twice() / 2) as usize;
            match readings[idx] {
                None => readings[idx] = Some(value),
                Some(prev) => {
                    if (prev - value).norm() > 1e-10 * scale.max(f64::MIN_POSITIVE) {
                        return Err(Error::arg("null spinors were not built from the same two-spinor"));
                    }
                }
            }
        }
    }
    Ok(readings.into_iter().map(|v| v.expect("every M is reached")).collect())
}

/// A projective root t = ξ/η, possibly at infinity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ProjectivePoint {
    Finite(Complex64),
    Infinity,
}

impl ProjectivePoint {
    /// The antipode t ↦ −1/t̄, exchanging 0 and ∞.
    pub fn antipode(self) -> ProjectivePoint {
        match self {
            ProjectivePoint::Infinity => ProjectivePoint::Finite(Complex64::new(0.0, 0.0)),
            ProjectivePoint::Finite(t) if t.norm_sqr() == 0.0 => ProjectivePoint::Infinity,
            ProjectivePoint::Finite(t) => ProjectivePoint::Finite(-1.0 / t.conj()),
        }
    }

    /// Chordal distance on the Riemann sphere of diameter 2.
    pub fn chordal(self, other: ProjectivePoint) -> f64 {
        use ProjectivePoint::*;
        match (self, other) {
            (Infinity, Infinity) => 0.0,
            (Finite(a), Infinity) | (Infinity, Finite(a)) => 2.0 / (1.0 + a.norm_sqr()).sqrt(),
            (Finite(a), Finite(b)) => 2.0 * (a - b).norm() / ((1.0 + a.norm_sqr()).sqrt() * (1.0 + b.norm_sqr()).sqrt()),
        }
    }

    /// The two-spinor (ξ, η) representing the point.
    pub fn spinor(self) -> TwoSpinor {
        match self {
            ProjectivePoint::Infinity => TwoSpinor::real(1.0, 0.0),
            ProjectivePoint::Finite(t) => TwoSpinor::new(t, Complex64::new(1.0, 0.0)),
        }
    }
}

/// A real unit direction with a multiplicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pole {
    pub direction: [f64; 3],
    pub multiplicity: u32,
}

/// Flips v so the first coordinate (scanning z, y, x) that is not negligible is positive.
pub fn canonical_sign(v: [f64; 3]) -> [f64; 3] {
    for axis in [2, 1, 0] {
        if v[axis].abs() > CANONICAL_ZERO {
            return if v[axis] > 0.0 { v } else { v.map(|c| -c) };
        }
    }
    v
}

impl Pole {
    pub fn new(direction: [f64; 3], multiplicity: u32) -> Self {
        Pole { direction: canonical_sign(direction), multiplicity }
    }

    /// The linear form p·r.
    pub fn dot_r(&self, r: [Complex64; 3]) -> Complex64 {
        (0..3).map(|k| r[k] * self.direction[k]).sum()
    }
}

/// Direction ±i (b × b*)/(b·b*) of the real line through a conjugate pair of cone points.
pub fn pole_from_conjugate_pair(b: NullVector) -> Result<Pole> {
    let v = b.cartesian();
    let w = v.map(|c| c.conj());
    let norm: f64 = v.iter().map(|c| c.norm_sqr()).sum();
    if norm == 0.0 {
        return Err(Error::arg("zero null vector has no pole"));
    }
    let cross = [v[1] * w[2] - v[2] * w[1], v[2] * w[0] - v[0] * w[2], v[0] * w[1] - v[1] * w[0]];
    let d = cross.map(|c| Complex64::i() * c / norm);
    let imag = d.iter().map(|c| c.im.abs()).fold(0.0, f64::max);
    let size = d.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if imag > 1e-10 * size.max(1.0) {
        return Err(Error::Consistency(format!("pole direction has imaginary residue {imag:.3e}")));
    }
    Ok(Pole::new(d.map(|c| c.re), 1))
}

/// Direction (2 Re t, −2 Im t, −(1−|t|²))/(1+|t|²); infinity maps to (0, 0, 1).
pub fn pole_from_root(t: ProjectivePoint) -> Pole {
    match t {
        ProjectivePoint::Infinity => Pole::new([0.0, 0.0, 1.0], 1),
        ProjectivePoint::Finite(t) => {
            let m = t.norm_sqr();
            if m > 1.0 {
                // Same point through u = 1/t, which keeps large roots well conditioned.
                let u = 1.0 / t;
                let mu = u.norm_sqr();
                let s = 1.0 + mu;
                return Pole::new([2.0 * u.re / s, 2.0 * u.im / s, (1.0 - mu) / s], 1);
            }
            let s = 1.0 + m;
            Pole::new([2.0 * t.re / s, -2.0 * t.im / s, -(1.0 - m) / s], 1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close3(a: [f64; 3], b: [f64; 3], tol: f64) -> bool {
        (0..3).all(|k| (a[k] - b[k]).abs() < tol)
    }

    #[test]
    fn null_spinor_examples() {
        let psi = TwoSpinor::new(c(0.3, 1.0), c(-2.0, 0.5));
        let half = null_spinor(HalfInt::HALF, psi);
        assert_eq!(half, vec![psi.eta, psi.xi]);
        let one = null_spinor(HalfInt::ONE, psi);
        let b = cartan_map(psi).spherical;
        for (u, v) in one.iter().zip([b[2], b[1], b[0]]) {
            assert!((u - v).norm() < 1e-14);
        }
    }

    #[test]
    fn cartan_examples() {
        let b = cartan_map(TwoSpinor::real(0.0, 1.0));
        assert_eq!(b.spherical, [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let v = cartan_map(TwoSpinor::real(1.0, 0.0)).cartesian();
        assert!((v[0] - c(0.0, -1.0 / SQRT_2)).norm() < 1e-15);
        assert!((v[1] - c(1.0 / SQRT_2, 0.0)).norm() < 1e-15);
        let v = cartan_map(TwoSpinor::real(1.0, 1.0)).cartesian();
        assert!((v[1] - c(SQRT_2, 0.0)).norm() < 1e-15 && (v[2] - c(0.0, SQRT_2)).norm() < 1e-15);
        assert!(v[0].norm() < 1e-15);
    }

    #[test]
    fn pole_examples() {
        let p = pole_from_conjugate_pair(cartan_map(TwoSpinor::real(1.0, 0.0))).unwrap();
        assert!(close3(p.direction, [0.0, 0.0, 1.0], 1e-15));
        let p = pole_from_root(ProjectivePoint::Finite(c(0.0, 0.0)));
        assert_eq!(p.direction, [0.0, 0.0, 1.0]);
        let s3 = 3f64.sqrt();
        let t = c(-0.5 * (1.5f64).sqrt(), 0.5 / SQRT_2);
        let p = pole_from_root(ProjectivePoint::Finite(t));
        let expected = canonical_sign([-(2.0 / 3.0f64).sqrt(), -SQRT_2 / 3.0, -1.0 / 3.0]);
        assert!(close3(p.direction, expected, 1e-14));
        let t = c(1.0, -1.0) * ((1.0 + s3) / 2.0);
        let p = pole_from_root(ProjectivePoint::Finite(t));
        assert!(close3(p.direction, [1.0 / s3; 3], 1e-14));
        let b = NullVector { spherical: [c(0.0, 0.0); 3] };
        assert!(pole_from_conjugate_pair(b).is_err());
    }

    #[test]
    fn conjugate_pair_from_cartesian_data() {
        // b ∝ (1, −(1−√3 i)/2, −(1+√3 i)/2) in Cartesian components.
        let s3 = 3f64.sqrt();
        let cart = [c(1.0, 0.0), c(-0.5, s3 / 2.0), c(-0.5, -s3 / 2.0)];
        // invert the Cartesian view: b_1 = −(x − iy)/(i√2), b_{−1} = (x + iy)/(i√2), b_0 = −i z
        let i = Complex64::i();
        let sph = [-(cart[0] - i * cart[1]) / (i * SQRT_2), -i * cart[2], (cart[0] + i * cart[1]) / (i * SQRT_2)];
        let b = NullVector { spherical: sph };
        assert!(b.null_defect().norm() < 1e-14);
        let p = pole_from_conjugate_pair(b).unwrap();
        assert!(close3(p.direction, [1.0 / s3; 3], 1e-14));
    }

    #[test]
    fn product_law_small_cases() {
        let psi = TwoSpinor::real(1.0, 2.0);
        let h = HalfInt::HALF;
        let x = null_spinor(h, psi);
        let prod = null_product(h, &x, h, &x).unwrap();
        let direct = null_spinor(HalfInt::ONE, psi);
        for (a, b) in prod.iter().zip(&direct) {
            assert!((a - b).norm() < 1e-12);
        }
        let singlet = couple(h, &x, h, &x, HalfInt::ZERO).unwrap();
        assert!(singlet[0].norm() < 1e-15);
        let z = HalfInt::ZERO;
        let one = [c(1.0, 0.0)];
        assert_eq!(null_product(z, &one, z, &one).unwrap(), vec![c(1.0, 0.0)]);
        let other = null_spinor(h, TwoSpinor::real(2.0, -1.0));
        assert!(null_product(h, &x, h, &other).is_err());
    }

    #[test]
    fn bracket_power() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for twice in 0..6 {
            let j = HalfInt::from_twice(twice);
            let a = TwoSpinor::random_unit(&mut rng);
            let b = TwoSpinor::random_unit(&mut rng);
            let lhs = spinor_contraction(j, &null_spinor(j, a), &null_spinor(j, b)).unwrap();
            let rhs = (b.eta * a.xi - b.xi * a.eta).powu(twice as u32);
            assert!((lhs - rhs).norm() < 1e-12, "j = {j}: {lhs} vs {rhs}");
        }
    }
}
