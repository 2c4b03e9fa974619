use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numcore::Scalar;
use crate::poly::BinaryForm;
use crate::spinor::ProjectivePoint;

/// Coefficients below this fraction of the largest one count as zero when deflating ξ^a η^b.
pub const DEFLATION_THRESHOLD: f64 = 1e-12;
/// Roots closer than this chordal distance merge into one multiple root.
pub const CLUSTER_RADIUS: f64 = 1e-6;
/// Backward-error bound past which the solver reports failure.
pub const MAX_BACKWARD_ERROR: f64 = 1e-8;
const MAX_ITERATIONS: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjectiveRoot {
    pub point: ProjectivePoint,
    pub multiplicity: u32,
}

/// Roots of a binary form as points t = ξ/η of the Riemann sphere.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectiveRootSet {
    pub roots: Vec<ProjectiveRoot>,
    /// Largest backward error |B(t)| / Σ|b_k||t|^{d−k} over the finite roots.
    pub backward_error: f64,
}

impl ProjectiveRootSet {
    pub fn total_multiplicity(&self) -> u32 {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    /// Each root repeated according to its multiplicity.
    pub fn flatten(&self) -> Vec<ProjectivePoint> {
        self.roots.iter().flat_map(|r| std::iter::repeat(r.point).take(r.multiplicity as usize)).collect()
    }
}

/// Dense polynomial in t, highest power first.
#[derive(Clone, Debug)]
struct Poly {
    c: Vec<Complex64>,
}

impl Poly {
    fn degree(&self) -> usize {
        self.c.len() - 1
    }

    fn eval(&self, t: Complex64) -> Complex64 {
        self.c.iter().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * t + c)
    }

    fn derivative(&self) -> Poly {
        let d = self.degree();
        if d == 0 {
            return Poly { c: vec![Complex64::new(0.0, 0.0)] };
        }
        Poly { c: self.c[..d].iter().enumerate().map(|(k, &c)| c * (d - k) as f64).collect() }
    }

    /// Newton correction p/p′, evaluated through the reversed polynomial outside the unit disc.
    fn newton_ratio(&self, t: Complex64) -> Complex64 {
        let m = self.degree() as f64;
        if t.norm() <= 1.0 {
            let (mut p, mut dp) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
            for &c in &self.c {
                dp = dp * t + p;
                p = p * t + c;
            }
            return p / dp;
        }
        let w = 1.0 / t;
        let (mut r, mut dr) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for &c in self.c.iter().rev() {
            dr = dr * w + r;
            r = r * w + c;
        }
        t * r / (m * r - w * dr)
    }

    fn backward_error(&self, t: Complex64) -> f64 {
        let scale = self.c.iter().fold(0.0, |acc, c| acc * t.norm() + c.norm());
        if t.norm() <= 1.0 {
            return self.eval(t).norm() / scale.max(f64::MIN_POSITIVE);
        }
        let w = 1.0 / t;
        let rev = self.c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * w + c);
        let rev_scale = self.c.iter().rev().fold(0.0, |acc, c| acc * w.norm() + c.norm());
        rev.norm() / rev_scale.max(f64::MIN_POSITIVE)
    }
}

/// Simultaneous Aberth–Ehrlich iteration for all roots of a polynomial with nonzero
/// leading and constant coefficients.
fn aberth(p: &Poly) -> Result<Vec<Complex64>> {
    let n = p.degree();
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = p.c[0].norm();
    let radius = (p.c[n].norm() / lead).powf(1.0 / n as f64);
    let mut z: Vec<Complex64> =
        (0..n).map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4)).collect();
    let mut converged = vec![false; n];
    for _ in 0..MAX_ITERATIONS {
        let mut all = true;
        for i in 0..n {
            if converged[i] {
                continue;
            }
            let ratio = p.newton_ratio(z[i]);
            let repulsion: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let step = ratio / (1.0 - ratio * repulsion);
            if !step.is_finite() {
                continue;
            }
            z[i] -= step;
            if step.norm() <= 4.0 * f64::EPSILON * z[i].norm().max(1e-300) || p.backward_error(z[i]) < f64::EPSILON {
                converged[i] = true;
            } else {
                all = false;
            }
        }
        if all {
            break;
        }
    }
    Ok(z)
}

/// Exact deflation of ξ^a η^b, then Aberth–Ehrlich on the remaining polynomial in t = ξ/η;
/// roots within [`CLUSTER_RADIUS`] merge and are refined as multiple roots.
pub fn find_projective_roots<S: Scalar>(b: &BinaryForm<S>) -> Result<ProjectiveRootSet> {
    let coeffs: Vec<Complex64> = b.coeffs().iter().map(|c| c.to_complex()).collect();
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 || b.is_zero() {
        return Err(Error::arg("the zero form has no roots"));
    }
    let d = coeffs.len() - 1;
    let negligible = |c: &Complex64| c.norm() <= DEFLATION_THRESHOLD * scale;
    // η^a divides the form ⇔ b_0..b_{a−1} vanish ⇔ ∞ is a root of multiplicity a.
    let at_infinity = coeffs.iter().take_while(|c| negligible(c)).count();
    let at_zero = coeffs.iter().rev().take_while(|c| negligible(c)).count();
    let mut roots = Vec::new();
    if at_infinity > 0 {
        roots.push(ProjectiveRoot { point: ProjectivePoint::Infinity, multiplicity: at_infinity as u32 });
    }
    if at_zero > 0 {
        roots.push(ProjectiveRoot { point: ProjectivePoint::Finite(Complex64::new(0.0, 0.0)), multiplicity: at_zero as u32 });
    }
    let mut backward_error: f64 = 0.0;
    if at_infinity + at_zero < d {
        let p = Poly { c: coeffs[at_infinity..=d - at_zero].to_vec() };
        let raw = aberth(&p)?;
        for (centre, size) in cluster(&raw) {
            let refined = refine_multiple(&p, centre, size);
            backward_error = backward_error.max(p.backward_error(refined));
            roots.push(ProjectiveRoot { point: ProjectivePoint::Finite(refined), multiplicity: size });
        }
        if !(backward_error <= MAX_BACKWARD_ERROR) {
            return Err(Error::Solver(format!("root finder stalled with backward error {backward_error:.3e}")));
        }
    }
    Ok(ProjectiveRootSet { roots, backward_error })
}

/// Greedy single-linkage grouping in the chordal metric; returns centroid and size.
fn cluster(z: &[Complex64]) -> Vec<(Complex64, u32)> {
    let n = z.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while label[r] != r {
            r = label[r];
        }
        label[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if ProjectivePoint::Finite(z[i]).chordal(ProjectivePoint::Finite(z[j])) < CLUSTER_RADIUS {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                label[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<(usize, Complex64, u32)> = Vec::new();
    for i in 0..n {
        let root = find(&mut label, i);
        match groups.iter_mut().find(|g| g.0 == root) {
            Some(g) => {
                g.1 += z[i];
                g.2 += 1;
            }
            None => groups.push((root, z[i], 1)),
        }
    }
    groups.into_iter().map(|(_, sum, k)| (sum / k as f64, k)).collect()
}

/// Newton on p^{(k−1)}, where a k-fold root is simple; kept only if it lowers the residual.
fn refine_multiple(p: &Poly, start: Complex64, k: u32) -> Complex64 {
    if k == 1 {
        return start;
    }
    let mut q = p.clone();
    for _ in 1..k {
        q = q.derivative();
    }
    let mut t = start;
    for _ in 0..8 {
        let step = q.newton_ratio(t);
        if !step.is_finite() {
            break;
        }
        t -= step;
        if step.norm() <= f64::EPSILON * t.norm().max(1.0) {
            break;
        }
    }
    if p.backward_error(t) <= p.backward_error(start) * 10.0 {
        t
    } else {
        start
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numcore::ExactScalar;
    use crate::poly::FloatBinary;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn monomial_deflation() {
        let b = BinaryForm::monomial(2, 1, ExactScalar::from_int(1));
        let rs = find_projective_roots(&b).unwrap();
        assert_eq!(rs.total_multiplicity(), 2);
        assert!(rs.roots.contains(&ProjectiveRoot { point: ProjectivePoint::Infinity, multiplicity: 1 }));
        assert!(rs.roots.contains(&ProjectiveRoot { point: ProjectivePoint::Finite(c(0.0, 0.0)), multiplicity: 1 }));
    }

    #[test]
    fn simple_and_double_roots() {
        // (t − 2)(t + i)² with ξ = t, η = 1
        let roots = [c(2.0, 0.0), c(0.0, -1.0), c(0.0, -1.0)];
        let mut f = FloatBinary::monomial(0, 0, c(1.0, 0.0));
        for r in roots {
            f = &f * &FloatBinary::new(vec![c(1.0, 0.0), -r]).unwrap();
        }
        let rs = find_projective_roots(&f).unwrap();
        assert_eq!(rs.roots.len(), 2);
        let double = rs.roots.iter().find(|r| r.multiplicity == 2).unwrap();
        let ProjectivePoint::Finite(t) = double.point else { panic!() };
        assert!((t - c(0.0, -1.0)).norm() < 1e-12);
    }

    #[test]
    fn zero_form_rejected() {
        assert!(find_projective_roots(&FloatBinary::zero(3)).is_err());
    }

    #[test]
    fn large_roots_stay_accurate() {
        let f = FloatBinary::new(vec![c(1e-6, 0.0), c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
        let rs = find_projective_roots(&f).unwrap();
        assert_eq!(rs.total_multiplicity(), 2);
        assert!(rs.backward_error < 1e-14);
    }
}
