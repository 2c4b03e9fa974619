use num_complex::Complex64;
use rand::Rng;

use super::projection::harmonic_projection;
use super::solid::{normal_constant, solid_harmonic};
use crate::error::{Error, Result};
use crate::numcore::{binomial_f64, Scalar};
use crate::poly::{BinaryForm, FloatBinary, FloatTernary, TernaryPoly};
use crate::spinor::cartan_forms;

fn powers<S: Scalar>(base: &BinaryForm<S>, n: u32) -> Vec<BinaryForm<S>> {
    let mut out = vec![BinaryForm::monomial(0, 0, S::one())];
    for k in 1..=n as usize {
        let next = &out[k - 1] * base;
        out.push(next);
    }
    out
}

/// Substitutes the Cartan map, giving a binary form of degree 2n.
pub fn restrict_to_conic<S: Scalar>(f: &TernaryPoly<S>) -> BinaryForm<S> {
    let n = f.degree();
    let [x, y, z] = cartan_forms::<S>();
    let (px, py, pz) = (powers(&x, n), powers(&y, n), powers(&z, n));
    let mut out = BinaryForm::zero(2 * n as usize);
    for (e, c) in f.terms() {
        let t = &(&px[e[0] as usize] * &py[e[1] as usize]) * &pz[e[2] as usize];
        out = &out + &t.scale(c);
    }
    out
}

/// The unique polynomial of z-degree at most one whose restriction is `b`.
///
/// Uses x + iy = i√2 η², x − iy = −i√2 ξ², z = i√2 ξη, so the monomial
/// (x+iy)^a (x−iy)^c z^s restricts to a single monomial in (ξ, η).
pub fn conic_representative<S: Scalar>(b: &BinaryForm<S>) -> Result<TernaryPoly<S>> {
    let d = b.degree();
    if d % 2 == 1 {
        return Err(Error::arg(format!("restriction of a ternary form has even degree, got {d}")));
    }
    let n = (d / 2) as u32;
    let i = S::imag_unit();
    let plus = TernaryPoly::linear([S::one(), i.clone(), S::zero()]);
    let minus = TernaryPoly::linear([S::one(), -i.clone(), S::zero()]);
    let (pp, pm) = (powers_t(&plus, n), powers_t(&minus, n));
    let root2 = S::sqrt2();
    let up = i.clone() * root2.clone();
    let down = -(i.clone() * root2.clone());
    let mut out = TernaryPoly::zero(n);
    for (k, c) in b.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        // ξ^{d−k} η^k
        let s = (k % 2) as u32;
        let a = (k as u32 - s) / 2;
        let cc = ((d - k) as u32 - s) / 2;
        let scale = up.pow(a) * down.pow(cc) * up.pow(s);
        let coeff = c.clone() * scale.inv().expect("nonzero scale");
        let mut term = &pp[a as usize] * &pm[cc as usize];
        if s == 1 {
            term = &term * &TernaryPoly::z();
        }
        out = &out + &term.scale(&coeff);
    }
    Ok(out)
}

fn powers_t<S: Scalar>(base: &TernaryPoly<S>, n: u32) -> Vec<TernaryPoly<S>> {
    let mut out = vec![TernaryPoly::constant(S::one())];
    for k in 1..=n as usize {
        let next = &out[k - 1] * base;
        out.push(next);
    }
    out
}

/// The harmonic polynomial whose restriction is `b`, exact on the exact backend.
pub fn reconstruct_harmonic<S: Scalar>(b: &BinaryForm<S>) -> Result<TernaryPoly<S>> {
    Ok(harmonic_projection(&conic_representative(b)?))
}

/// Degree L and components φ^M (M = −L..L) of Φ = Σ_M φ^M C^L_M(r).
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicNormalForm {
    pub l: u32,
    pub phi: Vec<Complex64>,
}

impl HarmonicNormalForm {
    pub fn new(l: u32, phi: Vec<Complex64>) -> Result<Self> {
        if phi.len() != 2 * l as usize + 1 {
            return Err(Error::arg(format!("L = {l} needs {} components, got {}", 2 * l + 1, phi.len())));
        }
        Ok(HarmonicNormalForm { l, phi })
    }

    pub fn component(&self, m: i64) -> Complex64 {
        self.phi[(m + self.l as i64) as usize]
    }

    /// Largest violation of (φ^M)* = (−1)^{L−M} φ^{−M}.
    pub fn reality_defect(&self) -> f64 {
        let l = self.l as i64;
        (-l..=l)
            .map(|m| {
                let sign = if (l - m).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                (self.component(m).conj() - sign * self.component(-m)).norm()
            })
            .fold(0.0, f64::max)
    }

    pub fn is_real(&self, tol: f64) -> bool {
        let scale = self.phi.iter().map(|c| c.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
        self.reality_defect() <= tol * scale
    }

    /// Random normal form satisfying the reality condition; components are standard normal.
    pub fn random_real<R: Rng + ?Sized>(l: u32, rng: &mut R) -> Self {
        let li = l as i64;
        let mut phi = vec![Complex64::new(0.0, 0.0); 2 * l as usize + 1];
        for m in 0..=li {
            let v = Complex64::new(crate::spinor::gaussian(rng), crate::spinor::gaussian(rng));
            let sign = if (li - m).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            if m == 0 {
                // (φ^0)* = (−1)^L φ^0
                phi[l as usize] = if li % 2 == 0 { Complex64::new(v.re, 0.0) } else { Complex64::new(0.0, v.im) };
            } else {
                phi[(li + m) as usize] = v;
                phi[(li - m) as usize] = sign * v.conj();
            }
        }
        HarmonicNormalForm { l, phi }
    }

    pub fn to_poly(&self) -> Result<FloatTernary> {
        let l = self.l as i64;
        let mut acc = TernaryPoly::zero(self.l);
        for m in -l..=l {
            let c = self.component(m);
            if c.norm() == 0.0 {
                continue;
            }
            acc = &acc + &solid_harmonic(self.l, m)?.scale(&c);
        }
        Ok(acc)
    }

    /// Reads the normal form off a harmonic polynomial.
    pub fn from_poly<S: Scalar>(f: &TernaryPoly<S>) -> Result<Self> {
        let residual = f.laplacian().norm();
        if residual > 1e-9 * f.norm().max(f64::MIN_POSITIVE) {
            return Err(Error::NotHarmonic { residual });
        }
        reconstruct_from_conic(&restrict_to_conic(f).to_complex())
    }

    /// The restriction Σ_M φ^M a_L C(2L, L−M)^{1/2} ξ^{L+M} η^{L−M}.
    pub fn restriction(&self) -> FloatBinary {
        let l = self.l as usize;
        let a = normal_constant(self.l);
        let coeffs = (0..=2 * l).map(|k| self.phi[2 * l - k] * (a * binomial_f64(2 * l, k).sqrt())).collect();
        BinaryForm::new(coeffs).expect("nonempty")
    }
}

/// Inverts the restriction: reads φ^M from the monomial coefficients of a degree-2L form.
pub fn reconstruct_from_conic<S: Scalar>(b: &BinaryForm<S>) -> Result<HarmonicNormalForm> {
    let d = b.degree();
    if d % 2 == 1 {
        return Err(Error::arg(format!("expected even degree, got {d}")));
    }
    let l = (d / 2) as u32;
    let a = normal_constant(l);
    let phi = (0..=d)
        .map(|i| {
            // i = M + L, coefficient index k = L − M = d − i
            let k = d - i;
            b.coeff(k).to_complex() / (a * binomial_f64(d, k).sqrt())
        })
        .collect();
    HarmonicNormalForm::new(l, phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numcore::ExactScalar;
    use crate::poly::ExactTernary;

    fn int(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    fn xy_yz_zx() -> ExactTernary {
        TernaryPoly::from_terms(2, [([1, 1, 0], int(1)), ([0, 1, 1], int(1)), ([1, 0, 1], int(1))]).unwrap()
    }

    #[test]
    fn quadric_restriction_is_exact() {
        let b = restrict_to_conic(&xy_yz_zx());
        let i = ExactScalar::i();
        let half = ExactScalar::ratio(1, 2);
        let expected = vec![
            -(&i * &half),
            &int(1) + &i,
            int(0),
            -(&int(1) - &i),
            &i * &half,
        ];
        assert_eq!(b.coeffs(), expected.as_slice());
        assert_eq!(reconstruct_harmonic(&b).unwrap(), xy_yz_zx());
    }

    #[test]
    fn r2_multiples_vanish() {
        let g = &TernaryPoly::r2() * &xy_yz_zx();
        assert!(restrict_to_conic(&g).is_zero());
    }

    #[test]
    fn normal_form_examples() {
        let z = HarmonicNormalForm::new(1, vec![Complex64::new(0.0, 0.0), Complex64::i(), Complex64::new(0.0, 0.0)]).unwrap();
        let p = z.to_poly().unwrap();
        assert!((p.coeff([0, 0, 1]) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(z.is_real(1e-12));
        let c = HarmonicNormalForm::new(0, vec![Complex64::new(2.5, 0.0)]).unwrap();
        assert_eq!(c.to_poly().unwrap(), TernaryPoly::constant(Complex64::new(2.5, 0.0)));
        let back = HarmonicNormalForm::from_poly(&p).unwrap();
        assert!((back.phi[1] - Complex64::i()).norm() < 1e-14);
        let not_harmonic = TernaryPoly::monomial([2, 0, 0], Complex64::new(1.0, 0.0));
        assert!(matches!(HarmonicNormalForm::from_poly(&not_harmonic), Err(Error::NotHarmonic { .. })));
    }

    #[test]
    fn highest_component_round_trip() {
        let b = BinaryForm::monomial(6, 0, int(1));
        let nf = reconstruct_from_conic(&b).unwrap();
        assert!(nf.phi[..6].iter().all(|c| c.norm() == 0.0));
        let back = restrict_to_conic(&nf.to_poly().unwrap());
        assert!((&back - &b.to_complex()).norm() < 1e-13);
        let exact = reconstruct_harmonic(&b).unwrap();
        assert_eq!(restrict_to_conic(&exact), b);
    }

    #[test]
    fn zero_form() {
        let nf = reconstruct_from_conic(&BinaryForm::<ExactScalar>::zero(4)).unwrap();
        assert!(nf.to_poly().unwrap().is_zero());
    }
}
