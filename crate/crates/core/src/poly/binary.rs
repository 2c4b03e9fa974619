use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::numcore::{binomial, binomial_f64, ExactScalar, Scalar};

/// Binary form Σ_k b_k ξ^{d−k} η^k stored densely as b_0..b_d.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm<S: Scalar> {
    coeffs: Vec<S>,
}

pub type ExactBinary = BinaryForm<ExactScalar>;
pub type FloatBinary = BinaryForm<Complex64>;

fn binom<S: Scalar>(n: usize, k: usize) -> S {
    S::from_rational(&BigRational::from_integer(binomial(n, k)))
}

impl<S: Scalar> BinaryForm<S> {
    pub fn new(coeffs: Vec<S>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::arg("a binary form needs at least one coefficient"));
        }
        Ok(BinaryForm { coeffs })
    }

    pub fn zero(degree: usize) -> Self {
        BinaryForm { coeffs: vec![S::zero(); degree + 1] }
    }

    /// c·ξ^{d−k} η^k.
    pub fn monomial(degree: usize, k: usize, c: S) -> Self {
        let mut f = Self::zero(degree);
        f.coeffs[k] = c;
        f
    }

    pub fn xi() -> Self {
        Self::monomial(1, 0, S::one())
    }

    pub fn eta() -> Self {
        Self::monomial(1, 1, S::one())
    }

    /// (αξ + βη)^n.
    pub fn linear_power(alpha: S, beta: S, n: usize) -> Self {
        let base = BinaryForm { coeffs: vec![alpha, beta] };
        (0..n).fold(Self::monomial(0, 0, S::one()), |acc, _| &acc * &base)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &S {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.magnitude().powi(2)).sum::<f64>().sqrt()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> BinaryForm<T> {
        BinaryForm { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn to_complex(&self) -> FloatBinary {
        self.map(|c| c.to_complex())
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|v| v.clone() * c.clone())
    }

    /// Classical coefficients a_r with form = Σ C(d,r) a_r ξ^{d−r} η^r.
    pub fn to_classical(&self) -> Vec<S> {
        let d = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(r, b)| b.clone() * binom::<S>(d, r).inv().expect("nonzero binomial"))
            .collect()
    }

    pub fn from_classical(a: Vec<S>) -> Result<Self> {
        let d = a.len().checked_sub(1).ok_or_else(|| Error::arg("empty coefficient list"))?;
        Ok(BinaryForm { coeffs: a.into_iter().enumerate().map(|(r, v)| v * binom::<S>(d, r)).collect() })
    }

    /// Normalized components φ^m (m = −j..j, j = d/2) with φ^{j−r} = C(d,r)^{1/2} a_r.
    pub fn to_phi(&self) -> Vec<Complex64> {
        let d = self.degree();
        (0..=d)
            .map(|i| {
                let r = d - i;
                self.coeffs[r].to_complex() / binomial_f64(d, r).sqrt()
            })
            .collect()
    }

    pub fn derivative_xi(&self) -> Self {
        let d = self.degree();
        if d == 0 {
            return Self::zero(0);
        }
        BinaryForm { coeffs: (0..d).map(|k| self.coeffs[k].clone() * S::from_i64((d - k) as i64)).collect() }
    }

    pub fn derivative_eta(&self) -> Self {
        let d = self.degree();
        if d == 0 {
            return Self::zero(0);
        }
        BinaryForm { coeffs: (0..d).map(|k| self.coeffs[k + 1].clone() * S::from_i64((k + 1) as i64)).collect() }
    }

    /// ∂^a/∂ξ^a ∂^b/∂η^b; zero form of degree 0 once the order exceeds the degree.
    pub fn partial(&self, a: usize, b: usize) -> Self {
        if a + b > self.degree() {
            return Self::zero(0);
        }
        let mut f = self.clone();
        for _ in 0..a {
            f = f.derivative_xi();
        }
        for _ in 0..b {
            f = f.derivative_eta();
        }
        f
    }

    pub fn evaluate(&self, xi: &S, eta: &S) -> S {
        let d = self.degree();
        let mut acc = S::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            acc = acc + c.clone() * xi.pow((d - k) as u32) * eta.pow(k as u32);
        }
        acc
    }

    pub fn evaluate_complex(&self, xi: Complex64, eta: Complex64) -> Complex64 {
        let d = self.degree();
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.coeffs.iter().enumerate() {
            acc += c.to_complex() * xi.powu((d - k) as u32) * eta.powu(k as u32);
        }
        acc
    }

    /// The dehomogenized polynomial in t = ξ/η, evaluated by Horner.
    pub fn evaluate_t(&self, t: Complex64) -> Complex64 {
        self.coeffs.iter().fold(Complex64::new(0.0, 0.0), |acc, c| acc * t + c.to_complex())
    }

    /// Substitution ξ ↦ l1 ξ' + m1 η', η ↦ l2 ξ' + m2 η'.
    pub fn substitute_linear(&self, l: [S; 2], m: [S; 2]) -> Self {
        let d = self.degree();
        let xi_img = BinaryForm { coeffs: vec![l[0].clone(), m[0].clone()] };
        let eta_img = BinaryForm { coeffs: vec![l[1].clone(), m[1].clone()] };
        let mut out = Self::zero(d);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut t = Self::monomial(0, 0, c.clone());
            for _ in 0..d - k {
                t = &t * &xi_img;
            }
            for _ in 0..k {
                t = &t * &eta_img;
            }
            out = &out + &t;
        }
        out
    }
}

impl FloatBinary {
    /// Inverse of [`BinaryForm::to_phi`].
    pub fn from_phi(phi: &[Complex64]) -> Result<Self> {
        let d = phi.len().checked_sub(1).ok_or_else(|| Error::arg("empty component list"))?;
        let coeffs = (0..=d).map(|r| phi[d - r] * binomial_f64(d, r).sqrt()).collect();
        Ok(BinaryForm { coeffs })
    }
}

impl<S: Scalar> Add for &BinaryForm<S> {
    type Output = BinaryForm<S>;
    fn add(self, o: &BinaryForm<S>) -> BinaryForm<S> {
        assert_eq!(self.degree(), o.degree(), "adding binary forms of different degree");
        BinaryForm { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.clone() + b.clone()).collect() }
    }
}

impl<S: Scalar> Sub for &BinaryForm<S> {
    type Output = BinaryForm<S>;
    fn sub(self, o: &BinaryForm<S>) -> BinaryForm<S> {
        assert_eq!(self.degree(), o.degree(), "subtracting binary forms of different degree");
        BinaryForm { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.clone() - b.clone()).collect() }
    }
}

impl<S: Scalar> Mul for &BinaryForm<S> {
    type Output = BinaryForm<S>;
    fn mul(self, o: &BinaryForm<S>) -> BinaryForm<S> {
        let mut out = BinaryForm::<S>::zero(self.degree() + o.degree());
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out.coeffs[i + k] = out.coeffs[i + k].clone() + a.clone() * b.clone();
            }
        }
        out
    }
}

impl<S: Scalar> Neg for &BinaryForm<S> {
    type Output = BinaryForm<S>;
    fn neg(self) -> BinaryForm<S> {
        self.map(|c| -c.clone())
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for BinaryForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})·ξ^{}·η^{}", d - k, k)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
