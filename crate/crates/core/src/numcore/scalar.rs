use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::exact::ExactScalar;

/// Coefficient domain shared by every polynomial type.
///
/// Two backends exist: [`ExactScalar`] (exact, decidable zero tests) and
/// [`Complex64`] (floating point).
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(n: i64) -> Self;
    fn from_rational(q: &BigRational) -> Self;
    fn imag_unit() -> Self;
    fn sqrt2() -> Self;
    fn sqrt3() -> Self;
    fn conj(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn to_complex(&self) -> Complex64;
    fn is_exact() -> bool;

    /// Zero test: exact on the exact backend, `|x| ≤ tol` on floats.
    fn is_negligible(&self, tol: f64) -> bool {
        if Self::is_exact() {
            self.is_zero()
        } else {
            self.to_complex().norm() <= tol
        }
    }

    fn magnitude(&self) -> f64 {
        self.to_complex().norm()
    }

    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(&BigRational::new(n.into(), d.into()))
    }

    fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn from_rational(q: &BigRational) -> Self {
        Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn imag_unit() -> Self {
        Complex64::new(0.0, 1.0)
    }
    fn sqrt2() -> Self {
        Complex64::new(std::f64::consts::SQRT_2, 0.0)
    }
    fn sqrt3() -> Self {
        Complex64::new(3f64.sqrt(), 0.0)
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn inv(&self) -> Option<Self> {
        (!Scalar::is_zero(self)).then(|| Complex64::new(1.0, 0.0) / self)
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
    fn is_exact() -> bool {
        false
    }
}

impl Scalar for ExactScalar {
    fn zero() -> Self {
        ExactScalar::zero()
    }
    fn one() -> Self {
        ExactScalar::from_int(1)
    }
    fn is_zero(&self) -> bool {
        ExactScalar::is_zero(self)
    }
    fn from_i64(n: i64) -> Self {
        ExactScalar::from_int(n)
    }
    fn from_rational(q: &BigRational) -> Self {
        ExactScalar::rational(q.clone())
    }
    fn imag_unit() -> Self {
        ExactScalar::i()
    }
    fn sqrt2() -> Self {
        ExactScalar::sqrt2()
    }
    fn sqrt3() -> Self {
        ExactScalar::sqrt3()
    }
    fn conj(&self) -> Self {
        ExactScalar::conj(self)
    }
    fn inv(&self) -> Option<Self> {
        ExactScalar::inv(self)
    }
    fn to_complex(&self) -> Complex64 {
        ExactScalar::to_complex(self)
    }
    fn is_exact() -> bool {
        true
    }
}
