use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact number of the form sign·√radicand with a non-negative rational radicand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SqrtRational {
    sign: i8,
    radicand: BigRational,
}

impl SqrtRational {
    pub fn zero() -> Self {
        SqrtRational { sign: 0, radicand: BigRational::zero() }
    }

    pub fn one() -> Self {
        SqrtRational { sign: 1, radicand: BigRational::one() }
    }

    /// Builds sign·√radicand. A zero radicand forces sign 0; a zero sign forces radicand 0.
    pub fn new(sign: i8, radicand: BigRational) -> Self {
        assert!(!radicand.is_negative(), "radicand must be non-negative");
        if sign == 0 || radicand.is_zero() {
            return Self::zero();
        }
        SqrtRational { sign: sign.signum(), radicand }
    }

    /// The signed square root of |q| carrying the sign of q: q ↦ sign(q)·√|q|.
    pub fn signed_sqrt(q: BigRational) -> Self {
        let sign = if q.is_zero() { 0 } else if q.is_positive() { 1 } else { -1 };
        Self::new(sign, q.abs())
    }

    /// The rational q itself, written as sign(q)·√(q²).
    pub fn from_rational(q: &BigRational) -> Self {
        Self::signed_sqrt(q * q.abs())
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn radicand(&self) -> &BigRational {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// sign·radicand, i.e. the value times its absolute value.
    pub fn signed_square(&self) -> BigRational {
        match self.sign {
            0 => BigRational::zero(),
            1 => self.radicand.clone(),
            _ => -self.radicand.clone(),
        }
    }

    /// Rational value when the radicand is a perfect square.
    pub fn to_rational(&self) -> Option<BigRational> {
        let n = exact_sqrt(self.radicand.numer())?;
        let d = exact_sqrt(self.radicand.denom())?;
        let v = BigRational::new(n, d);
        Some(if self.sign < 0 { -v } else { v })
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.radicand.to_f64().unwrap_or(f64::NAN);
        self.sign as f64 * r.sqrt()
    }
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl Mul for SqrtRational {
    type Output = SqrtRational;
    fn mul(self, o: SqrtRational) -> SqrtRational {
        &self * &o
    }
}

impl Mul for &SqrtRational {
    type Output = SqrtRational;
    fn mul(self, o: &SqrtRational) -> SqrtRational {
        SqrtRational::new(self.sign * o.sign, &self.radicand * &o.radicand)
    }
}

impl Neg for SqrtRational {
    type Output = SqrtRational;
    fn neg(self) -> SqrtRational {
        SqrtRational { sign: -self.sign, radicand: self.radicand }
    }
}

impl fmt::Display for SqrtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => write!(f, "0"),
            s => write!(f, "{}√({})", if s > 0 { "+" } else { "-" }, self.radicand),
        }
    }
}
