use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// A Gaussian rational `p + iq` with `p, q ∈ ℚ`.
pub type GaussRational = Complex<BigRational>;

const SQRT_BASIS: [f64; 4] = [1.0, std::f64::consts::SQRT_2, 1.732_050_807_568_877_2, 2.449_489_742_783_178];

/// An element of ℚ(i, √2, √3), stored on the basis {1, √2, √3, √6}
/// with Gaussian-rational components.
///
/// Basis index bits: bit 0 carries √2, bit 1 carries √3.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    parts: [GaussRational; 4],
}

fn gzero() -> GaussRational {
    Complex::new(BigRational::zero(), BigRational::zero())
}

fn gis_zero(g: &GaussRational) -> bool {
    g.re.is_zero() && g.im.is_zero()
}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar { parts: [gzero(), gzero(), gzero(), gzero()] }
    }

    pub fn from_parts(parts: [GaussRational; 4]) -> Self {
        ExactScalar { parts }
    }

    pub fn gaussian(g: GaussRational) -> Self {
        let mut s = Self::zero();
        s.parts[0] = g;
        s
    }

    pub fn rational(q: BigRational) -> Self {
        Self::gaussian(Complex::new(q, BigRational::zero()))
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::rational(BigRational::new(n.into(), d.into()))
    }

    /// `re + i·im` with rational parts.
    pub fn complex(re: BigRational, im: BigRational) -> Self {
        Self::gaussian(Complex::new(re, im))
    }

    pub fn i() -> Self {
        Self::complex(BigRational::zero(), BigRational::one())
    }

    fn basis(k: usize) -> Self {
        let mut s = Self::zero();
        s.parts[k] = Complex::new(BigRational::one(), BigRational::zero());
        s
    }

    pub fn sqrt2() -> Self {
        Self::basis(1)
    }

    pub fn sqrt3() -> Self {
        Self::basis(2)
    }

    pub fn sqrt6() -> Self {
        Self::basis(3)
    }

    pub fn parts(&self) -> &[GaussRational; 4] {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(gis_zero)
    }

    /// The value as a Gaussian rational, when no surd components are present.
    pub fn as_gaussian(&self) -> Option<&GaussRational> {
        self.parts[1..].iter().all(gis_zero).then_some(&self.parts[0])
    }

    /// The value as a rational, when it is one.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.as_gaussian().filter(|g| g.im.is_zero()).map(|g| &g.re)
    }

    pub fn conj(&self) -> Self {
        ExactScalar { parts: self.parts.clone().map(|g| g.conj()) }
    }

    fn flip(&self, mask: usize) -> Self {
        let mut out = self.clone();
        for (k, p) in out.parts.iter_mut().enumerate() {
            if k & mask != 0 {
                *p = -p.clone();
            }
        }
        out
    }

    /// Multiplicative inverse, via the Galois conjugates √3 ↦ −√3 and √2 ↦ −√2.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let c3 = self.flip(2);
        let y = self * &c3;
        let c2 = y.flip(1);
        let norm = &y * &c2;
        let n = norm.parts[0].clone();
        let ninv = Complex::new(BigRational::one(), BigRational::zero()) / n;
        Some(&(&c3 * &c2) * &Self::gaussian(ninv))
    }

    pub fn to_complex(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, p) in self.parts.iter().enumerate() {
            if gis_zero(p) {
                continue;
            }
            let re = p.re.to_f64().unwrap_or(f64::NAN);
            let im = p.im.to_f64().unwrap_or(f64::NAN);
            acc += Complex64::new(re, im) * SQRT_BASIS[k];
        }
        acc
    }
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, o: &ExactScalar) -> ExactScalar {
        let mut out = self.clone();
        for k in 0..4 {
            if !gis_zero(&o.parts[k]) {
                out.parts[k] = &out.parts[k] + &o.parts[k];
            }
        }
        out
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, o: &ExactScalar) -> ExactScalar {
        let mut out = self.clone();
        for k in 0..4 {
            if !gis_zero(&o.parts[k]) {
                out.parts[k] = &out.parts[k] - &o.parts[k];
            }
        }
        out
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, o: &ExactScalar) -> ExactScalar {
        let mut out = ExactScalar::zero();
        for a in 0..4 {
            if gis_zero(&self.parts[a]) {
                continue;
            }
            for b in 0..4 {
                if gis_zero(&o.parts[b]) {
                    continue;
                }
                let mut prod = &self.parts[a] * &o.parts[b];
                let shared = a & b;
                let factor: i64 = if shared & 1 != 0 { 2 } else { 1 } * if shared & 2 != 0 { 3 } else { 1 };
                if factor != 1 {
                    let f = BigRational::from_integer(factor.into());
                    prod = Complex::new(&prod.re * &f, &prod.im * &f);
                }
                let slot = a ^ b;
                out.parts[slot] = &out.parts[slot] + &prod;
            }
        }
        out
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar { parts: self.parts.clone().map(|g| -g) }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, o: ExactScalar) -> ExactScalar {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

fn fmt_gauss(g: &GaussRational) -> String {
    match (g.re.is_zero(), g.im.is_zero()) {
        (_, true) => format!("{}", g.re),
        (true, false) => format!("{}i", g.im),
        (false, false) => format!("({} + {}i)", g.re, g.im),
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 4] = ["", "√2", "√3", "√6"];
        let terms: Vec<String> = self
            .parts
            .iter()
            .enumerate()
            .filter(|(_, g)| !gis_zero(g))
            .map(|(k, g)| format!("{}{}", fmt_gauss(g), NAMES[k]))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
