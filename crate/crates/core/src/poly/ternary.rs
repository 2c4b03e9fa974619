use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numcore::{ExactScalar, Scalar};

/// Exponent triple (p, q, r) of the monomial x^p y^q z^r.
pub type Exponents = [u32; 3];

/// Homogeneous polynomial in (x, y, z). Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct TernaryPoly<S: Scalar> {
    degree: u32,
    terms: BTreeMap<Exponents, S>,
}

pub type ExactTernary = TernaryPoly<ExactScalar>;
pub type FloatTernary = TernaryPoly<Complex64>;

impl<S: Scalar> TernaryPoly<S> {
    pub fn zero(degree: u32) -> Self {
        TernaryPoly { degree, terms: BTreeMap::new() }
    }

    pub fn constant(c: S) -> Self {
        Self::monomial([0, 0, 0], c)
    }

    pub fn monomial(exps: Exponents, c: S) -> Self {
        let mut p = Self::zero(exps.iter().sum());
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// Builds a polynomial from terms, rejecting exponent triples of the wrong degree.
    /// Repeated exponents accumulate.
    pub fn from_terms(degree: u32, terms: impl IntoIterator<Item = (Exponents, S)>) -> Result<Self> {
        let mut p = Self::zero(degree);
        for (e, c) in terms {
            let d: u32 = e.iter().sum();
            if d != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: d });
            }
            p.accumulate(e, c);
        }
        Ok(p)
    }

    pub fn x() -> Self {
        Self::monomial([1, 0, 0], S::one())
    }

    pub fn y() -> Self {
        Self::monomial([0, 1, 0], S::one())
    }

    pub fn z() -> Self {
        Self::monomial([0, 0, 1], S::one())
    }

    /// r² = x² + y² + z².
    pub fn r2() -> Self {
        let mut p = Self::zero(2);
        for e in [[2, 0, 0], [0, 2, 0], [0, 0, 2]] {
            p.terms.insert(e, S::one());
        }
        p
    }

    /// (r²)^k.
    pub fn r2_pow(k: u32) -> Self {
        let mut p = Self::constant(S::one());
        for _ in 0..k {
            p = &p * &Self::r2();
        }
        p
    }

    /// The linear form a·x + b·y + c·z.
    pub fn linear(v: [S; 3]) -> Self {
        let [a, b, c] = v;
        Self::from_terms(1, [([1, 0, 0], a), ([0, 1, 0], b), ([0, 0, 1], c)]).expect("degree one")
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: Exponents) -> S {
        self.terms.get(&e).cloned().unwrap_or_else(S::zero)
    }

    fn accumulate(&mut self, e: Exponents, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(e, s);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn check_degree(&self, other: &Self) -> u32 {
        if self.is_zero() {
            return other.degree;
        }
        if other.is_zero() {
            return self.degree;
        }
        assert_eq!(self.degree, other.degree, "adding homogeneous polynomials of different degree");
        self.degree
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.degree);
        for (e, v) in &self.terms {
            out.accumulate(*e, v.clone() * c.clone());
        }
        out
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> TernaryPoly<T> {
        let mut out = TernaryPoly::zero(self.degree);
        for (e, v) in &self.terms {
            out.accumulate(*e, f(v));
        }
        out
    }

    pub fn to_complex(&self) -> FloatTernary {
        self.map(|c| c.to_complex())
    }

    pub fn conj(&self) -> Self {
        self.map(|c| c.conj())
    }

    /// Drops float coefficients with |c| ≤ tol·‖self‖.
    pub fn prune(&self, tol: f64) -> Self {
        let cut = tol * self.norm();
        let mut out = Self::zero(self.degree);
        for (e, v) in &self.terms {
            if v.magnitude() > cut {
                out.terms.insert(*e, v.clone());
            }
        }
        out
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.terms.values().map(|c| c.magnitude().powi(2)).sum::<f64>().sqrt()
    }

    /// Largest imaginary part of any coefficient.
    pub fn max_imag(&self) -> f64 {
        self.terms.values().map(|c| c.to_complex().im.abs()).fold(0.0, f64::max)
    }

    pub fn laplacian(&self) -> Self {
        if self.degree < 2 {
            return Self::zero(0);
        }
        let mut out = Self::zero(self.degree - 2);
        for (e, c) in &self.terms {
            for axis in 0..3 {
                let k = e[axis];
                if k >= 2 {
                    let mut f = *e;
                    f[axis] -= 2;
                    out.accumulate(f, c.clone() * S::from_i64((k * (k - 1)) as i64));
                }
            }
        }
        out
    }

    /// Δ^k f.
    pub fn laplacian_pow(&self, k: u32) -> Self {
        (0..k).fold(self.clone(), |acc, _| acc.laplacian())
    }

    pub fn mul_r2(&self) -> Self {
        self * &Self::r2()
    }

    /// Splits f = r²·quotient + remainder, the remainder having z-degree at most one.
    ///
    /// z² is eliminated through z² = r² − x² − y², highest z-power first.
    pub fn divide_by_r2(&self) -> (Self, Self) {
        let qdeg = self.degree.saturating_sub(2);
        let mut quotient = Self::zero(qdeg);
        let mut work = self.terms.clone();
        loop {
            let next = work.iter().filter(|(e, _)| e[2] >= 2).max_by_key(|(e, _)| (e[2], **e)).map(|(e, c)| (*e, c.clone()));
            let Some((e, c)) = next else { break };
            work.remove(&e);
            let [p, q, r] = e;
            quotient.accumulate([p, q, r - 2], c.clone());
            for f in [[p + 2, q, r - 2], [p, q + 2, r - 2]] {
                let old = work.remove(&f).unwrap_or_else(S::zero);
                let s = old - c.clone();
                if !s.is_zero() {
                    work.insert(f, s);
                }
            }
        }
        let remainder = TernaryPoly { degree: self.degree, terms: work };
        (quotient, remainder)
    }

    /// Nested Horner evaluation: outer in x, inner in y with precomputed powers of z.
    pub fn evaluate(&self, point: [Complex64; 3]) -> Complex64 {
        let n = self.degree as usize;
        let [x, y, z] = point;
        let mut zpow = vec![Complex64::new(1.0, 0.0); n + 1];
        for k in 1..=n {
            zpow[k] = zpow[k - 1] * z;
        }
        let mut dense = vec![vec![Complex64::new(0.0, 0.0); n + 1]; n + 1];
        for (e, c) in &self.terms {
            dense[e[0] as usize][e[1] as usize] = c.to_complex();
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for p in (0..=n).rev() {
            let m = n - p;
            let mut inner = dense[p][m];
            for q in (0..m).rev() {
                inner = inner * y + dense[p][q] * zpow[m - q];
            }
            acc = acc * x + inner;
        }
        acc
    }

    /// Evaluation within the coefficient domain.
    pub fn evaluate_in(&self, point: &[S; 3]) -> S {
        let mut acc = S::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for axis in 0..3 {
                t = t * point[axis].pow(e[axis]);
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitutes linear forms for x, y and z.
    pub fn compose_linear(&self, images: &[TernaryPoly<S>; 3]) -> Self {
        let mut out = Self::zero(self.degree);
        for (e, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for axis in 0..3 {
                for _ in 0..e[axis] {
                    t = &t * &images[axis];
                }
            }
            out = &out + &t;
        }
        out
    }
}

impl<S: Scalar> Add for &TernaryPoly<S> {
    type Output = TernaryPoly<S>;
    fn add(self, o: &TernaryPoly<S>) -> TernaryPoly<S> {
        let degree = self.check_degree(o);
        let mut out = TernaryPoly { degree, terms: self.terms.clone() };
        for (e, c) in &o.terms {
            out.accumulate(*e, c.clone());
        }
        out
    }
}

impl<S: Scalar> Sub for &TernaryPoly<S> {
    type Output = TernaryPoly<S>;
    fn sub(self, o: &TernaryPoly<S>) -> TernaryPoly<S> {
        let degree = self.check_degree(o);
        let mut out = TernaryPoly { degree, terms: self.terms.clone() };
        for (e, c) in &o.terms {
            out.accumulate(*e, -c.clone());
        }
        out
    }
}

impl<S: Scalar> Mul for &TernaryPoly<S> {
    type Output = TernaryPoly<S>;
    fn mul(self, o: &TernaryPoly<S>) -> TernaryPoly<S> {
        let mut out = TernaryPoly::zero(self.degree + o.degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                out.accumulate([a[0] + b[0], a[1] + b[1], a[2] + b[2]], ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<S: Scalar> Neg for &TernaryPoly<S> {
    type Output = TernaryPoly<S>;
    fn neg(self) -> TernaryPoly<S> {
        self.map(|c| -c.clone())
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for TernaryPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (name, k) in ["x", "y", "z"].iter().zip(e) {
                match k {
                    0 => {}
                    1 => write!(f, "·{name}")?,
                    _ => write!(f, "·{name}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

impl<S: Scalar> Mul for TernaryPoly<S> {
    type Output = TernaryPoly<S>;
    fn mul(self, o: TernaryPoly<S>) -> TernaryPoly<S> {
        &self * &o
    }
}

impl<S: Scalar> Add for TernaryPoly<S> {
    type Output = TernaryPoly<S>;
    fn add(self, o: TernaryPoly<S>) -> TernaryPoly<S> {
        &self + &o
    }
}

impl<S: Scalar> Sub for TernaryPoly<S> {
    type Output = TernaryPoly<S>;
    fn sub(self, o: TernaryPoly<S>) -> TernaryPoly<S> {
        &self - &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = ExactTernary;

    fn int(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    fn xy_yz_zx() -> P {
        P::from_terms(2, [([1, 1, 0], int(1)), ([0, 1, 1], int(1)), ([1, 0, 1], int(1))]).unwrap()
    }

    #[test]
    fn laplacian_examples() {
        let x2 = P::monomial([2, 0, 0], int(1));
        assert_eq!(x2.laplacian(), P::constant(int(2)));
        assert!(xy_yz_zx().laplacian().is_zero());
        let r2x = P::r2() * P::x();
        assert_eq!(r2x.laplacian(), P::x().scale(&int(10)));
    }

    #[test]
    fn homogeneity_enforced() {
        assert!(P::from_terms(2, [([1, 0, 0], int(1))]).is_err());
    }

    #[test]
    fn divide_examples() {
        let r4 = P::r2_pow(2);
        let (q, rem) = r4.divide_by_r2();
        assert_eq!(q, P::r2());
        assert!(rem.is_zero());
        let x2 = P::monomial([2, 0, 0], int(1));
        let (q, rem) = x2.divide_by_r2();
        assert!(q.is_zero());
        assert_eq!(rem, x2);
    }

    #[test]
    fn evaluation() {
        let one = Complex64::new(1.0, 0.0);
        assert_eq!(xy_yz_zx().evaluate([one, one, one]), Complex64::new(3.0, 0.0));
        let p = P::from_terms(3, [([3, 0, 0], int(2)), ([0, 1, 2], int(-5)), ([1, 1, 1], ExactScalar::i())]).unwrap();
        let pt = [Complex64::new(0.3, 0.1), Complex64::new(-1.2, 0.4), Complex64::new(0.7, -0.9)];
        let direct = Complex64::new(2.0, 0.0) * pt[0].powi(3) - 5.0 * pt[1] * pt[2] * pt[2] + Complex64::i() * pt[0] * pt[1] * pt[2];
        assert!((p.evaluate(pt) - direct).norm() < 1e-14);
    }
}
