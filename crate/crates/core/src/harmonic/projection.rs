use crate::numcore::Scalar;
use crate::poly::TernaryPoly;

/// Harmonic part of a homogeneous polynomial of degree m:
/// H(f) = Σ_k (−1)^k r^{2k} Δ^k f / (2·4···2k · (2m−1)(2m−3)···(2m−2k+1)).
pub fn harmonic_projection<S: Scalar>(f: &TernaryPoly<S>) -> TernaryPoly<S> {
    let m = f.degree() as i64;
    let mut out = f.clone();
    let mut lap = f.laplacian();
    let mut denom: i64 = 1;
    let mut k: i64 = 1;
    let mut r2k = TernaryPoly::<S>::constant(S::one());
    while !lap.is_zero() {
        denom *= 2 * k * (2 * m - 2 * k + 1);
        r2k = &r2k * &TernaryPoly::r2();
        let mut term = (&r2k * &lap).scale(&S::from_ratio(1, denom));
        if k % 2 == 1 {
            term = -&term;
        }
        out = &out + &term;
        lap = lap.laplacian();
        k += 1;
    }
    out
}

/// f = Σ_s r^{2s} Y_{n−2s} with harmonic Y's.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussDecomposition<S: Scalar> {
    /// Y_n, Y_{n−2}, ...
    pub components: Vec<TernaryPoly<S>>,
}

impl<S: Scalar> GaussDecomposition<S> {
    pub fn reconstruct(&self) -> TernaryPoly<S> {
        let n = self.components.first().map(|y| y.degree()).unwrap_or(0);
        let mut acc = TernaryPoly::zero(n);
        for (s, y) in self.components.iter().enumerate() {
            acc = &acc + &(&TernaryPoly::r2_pow(s as u32) * y);
        }
        acc
    }
}

/// A_s(n) = (2·4···2s)·(2n−2s+1)(2n−2s−1)···(2n−4s+3).
pub fn gauss_constant(s: u32, n: u32) -> i128 {
    let (s, n) = (s as i128, n as i128);
    let mut a: i128 = 1;
    for k in 1..=s {
        a *= 2 * k;
    }
    for k in 0..s {
        a *= 2 * n - 2 * s + 1 - 2 * k;
    }
    a
}

/// Y_{n−2s} = H(Δ^s f)/A_s(n).
pub fn gauss_decompose<S: Scalar>(f: &TernaryPoly<S>) -> GaussDecomposition<S> {
    let n = f.degree();
    let mut components = Vec::new();
    let mut lap = f.clone();
    for s in 0..=n / 2 {
        let a = gauss_constant(s, n);
        let y = harmonic_projection(&lap).scale(&S::from_rational(&num_rational::BigRational::new(1.into(), a.into())));
        let y = if y.is_zero() { TernaryPoly::zero(n - 2 * s) } else { y };
        components.push(y);
        lap = lap.laplacian();
    }
    GaussDecomposition { components }
}
