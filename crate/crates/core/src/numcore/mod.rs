//! Exact scalars, half-integer spins and Wigner 3j symbols.

mod exact;
mod factorial;
mod halfint;
mod scalar;
mod sqrt_rational;
mod wigner;

pub use exact::{ExactScalar, GaussRational};
pub use factorial::{binomial, binomial_f64, factorial, FactorialTable, DEFAULT_CACHE_BOUND};
pub use halfint::HalfInt;
pub use num_complex::Complex64;
pub use num_rational::BigRational as Rational;
pub use scalar::Scalar;
pub use sqrt_rational::SqrtRational;
pub use wigner::{clebsch_gordan, wigner_3j};

use std::ops::Neg;

use crate::error::{Error, Result};

/// Index raising `φ^m = (−1)^{j+m} φ_{−m}` on a list indexed m = −j..j.
///
/// Applying it twice multiplies by `(−1)^{2j}`.
pub fn raise_lower<T: Clone + Neg<Output = T>>(phi: &[T], j: HalfInt) -> Result<Vec<T>> {
    if j.twice() < 0 || phi.len() != j.dim() {
        return Err(Error::arg(format!("expected {} components for j = {j}, got {}", j.dim(), phi.len())));
    }
    let top = phi.len() - 1;
    Ok((0..phi.len())
        .map(|i| {
            let v = phi[top - i].clone();
            if i % 2 == 1 {
                -v
            } else {
                v
            }
        })
        .collect())
}
