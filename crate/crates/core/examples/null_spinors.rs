//! Cartan map, null spinors and their multiplication law.

use harmonia::numcore::HalfInt;
use harmonia::spinor::{cartan_map, couple, null_product, null_spinor, TwoSpinor};
use num_complex::Complex64;

fn main() -> harmonia::Result<()> {
    let psi = TwoSpinor::new(Complex64::new(0.8, 0.0), Complex64::new(0.0, 0.6));
    let v = cartan_map(psi);
    println!("null vector {:?}, defect {:.1e}", v.cartesian(), v.null_defect().norm());

    let (j1, j2) = (HalfInt::from_twice(1), HalfInt::from_twice(3));
    let (a, b) = (null_spinor(j1, psi), null_spinor(j2, psi));
    let joined = null_product(j1, &a, j2, &b)?;
    let direct = null_spinor(j1 + j2, psi);
    let dev = joined.iter().zip(&direct).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max);
    println!("ξ^(1/2) ⊗ ξ^(3/2) → ξ^(2): deviation {dev:.1e}");
    let lower = couple(j1, &a, j2, &b, HalfInt::from_twice(2))?;
    println!("coupling to j = 1: max |component| {:.1e}", lower.iter().map(|z| z.norm()).fold(0.0, f64::max));
    Ok(())
}
