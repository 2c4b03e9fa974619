//! Restriction of ternary forms to the null conic and the inverse reconstruction.

use harmonia::harmonic::{harmonic_projection, reconstruct_harmonic, restrict_to_conic};
use harmonia::numcore::ExactScalar;
use harmonia::poly::{ExactTernary, TernaryPoly};

fn main() -> harmonia::Result<()> {
    let f: ExactTernary = &(&TernaryPoly::x() * &TernaryPoly::y()) + &(&(&TernaryPoly::y() * &TernaryPoly::z()) + &(&TernaryPoly::z() * &TernaryPoly::x()));
    let b = restrict_to_conic(&f);
    println!("f = {f}\nf|S = {b}");
    let back = reconstruct_harmonic(&b)?;
    println!("reconstructed = {back}");
    assert_eq!(back, harmonic_projection(&f));

    // multiples of r² restrict to zero
    let r2x = TernaryPoly::r2().scale(&ExactScalar::from_int(5));
    println!("(5r²)|S = {}", restrict_to_conic(&r2x));
    Ok(())
}
