//! Harmonic projection and the Gauss expansion f = Y_n + r²Y_{n−2} + ...

use harmonia::harmonic::{gauss_decompose, harmonic_projection};
use harmonia::numcore::ExactScalar;
use harmonia::poly::{ExactTernary, TernaryPoly};

fn main() -> harmonia::Result<()> {
    let one = ExactScalar::from_int(1);
    let f: ExactTernary = TernaryPoly::from_terms(4, [([4, 0, 0], one.clone()), ([2, 1, 1], ExactScalar::from_int(3)), ([0, 0, 4], one)])?;
    println!("f = {f}");
    println!("H(f) = {}", harmonic_projection(&f));
    let g = gauss_decompose(&f);
    for (k, y) in g.components.iter().enumerate() {
        println!("  r^{} * ({y})", 2 * k);
    }
    assert_eq!(g.reconstruct(), f);
    println!("reconstruction exact");
    Ok(())
}
