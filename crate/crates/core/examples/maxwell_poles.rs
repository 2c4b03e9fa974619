//! Maxwell poles of the tetrahedral quartic and of a random real harmonic.

use harmonia::harmonic::HarmonicNormalForm;
use harmonia::poles::{maxwell_poles, tetrahedral_quartic, verify_decomposition, MaxwellOptions};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> harmonia::Result<()> {
    let h = tetrahedral_quartic();
    println!("H = {h}");
    let d = maxwell_poles(&h, &MaxwellOptions::default())?;
    for p in &d.poles {
        println!("  pole {:>+.6?} x{}", p.direction, p.multiplicity);
    }
    println!("  C = {:.10}", d.c);
    println!("  G = {}", d.g.prune(1e-12));

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let phi = HarmonicNormalForm::random_real(5, &mut rng).to_poly()?;
    let d = maxwell_poles(&phi, &MaxwellOptions::default())?;
    let report = verify_decomposition(&phi, &d, 1e-8, 0);
    println!("random L = 5: {} poles, residual {:.2e}, passed {}", d.poles.len(), report.coefficient_residual, report.passed);
    Ok(())
}
