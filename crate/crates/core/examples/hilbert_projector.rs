//! Hilbert and Löwdin projectors onto covariants of a binary form.

use harmonia::invariants::{annihilator_o_primed, annihilator_omega_primed, hilbert_project, isobaric_weight_twice, loewdin_project, GradientSpace};

fn main() -> harmonia::Result<()> {
    let space = GradientSpace::with_point(2);
    // a₀a₂ has weight zero but is not an invariant; the projector extracts the discriminant part
    let g = &space.a(0) * &space.a(2);
    let k = hilbert_project(&g, space)?;
    println!("P(a0 a2) = {k}");
    println!("  Ω'K = {}, O'K = {}", annihilator_omega_primed(&k, space)?, annihilator_o_primed(&k, space)?);

    let f = space.ground_form()?;
    println!("ground form {f}: weight×2 = {:?}", isobaric_weight_twice(&f, space));
    println!("P(f) = {}", hilbert_project(&f, space)?);
    let space = GradientSpace::coefficients(4);
    let seed = &space.a(0) * &space.a(2);
    let p = loewdin_project(&seed, space, 4)?;
    println!("Löwdin(a0 a2, excess 4) = {p}");
    println!("  fixed point: {}", loewdin_project(&p, space, 4)? == p);
    Ok(())
}
