//! Transvectants, Hessians, apolarity and the quartic invariants.

use harmonia::invariants::{apolar, hessian, joint_invariant, quartic_resolvent, transvectant};
use harmonia::numcore::ExactScalar;
use harmonia::poly::{BinaryForm, ExactBinary};

fn form(c: &[i64]) -> ExactBinary {
    BinaryForm::new(c.iter().map(|&v| ExactScalar::from_int(v)).collect()).unwrap()
}

fn main() -> harmonia::Result<()> {
    let f = form(&[1, 0, -3, 0, 2]);
    let g = form(&[1, 2, -1]);
    for r in 0..=2 {
        println!("(f, g)^{r} = {}", transvectant(&f, &g, r)?);
    }
    println!("Hess(f) = {}", hessian(&f)?);
    println!("Hess((ξ+2η)^4) = {}", hessian(&BinaryForm::linear_power(ExactScalar::from_int(1), ExactScalar::from_int(2), 4))?);

    // (ξ + η)^4 is apolar to anything divisible by its root factor
    let power = form(&[1, 4, 6, 4, 1]);
    println!("apolar to (ξ+η)(ξ+2η): {}", apolar(&power, &form(&[1, 3, 2]), 0.0));
    println!("apolar to (ξ−η)²:      {}", apolar(&power, &form(&[1, -2, 1]), 0.0));
    println!("joint invariant of g with itself: {}", joint_invariant(&g, &g)?);

    let q = quartic_resolvent(&f)?;
    println!("I = {}, J = {}, I³ − 27J² = {}", q.i, q.j, q.discriminant);
    Ok(())
}
