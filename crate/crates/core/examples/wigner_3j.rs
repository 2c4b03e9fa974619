//! Exact 3j and Clebsch–Gordan symbols, and harmonic composition.

use harmonia::harmonic::compose_harmonics;
use harmonia::numcore::{clebsch_gordan, wigner_3j, HalfInt};

fn h(twice: i64) -> HalfInt {
    HalfInt::from_twice(twice)
}

fn main() -> harmonia::Result<()> {
    println!("(1 1 2; 1 -1 0) = {}", wigner_3j(h(2), h(2), h(4), h(2), h(-2), h(0))?);
    println!("(1/2 1/2 1; 1/2 -1/2 0) = {}", wigner_3j(h(1), h(1), h(2), h(1), h(-1), h(0))?);
    println!("<3/2 1/2; 1 -1 | 5/2 -1/2> = {}", clebsch_gordan(h(3), h(1), h(2), h(-2), h(5), h(-1))?);

    println!("Y_1^1 · Y_1^-1 =");
    for term in compose_harmonics(1, 1, 1, -1)? {
        println!("  {} r^{} Y_{}^{}", term.coefficient, 2 * term.r2_power, term.l, term.m);
    }
    Ok(())
}
