//! Clebsch's Υ and the quartic resolvent for xy + yz + zx.

use harmonia::harmonic::restrict_to_conic;
use harmonia::invariants::{clebsch_upsilon, quartic_resolvent};
use harmonia::poles::{maxwell_poles, MaxwellOptions};
use harmonia::poly::{ExactTernary, TernaryPoly};

fn main() -> harmonia::Result<()> {
    let (x, y, z): (ExactTernary, _, _) = (TernaryPoly::x(), TernaryPoly::y(), TernaryPoly::z());
    let f = &(&(&x * &y) + &(&y * &z)) + &(&z * &x);
    println!("Υ(f) = {}", clebsch_upsilon(&f)?);

    let b = restrict_to_conic(&f);
    let q = quartic_resolvent(&b)?;
    println!("f|S = {b}");
    println!("I = {}, J = {}, repeated root {:?}", q.i, q.j, q.repeated.map(|r| r.to_string()));

    let d = maxwell_poles(&f, &MaxwellOptions::default())?;
    println!("poles {:?}, C = {:.12}", d.poles.iter().map(|p| (p.direction, p.multiplicity)).collect::<Vec<_>>(), d.c);
    Ok(())
}
