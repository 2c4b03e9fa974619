//! Exact c_k(π) tables, the spatial Joos–Weinberg tensor and the null sandwich identity.

use harmonia::jweinberg::{ck_pi, jw_spatial_tensor, null_sandwich_check};
use harmonia::numcore::HalfInt;
use harmonia::spinor::TwoSpinor;
use num_complex::Complex64;

fn main() -> harmonia::Result<()> {
    for twice in 1..=6 {
        let j = HalfInt::from_twice(twice);
        let table = ck_pi(j)?;
        let entries: Vec<String> = table.coefficients.iter().map(|(k, c)| format!("c_{k} = {c}")).collect();
        println!("j = {j}: {}", entries.join(", "));
    }

    let j = HalfInt::from_twice(2);
    let t = jw_spatial_tensor(j)?;
    println!("j = 1, t_zz =\n{}", t.component(&[2, 2])?);

    let psi = TwoSpinor::new(Complex64::new(0.6, 0.1), Complex64::new(-0.3, 0.7));
    for twice in 1..=4 {
        let r = null_sandwich_check(HalfInt::from_twice(twice), psi, 12, 3)?;
        println!(
            "j = {}: traceless {:.1e}, fitted {:.6}, quoted {:.6}, harmonic {:.6}",
            r.j, r.traceless_residual, r.tensor_constant, r.quoted_rho, r.harmonic_constant
        );
    }
    Ok(())
}
