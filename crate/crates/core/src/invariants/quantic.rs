use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numcore::{binomial, factorial, wigner_3j, HalfInt, Scalar};
use crate::poly::BinaryForm;

fn ratio<S: Scalar>(num: num_bigint::BigInt, den: num_bigint::BigInt) -> S {
    S::from_rational(&num_rational::BigRational::new(num, den))
}

fn spin(degree: usize) -> HalfInt {
    HalfInt::from_twice(degree as i64)
}

/// The r-th transvectant
/// ((n−r)!(m−r)!/(n!m!)) Σ_k (−1)^k C(r,k) ∂^r f/∂ξ^{r−k}∂η^k · ∂^r g/∂ξ^k∂η^{r−k}.
pub fn transvectant<S: Scalar>(f: &BinaryForm<S>, g: &BinaryForm<S>, r: usize) -> Result<BinaryForm<S>> {
    let (n, m) = (f.degree(), g.degree());
    if r > n.min(m) {
        return Err(Error::arg(format!("transvectant order {r} exceeds min({n}, {m})")));
    }
    let mut acc = BinaryForm::zero(n + m - 2 * r);
    for k in 0..=r {
        let term = &f.partial(r - k, k) * &g.partial(k, r - k);
        let c: S = ratio(binomial(r, k), num_bigint::BigInt::from(1));
        let term = term.scale(&if k % 2 == 0 { c } else { -c });
        acc = &acc + &term;
    }
    Ok(acc.scale(&ratio(factorial(n - r) * factorial(m - r), factorial(n) * factorial(m))))
}

/// Generalised polar ((n−m)!/n!)·g(∂_η, −∂_ξ) f; the zero form when deg g > deg f.
pub fn polar<S: Scalar>(f: &BinaryForm<S>, g: &BinaryForm<S>) -> BinaryForm<S> {
    let (n, m) = (f.degree(), g.degree());
    if m > n {
        return BinaryForm::zero(0);
    }
    let mut acc = BinaryForm::zero(n - m);
    for (l, b) in g.coeffs().iter().enumerate() {
        if b.is_zero() {
            continue;
        }
        // b_l ξ^{m−l} η^l ↦ b_l ∂_η^{m−l} (−∂_ξ)^l
        let term = f.partial(l, m - l).scale(b);
        acc = if l % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc.scale(&ratio(factorial(n - m), factorial(n)))
}

/// Components h^M = Σ 3j(j₁ j₂ J; m₁ m₂ −M) φ_f^{m₁} φ_g^{m₂} with J = j₁ − j₂, M = −J..J.
/// They vanish together exactly when the polar does.
pub fn polar_coupling<S: Scalar>(f: &BinaryForm<S>, g: &BinaryForm<S>) -> Result<Vec<Complex64>> {
    let (n, m) = (f.degree(), g.degree());
    if m > n {
        return Ok(Vec::new());
    }
    let (j1, j2) = (spin(n), spin(m));
    let j = j1 - j2;
    let (pf, pg) = (f.to_phi(), g.to_phi());
    let mut out = Vec::with_capacity(n - m + 1);
    for big_m in j.projections() {
        let mut sum = Complex64::new(0.0, 0.0);
        for (i1, m1) in j1.projections().enumerate() {
            let m2 = big_m - m1;
            if m2.abs().twice() > j2.twice() {
                continue;
            }
            let i2 = ((m2 + j2).twice() / 2) as usize;
            let w = wigner_3j(j1, j2, j, m1, m2, -big_m)?.to_f64();
            sum += pf[i1] * pg[i2] * w;
        }
        out.push(sum);
    }
    Ok(out)
}

/// Apolarity through the polar: exact zero test, or norm below `tol` relative to ‖f‖‖g‖ on floats.
pub fn apolar<S: Scalar>(f: &BinaryForm<S>, g: &BinaryForm<S>, tol: f64) -> bool {
    let p = polar(f, g);
    if S::is_exact() {
        return p.is_zero();
    }
    p.norm() <= tol * (f.norm() * g.norm()).max(f64::MIN_POSITIVE)
}

/// Apolarity through the 3j contractions.
pub fn apolar_by_coupling<S: Scalar>(f: &BinaryForm<S>, g: &BinaryForm<S>, tol: f64) -> Result<bool> {
    let h = polar_coupling(f, g)?;
    let size = (f.norm() * g.norm()).max(f64::MIN_POSITIVE);
    Ok(h.iter().all(|c| c.norm() <= tol * size))
}

/// f_ξξ f_ηη − f_ξη².
pub fn hessian<S: Scalar>(f: &BinaryForm<S>) -> Result<BinaryForm<S>> {
    if f.degree() < 2 {
        return Err(Error::arg(format!("the Hessian needs degree at least 2, got {}", f.degree())));
    }
    let fxy = f.partial(1, 1);
    Ok(&(&f.partial(2, 0) * &f.partial(0, 2)) - &(&fxy * &fxy))
}

/// Σ_r (−1)^r C(n,r) a_r b_{n−r} in classical coefficients; zero for conjugate forms.
pub fn joint_invariant<S: Scalar>(f: &BinaryForm<S>, g: &BinaryForm<S>) -> Result<S> {
    let n = f.degree();
    if g.degree() != n {
        return Err(Error::DegreeMismatch { expected: n as u32, found: g.degree() as u32 });
    }
    let (a, b) = (f.to_classical(), g.to_classical());
    let mut acc = S::zero();
    for r in 0..=n {
        let c: S = ratio(binomial(n, r), num_bigint::BigInt::from(1));
        let t = c * a[r].clone() * b[n - r].clone();
        acc = if r % 2 == 0 { acc + t } else { acc - t };
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numcore::ExactScalar;
    use crate::poly::ExactBinary;

    fn int(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    fn form(c: &[i64]) -> ExactBinary {
        BinaryForm::new(c.iter().map(|&v| int(v)).collect()).unwrap()
    }

    #[test]
    fn polar_examples() {
        assert!(polar(&form(&[1, 0, 0, 0, 1]), &form(&[0, 1, 0])).is_zero());
        let p = polar(&form(&[0, 0, 1, 0, 0]), &form(&[0, 1, 0]));
        assert_eq!(p, form(&[0, 1, 0]).scale(&ExactScalar::ratio(-1, 3)));
        assert!(polar(&form(&[1, 1]), &form(&[1, 0, 1])).is_zero());
        // (ξ+η)⁴ is apolar exactly to quadratics with the factor ξ + η
        assert!(apolar(&form(&[1, 4, 6, 4, 1]), &form(&[1, 2, 1]), 0.0));
        assert!(apolar(&form(&[1, 4, 6, 4, 1]), &form(&[1, 3, 2]), 0.0));
        assert!(!apolar(&form(&[1, 4, 6, 4, 1]), &form(&[1, -2, 1]), 0.0));
    }

    #[test]
    fn polar_is_signed_top_transvectant() {
        let f = form(&[2, -1, 3, 0, 5]);
        let g = form(&[1, 4, -2]);
        assert_eq!(polar(&f, &g), transvectant(&f, &g, 2).unwrap());
        let g3 = form(&[1, 4, -2, 7]);
        assert_eq!(polar(&f, &g3), -&transvectant(&f, &g3, 3).unwrap());
    }

    #[test]
    fn transvectant_ends() {
        let f = form(&[1, 2, 3]);
        let g = form(&[4, 5]);
        assert_eq!(transvectant(&f, &g, 0).unwrap(), &f * &g);
        assert!(transvectant(&f, &g, 2).is_err());
    }

    #[test]
    fn hessian_examples() {
        assert!(hessian(&form(&[1, 4, 6, 4, 1])).unwrap().is_zero());
        // a0ξ² + 2a1ξη + a2η²
        let h = hessian(&form(&[3, 2 * 5, 7])).unwrap();
        assert_eq!(h, form(&[4 * (3 * 7 - 25)]));
        assert!(hessian(&form(&[1, 1])).is_err());
        let f = form(&[1, 0, 1, 0, 3]);
        let ff = transvectant(&f, &f, 2).unwrap();
        assert_eq!(ff, hessian(&f).unwrap().scale(&ExactScalar::ratio(2, 144)));
    }

    #[test]
    fn joint_invariant_examples() {
        assert_eq!(joint_invariant(&form(&[1, 0]), &form(&[0, 1])).unwrap(), int(1));
        let odd = form(&[3, -1, 4, 1]);
        assert!(joint_invariant(&odd, &odd).unwrap().is_zero());
        // (ξ − 2η)(ξ + η)² against (ξ − 2η)³
        let lin = form(&[1, -2]);
        let f = &(&lin * &form(&[1, 1])) * &form(&[1, 1]);
        let g = &(&lin * &lin) * &lin;
        assert!(joint_invariant(&f, &g).unwrap().is_zero());
        assert!(joint_invariant(&f, &form(&[1, 1])).is_err());
    }

    #[test]
    fn coupling_route_agrees() {
        let f = form(&[2, -1, 3, 0, 5]);
        for g in [form(&[1, 4, -2]), form(&[1, -2, 1])] {
            assert_eq!(apolar(&f, &g, 0.0), apolar_by_coupling(&f, &g, 1e-12).unwrap());
        }
        let f = form(&[1, 4, 6, 4, 1]);
        assert!(apolar_by_coupling(&f, &form(&[1, 2, 1]), 1e-12).unwrap());
        assert!(!apolar_by_coupling(&f, &form(&[1, -2, 1]), 1e-12).unwrap());
    }
}
