use crate::error::{Error, Result};
use crate::numcore::{factorial, Scalar};
use crate::poly::BinaryForm;

/// (l·∇)Φ = l₁ ∂Φ/∂ξ + l₂ ∂Φ/∂η.
fn directed_derivative<S: Scalar>(f: &BinaryForm<S>, l: &[S; 2]) -> BinaryForm<S> {
    if f.degree() == 0 {
        return BinaryForm::zero(0);
    }
    &f.derivative_xi().scale(&l[0]) + &f.derivative_eta().scale(&l[1])
}

/// Coefficients of Φ(M(ξ′, η′)) where M = [[l₁, m₁], [l₂, m₂]] has columns l and m:
/// a′_r = (r!/n!)(l·∇)^{n−r} Φ evaluated at m.
pub fn induced_transform<S: Scalar>(f: &BinaryForm<S>, matrix: [[S; 2]; 2]) -> Result<BinaryForm<S>> {
    let [[l1, m1], [l2, m2]] = matrix;
    let det = l1.clone() * m2.clone() - m1.clone() * l2.clone();
    if det.is_zero() || det.magnitude() == 0.0 {
        return Err(Error::arg("singular substitution matrix"));
    }
    let (l, m) = ([l1, l2], [m1, m2]);
    let n = f.degree();
    let mut classical = vec![S::zero(); n + 1];
    let mut derived = f.clone();
    for k in 0..=n {
        // derived = (l·∇)^k Φ, which feeds r = n − k
        let r = n - k;
        let value = derived.evaluate(&m[0], &m[1]);
        let c = S::from_rational(&num_rational::BigRational::new(factorial(r), factorial(n)));
        classical[r] = value * c;
        derived = directed_derivative(&derived, &l);
    }
    BinaryForm::from_classical(classical)
}

/// The e forms F_k = (−1)^k C(e−1,k) ∂^{e−1}Φ/∂ξ^{e−1−k}∂η^k, the coefficients of
/// (β∂_ξ − α∂_η)^{e−1}Φ; they share a root exactly when Φ has a root of multiplicity ≥ e.
pub fn equal_root_system<S: Scalar>(f: &BinaryForm<S>, e: usize) -> Result<Vec<BinaryForm<S>>> {
    let d = f.degree();
    if e == 0 || e > d {
        return Err(Error::arg(format!("multiplicity {e} outside 1..={d}")));
    }
    Ok((0..e)
        .map(|k| {
            let c = S::from_rational(&num_rational::BigRational::from_integer(crate::numcore::binomial(e - 1, k)));
            let form = f.partial(e - 1 - k, k).scale(&c);
            if k % 2 == 0 {
                form
            } else {
                -&form
            }
        })
        .collect())
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
    fn identity_and_diagonal() {
        let f = form(&[1, -2, 5, 3, 7]);
        let id = [[int(1), int(0)], [int(0), int(1)]];
        assert_eq!(induced_transform(&f, id).unwrap(), f);
        let lam = int(3);
        let diag = [[lam.clone(), int(0)], [int(0), ExactScalar::ratio(1, 3)]];
        let t = induced_transform(&f, diag).unwrap();
        for r in 0..=4usize {
            let scale = lam.pow(4 - r as u32) * ExactScalar::ratio(1, 3).pow(r as u32);
            assert_eq!(t.coeff(r).clone(), f.coeff(r).clone() * scale);
        }
        let singular = [[int(1), int(2)], [int(2), int(4)]];
        assert!(induced_transform(&f, singular).is_err());
    }

    #[test]
    fn agrees_with_substitution() {
        let f = form(&[2, 0, -1, 4, 1]);
        let m = [[int(1), int(2)], [int(-3), int(5)]];
        let direct = f.substitute_linear([int(1), int(-3)], [int(2), int(5)]);
        assert_eq!(induced_transform(&f, m).unwrap(), direct);
    }

    #[test]
    fn equal_root_examples() {
        // (ξ − η)²ξ
        let f = form(&[1, -2, 1, 0]);
        let sys = equal_root_system(&f, 2).unwrap();
        assert_eq!(sys[0], f.derivative_xi());
        assert_eq!(sys[1], -&f.derivative_eta());
        for g in &sys {
            assert!(g.evaluate(&int(1), &int(1)).is_zero());
        }
        assert_eq!(equal_root_system(&f, 1).unwrap(), vec![f.clone()]);
        let power = form(&[1, 0, 0, 0, 0]);
        for g in equal_root_system(&power, 4).unwrap() {
            assert!(g.evaluate(&int(0), &int(1)).is_zero());
        }
        assert!(equal_root_system(&f, 4).is_err());
    }
}
