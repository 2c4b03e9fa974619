use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::factorial::factorial;
use super::{HalfInt, SqrtRational};
use crate::error::{Error, Result};

fn check_pair(j: HalfInt, m: HalfInt) -> Result<()> {
    if j.twice() < 0 {
        return Err(Error::arg(format!("negative angular momentum {j}")));
    }
    if m.abs() > j {
        return Err(Error::arg(format!("|m| = {} exceeds j = {j}", m.abs())));
    }
    if !(j + m).is_integer() {
        return Err(Error::arg(format!("j + m = {j} + {m} is not integral")));
    }
    Ok(())
}

fn fact(h: HalfInt) -> BigInt {
    factorial(h.as_integer().expect("integral factorial argument") as usize)
}

/// Wigner 3j symbol via the Racah single sum, exact.
pub fn wigner_3j(j1: HalfInt, j2: HalfInt, j3: HalfInt, m1: HalfInt, m2: HalfInt, m3: HalfInt) -> Result<SqrtRational> {
    check_pair(j1, m1)?;
    check_pair(j2, m2)?;
    check_pair(j3, m3)?;
    if m1 + m2 + m3 != HalfInt::ZERO {
        return Ok(SqrtRational::zero());
    }
    let t1 = j1 + j2 - j3;
    let t2 = j1 - j2 + j3;
    let t3 = -j1 + j2 + j3;
    if [t1, t2, t3].iter().any(|t| t.twice() < 0 || !t.is_integer()) {
        return Ok(SqrtRational::zero());
    }

    let mut prefactor = BigRational::new(fact(t1) * fact(t2) * fact(t3), fact(j1 + j2 + j3 + HalfInt::ONE));
    for (j, m) in [(j1, m1), (j2, m2), (j3, m3)] {
        prefactor *= BigRational::from_integer(fact(j + m) * fact(j - m));
    }

    let lo = [0, (j2 - j3 - m1).twice() / 2, (j1 - j3 + m2).twice() / 2].into_iter().max().unwrap();
    let hi = [t1.twice() / 2, (j1 - m1).twice() / 2, (j2 + m2).twice() / 2].into_iter().min().unwrap();
    let mut sum = BigRational::zero();
    for k in lo..=hi {
        let kk = HalfInt::int(k);
        let den = fact(kk)
            * fact(j3 - j2 + kk + m1)
            * fact(j3 - j1 + kk - m2)
            * fact(t1 - kk)
            * fact(j1 - kk - m1)
            * fact(j2 - kk + m2);
        let term = BigRational::new(BigInt::from(1), den);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    if sum.is_zero() {
        return Ok(SqrtRational::zero());
    }
    let phase_exp = (j1 - j2 - m3).as_integer().expect("integral phase");
    let mut sign: i8 = if sum.is_positive() { 1 } else { -1 };
    if phase_exp.rem_euclid(2) == 1 {
        sign = -sign;
    }
    Ok(SqrtRational::new(sign, prefactor * &sum * &sum))
}

/// Clebsch–Gordan coefficient ⟨j1 m1; j2 m2 | J M⟩ expressed through the 3j symbol.
pub fn clebsch_gordan(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt, j: HalfInt, m: HalfInt) -> Result<SqrtRational> {
    let w = wigner_3j(j1, j2, j, m1, m2, -m)?;
    let phase = (j1 - j2 + m).as_integer().ok_or_else(|| Error::arg("non-integral coupling phase"))?;
    let dim = BigRational::from_integer(BigInt::from(j.twice() + 1));
    let s = &w * &SqrtRational::new(1, dim);
    Ok(if phase.rem_euclid(2) == 1 { -s } else { s })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn trivial_and_selection_rules() {
        let z = HalfInt::ZERO;
        assert_eq!(wigner_3j(z, z, z, z, z, z).unwrap(), SqrtRational::one());
        let one = HalfInt::ONE;
        assert!(wigner_3j(one, one, one, one, one, one).unwrap().is_zero());
    }

    #[test]
    fn known_values() {
        // (1 1 0; 1 -1 0) = 1/√3
        let v = wigner_3j(h(2), h(2), h(0), h(2), h(-2), h(0)).unwrap();
        assert_eq!(v, SqrtRational::new(1, q(1, 3)));
        // stretched (1/2 1/2 1; 1/2 1/2 -1) = -1/√3
        let v = wigner_3j(h(1), h(1), h(2), h(1), h(1), h(-2)).unwrap();
        assert_eq!(v, SqrtRational::new(-1, q(1, 3)));
        // (1 1 2; 1 -1 0) = 1/√30
        let v = wigner_3j(h(2), h(2), h(4), h(2), h(-2), h(0)).unwrap();
        assert_eq!(v, SqrtRational::new(1, q(1, 30)));
    }

    #[test]
    fn argument_errors() {
        assert!(wigner_3j(h(1), h(1), h(0), h(0), h(1), h(-1)).is_err());
        assert!(wigner_3j(h(2), h(2), h(0), h(4), h(-4), h(0)).is_err());
    }

    #[test]
    fn clebsch_gordan_stretched_is_one() {
        let v = clebsch_gordan(h(1), h(1), h(1), h(1), h(2), h(2)).unwrap();
        assert_eq!(v, SqrtRational::one());
    }
}
