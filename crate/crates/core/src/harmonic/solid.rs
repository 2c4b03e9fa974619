use std::collections::HashMap;
use std::f64::consts::SQRT_2;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use super::conic::reconstruct_harmonic;
use crate::error::{Error, Result};
use crate::numcore::{binomial, factorial, wigner_3j, ExactScalar, HalfInt, SqrtRational};
use crate::poly::{BinaryForm, ExactTernary, FloatTernary, TernaryPoly};

type Memo = RwLock<HashMap<(u32, i64), Arc<FloatTernary>>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

fn check(l: u32, m: i64) -> Result<()> {
    if m.unsigned_abs() > l as u64 {
        return Err(Error::arg(format!("|M| = {} exceeds L = {l}", m.abs())));
    }
    Ok(())
}

/// Covariant components of the position vector: C^1_1, C^1_0, C^1_{−1}.
fn rank_one(m: i64) -> FloatTernary {
    let i = Complex64::i();
    let s = Complex64::new(1.0 / SQRT_2, 0.0);
    let v = match m {
        1 => [i * s, s, Complex64::new(0.0, 0.0)],
        0 => [Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), -i],
        _ => [-i * s, s, Complex64::new(0.0, 0.0)],
    };
    TernaryPoly::linear(v)
}

/// Solid harmonic C^L_M(r) built by coupling C^{L−1} with C^1:
/// C^L_M = √((4L²−1)/L) Σ (−1)^{L+M} (L−1 1 L; m2 m1 −M) C^{L−1}_{m2} C^1_{m1}.
pub fn solid_harmonic(l: u32, m: i64) -> Result<Arc<FloatTernary>> {
    check(l, m)?;
    if let Some(p) = memo().read().expect("memo lock").get(&(l, m)) {
        return Ok(p.clone());
    }
    let poly = match l {
        0 => TernaryPoly::constant(Complex64::new(1.0, 0.0)),
        1 => rank_one(m),
        _ => {
            let big_l = HalfInt::int(l as i64);
            let lower = HalfInt::int(l as i64 - 1);
            let pref = SqrtRational::new(1, BigRational::new(BigInt::from(4 * (l as i64).pow(2) - 1), BigInt::from(l)));
            let mut acc = TernaryPoly::zero(l);
            for m1 in -1..=1i64 {
                let m2 = m - m1;
                if m2.abs() > l as i64 - 1 {
                    continue;
                }
                let w = wigner_3j(lower, HalfInt::ONE, big_l, HalfInt::int(m2), HalfInt::int(m1), HalfInt::int(-m))?;
                let mut c = (&pref * &w).to_f64();
                if (l as i64 + m).rem_euclid(2) == 1 {
                    c = -c;
                }
                if c == 0.0 {
                    continue;
                }
                let prod = &*solid_harmonic(l - 1, m2)? * &rank_one(m1);
                acc = &acc + &prod.scale(&Complex64::new(c, 0.0));
            }
            acc
        }
    };
    let arc = Arc::new(poly);
    memo().write().expect("memo lock").entry((l, m)).or_insert_with(|| arc.clone());
    Ok(arc)
}

/// Contravariant harmonic C_L^M = (−1)^{L+M} C^L_{−M}; equals the complex conjugate of C^L_M at real points.
pub fn solid_harmonic_upper(l: u32, m: i64) -> Result<FloatTernary> {
    let p = solid_harmonic(l, -m)?;
    Ok(if (l as i64 + m).rem_euclid(2) == 1 { -&*p } else { (*p).clone() })
}

/// Square of the normal-form constant √((2L)!)/(2^{L/2} L!).
pub fn normal_constant_sq(l: u32) -> BigRational {
    let l = l as usize;
    BigRational::new(factorial(2 * l), BigInt::from(2).pow(l as u32) * factorial(l) * factorial(l))
}

pub fn normal_constant(l: u32) -> f64 {
    SqrtRational::new(1, normal_constant_sq(l)).to_f64()
}

/// Exact form of C^L_M as `scale · poly` with an exact polynomial, obtained by inverting
/// the restriction of the cone monomial independently of the recursion.
pub fn solid_harmonic_exact(l: u32, m: i64) -> Result<(SqrtRational, ExactTernary)> {
    check(l, m)?;
    let k = (l as i64 - m) as usize;
    let scale_sq = normal_constant_sq(l) * BigRational::from_integer(binomial(2 * l as usize, k));
    let form = BinaryForm::monomial(2 * l as usize, k, ExactScalar::from_int(1));
    Ok((SqrtRational::new(1, scale_sq), reconstruct_harmonic(&form)?))
}

/// One term c·(r²)^k·C_{L3}^{M3} in the expansion of a product of contravariant harmonics.
#[derive(Clone, Debug, PartialEq)]
pub struct CompositionTerm {
    pub l: u32,
    pub m: i64,
    pub r2_power: u32,
    pub coefficient: SqrtRational,
}

/// Expands C_{L1}^{M1} C_{L2}^{M2} = Σ (ir)^{L1+L2−L3} (2L3+1)(−1)^{M3}
/// (L1 L2 L3; 0 0 0)(L1 L2 L3; M1 M2 −M3) C_{L3}^{M3}.
pub fn compose_harmonics(l1: u32, m1: i64, l2: u32, m2: i64) -> Result<Vec<CompositionTerm>> {
    check(l1, m1)?;
    check(l2, m2)?;
    let m3 = m1 + m2;
    let (a, b) = (HalfInt::int(l1 as i64), HalfInt::int(l2 as i64));
    let mut out = Vec::new();
    for l3 in l1.abs_diff(l2)..=l1 + l2 {
        if m3.unsigned_abs() > l3 as u64 || (l1 + l2 + l3) % 2 == 1 {
            continue;
        }
        let c = HalfInt::int(l3 as i64);
        let parity = wigner_3j(a, b, c, HalfInt::ZERO, HalfInt::ZERO, HalfInt::ZERO)?;
        let coupling = wigner_3j(a, b, c, HalfInt::int(m1), HalfInt::int(m2), HalfInt::int(-m3))?;
        let dim = SqrtRational::from_rational(&BigRational::from_integer((2 * l3 + 1).into()));
        let mut coeff = &(&parity * &coupling) * &dim;
        let half_gap = (l1 + l2 - l3) / 2;
        // i^{L1+L2−L3} = (−1)^{half_gap}
        if (half_gap as i64 + m3).rem_euclid(2) == 1 {
            coeff = -coeff;
        }
        if !coeff.is_zero() {
            out.push(CompositionTerm { l: l3, m: m3, r2_power: half_gap, coefficient: coeff });
        }
    }
    Ok(out)
}

/// Σ_{M1,M2} (L1 L2 L3; M1 M2 −M3) C_{L1}^{M1} C_{L2}^{M2} = i^{L1+L2−L3} r^{L1+L2−L3} (−1)^{M3} (L1 L2 L3; 0 0 0) C_{L3}^{M3};
/// returns the scalar factor and the power of r².
pub fn contracted_product(l1: u32, l2: u32, l3: u32, m3: i64) -> Result<(SqrtRational, u32)> {
    check(l3, m3)?;
    if l3 > l1 + l2 || l3 < l1.abs_diff(l2) || (l1 + l2 + l3) % 2 == 1 {
        return Ok((SqrtRational::zero(), 0));
    }
    let h = |v: u32| HalfInt::int(v as i64);
    let mut coeff = wigner_3j(h(l1), h(l2), h(l3), HalfInt::ZERO, HalfInt::ZERO, HalfInt::ZERO)?;
    let half_gap = (l1 + l2 - l3) / 2;
    if (half_gap as i64 + m3).rem_euclid(2) == 1 {
        coeff = -coeff;
    }
    Ok((coeff, half_gap))
}

/// Evaluates an expansion from [`compose_harmonics`] as a polynomial.
pub fn expansion_poly(terms: &[CompositionTerm], degree: u32) -> Result<FloatTernary> {
    let mut acc = TernaryPoly::zero(degree);
    for t in terms {
        let p = &solid_harmonic_upper(t.l, t.m)? * &TernaryPoly::r2_pow(t.r2_power);
        acc = &acc + &p.scale(&Complex64::new(t.coefficient.to_f64(), 0.0));
    }
    Ok(acc)
}
