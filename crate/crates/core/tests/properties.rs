//! Property suites over random exact and floating inputs.

use harmonia::harmonic::{gauss_decompose, harmonic_projection, reconstruct_harmonic, restrict_to_conic};
use harmonia::invariants::{
    annihilator_o_primed, annihilator_omega_primed, apolar, clebsch_upsilon, hessian, hilbert_project, induced_transform,
    monomial_weight_twice, transvectant, GradientSpace,
};
use harmonia::numcore::{wigner_3j, ExactScalar, HalfInt, Rational};
use harmonia::poly::{BinaryForm, ExactBinary, ExactTernary, MultiPoly, TernaryPoly};
use harmonia::spinor::{couple, null_product, null_spinor, TwoSpinor};
use num_complex::Complex64;
use proptest::prelude::*;

fn monomials(n: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in 0..=n {
        for b in 0..=n - a {
            out.push([a, b, n - a - b]);
        }
    }
    out
}

fn int(n: i64) -> ExactScalar {
    ExactScalar::from_int(n)
}

/// Sparse ternary form of the given degree with small rational coefficients.
fn ternary(max_degree: u32, max_terms: usize) -> impl Strategy<Value = ExactTernary> {
    (0..=max_degree).prop_flat_map(move |n| {
        let m = monomials(n);
        let count = m.len();
        prop::collection::vec((0..count, -6i64..=6, 1i64..=4), 1..=max_terms).prop_map(move |picks| {
            let terms = picks.into_iter().map(|(k, p, q)| (m[k], ExactScalar::ratio(p, q)));
            let mut acc = TernaryPoly::zero(n);
            for (e, c) in terms {
                acc = &acc + &TernaryPoly::monomial(e, c);
            }
            acc
        })
    })
}

fn binary(degree: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = ExactBinary> {
    degree.prop_flat_map(|d| {
        prop::collection::vec((-5i64..=5, -5i64..=5), d + 1)
            .prop_map(|v| BinaryForm::new(v.into_iter().map(|(re, im)| ExactScalar::complex(q(re), q(im))).collect()).unwrap())
    })
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn is_r2_multiple(f: &ExactTernary) -> bool {
    f.divide_by_r2().1.is_zero()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, ..ProptestConfig::default() })]

    #[test]
    fn projection_is_harmonic_and_differs_by_r2(f in ternary(8, 6)) {
        let h = harmonic_projection(&f);
        prop_assert!(h.laplacian().is_zero());
        prop_assert!(is_r2_multiple(&(&f - &h)));
        prop_assert_eq!(harmonic_projection(&h), h.clone());
        prop_assert!(harmonic_projection(&f.mul_r2()).is_zero());
    }

    #[test]
    fn gauss_reconstruction_is_exact(f in ternary(8, 6)) {
        let g = gauss_decompose(&f);
        prop_assert_eq!(g.reconstruct(), f.clone());
        for y in &g.components {
            prop_assert!(y.laplacian().is_zero());
        }
        prop_assert_eq!(&g.components[0], &harmonic_projection(&f));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 40, ..ProptestConfig::default() })]

    #[test]
    fn restrict_after_reconstruct_is_identity(half in 0usize..=6, seed in prop::collection::vec((-5i64..=5, -5i64..=5), 13)) {
        let d = 2 * half;
        let b: ExactBinary = BinaryForm::new(seed[..=d].iter().map(|&(re, im)| ExactScalar::complex(q(re), q(im))).collect()).unwrap();
        let t = reconstruct_harmonic(&b).unwrap();
        prop_assert!(t.laplacian().is_zero());
        prop_assert_eq!(restrict_to_conic(&t), b);
    }

    #[test]
    fn reconstruct_after_restrict_is_leading_gauss_term(f in ternary(6, 5)) {
        let b = restrict_to_conic(&f);
        let t = reconstruct_harmonic(&b).unwrap();
        prop_assert_eq!(&t, &gauss_decompose(&f).components[0]);
        let h = harmonic_projection(&f);
        prop_assert_eq!(reconstruct_harmonic(&restrict_to_conic(&h)).unwrap(), h);
    }

    #[test]
    fn clebsch_restriction(f in ternary(4, 5)) {
        let h = harmonic_projection(&f);
        prop_assume!(!h.is_zero());
        let u = clebsch_upsilon(&h).unwrap();
        let b = restrict_to_conic(&h);
        prop_assert_eq!(restrict_to_conic(&u), &b * &b);
    }

    #[test]
    fn transvectant_degree_law(f in binary(1..=6), g in binary(1..=6), r in 0usize..=6) {
        let (n, m) = (f.degree(), g.degree());
        prop_assume!(r <= n.min(m));
        let t = transvectant(&f, &g, r).unwrap();
        prop_assert_eq!(t.degree(), n + m - 2 * r);
        // (f, g)^r = (−1)^r (g, f)^r
        let swapped = transvectant(&g, &f, r).unwrap();
        prop_assert_eq!(t, if r % 2 == 0 { swapped } else { -&swapped });
    }

    #[test]
    fn hessian_vanishes_exactly_on_powers(a in -4i64..=4, b in -4i64..=4, n in 2usize..=6, c in -4i64..=4, d in -4i64..=4) {
        prop_assume!(a != 0 || b != 0);
        let power = BinaryForm::linear_power(int(a), int(b), n);
        prop_assert!(hessian(&power).unwrap().is_zero());
        prop_assume!(a * d - b * c != 0);
        let mixed = &BinaryForm::linear_power(int(a), int(b), n - 1) * &BinaryForm::new(vec![int(c), int(d)]).unwrap();
        prop_assert!(!hessian(&mixed).unwrap().is_zero());
    }

    #[test]
    fn apolarity_is_closed_under_factors(a in -4i64..=4, b in -4i64..=4, n in 2usize..=7, h in binary(0..=4)) {
        prop_assume!(a != 0 || b != 0);
        prop_assume!(h.degree() + 1 <= n && !h.is_zero());
        let power = BinaryForm::linear_power(int(a), int(b), n);
        let factor = BinaryForm::new(vec![int(a), int(b)]).unwrap();
        // any multiple of the linear factor is apolar to its power
        prop_assert!(apolar(&power, &(&factor * &h), 0.0));
        let other = BinaryForm::new(vec![int(b), int(-a)]).unwrap();
        if h.evaluate(&int(b), &int(-a)).is_zero() {
            return Ok(());
        }
        prop_assert!(!apolar(&power, &(&other * &h), 0.0));
    }

    #[test]
    fn induced_transform_composes(f in binary(1..=5), m in prop::collection::vec(-3i64..=3, 8)) {
        let m1 = [[int(m[0]), int(m[1])], [int(m[2]), int(m[3])]];
        let m2 = [[int(m[4]), int(m[5])], [int(m[6]), int(m[7])]];
        prop_assume!(m[0] * m[3] - m[1] * m[2] != 0 && m[4] * m[7] - m[5] * m[6] != 0);
        let prod = |a: &[[ExactScalar; 2]; 2], b: &[[ExactScalar; 2]; 2]| -> [[ExactScalar; 2]; 2] {
            std::array::from_fn(|i| std::array::from_fn(|j| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j])))
        };
        let step = induced_transform(&induced_transform(&f, m1.clone()).unwrap(), m2.clone()).unwrap();
        prop_assert_eq!(step, induced_transform(&f, prod(&m1, &m2)).unwrap());
    }
}

/// Σ |b_k|² / C(n, k), preserved by SU(2) substitutions.
fn invariant_norm(b: &BinaryForm<Complex64>) -> f64 {
    let n = b.degree();
    b.coeffs().iter().enumerate().map(|(k, c)| c.norm_sqr() / harmonia::numcore::binomial_f64(n, k)).sum()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 60, ..ProptestConfig::default() })]

    #[test]
    fn induced_transform_is_unitary_on_su2(
        coeffs in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..=9),
        u in prop::collection::vec(-1.0f64..1.0, 4),
    ) {
        let len = u.iter().map(|v| v * v).sum::<f64>().sqrt();
        prop_assume!(len > 1e-3);
        let (a, b) = (Complex64::new(u[0], u[1]) / len, Complex64::new(u[2], u[3]) / len);
        // [[a, −b*], [b, a*]]
        let m = [[a, -b.conj()], [b, a.conj()]];
        let f = BinaryForm::new(coeffs.iter().map(|&(re, im)| Complex64::new(re, im)).collect()).unwrap();
        let g = induced_transform(&f, m).unwrap();
        prop_assert!((invariant_norm(&g) - invariant_norm(&f)).abs() <= 1e-12 * invariant_norm(&f).max(1.0));
    }

    #[test]
    fn null_spinor_product_law(t1 in 1i64..=4, t2 in 1i64..=4, s in prop::collection::vec(-1.0f64..1.0, 4)) {
        let psi = TwoSpinor::new(Complex64::new(s[0], s[1]), Complex64::new(s[2], s[3]));
        prop_assume!(psi.norm() > 1e-2);
        let (j1, j2) = (HalfInt::from_twice(t1), HalfInt::from_twice(t2));
        let (x1, x2) = (null_spinor(j1, psi), null_spinor(j2, psi));
        let joined = null_product(j1, &x1, j2, &x2).unwrap();
        let expected = null_spinor(j1 + j2, psi);
        let scale = expected.iter().map(|c| c.norm()).fold(0.0, f64::max).max(1.0);
        for (a, b) in joined.iter().zip(&expected) {
            prop_assert!((a - b).norm() <= 1e-12 * scale);
        }
        // lower couplings vanish
        let mut j3 = j1 + j2 - HalfInt::ONE;
        while j3.twice() >= (t1 - t2).abs() {
            for c in couple(j1, &x1, j2, &x2, j3).unwrap() {
                prop_assert!(c.norm() <= 1e-12 * scale);
            }
            j3 = j3 - HalfInt::ONE;
        }
    }
}

#[test]
fn three_j_orthogonality_is_exact() {
    let one = q(1);
    for t1 in 0..=6i64 {
        for t2 in 0..=6i64 {
            let (j1, j2) = (HalfInt::from_twice(t1), HalfInt::from_twice(t2));
            let mut t3 = (t1 - t2).abs();
            while t3 <= (t1 + t2).min(6) {
                let j3 = HalfInt::from_twice(t3);
                for m3 in j3.projections() {
                    let mut sum = q(0);
                    for m1 in j1.projections() {
                        for m2 in j2.projections() {
                            if (m1 + m2 + m3).twice() != 0 {
                                continue;
                            }
                            sum += wigner_3j(j1, j2, j3, m1, m2, m3).unwrap().radicand().clone();
                        }
                    }
                    assert_eq!(sum * q(t3 + 1), one, "j1={j1} j2={j2} j3={j3} m3={m3}");
                }
                t3 += 2;
            }
        }
    }
}

/// Random weight-0 polynomial in a_0..a_n, ξ, η.
fn weight_zero(n: usize, picks: &[(usize, usize, usize, i64)]) -> MultiPoly {
    let space = GradientSpace::with_point(n);
    let mut acc = MultiPoly::zero(space.nvars());
    for &(i, k, e, c) in picks {
        let mut exps = vec![0u32; space.nvars()];
        exps[i.min(n)] += 1;
        exps[k.min(n)] += 1;
        // balance the coefficient weight with ξ or η
        let w = monomial_weight_twice(&exps, space);
        let (xi, eta) = (n + 1, n + 2);
        if w > 0 {
            exps[eta] += w as u32;
        } else {
            exps[xi] += (-w) as u32;
        }
        exps[xi] += e as u32;
        exps[eta] += e as u32;
        acc = &acc + &MultiPoly::monomial(exps, q(c));
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 30, ..ProptestConfig::default() })]

    #[test]
    fn hilbert_projection_is_annihilated(
        n in 1usize..=3,
        picks in prop::collection::vec((0usize..=3, 0usize..=3, 0usize..=1, -3i64..=3), 1..=3),
    ) {
        let space = GradientSpace::with_point(n);
        let f = weight_zero(n, &picks);
        prop_assume!(!f.is_zero());
        // all monomials of a fixed total degree keep the series finite and homogeneous
        let degrees: std::collections::BTreeSet<u32> = f.terms().map(|(e, _)| e.iter().sum()).collect();
        prop_assume!(degrees.len() == 1);
        let k = hilbert_project(&f, space).unwrap();
        prop_assert!(annihilator_omega_primed(&k, space).unwrap().is_zero());
        prop_assert!(annihilator_o_primed(&k, space).unwrap().is_zero());
    }
}
