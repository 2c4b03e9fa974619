use harmonia::harmonic::{reconstruct_from_conic, restrict_to_conic, HarmonicNormalForm};
use harmonia::numcore::ExactScalar;
use harmonia::poles::{
    find_projective_roots, maxwell_poles, pair_conjugate_roots, rank4_trace_residual, tetrahedral_quartic, tetrahedron_poles,
    verify_decomposition, MaxwellOptions,
};
use harmonia::poly::{BinaryForm, FloatTernary, TernaryPoly};
use harmonia::spinor::{canonical_sign, ProjectivePoint};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn float_poles() -> Vec<[f64; 3]> {
    tetrahedron_poles().iter().map(|p| p.clone().map(|v| v.to_complex().re)).collect()
}

#[test]
fn tetrahedral_poles_and_coefficient() {
    let h = tetrahedral_quartic();
    let d = maxwell_poles(&h, &MaxwellOptions::default()).unwrap();
    assert_eq!(d.poles.len(), 4);
    let mut flips = 0;
    for want in float_poles() {
        let canon = canonical_sign(want);
        if canon != want {
            flips += 1;
        }
        assert!(
            d.poles.iter().any(|p| (0..3).all(|k| (p.direction[k] - canon[k]).abs() < 1e-9)),
            "missing pole {canon:?} in {:?}",
            d.poles
        );
    }
    let sign = if flips % 2 == 0 { 1.0 } else { -1.0 };
    assert!((d.c * sign - 135.0).abs() < 1e-7 * 135.0, "C = {}", d.c);
    // Sign flips cancel between C and the product, so G is convention independent.
    let g_expected: FloatTernary = TernaryPoly::r2().scale(&c(-3.0, 0.0));
    assert!((&d.g - &g_expected).norm() < 1e-8 * h.norm());
    assert!(d.diagnostics.residual < 1e-12);
    let report = verify_decomposition(&h, &d, 1e-9, 1);
    assert!(report.passed, "{report:?}");
}

#[test]
fn tetrahedral_octavic_and_quoted_root() {
    let b = restrict_to_conic(&tetrahedral_quartic()).to_complex();
    let s = 2f64.sqrt();
    let mut want = vec![c(0.0, 0.0); 9];
    want[1] = c(0.0, 40.0 * s);
    want[4] = c(-140.0, 0.0);
    want[7] = c(0.0, 40.0 * s);
    assert!((&b - &BinaryForm::new(want).unwrap()).norm() < 1e-9);
    let quoted = c(-0.5 * (1.5f64).sqrt(), 1.0 / (2.0 * s));
    let roots = find_projective_roots(&b).unwrap();
    assert!(roots.roots.iter().any(|r| matches!(r.point, ProjectivePoint::Finite(t) if (t - quoted).norm() < 1e-9)));
}

#[test]
fn trace_route_agrees_with_subtraction() {
    let t = rank4_trace_residual(&tetrahedron_poles()).unwrap();
    let g = t.implied_remainder(&ExactScalar::from_int(135));
    assert_eq!(g, TernaryPoly::r2().scale(&ExactScalar::from_int(-3)));

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let phi = HarmonicNormalForm::random_real(4, &mut rng).to_poly().unwrap();
        let d = maxwell_poles(&phi, &MaxwellOptions::default()).unwrap();
        let mut dirs = Vec::new();
        for p in &d.poles {
            for _ in 0..p.multiplicity {
                dirs.push(p.direction.map(|v| c(v, 0.0)));
            }
        }
        let tr = rank4_trace_residual(&dirs).unwrap();
        let implied = tr.implied_remainder(&c(d.c, 0.0));
        let scale = phi.norm();
        assert!((&implied - &d.g).norm() < 1e-8 * scale);
    }
}

#[test]
fn random_real_harmonics_decompose() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for trial in 0..100 {
        let l = 1 + trial % 6;
        let nf = HarmonicNormalForm::random_real(l, &mut rng);
        assert!(nf.is_real(1e-12));
        let phi = nf.to_poly().unwrap();
        assert!(phi.max_imag() < 1e-12 * phi.norm());
        let rs = find_projective_roots(&restrict_to_conic(&phi)).unwrap();
        assert_eq!(pair_conjugate_roots(&rs).unwrap().len() as u32, l);
        let d = maxwell_poles(&phi, &MaxwellOptions { seed: trial as u64, ..Default::default() }).unwrap();
        let report = verify_decomposition(&phi, &d, 1e-8, 0);
        assert!(report.passed, "L = {l}: {report:?}");
        assert_eq!(report.multiplicity_total, l);
    }
}

fn random_rotation<R: Rng>(rng: &mut R) -> [[f64; 3]; 3] {
    let q: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
    let n = q.iter().map(|v| v * v).sum::<f64>().sqrt();
    let [w, x, y, z] = q.map(|v| v / n);
    [
        [1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - w * z), 2.0 * (x * z + w * y)],
        [2.0 * (x * y + w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - w * x)],
        [2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y)],
    ]
}

/// Φ′(r) = Φ(Rᵀr), fitted back through the restriction to the cone.
fn rotate(phi: &FloatTernary, rot: &[[f64; 3]; 3]) -> FloatTernary {
    let images: [FloatTernary; 3] =
        std::array::from_fn(|i| TernaryPoly::linear([0, 1, 2].map(|k| c(rot[k][i], 0.0))));
    let composed = phi.compose_linear(&images);
    reconstruct_from_conic(&restrict_to_conic(&composed)).unwrap().to_poly().unwrap()
}

#[test]
fn poles_rotate_with_the_harmonic() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..20 {
        let l = 1 + trial % 4;
        let phi = HarmonicNormalForm::random_real(l, &mut rng).to_poly().unwrap();
        let rot = random_rotation(&mut rng);
        let before = maxwell_poles(&phi, &MaxwellOptions::default()).unwrap();
        let after = maxwell_poles(&rotate(&phi, &rot), &MaxwellOptions::default()).unwrap();
        for p in &before.poles {
            let moved = canonical_sign(std::array::from_fn(|i| (0..3).map(|k| rot[i][k] * p.direction[k]).sum()));
            assert!(
                after.poles.iter().any(|q| (0..3).all(|k| (q.direction[k] - moved[k]).abs() < 1e-7)),
                "L = {l}: {moved:?} not in {:?}",
                after.poles
            );
        }
    }
}

#[test]
fn quadric_roots_are_double() {
    let n = ExactScalar::from_int;
    let f = TernaryPoly::from_terms(2, [([1, 1, 0], n(1)), ([0, 1, 1], n(1)), ([1, 0, 1], n(1))]).unwrap();
    let rs = find_projective_roots(&restrict_to_conic(&f)).unwrap();
    let s3 = 3f64.sqrt();
    for zeta in [(1.0 + s3) / 2.0, (1.0 - s3) / 2.0] {
        let t = c(1.0, -1.0) * zeta;
        let hit = rs.roots.iter().find(|r| r.point.chordal(ProjectivePoint::Finite(t)) < 1e-10).unwrap();
        assert_eq!(hit.multiplicity, 2);
    }
}
