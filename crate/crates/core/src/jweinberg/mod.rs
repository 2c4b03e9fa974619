//! Angular-momentum matrices, the π-rotation expansion coefficients c_k(π), the spatial
//! Joos–Weinberg tensors, and the sandwich identities with null spinors.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::harmonic::solid_harmonic_upper;
use crate::numcore::{factorial, raise_lower, ExactScalar, HalfInt};
use crate::spinor::{cartan_map, null_spinor, TwoSpinor};

pub type CMatrix = DMatrix<Complex64>;

/// Largest 2j accepted by [`jw_spatial_tensor`].
pub const MAX_TENSOR_TWICE_J: i64 = 8;

/// J_x, J_y, J_z in the basis m = j, j−1, ..., −j.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinMatrices {
    pub j: HalfInt,
    pub jx: CMatrix,
    pub jy: CMatrix,
    pub jz: CMatrix,
}

impl SpinMatrices {
    pub fn components(&self) -> [&CMatrix; 3] {
        [&self.jx, &self.jy, &self.jz]
    }

    /// n·J.
    pub fn along(&self, n: [f64; 3]) -> CMatrix {
        &self.jx * Complex64::new(n[0], 0.0) + &self.jy * Complex64::new(n[1], 0.0) + &self.jz * Complex64::new(n[2], 0.0)
    }
}

pub fn spin_matrices(j: HalfInt) -> Result<SpinMatrices> {
    if j.twice() < 0 {
        return Err(Error::arg(format!("spin must be non-negative, got {j}")));
    }
    let d = j.dim();
    let jf = j.to_f64();
    let m_of = |a: usize| jf - a as f64;
    let mut raise = CMatrix::zeros(d, d);
    for a in 1..d {
        // J₊|m⟩ = √(j(j+1) − m(m+1)) |m+1⟩, with |m+1⟩ one row above |m⟩
        let m = m_of(a);
        raise[(a - 1, a)] = Complex64::new((jf * (jf + 1.0) - m * (m + 1.0)).sqrt(), 0.0);
    }
    let lower = raise.adjoint();
    let half = Complex64::new(0.5, 0.0);
    let jx = (&raise + &lower) * half;
    let jy = (&raise - &lower) * Complex64::new(0.0, -0.5);
    let jz = CMatrix::from_diagonal(&nalgebra::DVector::from_fn(d, |a, _| Complex64::new(m_of(a), 0.0)));
    Ok(SpinMatrices { j, jx, jy, jz })
}

/// Coefficients with Σ_k c_k m^k = (−1)^m for integral j and i(−1)^{m−1/2} for half-odd j,
/// m running over the eigenvalues of J_z. As a matrix identity Σ_k c_k (n·J)^k = e^{iπ n·J}.
#[derive(Clone, Debug, PartialEq)]
pub struct CkTable {
    pub j: HalfInt,
    /// (k, c_k) for the parity-allowed powers, ascending.
    pub coefficients: Vec<(u32, ExactScalar)>,
}

impl CkTable {
    pub fn get(&self, k: u32) -> Option<&ExactScalar> {
        self.coefficients.iter().find(|(p, _)| *p == k).map(|(_, c)| c)
    }

    /// Σ_k c_k M^k.
    pub fn apply(&self, m: &CMatrix) -> CMatrix {
        let mut acc = CMatrix::zeros(m.nrows(), m.ncols());
        for (k, c) in &self.coefficients {
            acc += matrix_power(m, *k) * c.to_complex();
        }
        acc
    }

    /// Σ_k c̄_k M^k, which is e^{−iπ n·J} for M = n·J.
    pub fn apply_conjugate(&self, m: &CMatrix) -> CMatrix {
        let mut acc = CMatrix::zeros(m.nrows(), m.ncols());
        for (k, c) in &self.coefficients {
            acc += matrix_power(m, *k) * c.to_complex().conj();
        }
        acc
    }
}

fn matrix_power(m: &CMatrix, k: u32) -> CMatrix {
    let mut acc = CMatrix::identity(m.nrows(), m.ncols());
    for _ in 0..k {
        acc = &acc * m;
    }
    acc
}

/// Solves the square system over ℚ by Gauss–Jordan elimination.
fn solve_rational(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Result<Vec<BigRational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or_else(|| Error::Solver("singular coefficient system".into()))?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = BigRational::one() / a[col][col].clone();
        for c in col..n {
            a[col][c] = &a[col][c] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..n {
                    let v = &a[col][c] * &f;
                    a[r][c] = &a[r][c] - &v;
                }
                let v = &b[col] * &f;
                b[r] = &b[r] - &v;
            }
        }
    }
    Ok(b)
}

pub fn ck_pi(j: HalfInt) -> Result<CkTable> {
    if j.twice() < 1 {
        return Err(Error::arg(format!("c_k(π) needs j ≥ 1/2, got {j}")));
    }
    let twice = j.twice();
    let integral = j.is_integer();
    // non-negative eigenvalues m (as 2m) and the matching powers
    let ms: Vec<i64> = (0..=twice).rev().step_by(2).collect();
    let powers: Vec<u32> = (if integral { 0 } else { 1 }..=twice as u32).step_by(2).collect();
    let half_m = |tm: i64| BigRational::new(tm.into(), 2.into());
    let rows: Vec<Vec<BigRational>> =
        ms.iter().map(|&tm| powers.iter().map(|&k| num_traits::pow(half_m(tm), k as usize)).collect()).collect();
    let rhs: Vec<BigRational> = ms
        .iter()
        .map(|&tm| {
            // (−1)^m or (−1)^{m−1/2}
            let e = if integral { tm / 2 } else { (tm - 1) / 2 };
            if e % 2 == 0 {
                BigRational::one()
            } else {
                -BigRational::one()
            }
        })
        .collect();
    let sol = solve_rational(rows, rhs)?;
    let coefficients = powers
        .into_iter()
        .zip(sol)
        .map(|(k, v)| {
            let c = if integral { ExactScalar::rational(v) } else { ExactScalar::complex(BigRational::zero(), v) };
            (k, c)
        })
        .collect();
    Ok(CkTable { j, coefficients })
}

/// Symmetric spatial tensor t^{i₁…i₂ⱼ}, stored by index content (#x, #y, #z).
#[derive(Clone, Debug, PartialEq)]
pub struct JwTensor {
    pub j: HalfInt,
    pub components: BTreeMap<[u32; 3], CMatrix>,
}

impl JwTensor {
    /// Component for an index tuple with entries in {0, 1, 2}.
    pub fn component(&self, indices: &[usize]) -> Result<&CMatrix> {
        if indices.len() as i64 != self.j.twice() || indices.iter().any(|&i| i > 2) {
            return Err(Error::arg(format!("expected {} indices in 0..3", self.j.twice())));
        }
        let mut key = [0u32; 3];
        for &i in indices {
            key[i] += 1;
        }
        Ok(&self.components[&key])
    }

    /// r_{i₁}…r_{i₂ⱼ} t^{i₁…i₂ⱼ}.
    pub fn contract(&self, r: [f64; 3]) -> CMatrix {
        let n = self.j.twice() as u32;
        let d = self.j.dim();
        let mut acc = CMatrix::zeros(d, d);
        for (e, t) in &self.components {
            let multinomial = factorial(n as usize) / (factorial(e[0] as usize) * factorial(e[1] as usize) * factorial(e[2] as usize));
            let w = r[0].powi(e[0] as i32) * r[1].powi(e[1] as i32) * r[2].powi(e[2] as i32);
            acc += t * Complex64::new(w * multinomial.to_f64().unwrap_or(f64::NAN), 0.0);
        }
        acc
    }
}

type MatrixPoly = BTreeMap<[u32; 3], CMatrix>;

fn poly_mul(a: &MatrixPoly, b: &MatrixPoly, d: usize) -> MatrixPoly {
    let mut out: MatrixPoly = BTreeMap::new();
    for (ea, ma) in a {
        for (eb, mb) in b {
            let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
            let entry = out.entry(e).or_insert_with(|| CMatrix::zeros(d, d));
            *entry += ma * mb;
        }
    }
    out
}

/// Extracts t^{i…} from r_i…t^{i…} = e^{iπj} Σ_k c̄_k r^{2j−k} (r·J)^k.
pub fn jw_spatial_tensor(j: HalfInt) -> Result<JwTensor> {
    if j.twice() < 1 || j.twice() > MAX_TENSOR_TWICE_J {
        return Err(Error::arg(format!("tensor extraction supports 1/2 ≤ j ≤ {}, got {j}", MAX_TENSOR_TWICE_J / 2)));
    }
    let spins = spin_matrices(j)?;
    let table = ck_pi(j)?;
    let d = j.dim();
    let n = j.twice() as u32;
    let identity: MatrixPoly = [([0, 0, 0], CMatrix::identity(d, d))].into_iter().collect();
    let linear: MatrixPoly = [([1, 0, 0], spins.jx.clone()), ([0, 1, 0], spins.jy.clone()), ([0, 0, 1], spins.jz.clone())].into_iter().collect();
    let r2: MatrixPoly = [[2, 0, 0], [0, 2, 0], [0, 0, 2]].into_iter().map(|e| (e, CMatrix::identity(d, d))).collect();
    // e^{iπj} = i^{2j}
    let phase = Complex64::i().powu(n);
    let mut total: MatrixPoly = BTreeMap::new();
    for (k, c) in &table.coefficients {
        let mut term = identity.clone();
        for _ in 0..*k {
            term = poly_mul(&term, &linear, d);
        }
        for _ in 0..(n - k) / 2 {
            term = poly_mul(&term, &r2, d);
        }
        let w = phase * c.to_complex().conj();
        for (e, m) in term {
            let entry = total.entry(e).or_insert_with(|| CMatrix::zeros(d, d));
            *entry += m * w;
        }
    }
    let components = total
        .into_iter()
        .map(|(e, m)| {
            let multinomial = factorial(n as usize) / (factorial(e[0] as usize) * factorial(e[1] as usize) * factorial(e[2] as usize));
            let scale = 1.0 / multinomial.to_f64().unwrap_or(f64::NAN);
            (e, m * Complex64::new(scale, 0.0))
        })
        .collect();
    Ok(JwTensor { j, components })
}

/// ρ_j = 2^{−2j} e^{−iπj} √((4j)!).
pub fn rho(j: HalfInt) -> Complex64 {
    let n = j.twice() as usize;
    let f = factorial(2 * n).to_f64().unwrap_or(f64::INFINITY);
    Complex64::i().powu(n as u32).conj() * f.sqrt() / 2f64.powi(n as i32)
}

#[derive(Clone, Debug, PartialEq)]
pub struct NullSandwichReport {
    pub j: HalfInt,
    /// max |ξ̄ J^{i₁}…J^{iₙ} ξ| over n ≤ 2j−2, relative to |ξ|².
    pub traceless_residual: f64,
    /// (𝔞·r)^{2j} / ξ̄ (r…t) ξ, fitted over the sample points.
    pub tensor_constant: Complex64,
    /// Spread of that ratio across the samples.
    pub tensor_spread: f64,
    /// ρ_j = 2^{−2j} e^{−iπj} √((4j)!), the classical normalisation.
    pub quoted_rho: Complex64,
    /// 2^{−j} e^{−iπj}, the constant for the binomially normalised ξ^{(j)} used here.
    pub expected_rho: Complex64,
    /// (𝔞·r)^{2j} / (C^m_{2j}(r) ξ^{(2j)}_m), fitted over the sample points.
    pub harmonic_constant: Complex64,
    /// Spread of that ratio across the samples.
    pub harmonic_spread: f64,
    /// e^{−iπj}, the constant in the closing line of the classical derivation.
    pub quoted_constant: Complex64,
    /// 2^j (2j)! / √((4j)!), the constant implied by the generating function of the C^m_L.
    pub generating_constant: Complex64,
    pub samples: usize,
}

/// Descending-m column ξ^{(j)} and the raised row ξ̄.
fn sandwich_vectors(j: HalfInt, psi: TwoSpinor) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    let lower = null_spinor(j, psi);
    let upper = raise_lower(&lower, j)?;
    Ok((lower.into_iter().rev().collect(), upper.into_iter().rev().collect()))
}

fn sandwich(bar: &[Complex64], m: &CMatrix, col: &[Complex64]) -> Complex64 {
    let d = col.len();
    let mut acc = Complex64::new(0.0, 0.0);
    for a in 0..d {
        for b in 0..d {
            acc += bar[a] * m[(a, b)] * col[b];
        }
    }
    acc
}

/// Mean of the ratios and their largest relative deviation from it.
fn fit(ratios: &[Complex64]) -> (Complex64, f64) {
    let mean = ratios.iter().sum::<Complex64>() / ratios.len() as f64;
    let spread = ratios.iter().map(|z| (z - mean).norm()).fold(0.0, f64::max) / mean.norm().max(f64::MIN_POSITIVE);
    (mean, spread)
}

pub fn null_sandwich_check(j: HalfInt, psi: TwoSpinor, samples: usize, seed: u64) -> Result<NullSandwichReport> {
    if psi.norm() == 0.0 {
        return Err(Error::arg("null sandwich needs a nonzero spinor"));
    }
    let spins = spin_matrices(j)?;
    let (col, bar) = sandwich_vectors(j, psi)?;
    let size: f64 = col.iter().map(|c| c.norm_sqr()).sum();

    let mut traceless_residual: f64 = 0.0;
    let max_n = (j.twice() - 2).max(-1);
    let mut products = vec![CMatrix::identity(j.dim(), j.dim())];
    for n in 0..=max_n {
        for p in &products {
            traceless_residual = traceless_residual.max(sandwich(&bar, p, &col).norm() / size);
        }
        if n < max_n {
            products = products.iter().flat_map(|p| spins.components().map(|m| p * m)).collect();
        }
    }

    let tensor = jw_spatial_tensor(j)?;
    let a = cartan_map(psi).cartesian();
    let l = j.twice() as u32;
    let big = HalfInt::from_twice(2 * j.twice());
    let high = null_spinor(big, psi);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tensor_ratios = Vec::new();
    let mut ratios = Vec::new();
    for _ in 0..samples.max(1) {
        let r: [f64; 3] = std::array::from_fn(|_| crate::spinor::gaussian(&mut rng));
        let ar: Complex64 = (0..3).map(|k| a[k] * r[k]).sum();
        let lhs = ar.powu(l);
        tensor_ratios.push(lhs / sandwich(&bar, &tensor.contract(r), &col));
        let rc = r.map(|v| Complex64::new(v, 0.0));
        let mut contraction = Complex64::new(0.0, 0.0);
        for (i, m) in (-(l as i64)..=l as i64).enumerate() {
            contraction += solid_harmonic_upper(l, m)?.evaluate(rc) * high[i];
        }
        ratios.push(lhs / contraction);
    }
    let (tensor_constant, tensor_spread) = fit(&tensor_ratios);
    let (harmonic_constant, harmonic_spread) = fit(&ratios);
    let quoted_constant = Complex64::i().powu(j.twice() as u32).conj();
    let num = factorial(l as usize).to_f64().unwrap_or(f64::INFINITY);
    let den = factorial(2 * l as usize).to_f64().unwrap_or(f64::INFINITY);
    let generating_constant = Complex64::new(2f64.powf(j.to_f64()) * num / den.sqrt(), 0.0);
    Ok(NullSandwichReport {
        j,
        traceless_residual,
        tensor_constant,
        tensor_spread,
        quoted_rho: rho(j),
        expected_rho: quoted_constant * 2f64.powf(-j.to_f64()),
        harmonic_constant,
        harmonic_spread,
        quoted_constant,
        generating_constant,
        samples: samples.max(1),
    })
}

/// Exact check of Σ_k c_k m^k against its target at every eigenvalue.
pub fn ck_residuals(table: &CkTable) -> Vec<ExactScalar> {
    let j = table.j;
    j.projections()
        .map(|m| {
            let mq = BigRational::new(m.twice().into(), 2.into());
            let value = table
                .coefficients
                .iter()
                .fold(ExactScalar::zero(), |acc, (k, c)| &acc + &(c * &ExactScalar::rational(num_traits::pow(mq.clone(), *k as usize))));
            let exponent = if j.is_integer() { m.twice() / 2 } else { (m.twice() - 1) / 2 };
            let sign = if exponent.rem_euclid(2) == 0 { 1 } else { -1 };
            let target = if j.is_integer() { ExactScalar::from_int(sign) } else { &ExactScalar::i() * &ExactScalar::from_int(sign) };
            &value - &target
        })
        .collect()
}
