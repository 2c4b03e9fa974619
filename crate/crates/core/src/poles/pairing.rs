use pathfinding::kuhn_munkres::kuhn_munkres_min;
use pathfinding::matrix::Matrix;

use super::roots::ProjectiveRootSet;
use crate::error::{Error, Result};
use crate::spinor::ProjectivePoint;

/// Chordal tolerance for accepting t_j as the antipode −1/t̄_i of t_i.
pub const PAIRING_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootPair {
    pub representative: ProjectivePoint,
    pub partner: ProjectivePoint,
    /// Chordal distance between the partner and the antipode of the representative.
    pub defect: f64,
}

fn cost(a: ProjectivePoint, b: ProjectivePoint) -> f64 {
    b.chordal(a.antipode())
}

/// Perfect matching under t ↔ −1/t̄: greedy by ascending defect, falling back to an
/// optimal assignment between the inner and outer halves when greedy leaves roots behind.
pub fn pair_conjugate_roots(rs: &ProjectiveRootSet) -> Result<Vec<RootPair>> {
    let points = rs.flatten();
    if points.len() % 2 == 1 {
        return Err(Error::NotReal(format!("odd number of roots ({}) cannot pair up", points.len())));
    }
    greedy(&points).or_else(|_| assignment(&points))
}

fn greedy(points: &[ProjectivePoint]) -> Result<Vec<RootPair>> {
    let n = points.len();
    let mut candidates = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let d = cost(points[i], points[j]);
            if d <= PAIRING_TOLERANCE {
                candidates.push((d, i, j));
            }
        }
    }
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut used = vec![false; n];
    let mut pairs = Vec::new();
    for (d, i, j) in candidates {
        if !used[i] && !used[j] {
            used[i] = true;
            used[j] = true;
            pairs.push(make_pair(points[i], points[j], d));
        }
    }
    if pairs.len() * 2 == n {
        Ok(pairs)
    } else {
        Err(unmatched(points, &used))
    }
}

fn modulus_rank(p: ProjectivePoint) -> f64 {
    match p {
        ProjectivePoint::Infinity => f64::INFINITY,
        ProjectivePoint::Finite(t) if t.norm() == 0.0 => f64::NEG_INFINITY,
        ProjectivePoint::Finite(t) => t.norm().ln(),
    }
}

fn assignment(points: &[ProjectivePoint]) -> Result<Vec<RootPair>> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| modulus_rank(points[a]).total_cmp(&modulus_rank(points[b])));
    let half = points.len() / 2;
    let (inner, outer) = order.split_at(half);
    if half == 0 {
        return Ok(Vec::new());
    }
    let weights = Matrix::from_fn(half, half, |(r, c)| (cost(points[inner[r]], points[outer[c]]) * 1e15).round() as i64);
    let (_, assign) = kuhn_munkres_min(&weights);
    let mut used = vec![false; points.len()];
    let mut pairs = Vec::new();
    for (r, &c) in assign.iter().enumerate() {
        let (i, j) = (inner[r], outer[c]);
        let d = cost(points[i], points[j]);
        if d <= PAIRING_TOLERANCE {
            used[i] = true;
            used[j] = true;
            pairs.push(make_pair(points[i], points[j], d));
        }
    }
    if pairs.len() == half {
        Ok(pairs)
    } else {
        Err(unmatched(points, &used))
    }
}

/// The inner root (|t| ≤ 1) represents the pair.
fn make_pair(a: ProjectivePoint, b: ProjectivePoint, defect: f64) -> RootPair {
    let (representative, partner) = if modulus_rank(a) <= modulus_rank(b) { (a, b) } else { (b, a) };
    RootPair { representative, partner, defect }
}

fn unmatched(points: &[ProjectivePoint], used: &[bool]) -> Error {
    let list: Vec<String> = points
        .iter()
        .zip(used)
        .filter(|(_, &u)| !u)
        .map(|(p, _)| match p {
            ProjectivePoint::Infinity => "∞".to_string(),
            ProjectivePoint::Finite(t) => format!("{:.6}{:+.6}i", t.re, t.im),
        })
        .collect();
    Error::NotReal(format!("input not a real harmonic: roots without antipodal partner: {}", list.join(", ")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poles::roots::ProjectiveRoot;
    use num_complex::Complex64;

    fn set(points: &[(ProjectivePoint, u32)]) -> ProjectiveRootSet {
        ProjectiveRootSet {
            roots: points.iter().map(|&(point, multiplicity)| ProjectiveRoot { point, multiplicity }).collect(),
            backward_error: 0.0,
        }
    }

    #[test]
    fn zero_pairs_with_infinity() {
        let rs = set(&[(ProjectivePoint::Finite(Complex64::new(0.0, 0.0)), 1), (ProjectivePoint::Infinity, 1)]);
        let pairs = pair_conjugate_roots(&rs).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].representative, ProjectivePoint::Finite(Complex64::new(0.0, 0.0)));
    }

    #[test]
    fn double_roots_pair_twice() {
        let s3 = 3f64.sqrt();
        let a = Complex64::new(1.0, -1.0) * (1.0 + s3) / 2.0;
        let b = Complex64::new(1.0, -1.0) * (1.0 - s3) / 2.0;
        assert!((-1.0 / a.conj() - b).norm() < 1e-15);
        let rs = set(&[(ProjectivePoint::Finite(a), 2), (ProjectivePoint::Finite(b), 2)]);
        let pairs = pair_conjugate_roots(&rs).unwrap();
        assert_eq!(pairs.len(), 2);
        assert!(pairs.iter().all(|p| p.representative == ProjectivePoint::Finite(b)));
    }

    #[test]
    fn unpaired_roots_reported() {
        let rs = set(&[(ProjectivePoint::Finite(Complex64::new(0.5, 0.0)), 1), (ProjectivePoint::Finite(Complex64::new(3.0, 0.0)), 1)]);
        let err = pair_conjugate_roots(&rs).unwrap_err();
        assert!(err.to_string().contains("real harmonic"));
    }

    #[test]
    fn assignment_fallback_matches() {
        let t = Complex64::new(0.3, 0.2);
        let pts = vec![ProjectivePoint::Finite(t), ProjectivePoint::Finite(-1.0 / t.conj())];
        assert_eq!(assignment(&pts).unwrap().len(), 1);
    }
}
