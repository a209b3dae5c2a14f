//! H-form / V-form conversion for polyhedral cones by tightness enumeration.
//!
//! Extreme rays of `{x : n_j . x >= 0}` are found by running over every
//! `(d-1)`-subset of the normals, taking the orthogonal direction of the
//! subset, and keeping it (with the right sign) when it satisfies all
//! inequalities. The same routine applied to a generator list yields the
//! facet normals of the cone the generators span, since those are the
//! extreme rays of the dual cone.

use itertools::Itertools;

use crate::linalg::generalized_cross;

/// Slack allowed on unit vectors when testing inequalities during enumeration.
pub const ENUM_TOL: f64 = 1e-10;

/// Extreme rays (unit norm, deduplicated, in discovery order) of the cone
/// `{x : n . x >= 0 for all n in normals}`. Input normals need not be unit.
pub fn extreme_rays(normals: &[Vec<f64>], d: usize) -> Vec<Vec<f64>> {
    let unit: Vec<Vec<f64>> = normals.iter().filter_map(|n| unitize(n)).collect();
    let mut rays: Vec<Vec<f64>> = Vec::new();
    for subset in (0..unit.len()).combinations(d - 1) {
        let rows: Vec<&[f64]> = subset.iter().map(|&i| unit[i].as_slice()).collect();
        // Rank-deficient subsets give a (near-)zero cofactor vector.
        let raw = generalized_cross(&rows, d);
        if norm(&raw) < 1e-9 {
            continue;
        }
        let Some(dir) = unitize(&raw) else { continue };
        for cand in [dir.clone(), dir.iter().map(|c| -c).collect::<Vec<_>>()] {
            if unit.iter().all(|n| dot(n, &cand) >= -ENUM_TOL)
                && !rays.iter().any(|r| dist(r, &cand) < 1e-9)
            {
                rays.push(cand);
            }
        }
    }
    rays
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

pub(crate) fn unitize(v: &[f64]) -> Option<Vec<f64>> {
    let n = norm(v);
    // already unit: keep bit-exact so serialized cones round-trip
    if (n - 1.0).abs() <= 4.0 * f64::EPSILON {
        return Some(v.to_vec());
    }
    (n > 0.0 && n.is_finite()).then(|| v.iter().map(|c| c / n).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn contains(set: &[Vec<f64>], v: &[f64]) -> bool {
        set.iter().any(|r| dist(r, v) < 1e-12)
    }

    #[test]
    fn orthant_is_self_dual() {
        let normals = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]];
        let rays = extreme_rays(&normals, 3);
        assert_eq!(rays.len(), 3);
        for n in &normals {
            assert!(contains(&rays, n));
        }
    }

    #[test]
    fn simplicial_cone_in_plane() {
        // Generators (1,0), (1,1): facet normals solve the 2x2 tightness
        // systems by hand: n . (1,0) = 0, n . (1,1) > 0 gives (0,1);
        // n . (1,1) = 0, n . (1,0) > 0 gives (1,-1)/sqrt2.
        let facets = extreme_rays(&[vec![1.0, 0.0], vec![1.0, 1.0]], 2);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(facets.len(), 2);
        assert!(contains(&facets, &[0.0, 1.0]));
        assert!(contains(&facets, &[s, -s]));
    }

    #[test]
    fn redundant_generators_are_dropped() {
        // Square pyramid plus an interior ray.
        let gens = vec![
            vec![1.0, 1.0, 1.0],
            vec![1.0, -1.0, 1.0],
            vec![-1.0, 1.0, 1.0],
            vec![-1.0, -1.0, 1.0],
            vec![0.0, 0.0, 1.0],
        ];
        let facets = extreme_rays(&gens, 3);
        assert_eq!(facets.len(), 4);
        let back = extreme_rays(&facets, 3);
        assert_eq!(back.len(), 4);
        assert!(!contains(&back, &[0.0, 0.0, 1.0]));
    }

    #[test]
    fn one_dimensional_ray() {
        assert_eq!(extreme_rays(&[vec![2.0]], 1), vec![vec![1.0]]);
    }
}
