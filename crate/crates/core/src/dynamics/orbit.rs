use serde::{Deserialize, Serialize};

use super::{DynamicsError, MapSpec, Result};
use crate::vector::Point;

/// An orbit segment `f^k(base)` for `k = 0..=p` with its detected period.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitRecord {
    pub base: Point,
    /// Least `p >= 1` with `|f^p(base) - base| <= tol`, if any was found.
    pub period: Option<u64>,
    /// `|f^p(base) - base|` at the detected period, otherwise the smallest
    /// residual seen during the scan.
    pub residual: f64,
    pub iterates: Vec<Point>,
}

impl OrbitRecord {
    pub fn is_periodic(&self) -> bool {
        self.period.is_some()
    }
}

/// `f^n(x)`; negative `n` iterates the inverse. Every iterate, including `x`
/// itself, must stay in the domain.
pub fn iterate(f: &MapSpec, x: &Point, n: i64) -> Result<Point> {
    if x.dim() != f.dim() {
        return Err(DynamicsError::DimensionMismatch { expected: f.dim() });
    }
    if !f.domain().contains(x) {
        return Err(DynamicsError::LeftDomain { step: 0 });
    }
    let mut cur = x.clone();
    for k in 1..=n.unsigned_abs() {
        cur = if n > 0 { f.apply(&cur) } else { f.apply_inverse(&cur) };
        if !f.domain().contains(&cur) {
            let step = k as i64 * n.signum();
            return Err(DynamicsError::LeftDomain { step });
        }
    }
    Ok(cur)
}

/// Scans `p = 1, 2, ..., max_p` and returns the first `p` with
/// `|f^p(x) - x| <= tol`, which is therefore minimal.
pub fn detect_period(f: &MapSpec, x: &Point, max_p: u64, tol: f64) -> Result<OrbitRecord> {
    if x.dim() != f.dim() {
        return Err(DynamicsError::DimensionMismatch { expected: f.dim() });
    }
    if !f.domain().contains(x) {
        return Err(DynamicsError::LeftDomain { step: 0 });
    }
    let mut iterates = vec![x.clone()];
    let mut best = f64::INFINITY;
    for p in 1..=max_p {
        let next = f.apply(iterates.last().expect("non-empty"));
        if !f.domain().contains(&next) {
            return Err(DynamicsError::LeftDomain { step: p as i64 });
        }
        let residual = next.distance(x);
        iterates.push(next);
        if residual <= tol {
            return Ok(OrbitRecord { base: x.clone(), period: Some(p), residual, iterates });
        }
        best = best.min(residual);
    }
    Ok(OrbitRecord { base: x.clone(), period: None, residual: best, iterates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::ConeRep;
    use crate::dynamics::{DomainSpec, MapKind};

    fn cycle3() -> MapSpec {
        let kind = MapKind::Linear { matrix: vec![vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0], vec![1.0, 0.0, 0.0]] };
        MapSpec::new(kind, ConeRep::orthant(3), DomainSpec::centered_box(3, 4.0)).unwrap()
    }

    fn identity(d: usize) -> MapSpec {
        let m = (0..d).map(|i| (0..d).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
        MapSpec::new(MapKind::Linear { matrix: m }, ConeRep::orthant(d), DomainSpec::WholeSpace).unwrap()
    }

    #[test]
    fn iterate_basics() {
        let f = cycle3();
        let x = Point::from([1.0, 2.0, 3.0]);
        assert_eq!(iterate(&f, &x, 0).unwrap(), x);
        assert_eq!(iterate(&f, &x, 3).unwrap(), x);
        let back = iterate(&f, &iterate(&f, &x, -1).unwrap(), 1).unwrap();
        assert!(back.distance(&x) <= 1e-12);
    }

    #[test]
    fn iterate_detects_domain_exit() {
        let kind = MapKind::Affine { matrix: vec![vec![1.0]], translation: vec![1.0] };
        let f = MapSpec::new(kind, ConeRep::orthant(1), DomainSpec::WholeSpace).unwrap();
        assert!(iterate(&f, &Point::from([0.0]), 5).is_ok());
        let g = MapSpec::new(
            MapKind::Linear { matrix: vec![vec![1.0]] },
            ConeRep::orthant(1),
            DomainSpec::centered_box(1, 1.0),
        )
        .unwrap();
        assert_eq!(iterate(&g, &Point::from([3.0]), 1), Err(DynamicsError::LeftDomain { step: 0 }));
    }

    #[test]
    fn periods() {
        let rec = detect_period(&identity(2), &Point::from([0.3, 0.1]), 64, 1e-9).unwrap();
        assert_eq!(rec.period, Some(1));
        assert_eq!(rec.residual, 0.0);

        let f = cycle3();
        let rec = detect_period(&f, &Point::from([1.0, 2.0, 3.0]), 64, 1e-9).unwrap();
        assert_eq!(rec.period, Some(3));
        assert_eq!(rec.iterates.len(), 4);

        // fixed point of the permutation: minimal period 1, not 3
        let rec = detect_period(&f, &Point::from([1.0, 1.0, 1.0]), 64, 1e-9).unwrap();
        assert_eq!(rec.period, Some(1));
    }

    #[test]
    fn aperiodic_orbit_reports_none() {
        let kind = MapKind::Linear { matrix: vec![vec![0.5, 0.0], vec![0.0, 0.5]] };
        let f = MapSpec::new(kind, ConeRep::orthant(2), DomainSpec::centered_ball(2, 4.0)).unwrap();
        let rec = detect_period(&f, &Point::from([1.0, 1.0]), 10, 1e-9).unwrap();
        assert_eq!(rec.period, None);
        assert_eq!(rec.iterates.len(), 11);
    }
}
