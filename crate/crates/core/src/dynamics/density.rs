use serde::{Deserialize, Serialize};

use super::trap::search_periodic;
use super::{iterate, DynamicsError, MapSpec, OrbitRecord, Result, SearchBudget, Side};
use crate::cone::{Membership, StateSpace};
use crate::linalg::lcm;
use crate::vector::Point;

/// Bisection steps along the segment from `y` to `z`.
const BISECTION_STEPS: usize = 200;

/// Outcome of a boundary density probe at `v`: periodic `y <<_C v <<_C z`
/// close to `v`, and a point `zeta` of `[y, z]` with `h(zeta) = 0` fixed by
/// `g = f^r`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryProbe {
    pub v: Point,
    pub eps: f64,
    pub y: OrbitRecord,
    pub z: OrbitRecord,
    pub r: u64,
    pub zeta: Point,
    /// `|f^r(zeta) - zeta|`
    pub fixed_residual: f64,
    /// `h(zeta)`
    pub h: f64,
    pub distance: f64,
}

pub fn probe_boundary_density(
    f: &MapSpec,
    space: &StateSpace,
    v: &Point,
    eps: f64,
    budget: &SearchBudget,
) -> Result<BoundaryProbe> {
    let d = f.dim();
    if v.dim() != d || space.dim() != d {
        return Err(DynamicsError::DimensionMismatch { expected: d });
    }
    let cone = space.cone();
    let tol = budget.tol;
    if cone.membership(v, tol)? != Membership::Boundary {
        return Err(DynamicsError::Geometry(crate::cone::GeometryError::NotOnBoundary));
    }
    let u = space.anchor().clone();
    let lo = v.axpy(-eps, &u);
    let hi = v.axpy(eps, &u);
    let in_window = |c: &Point| -> Result<bool> { Ok(cone.interval_contains(&lo, &hi, c, true, tol)?) };

    let y = search_periodic(f, v, &u, Side::Lower, 0.5 * eps, budget, 0, |c| {
        Ok(cone.strictly_below(c, v, tol)? && in_window(c)?)
    })?
    .ok_or(DynamicsError::SqueezeFailed { side: Side::Lower })?;
    let z = search_periodic(f, v, &u, Side::Upper, 0.5 * eps, budget, 1, |c| {
        Ok(cone.strictly_below(v, c, tol)? && in_window(c)?)
    })?
    .ok_or(DynamicsError::SqueezeFailed { side: Side::Upper })?;

    let r = lcm(y.period.expect("periodic") as u128, z.period.expect("periodic") as u128) as u64;

    // h is concave, h(y) < 0 < h(z); bisect on the segment
    let point_at = |t: f64| y.base.axpy(t, &(&z.base - &y.base));
    let (mut a, mut b) = (0.0_f64, 1.0_f64);
    let mut t = 0.5;
    let mut h = space.h(&point_at(t))?;
    for _ in 0..BISECTION_STEPS {
        if h == 0.0 || b - a <= f64::EPSILON {
            break;
        }
        if h < 0.0 {
            a = t;
        } else {
            b = t;
        }
        t = 0.5 * (a + b);
        h = space.h(&point_at(t))?;
    }
    let zeta = point_at(t);
    let fixed_residual = match iterate(f, &zeta, r as i64) {
        Ok(g) => g.distance(&zeta),
        Err(DynamicsError::LeftDomain { .. }) => f64::INFINITY,
        Err(e) => return Err(e),
    };
    if !(fixed_residual <= tol && h.abs() <= tol) {
        return Err(DynamicsError::LocatorFailed { residual: fixed_residual, h });
    }
    Ok(BoundaryProbe { v: v.clone(), eps, distance: zeta.distance(v), y, z, r, zeta, fixed_residual, h })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{make_example_system, SystemName};

    #[test]
    fn identity_returns_point_near_v() {
        let e = make_example_system(&SystemName::identity(2)).unwrap();
        let s = StateSpace::new(e.map.cone(), Point::from([1.0, 1.0]), 1e-9).unwrap();
        let v = Point::from([1.0, 0.0]);
        let p = probe_boundary_density(&e.map, &s, &v, 0.5, &SearchBudget::default()).unwrap();
        assert_eq!(p.r, 1);
        assert_eq!(p.fixed_residual, 0.0);
        assert!(p.h.abs() <= 1e-12);
        // without jitter the segment runs along u through v itself
        assert!(p.zeta.distance(&v) <= 1e-12);
    }

    #[test]
    fn permutation_boundary_orbit() {
        let e = make_example_system(&SystemName::OrthantPermutation { sigma: vec![2, 3, 1] }).unwrap();
        let s = StateSpace::new(e.map.cone(), Point::from([1.0, 1.0, 1.0]), 1e-9).unwrap();
        let v = Point::from([1.0, 1.0, 0.0]);
        let p = probe_boundary_density(&e.map, &s, &v, 0.5, &SearchBudget::default()).unwrap();
        assert_eq!(3 % p.r, 0);
        assert!(p.fixed_residual <= 1e-12);
        assert!(p.h.abs() <= 1e-9);
        assert!(p.distance <= 0.5 * 3f64.sqrt());
    }

    #[test]
    fn lorentz_quarter_turn() {
        let e = make_example_system(&SystemName::LorentzRotation { num: 1, den: 4 }).unwrap();
        let s = StateSpace::with_default_anchor(e.map.cone(), 1e-9).unwrap();
        let v = Point::from([1.0, 0.6, 0.8]);
        let p = probe_boundary_density(&e.map, &s, &v, 0.25, &SearchBudget::default()).unwrap();
        assert_eq!(p.r, 4);
        assert!(p.fixed_residual <= 1e-9);
        assert!(p.h.abs() <= 1e-9);
    }

    #[test]
    fn contraction_squeeze_fails() {
        let e = make_example_system(&SystemName::Contraction { factor: 0.5, dim: 2 }).unwrap();
        let s = StateSpace::with_default_anchor(e.map.cone(), 1e-9).unwrap();
        let r = probe_boundary_density(&e.map, &s, &Point::from([1.0, 0.0]), 0.25, &SearchBudget::default());
        assert!(matches!(r, Err(DynamicsError::SqueezeFailed { .. })));
    }
}
