//! Frames of exposed points, simplicial dual cones and the perturbation
//! radius under which a perturbed frame stays independent and keeps the
//! barycentric functional strictly positive.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cone::{GeometryError, StateSpace};
use crate::linalg::{sigma_max, sigma_min, solve};
use crate::vector::{mean_functional, Functional, Point};

/// Default number of boundary samples used for second-order state spaces.
pub const DEFAULT_SOC_SAMPLES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FrameError {
    #[error("no linearly independent frame among the exposed points")]
    FrameNotFound,
    #[error("functional matrix is numerically singular (sigma_min = {sigma_min:e})")]
    SingularFrame { sigma_min: f64 },
    #[error("base positivity margin {margin:e} is not positive")]
    NonpositiveBaseMargin { margin: f64 },
    #[error("expected {expected} functionals of dimension {expected}, got {found}")]
    WrongShape { expected: usize, found: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

pub type Result<T> = std::result::Result<T, FrameError>;

fn rows_matrix(rows: &[Functional]) -> DMatrix<f64> {
    let d = rows.first().map(|r| r.dim()).unwrap_or(0);
    DMatrix::from_fn(rows.len(), d, |i, j| rows[i][j])
}

/// `d` linearly independent exposed points of the state space and their mean.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    psis: Vec<Functional>,
    psi_bar: Functional,
}

impl Frame {
    pub fn new(psis: Vec<Functional>) -> Result<Self> {
        let d = psis.len();
        if d == 0 || psis.iter().any(|p| p.dim() != d) {
            return Err(FrameError::WrongShape { expected: d, found: psis.first().map_or(0, |p| p.dim()) });
        }
        let s = sigma_min(&rows_matrix(&psis));
        if s <= 0.0 {
            return Err(FrameError::SingularFrame { sigma_min: s });
        }
        let psi_bar = mean_functional(&psis);
        Ok(Self { psis, psi_bar })
    }

    /// Frame paired with an arbitrary reference functional instead of the mean.
    pub fn with_functional(psis: Vec<Functional>, psi: Functional) -> Result<Self> {
        let mut f = Self::new(psis)?;
        if psi.dim() != f.dim() {
            return Err(FrameError::WrongShape { expected: f.dim(), found: psi.dim() });
        }
        f.psi_bar = psi;
        Ok(f)
    }

    pub fn psis(&self) -> &[Functional] {
        &self.psis
    }

    pub fn psi_bar(&self) -> &Functional {
        &self.psi_bar
    }

    pub fn dim(&self) -> usize {
        self.psis.len()
    }

    /// Rows are the frame functionals.
    pub fn basis_matrix(&self) -> DMatrix<f64> {
        rows_matrix(&self.psis)
    }

    pub fn sigma_min(&self) -> f64 {
        sigma_min(&self.basis_matrix())
    }
}

/// Greedy frame selection: at each step add the exposed point that keeps the
/// smallest singular value of the chosen rows largest.
pub fn select_frame(space: &StateSpace, soc_samples: usize) -> Result<Frame> {
    let d = space.dim();
    let candidates = space.exposed_points(soc_samples);
    let mut chosen: Vec<Functional> = Vec::with_capacity(d);
    let mut used = vec![false; candidates.len()];
    for _ in 0..d {
        let mut best: Option<(usize, f64)> = None;
        for (i, c) in candidates.iter().enumerate() {
            if used[i] {
                continue;
            }
            let mut rows = chosen.clone();
            rows.push(c.clone());
            let s = sigma_min(&rows_matrix(&rows));
            if best.is_none_or(|(_, b)| s > b) {
                best = Some((i, s));
            }
        }
        match best {
            Some((i, s)) if s > 1e-12 * candidates[i].norm() => {
                used[i] = true;
                chosen.push(candidates[i].clone());
            }
            _ => return Err(FrameError::FrameNotFound),
        }
    }
    Frame::new(chosen)
}

/// `K' = {x : phi_i(x) >= 0 for all i}` for `d` independent functionals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplicialDualCone {
    functionals: Vec<Functional>,
}

impl SimplicialDualCone {
    pub fn new(functionals: Vec<Functional>) -> Result<Self> {
        let d = functionals.len();
        if d == 0 || functionals.iter().any(|f| f.dim() != d) {
            return Err(FrameError::WrongShape {
                expected: d,
                found: functionals.first().map_or(0, |p| p.dim()),
            });
        }
        Ok(Self { functionals })
    }

    pub fn functionals(&self) -> &[Functional] {
        &self.functionals
    }

    pub fn matrix(&self) -> DMatrix<f64> {
        rows_matrix(&self.functionals)
    }

    pub fn contains(&self, x: &Point, tol: f64) -> bool {
        self.functionals.iter().all(|f| f.apply(x) >= -tol)
    }

    /// Coefficients `c` with `psi = sum c_i phi_i`.
    pub fn coefficients(&self, psi: &Functional) -> Result<Vec<f64>> {
        let b = self.matrix();
        let (smin, smax) = (sigma_min(&b), sigma_max(&b));
        if smin <= 1e-12 * smax || smax == 0.0 {
            return Err(FrameError::SingularFrame { sigma_min: smin });
        }
        let c = solve(&b.transpose(), &DVector::from_column_slice(psi.coords()))
            .ok_or(FrameError::SingularFrame { sigma_min: smin })?;
        Ok(c.iter().copied().collect())
    }

    /// Extreme rays of `K'`: the columns of `B^{-1}`.
    pub fn rays(&self) -> Result<Vec<Point>> {
        let b = self.matrix();
        let inv = b.clone().try_inverse().ok_or(FrameError::SingularFrame { sigma_min: sigma_min(&b) })?;
        Ok((0..inv.ncols()).map(|j| Point::from_dvector(&inv.column(j).into_owned())).collect())
    }
}

/// `min_i c_i` where `psi = sum c_i phi_i`; positive exactly when `psi` is
/// strictly positive on `K' \ {0}`.
pub fn simplicial_positivity_margin(cone: &SimplicialDualCone, psi: &Functional) -> Result<f64> {
    if psi.dim() != cone.functionals.len() {
        return Err(FrameError::WrongShape { expected: cone.functionals.len(), found: psi.dim() });
    }
    Ok(cone.coefficients(psi)?.into_iter().fold(f64::INFINITY, f64::min))
}

/// Radius `eps` such that every choice `phi_i` with `|phi_i - psi_i| < eps`
/// stays linearly independent and keeps `psi_bar` strictly positive on the
/// cone the `phi_i` cut out.
///
/// With `A` the frame matrix, `s = sigma_min(A)` and `|E| <= sqrt(d) eps` the
/// perturbation, invertibility needs `|E| < s`, and
/// `|B^{-T} - A^{-T}| <= |E| / (s (s - |E|))` keeps the coefficient shift
/// below the base margin `m0` once `|E| < m0 s^2 / (|psi_bar| + m0 s)`.
/// The returned radius is half the smaller of the two bounds.
pub fn perturbation_radius(frame: &Frame) -> Result<f64> {
    let d = frame.dim() as f64;
    let base = SimplicialDualCone::new(frame.psis.clone())?;
    let m0 = simplicial_positivity_margin(&base, &frame.psi_bar)?;
    if m0 <= 0.0 {
        return Err(FrameError::NonpositiveBaseMargin { margin: m0 });
    }
    let s = frame.sigma_min();
    let invertible = s;
    let positive = m0 * s * s / (frame.psi_bar.norm() + m0 * s);
    Ok(0.5 * invertible.min(positive) / d.sqrt())
}

/// Metric ball `{phi in boundary of S_C : |phi - center| < radius}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryOpenSet {
    pub center: Functional,
    pub radius: f64,
}

impl BoundaryOpenSet {
    pub fn contains(&self, phi: &Functional) -> bool {
        phi.distance(&self.center) < self.radius
    }
}

/// `x` belongs to `W = {x in boundary of C : nu(x) within U}`.
pub fn membership_w(space: &StateSpace, set: &BoundaryOpenSet, x: &Point, tol: f64) -> Result<bool> {
    let face = space.supporting_face(x, tol)?;
    // the ball is convex, so checking the generating vertices suffices
    Ok(face.vertices.iter().all(|v| set.contains(v)))
}

/// For `x` in `W`, a radius `delta > 0` such that every boundary point
/// within `delta` of `x` is again in `W`; `None` when `x` is not in `W`.
pub fn membership_w_slack(space: &StateSpace, set: &BoundaryOpenSet, x: &Point, tol: f64) -> Result<Option<f64>> {
    if !membership_w(space, set, x, tol)? {
        return Ok(None);
    }
    let xn = x.norm();
    let delta = if let Some(axis) = space.cone().axis() {
        // |vhat' - vhat| <= 2 |v' - v| / |v| moves the face functional by at
        // most 2 delta / (c |v|).
        let face = space.supporting_face(x, tol)?;
        let dist = face.vertices[0].distance(&set.center);
        let scale = axis.inner(space.anchor());
        let t = axis.inner(x);
        let vn = x.axpy(-t, axis).norm();
        0.25 * (set.radius - dist) * scale * vn
    } else {
        // inactive vertices must stay inactive
        let band = tol * xn.max(1.0);
        let gap = space
            .vertices()
            .iter()
            .map(|v| v.apply(x) / v.norm())
            .filter(|&g| g > band)
            .fold(f64::INFINITY, f64::min);
        if gap.is_finite() {
            0.5 * (gap - band) / (1.0 + tol)
        } else {
            f64::INFINITY
        }
    };
    Ok(Some(delta.min(0.5 * xn)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::ConeRep;

    const TOL: f64 = 1e-9;

    fn orthant_space(u: &[f64]) -> StateSpace {
        StateSpace::new(&ConeRep::orthant(u.len()), Point::new(u.to_vec()), TOL).unwrap()
    }

    #[test]
    fn orthant_frame() {
        let f = select_frame(&orthant_space(&[1.0, 1.0, 1.0]), 0).unwrap();
        assert_eq!(f.psis().len(), 3);
        for i in 0..3 {
            assert!(f.psis().contains(&Functional::basis(3, i)));
        }
        let third = 1.0 / 3.0;
        assert_eq!(f.psi_bar().coords(), &[third, third, third]);
    }

    #[test]
    fn scaled_orthant_frame() {
        let f = select_frame(&orthant_space(&[2.0, 1.0]), 0).unwrap();
        assert!(f.psis().contains(&Functional::from([0.5, 0.0])));
        assert!(f.psis().contains(&Functional::from([0.0, 1.0])));
        assert_eq!(f.psi_bar().coords(), &[0.25, 0.5]);
    }

    #[test]
    fn lorentz_frame_is_independent() {
        let s = StateSpace::with_default_anchor(&ConeRep::lorentz(3), TOL).unwrap();
        let f = select_frame(&s, 8).unwrap();
        let det = f.basis_matrix().determinant();
        assert!(det.abs() > 1e-3);
        for p in f.psis() {
            assert!(s.contains_boundary_functional(p, 1e-12));
        }
    }

    #[test]
    fn positivity_margins() {
        let id = SimplicialDualCone::new((0..3).map(|i| Functional::basis(3, i)).collect()).unwrap();
        let third = 1.0 / 3.0;
        assert_eq!(simplicial_positivity_margin(&id, &Functional::from([third, third, third])).unwrap(), third);

        let diag = SimplicialDualCone::new(vec![Functional::from([1.0, 0.0]), Functional::from([0.0, 2.0])]).unwrap();
        assert_eq!(simplicial_positivity_margin(&diag, &Functional::from([0.5, 0.5])).unwrap(), 0.25);

        // B^T c = (1,1) with rows (1,0), (1,1): c = (0, 1)
        let skew = SimplicialDualCone::new(vec![Functional::from([1.0, 0.0]), Functional::from([1.0, 1.0])]).unwrap();
        assert_eq!(simplicial_positivity_margin(&skew, &Functional::from([1.0, 1.0])).unwrap(), 0.0);
    }

    #[test]
    fn singular_margin() {
        let k = SimplicialDualCone::new(vec![Functional::from([1.0, 0.0]), Functional::from([2.0, 0.0])]).unwrap();
        assert!(matches!(
            simplicial_positivity_margin(&k, &Functional::from([0.5, 0.5])),
            Err(FrameError::SingularFrame { .. })
        ));
    }

    #[test]
    fn radius_is_positive_for_orthant() {
        let f = select_frame(&orthant_space(&[1.0, 1.0]), 0).unwrap();
        assert!(perturbation_radius(&f).unwrap() >= 0.1);
    }

    #[test]
    fn degenerate_frame_has_no_radius() {
        // (1,1) = 0 * (1,0) + 1 * (1,1): margin 0
        let f = Frame::with_functional(
            vec![Functional::from([1.0, 0.0]), Functional::from([1.0, 1.0])],
            Functional::from([1.0, 1.0]),
        )
        .unwrap();
        assert_eq!(perturbation_radius(&f), Err(FrameError::NonpositiveBaseMargin { margin: 0.0 }));
    }

    #[test]
    fn w_membership() {
        let s2 = orthant_space(&[1.0, 1.0]);
        let u = BoundaryOpenSet { center: Functional::from([0.0, 1.0]), radius: 0.5 };
        assert!(membership_w(&s2, &u, &Point::from([1.0, 0.0]), TOL).unwrap());

        let s3 = orthant_space(&[1.0, 1.0, 1.0]);
        let u = BoundaryOpenSet { center: Functional::from([0.0, 0.0, 1.0]), radius: 0.5 };
        assert!(!membership_w(&s3, &u, &Point::from([1.0, 0.0, 0.0]), TOL).unwrap());

        let l = StateSpace::with_default_anchor(&ConeRep::lorentz(3), TOL).unwrap();
        let u = BoundaryOpenSet { center: Functional::from([1.0, -1.0, 0.0]), radius: 0.3 };
        assert!(membership_w(&l, &u, &Point::from([1.0, 1.0, 0.0]), TOL).unwrap());
        assert_eq!(membership_w(&l, &u, &Point::from([1.0, 0.0, 0.0]), TOL), Err(FrameError::Geometry(GeometryError::NotOnBoundary)));
    }

    #[test]
    fn slack_only_for_members() {
        let s3 = orthant_space(&[1.0, 1.0, 1.0]);
        let u = BoundaryOpenSet { center: Functional::from([1.0, 0.0, 0.0]), radius: 0.5 };
        let d = membership_w_slack(&s3, &u, &Point::from([0.0, 1.0, 2.0]), TOL).unwrap().unwrap();
        assert!(d > 0.49 && d <= 0.5);
        assert_eq!(membership_w_slack(&s3, &u, &Point::from([0.0, 0.0, 2.0]), TOL).unwrap(), None);
    }
}
