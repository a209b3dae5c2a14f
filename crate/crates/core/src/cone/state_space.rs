//! The state space `S_C = {phi in C* : phi(u) = 1}` of a cone, the boundary
//! functional `h(x) = min over S_C of phi(x)`, exposed points and supporting
//! faces `nu(x) = {phi in boundary of S_C : phi(x) = 0}`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{ConeKind, ConeRep, GeometryError, Membership, Result};
use crate::vector::{Functional, Point};

#[derive(Debug, Clone, PartialEq)]
enum Slice {
    /// Vertices `phi / phi(u)` for each facet normal `phi` of `C`.
    Polytope { vertices: Vec<Functional> },
    /// `{(a + w) / c : w in a-perp, |w| <= 1}` for anchor `u = c a`.
    Disc {
        axis: Point,
        scale: f64,
        perp_basis: Vec<Point>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateSpace {
    primal: ConeRep,
    dual: ConeRep,
    anchor: Point,
    slice: Slice,
}

/// A supporting face `nu(x)`: the convex hull of `vertices`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Face {
    pub witness: Point,
    pub vertices: Vec<Functional>,
}

impl Face {
    pub fn is_singleton(&self) -> bool {
        self.vertices.len() == 1
    }

    /// Element of the face closest to `target` in the Euclidean norm.
    pub fn closest_to(&self, target: &Functional) -> Functional {
        if self.vertices.len() == 1 {
            return self.vertices[0].clone();
        }
        project_onto_hull(&self.vertices, target)
    }
}

impl StateSpace {
    /// Builds the state space of `cone` anchored at `anchor`, which must be
    /// an interior point (and, for second-order cones, lie on the axis).
    pub fn new(cone: &ConeRep, anchor: Point, tol: f64) -> Result<Self> {
        if cone.membership(&anchor, tol)? != Membership::Interior {
            return Err(GeometryError::AnchorNotInterior);
        }
        let slice = match cone.kind() {
            ConeKind::Polyhedral => Slice::Polytope {
                vertices: cone
                    .facets()
                    .iter()
                    .map(|f| {
                        let s = f.apply(&anchor);
                        Functional::new(f.coords().iter().map(|c| c / s).collect())
                    })
                    .collect(),
            },
            ConeKind::SecondOrder => {
                let axis = cone.axis().expect("second-order axis").clone();
                let scale = axis.inner(&anchor);
                if anchor.axpy(-scale, &axis).norm() > 1e-12 * anchor.norm() {
                    return Err(GeometryError::UnsupportedAnchor);
                }
                let perp_basis = orthonormal_complement(&axis);
                Slice::Disc { axis, scale, perp_basis }
            }
        };
        Ok(Self { primal: cone.clone(), dual: cone.dual(), anchor, slice })
    }

    /// State space at the cone's default anchor.
    pub fn with_default_anchor(cone: &ConeRep, tol: f64) -> Result<Self> {
        Self::new(cone, cone.default_anchor(), tol)
    }

    pub fn cone(&self) -> &ConeRep {
        &self.primal
    }

    pub fn dual_cone(&self) -> &ConeRep {
        &self.dual
    }

    pub fn anchor(&self) -> &Point {
        &self.anchor
    }

    pub fn dim(&self) -> usize {
        self.primal.dim()
    }

    /// Polytope vertices; empty for second-order cones.
    pub fn vertices(&self) -> &[Functional] {
        match &self.slice {
            Slice::Polytope { vertices } => vertices,
            Slice::Disc { .. } => &[],
        }
    }

    fn check_dim(&self, x: &Point) -> Result<()> {
        if x.dim() != self.dim() {
            return Err(GeometryError::DimensionMismatch { expected: self.dim(), found: x.dim() });
        }
        Ok(())
    }

    /// `h(x) = inf over S_C of phi(x)`: positive inside `C`, zero on the
    /// boundary, negative outside.
    pub fn h(&self, x: &Point) -> Result<f64> {
        self.check_dim(x)?;
        Ok(match &self.slice {
            Slice::Polytope { vertices } => {
                vertices.iter().map(|v| v.apply(x)).fold(f64::INFINITY, f64::min)
            }
            Slice::Disc { axis, scale, .. } => {
                let t = axis.inner(x);
                (t - x.axpy(-t, axis).norm()) / scale
            }
        })
    }

    /// Moves `x` along the anchor direction onto the cone boundary. Since
    /// every `phi` in `S_C` has `phi(u) = 1`, `h(x - h(x) u) = 0`.
    pub fn project_to_boundary(&self, x: &Point) -> Result<Point> {
        let hx = self.h(x)?;
        Ok(x.axpy(-hx, &self.anchor))
    }

    /// Exposed points of `S_C`: all vertices of a polytope, or `samples`
    /// points of the boundary sphere of a disc.
    pub fn exposed_points(&self, samples: usize) -> Vec<Functional> {
        match &self.slice {
            Slice::Polytope { vertices } => vertices.clone(),
            Slice::Disc { axis, scale, perp_basis } => sphere_samples(perp_basis, samples)
                .into_iter()
                .map(|w| (&axis.to_functional() + &w.to_functional()).scale(1.0 / scale))
                .collect(),
        }
    }

    /// A boundary point `y` of `C` with `nu(y) = {phi}` for an exposed point `phi`.
    pub fn exposing_witness(&self, phi: &Functional, tol: f64) -> Option<Point> {
        match &self.slice {
            Slice::Polytope { vertices } => {
                let idx = vertices.iter().position(|v| v.distance(phi) <= tol)?;
                let facet = &self.primal.facets()[idx];
                let mut acc = Point::zeros(self.dim());
                for g in self.primal.generators() {
                    if facet.apply(g).abs() <= 1e-9 {
                        acc = &acc + g;
                    }
                }
                Some(acc)
            }
            Slice::Disc { axis, scale, .. } => {
                // phi = (a + w) / c  is exposed by  a - w
                let w = phi.to_point().scale(*scale).axpy(-1.0, axis);
                ((w.norm() - 1.0).abs() <= 1e-9).then(|| axis.axpy(-1.0, &w))
            }
        }
    }

    /// The supporting face `nu(x)` of a nonzero boundary point.
    pub fn supporting_face(&self, x: &Point, tol: f64) -> Result<Face> {
        if self.primal.membership(x, tol)? != Membership::Boundary {
            return Err(GeometryError::NotOnBoundary);
        }
        let xn = x.norm();
        if xn <= tol {
            return Err(GeometryError::ApexDegenerate);
        }
        let vertices = match &self.slice {
            Slice::Polytope { vertices } => {
                let band = tol * xn.max(1.0);
                vertices
                    .iter()
                    .filter(|v| v.apply(x).abs() <= band * v.norm())
                    .cloned()
                    .collect()
            }
            Slice::Disc { axis, scale, .. } => {
                let t = axis.inner(x);
                let v = x.axpy(-t, axis);
                let vhat = v.normalized().ok_or(GeometryError::ApexDegenerate)?;
                vec![axis.axpy(-1.0, &vhat).to_functional().scale(1.0 / scale)]
            }
        };
        Ok(Face { witness: x.clone(), vertices })
    }

    /// Whether `phi` lies on the relative boundary of `S_C` within `tol`.
    pub fn contains_boundary_functional(&self, phi: &Functional, tol: f64) -> bool {
        if phi.dim() != self.dim() || (phi.apply(&self.anchor) - 1.0).abs() > tol {
            return false;
        }
        match self.dual.slack(&phi.to_point()) {
            Ok(s) => s.abs() <= tol * phi.norm().max(1.0),
            Err(_) => false,
        }
    }
}

/// Orthonormal basis of the complement of a unit vector, built by
/// Gram-Schmidt over the standard basis (skipping the best-aligned axis).
fn orthonormal_complement(axis: &Point) -> Vec<Point> {
    let d = axis.dim();
    let skip = (0..d)
        .max_by(|&i, &j| axis[i].abs().total_cmp(&axis[j].abs()))
        .unwrap_or(0);
    let mut basis: Vec<Point> = Vec::with_capacity(d.saturating_sub(1));
    for i in (0..d).filter(|&i| i != skip) {
        let mut v = Point::basis(d, i);
        v = v.axpy(-axis.inner(&v), axis);
        for b in &basis {
            v = v.axpy(-b.inner(&v), b);
        }
        basis.push(v.normalized().expect("independent basis vector"));
    }
    basis
}

/// Deterministic sample of the unit sphere in the span of `basis`.
fn sphere_samples(basis: &[Point], n: usize) -> Vec<Point> {
    let k = basis.len();
    let d = basis.first().map(|b| b.dim()).unwrap_or(1);
    let combine = |coefs: &[f64]| {
        let mut acc = Point::zeros(d);
        for (b, c) in basis.iter().zip(coefs) {
            acc = acc.axpy(*c, b);
        }
        acc
    };
    match k {
        0 => Vec::new(),
        1 => vec![basis[0].clone(), basis[0].scale(-1.0)],
        2 => (0..n)
            .map(|j| {
                let t = 2.0 * PI * j as f64 / n as f64;
                combine(&[snap(t.cos()), snap(t.sin())])
            })
            .collect(),
        _ => {
            let mut out = Vec::new();
            for i in 0..k {
                for s in [1.0, -1.0] {
                    let mut c = vec![0.0; k];
                    c[i] = s;
                    out.push(combine(&c));
                }
            }
            let r = 1.0 / (k as f64).sqrt();
            for mask in 0..(1u64 << k.min(20)) {
                let c: Vec<f64> = (0..k).map(|i| if mask >> i & 1 == 1 { -r } else { r }).collect();
                out.push(combine(&c));
            }
            out.truncate(n.max(2 * k));
            out
        }
    }
}

/// Rounds values within a few ulps of -1, 0 or 1 to the exact value.
pub(crate) fn snap(v: f64) -> f64 {
    for t in [-1.0, 0.0, 1.0] {
        if (v - t).abs() < 1e-15 {
            return t;
        }
    }
    v
}

/// Euclidean projection of `target` onto `conv(points)` by projected gradient
/// on the barycentric weights.
fn project_onto_hull(points: &[Functional], target: &Functional) -> Functional {
    let n = points.len();
    let gram: Vec<Vec<f64>> = points.iter().map(|p| points.iter().map(|q| p.inner(q)).collect()).collect();
    let lin: Vec<f64> = points.iter().map(|p| p.inner(target)).collect();
    let lipschitz: f64 = (0..n).map(|i| gram[i][i]).sum::<f64>().max(f64::MIN_POSITIVE);
    let mut w = vec![1.0 / n as f64; n];
    for _ in 0..5000 {
        let grad: Vec<f64> = (0..n)
            .map(|i| (0..n).map(|j| gram[i][j] * w[j]).sum::<f64>() - lin[i])
            .collect();
        let step: Vec<f64> = w.iter().zip(&grad).map(|(wi, g)| wi - g / lipschitz).collect();
        w = project_simplex(&step);
    }
    let mut acc = Functional::zeros(target.dim());
    for (p, wi) in points.iter().zip(&w) {
        acc = acc.axpy(*wi, p);
    }
    acc
}

fn project_simplex(v: &[f64]) -> Vec<f64> {
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cum = 0.0;
    let mut theta = 0.0;
    for (i, s) in sorted.iter().enumerate() {
        cum += s;
        let t = (cum - 1.0) / (i + 1) as f64;
        if s - t > 0.0 {
            theta = t;
        }
    }
    v.iter().map(|x| (x - theta).max(0.0)).collect()
}
