//! Solid closed pointed cones in `R^d`: membership, order relations, dual
//! cones and order intervals.
//!
//! Two representations are supported. A polyhedral cone carries both its
//! facet normals (H-form, `C = {x : phi(x) >= 0}`) and its extreme rays
//! (V-form), all stored unit-norm. A second-order cone is given by a unit
//! axis `a` and equals `{x : <a,x> >= |x - <a,x> a|}`.

mod polyhedral;
mod state_space;

pub use polyhedral::{extreme_rays, ENUM_TOL};
pub use state_space::{Face, StateSpace};
pub(crate) use state_space::snap as snap_unit;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{matrix_from_rows, rank};
use crate::vector::{Functional, Point};
use polyhedral::{dot, unitize};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid cone: {0}")]
    InvalidCone(String),
    #[error("anchor is not an interior point of the cone")]
    AnchorNotInterior,
    #[error("second-order state spaces require an anchor along the axis")]
    UnsupportedAnchor,
    #[error("point is not on the cone boundary")]
    NotOnBoundary,
    #[error("supporting face requested at the apex")]
    ApexDegenerate,
    #[error("order interval is empty: lower bound is not below upper bound")]
    EmptyInterval,
}

pub type Result<T> = std::result::Result<T, GeometryError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConeKind {
    Polyhedral,
    SecondOrder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Membership {
    Interior,
    Boundary,
    Outside,
}

/// Result of comparing `x` against `y` in the cone order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderRelation {
    /// `x = y` within tolerance.
    Eq,
    /// `x <= y` with `y - x` on the boundary.
    Leq,
    /// `x << y`.
    Ll,
    Geq,
    Gg,
    None,
}

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    Polyhedral {
        facets: Vec<Functional>,
        generators: Vec<Point>,
    },
    SecondOrder {
        axis: Point,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ConeRepRaw", into = "ConeRepRaw")]
pub struct ConeRep {
    dim: usize,
    repr: Repr,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum ConeRepRaw {
    Polyhedral {
        dim: usize,
        #[serde(default)]
        facets: Vec<Functional>,
        #[serde(default)]
        generators: Vec<Point>,
    },
    SecondOrder {
        axis: Point,
    },
}

impl TryFrom<ConeRepRaw> for ConeRep {
    type Error = GeometryError;

    fn try_from(raw: ConeRepRaw) -> Result<Self> {
        match raw {
            ConeRepRaw::Polyhedral { dim, facets, generators } => {
                match (facets.is_empty(), generators.is_empty()) {
                    (true, true) => Err(GeometryError::InvalidCone(
                        "polyhedral cone needs facets or generators".into(),
                    )),
                    (false, true) => ConeRep::from_facets(dim, facets),
                    (true, false) => ConeRep::from_generators(dim, generators),
                    (false, false) => ConeRep::from_both(dim, facets, generators),
                }
            }
            ConeRepRaw::SecondOrder { axis } => ConeRep::second_order(axis),
        }
    }
}

impl From<ConeRep> for ConeRepRaw {
    fn from(c: ConeRep) -> Self {
        match c.repr {
            Repr::Polyhedral { facets, generators } => ConeRepRaw::Polyhedral {
                dim: c.dim,
                facets,
                generators,
            },
            Repr::SecondOrder { axis } => ConeRepRaw::SecondOrder { axis },
        }
    }
}

fn check_rows<T>(dim: usize, rows: &[T], coords: impl Fn(&T) -> &[f64]) -> Result<()> {
    for r in rows {
        let c = coords(r);
        if c.len() != dim {
            return Err(GeometryError::DimensionMismatch { expected: dim, found: c.len() });
        }
        if c.iter().any(|v| !v.is_finite()) {
            return Err(GeometryError::InvalidCone("non-finite coordinate".into()));
        }
    }
    Ok(())
}

impl ConeRep {
    /// Nonnegative orthant of `R^d`.
    pub fn orthant(dim: usize) -> Self {
        let facets = (0..dim).map(|i| Functional::basis(dim, i)).collect();
        let generators = (0..dim).map(|i| Point::basis(dim, i)).collect();
        Self { dim, repr: Repr::Polyhedral { facets, generators } }
    }

    /// Standard Lorentz cone `{x : x_0 >= |(x_1, ..., x_{d-1})|}`.
    pub fn lorentz(dim: usize) -> Self {
        Self { dim, repr: Repr::SecondOrder { axis: Point::basis(dim, 0) } }
    }

    pub fn second_order(axis: Point) -> Result<Self> {
        let dim = axis.dim();
        if dim == 0 {
            return Err(GeometryError::InvalidCone("dimension must be positive".into()));
        }
        check_rows(dim, std::slice::from_ref(&axis), |p| p.coords())?;
        let axis = unitize(axis.coords())
            .map(Point::new)
            .ok_or_else(|| GeometryError::InvalidCone("axis must be nonzero".into()))?;
        Ok(Self { dim, repr: Repr::SecondOrder { axis } })
    }

    /// Cone spanned by the given generators. Redundant generators are dropped.
    pub fn from_generators(dim: usize, generators: Vec<Point>) -> Result<Self> {
        if dim == 0 {
            return Err(GeometryError::InvalidCone("dimension must be positive".into()));
        }
        check_rows(dim, &generators, |p| p.coords())?;
        let raw: Vec<Vec<f64>> = generators.iter().map(|g| g.coords().to_vec()).collect();
        let facets = extreme_rays(&raw, dim);
        let gens = extreme_rays(&facets, dim);
        Self::assemble(dim, facets, gens)
    }

    /// Cone cut out by the half-spaces `phi(x) >= 0`. Redundant facets are dropped.
    pub fn from_facets(dim: usize, facets: Vec<Functional>) -> Result<Self> {
        if dim == 0 {
            return Err(GeometryError::InvalidCone("dimension must be positive".into()));
        }
        check_rows(dim, &facets, |p| p.coords())?;
        let raw: Vec<Vec<f64>> = facets.iter().map(|g| g.coords().to_vec()).collect();
        let gens = extreme_rays(&raw, dim);
        let facets = extreme_rays(&gens, dim);
        Self::assemble(dim, facets, gens)
    }

    /// Both forms given explicitly; they are normalized and cross-checked.
    pub fn from_both(dim: usize, facets: Vec<Functional>, generators: Vec<Point>) -> Result<Self> {
        check_rows(dim, &facets, |p| p.coords())?;
        check_rows(dim, &generators, |p| p.coords())?;
        let f: Option<Vec<Vec<f64>>> = facets.iter().map(|v| unitize(v.coords())).collect();
        let g: Option<Vec<Vec<f64>>> = generators.iter().map(|v| unitize(v.coords())).collect();
        match (f, g) {
            (Some(f), Some(g)) => Self::assemble(dim, f, g),
            _ => Err(GeometryError::InvalidCone("zero facet or generator".into())),
        }
    }

    fn assemble(dim: usize, facets: Vec<Vec<f64>>, gens: Vec<Vec<f64>>) -> Result<Self> {
        let cone = Self {
            dim,
            repr: Repr::Polyhedral {
                facets: facets.into_iter().map(Functional::new).collect(),
                generators: gens.into_iter().map(Point::new).collect(),
            },
        };
        cone.validate()?;
        Ok(cone)
    }

    /// Checks solidity, pointedness and H/V cross-consistency.
    pub fn validate(&self) -> Result<()> {
        let Repr::Polyhedral { facets, generators } = &self.repr else {
            return Ok(());
        };
        let d = self.dim;
        let invalid = |m: &str| Err(GeometryError::InvalidCone(m.to_string()));
        if facets.is_empty() || generators.is_empty() {
            return invalid("empty facet or generator list");
        }
        let frows: Vec<&[f64]> = facets.iter().map(|f| f.coords()).collect();
        let grows: Vec<&[f64]> = generators.iter().map(|g| g.coords()).collect();
        if rank(&matrix_from_rows(&grows, d), 1e-10) < d {
            return invalid("generators do not span the space (cone is not solid)");
        }
        if rank(&matrix_from_rows(&frows, d), 1e-10) < d {
            return invalid("facet normals do not span the dual space (cone is not pointed)");
        }
        for g in &grows {
            if frows.iter().any(|f| dot(f, g) < -1e-9) {
                return invalid("a generator violates a facet inequality");
            }
        }
        for f in &frows {
            let tight: Vec<&[f64]> = grows.iter().copied().filter(|g| dot(f, g).abs() <= 1e-9).collect();
            if d > 1 && (tight.len() < d - 1 || rank(&matrix_from_rows(&tight, d), 1e-10) < d - 1) {
                return invalid("a facet is not supported by d-1 independent generators");
            }
        }
        let u = self.default_anchor();
        if frows.iter().any(|f| dot(f, u.coords()) <= 0.0) {
            return invalid("no interior point found");
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> ConeKind {
        match self.repr {
            Repr::Polyhedral { .. } => ConeKind::Polyhedral,
            Repr::SecondOrder { .. } => ConeKind::SecondOrder,
        }
    }

    /// Unit facet normals (empty for second-order cones).
    pub fn facets(&self) -> &[Functional] {
        match &self.repr {
            Repr::Polyhedral { facets, .. } => facets,
            Repr::SecondOrder { .. } => &[],
        }
    }

    /// Unit extreme rays (empty for second-order cones).
    pub fn generators(&self) -> &[Point] {
        match &self.repr {
            Repr::Polyhedral { generators, .. } => generators,
            Repr::SecondOrder { .. } => &[],
        }
    }

    pub fn axis(&self) -> Option<&Point> {
        match &self.repr {
            Repr::SecondOrder { axis } => Some(axis),
            Repr::Polyhedral { .. } => None,
        }
    }

    /// Generator barycenter (polyhedral) or the axis (second-order).
    pub fn default_anchor(&self) -> Point {
        match &self.repr {
            Repr::Polyhedral { generators, .. } => {
                let n = generators.len() as f64;
                let mut acc = Point::zeros(self.dim);
                for g in generators {
                    acc = &acc + g;
                }
                acc.scale(1.0 / n)
            }
            Repr::SecondOrder { axis } => axis.clone(),
        }
    }

    fn check_dim(&self, x: &Point) -> Result<()> {
        if x.dim() != self.dim {
            return Err(GeometryError::DimensionMismatch { expected: self.dim, found: x.dim() });
        }
        Ok(())
    }

    /// Signed slack of `x`: the smallest unit-facet value, or the analytic
    /// second-order gap `<a,x> - |x - <a,x> a|`.
    pub fn slack(&self, x: &Point) -> Result<f64> {
        self.check_dim(x)?;
        Ok(match &self.repr {
            Repr::Polyhedral { facets, .. } => {
                facets.iter().map(|f| f.apply(x)).fold(f64::INFINITY, f64::min)
            }
            Repr::SecondOrder { axis } => {
                let t = axis.inner(x);
                t - x.axpy(-t, axis).norm()
            }
        })
    }

    pub fn membership(&self, x: &Point, tol: f64) -> Result<Membership> {
        let s = self.slack(x)?;
        Ok(if s > tol {
            Membership::Interior
        } else if s >= -tol {
            Membership::Boundary
        } else {
            Membership::Outside
        })
    }

    /// `x <=_C x` style comparison of two points.
    pub fn order_relation(&self, x: &Point, y: &Point, tol: f64) -> Result<OrderRelation> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let diff = y - x;
        if diff.norm() <= tol {
            return Ok(OrderRelation::Eq);
        }
        match self.membership(&diff, tol)? {
            Membership::Interior => return Ok(OrderRelation::Ll),
            Membership::Boundary => return Ok(OrderRelation::Leq),
            Membership::Outside => {}
        }
        Ok(match self.membership(&-&diff, tol)? {
            Membership::Interior => OrderRelation::Gg,
            Membership::Boundary => OrderRelation::Geq,
            Membership::Outside => OrderRelation::None,
        })
    }

    /// `x <<_C y`
    pub fn strictly_below(&self, x: &Point, y: &Point, tol: f64) -> Result<bool> {
        Ok(self.membership(&(y - x), tol)? == Membership::Interior)
    }

    /// `x <=_C y`
    pub fn below(&self, x: &Point, y: &Point, tol: f64) -> Result<bool> {
        Ok(self.membership(&(y - x), tol)? != Membership::Outside)
    }

    /// The dual cone `C*`, expressed again in `R^d` via the standard inner
    /// product. Polyhedral: facets and generators swap roles. Second-order
    /// cones are self-dual.
    pub fn dual(&self) -> ConeRep {
        match &self.repr {
            Repr::Polyhedral { facets, generators } => ConeRep {
                dim: self.dim,
                repr: Repr::Polyhedral {
                    facets: generators
                        .iter()
                        .map(|g| Functional::new(unitize(g.coords()).expect("unit generator")))
                        .collect(),
                    generators: facets
                        .iter()
                        .map(|f| Point::new(unitize(f.coords()).expect("unit facet")))
                        .collect(),
                },
            },
            Repr::SecondOrder { .. } => self.clone(),
        }
    }

    /// Whether `y` lies in the order interval `[x, z]` (or its interior when `strict`).
    pub fn interval_contains(&self, x: &Point, z: &Point, y: &Point, strict: bool, tol: f64) -> Result<bool> {
        self.check_dim(y)?;
        let rel = self.order_relation(x, z, tol)?;
        let valid = match rel {
            OrderRelation::Ll => true,
            OrderRelation::Leq | OrderRelation::Eq => !strict,
            _ => false,
        };
        if !valid {
            return Err(GeometryError::EmptyInterval);
        }
        let lo = self.membership(&(y - x), tol)?;
        let hi = self.membership(&(z - y), tol)?;
        Ok(if strict {
            lo == Membership::Interior && hi == Membership::Interior
        } else {
            lo != Membership::Outside && hi != Membership::Outside
        })
    }

    /// A strictly positive functional on `C` together with its minimum over
    /// unit vectors of `C` (a lower bound for it).
    pub fn positive_functional(&self) -> (Functional, f64) {
        match &self.repr {
            Repr::Polyhedral { facets, generators } => {
                let psi = crate::vector::mean_functional(facets);
                let m = generators.iter().map(|g| psi.apply(g)).fold(f64::INFINITY, f64::min);
                (psi, m)
            }
            // <a,w> >= |w| / sqrt(2) on the cone
            Repr::SecondOrder { axis } => (axis.to_functional(), std::f64::consts::FRAC_1_SQRT_2),
        }
    }

    /// A-priori bound on `|y - x|` for every `y` in `[x, z]`.
    pub fn interval_radius_bound(&self, x: &Point, z: &Point) -> Result<f64> {
        self.check_dim(x)?;
        self.check_dim(z)?;
        let (psi, m) = self.positive_functional();
        Ok(psi.apply(&(z - x)).max(0.0) / m)
    }
    /// Axis-aligned box containing the order interval `[lo, hi]`. Exact for
    /// polyhedral cones (vertex enumeration of the interval polytope), a
    /// norm-ball bound for second-order cones.
    pub fn interval_bounding_box(&self, lo: &Point, hi: &Point) -> Result<(Point, Point)> {
        self.check_dim(lo)?;
        self.check_dim(hi)?;
        let d = self.dim;
        match &self.repr {
            Repr::Polyhedral { facets, .. } => {
                let rows: Vec<(&Functional, f64)> = facets
                    .iter()
                    .flat_map(|f| [(f, f.apply(lo)), (f, f.apply(hi))])
                    .collect();
                let mut min = vec![f64::INFINITY; d];
                let mut max = vec![f64::NEG_INFINITY; d];
                let scale = 1e-9 * (1.0 + lo.norm() + hi.norm());
                for subset in itertools::Itertools::combinations(0..rows.len(), d) {
                    let m = nalgebra::DMatrix::from_fn(d, d, |i, j| rows[subset[i]].0[j]);
                    let b = nalgebra::DVector::from_fn(d, |i, _| rows[subset[i]].1);
                    let Some(w) = m.lu().solve(&b) else { continue };
                    let w = Point::from_dvector(&w);
                    if !w.is_finite() {
                        continue;
                    }
                    let feasible = facets
                        .iter()
                        .all(|f| f.apply(&(&w - lo)) >= -scale && f.apply(&(hi - &w)) >= -scale);
                    if feasible {
                        for j in 0..d {
                            min[j] = min[j].min(w[j]);
                            max[j] = max[j].max(w[j]);
                        }
                    }
                }
                if min.iter().any(|v| !v.is_finite()) {
                    return Err(GeometryError::EmptyInterval);
                }
                Ok((Point::new(min), Point::new(max)))
            }
            Repr::SecondOrder { .. } => {
                let r = self.interval_radius_bound(lo, hi)?;
                let min = (0..d).map(|j| (lo[j] - r).max(hi[j] - r)).collect();
                let max = (0..d).map(|j| (lo[j] + r).min(hi[j] + r)).collect();
                Ok((Point::new(min), Point::new(max)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-9;

    #[test]
    fn orthant_membership() {
        let c = ConeRep::orthant(2);
        assert_eq!(c.membership(&Point::from([1.0, 1.0]), TOL).unwrap(), Membership::Interior);
        assert_eq!(c.membership(&Point::from([1.0, 0.0]), TOL).unwrap(), Membership::Boundary);
        assert_eq!(c.membership(&Point::from([1.0, -1.0]), TOL).unwrap(), Membership::Outside);
    }

    #[test]
    fn lorentz_membership() {
        let c = ConeRep::lorentz(3);
        assert_eq!(c.membership(&Point::from([1.0, 0.0, 2.0]), TOL).unwrap(), Membership::Outside);
        assert_eq!(c.membership(&Point::from([1.0, 1.0, 0.0]), TOL).unwrap(), Membership::Boundary);
        assert_eq!(c.membership(&Point::from([1.0, 0.5, 0.0]), TOL).unwrap(), Membership::Interior);
    }

    #[test]
    fn membership_dimension_mismatch() {
        let c = ConeRep::orthant(2);
        assert_eq!(
            c.membership(&Point::from([1.0, 1.0, 1.0]), TOL),
            Err(GeometryError::DimensionMismatch { expected: 2, found: 3 })
        );
    }

    #[test]
    fn order_relations() {
        let c = ConeRep::orthant(2);
        let o = Point::zeros(2);
        assert_eq!(c.order_relation(&o, &Point::from([1.0, 1.0]), TOL).unwrap(), OrderRelation::Ll);
        assert_eq!(c.order_relation(&o, &Point::from([1.0, -1.0]), TOL).unwrap(), OrderRelation::None);
        assert_eq!(c.order_relation(&o, &Point::from([1.0, 0.0]), TOL).unwrap(), OrderRelation::Leq);
        assert_eq!(c.order_relation(&Point::from([1.0, 1.0]), &o, TOL).unwrap(), OrderRelation::Gg);
        let x = Point::from([0.3, -2.0]);
        assert_eq!(c.order_relation(&x, &x, TOL).unwrap(), OrderRelation::Eq);
        let l = ConeRep::lorentz(3);
        let y = Point::from([0.1, 0.2, 0.3]);
        assert_eq!(l.order_relation(&y, &y, TOL).unwrap(), OrderRelation::Eq);
    }

    #[test]
    fn orthant_and_lorentz_are_self_dual() {
        let c = ConeRep::orthant(4);
        assert_eq!(c.dual(), c);
        let l = ConeRep::lorentz(3);
        assert_eq!(l.dual(), l);
    }

    #[test]
    fn simplicial_dual_in_plane() {
        let c = ConeRep::from_generators(2, vec![Point::from([1.0, 0.0]), Point::from([1.0, 1.0])]).unwrap();
        let dual = c.dual();
        // hand oracle: dual generators are the facet normals (0,1) and (1,-1), unit-scaled
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let want = [[0.0, 1.0], [s, -s]];
        assert_eq!(dual.generators().len(), 2);
        for w in want {
            assert!(dual.generators().iter().any(|g| g.distance(&Point::from(w)) < 1e-12));
        }
        assert!(dual.validate().is_ok());
    }

    #[test]
    fn rejects_non_pointed_and_non_solid() {
        // half-plane: not pointed
        let half = ConeRep::from_facets(2, vec![Functional::from([1.0, 0.0])]);
        assert!(matches!(half, Err(GeometryError::InvalidCone(_))));
        // a single ray in R^2: not solid
        let ray = ConeRep::from_generators(2, vec![Point::from([1.0, 0.0])]);
        assert!(matches!(ray, Err(GeometryError::InvalidCone(_))));
        // inconsistent explicit forms
        let bad = ConeRep::from_both(
            2,
            vec![Functional::from([1.0, 0.0]), Functional::from([0.0, 1.0])],
            vec![Point::from([1.0, 0.0]), Point::from([-1.0, 1.0])],
        );
        assert!(matches!(bad, Err(GeometryError::InvalidCone(_))));
    }

    #[test]
    fn intervals() {
        let c = ConeRep::orthant(2);
        let lo = Point::zeros(2);
        let hi = Point::from([2.0, 2.0]);
        assert!(c.interval_contains(&lo, &hi, &Point::from([1.0, 1.0]), true, TOL).unwrap());
        assert!(!c.interval_contains(&lo, &hi, &Point::from([1.0, 2.0]), true, TOL).unwrap());
        assert!(c.interval_contains(&lo, &hi, &Point::from([1.0, 2.0]), false, TOL).unwrap());
        assert_eq!(
            c.interval_contains(&hi, &lo, &Point::from([1.0, 1.0]), false, TOL),
            Err(GeometryError::EmptyInterval)
        );
        let l = ConeRep::lorentz(3);
        let u = Point::from([1.0, 0.0, 0.0]);
        assert!(l.interval_contains(&-&u, &u, &Point::zeros(3), true, TOL).unwrap());
    }

    #[test]
    fn bounding_boxes() {
        let c = ConeRep::orthant(3);
        let (lo, hi) = c
            .interval_bounding_box(&Point::from([-1.0, 0.0, 2.0]), &Point::from([1.0, 3.0, 2.5]))
            .unwrap();
        for (a, b) in lo.coords().iter().zip([-1.0, 0.0, 2.0]) {
            assert!((a - b).abs() < 1e-12);
        }
        for (a, b) in hi.coords().iter().zip([1.0, 3.0, 2.5]) {
            assert!((a - b).abs() < 1e-12);
        }
        // Lorentz interval [-a, a] is the double cone with tips at -a and a;
        // its true box is [-1,1]^3 and the bound must contain it.
        let l = ConeRep::lorentz(3);
        let a = Point::from([1.0, 0.0, 0.0]);
        let (lo, hi) = l.interval_bounding_box(&-&a, &a).unwrap();
        assert!(lo.coords().iter().all(|&v| v <= -1.0));
        assert!(hi.coords().iter().all(|&v| v >= 1.0));
    }

    #[test]
    fn interval_radius_bound_holds_on_samples() {
        use crate::sampling::{in_box, rng_for};
        let cones = [ConeRep::orthant(3), ConeRep::lorentz(3)];
        for c in &cones {
            let lo = Point::from([-1.0, -0.5, 0.2]);
            let hi = lo.axpy(2.0, &c.default_anchor());
            let bound = c.interval_radius_bound(&lo, &hi).unwrap();
            let (blo, bhi) = c.interval_bounding_box(&lo, &hi).unwrap();
            let mut rng = rng_for(11, 0);
            let mut seen = 0;
            while seen < 1000 {
                let y = in_box(&mut rng, &blo, &bhi);
                if c.interval_contains(&lo, &hi, &y, false, TOL).unwrap() {
                    seen += 1;
                    assert!(y.distance(&lo) <= bound);
                }
            }
        }
    }

    #[test]
    fn serde_round_trip_revalidates() {
        let c = ConeRep::from_generators(3, vec![
            Point::from([1.0, 0.0, 1.0]),
            Point::from([0.0, 1.0, 1.0]),
            Point::from([-1.0, 0.0, 1.0]),
            Point::from([0.0, -1.0, 1.0]),
        ])
        .unwrap();
        let json = serde_json::to_string(&c).unwrap();
        let back: ConeRep = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
        let bad = r#"{"kind":"polyhedral","dim":2,"facets":[[1.0,0.0]]}"#;
        assert!(serde_json::from_str::<ConeRep>(bad).is_err());
    }
}
