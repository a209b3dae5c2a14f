//! Affine homeomorphisms (linear, affine, or compositions thereof) together
//! with the cone they are monotone for and the domain they act on.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::{DomainSpec, DynamicsError, Result};
use crate::cone::{ConeKind, ConeRep, Membership};
use crate::sampling::{rng_for, unit_vector};
use crate::vector::Point;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MapKind {
    Linear { matrix: Vec<Vec<f64>> },
    Affine { matrix: Vec<Vec<f64>>, translation: Vec<f64> },
    /// Applied first to last.
    Composition { steps: Vec<MapKind> },
}

impl MapKind {
    fn flatten(&self, dim: usize, out: &mut Vec<AffineStep>) -> Result<()> {
        match self {
            MapKind::Linear { matrix } => out.push(AffineStep::new(matrix, &vec![0.0; dim], dim)?),
            MapKind::Affine { matrix, translation } => out.push(AffineStep::new(matrix, translation, dim)?),
            MapKind::Composition { steps } => {
                if steps.is_empty() {
                    return Err(DynamicsError::InvalidMap("empty composition".into()));
                }
                for s in steps {
                    s.flatten(dim, out)?;
                }
            }
        }
        Ok(())
    }

    /// Conjugate by the translation `v -> v + shift`: `g(v) = f(v + shift) - shift`.
    fn translated(&self, shift: &[f64]) -> MapKind {
        let conj = |matrix: &Vec<Vec<f64>>, translation: &[f64]| {
            let t = matrix
                .iter()
                .zip(translation)
                .zip(shift)
                .map(|((row, b), s)| row.iter().zip(shift).map(|(a, x)| a * x).sum::<f64>() + b - s)
                .collect();
            MapKind::Affine { matrix: matrix.clone(), translation: t }
        };
        match self {
            MapKind::Linear { matrix } => conj(matrix, &vec![0.0; shift.len()]),
            MapKind::Affine { matrix, translation } => conj(matrix, translation),
            MapKind::Composition { steps } => MapKind::Composition {
                steps: steps.iter().map(|s| s.translated(shift)).collect(),
            },
        }
    }

    fn infer_dim(&self) -> Option<usize> {
        match self {
            MapKind::Linear { matrix } | MapKind::Affine { matrix, .. } => Some(matrix.len()),
            MapKind::Composition { steps } => steps.first().and_then(|s| s.infer_dim()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
struct AffineStep {
    a: DMatrix<f64>,
    b: DVector<f64>,
    a_inv: DMatrix<f64>,
}

impl AffineStep {
    fn new(rows: &[Vec<f64>], translation: &[f64], dim: usize) -> Result<Self> {
        if rows.len() != dim || rows.iter().any(|r| r.len() != dim) || translation.len() != dim {
            return Err(DynamicsError::DimensionMismatch { expected: dim });
        }
        if rows.iter().flatten().chain(translation).any(|v| !v.is_finite()) {
            return Err(DynamicsError::InvalidMap("non-finite entry".into()));
        }
        let a = DMatrix::from_fn(dim, dim, |i, j| rows[i][j]);
        let hadamard: f64 = rows.iter().map(|r| r.iter().map(|v| v * v).sum::<f64>().sqrt()).product();
        let det = a.determinant();
        if !(det.abs() > 1e-12 * hadamard.max(f64::MIN_POSITIVE)) {
            return Err(DynamicsError::Singular { det });
        }
        let a_inv = a.clone().try_inverse().ok_or(DynamicsError::Singular { det })?;
        Ok(Self { a, b: DVector::from_column_slice(translation), a_inv })
    }
}

/// Whether the map is exactly certified monotone or only on samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MonotoneCertificate {
    Exact,
    Sampled { samples: usize },
}

#[derive(Serialize, Deserialize)]
struct MapSpecRaw {
    map: MapKind,
    cone: ConeRep,
    domain: DomainSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MapSpecRaw", into = "MapSpecRaw")]
pub struct MapSpec {
    kind: MapKind,
    cone: ConeRep,
    domain: DomainSpec,
    steps: Vec<AffineStep>,
}

impl TryFrom<MapSpecRaw> for MapSpec {
    type Error = DynamicsError;
    fn try_from(raw: MapSpecRaw) -> Result<Self> {
        MapSpec::new(raw.map, raw.cone, raw.domain)
    }
}

impl From<MapSpec> for MapSpecRaw {
    fn from(m: MapSpec) -> Self {
        MapSpecRaw { map: m.kind, cone: m.cone, domain: m.domain }
    }
}

/// Number of sampled points used to check that the domain is mapped into itself.
const DOMAIN_SAMPLES: usize = 256;

impl MapSpec {
    /// Validates shape and invertibility, and checks on samples that the
    /// domain is mapped into itself. Monotonicity is checked separately by
    /// [`verify_monotone`].
    pub fn new(kind: MapKind, cone: ConeRep, domain: DomainSpec) -> Result<Self> {
        let dim = cone.dim();
        if kind.infer_dim() != Some(dim) {
            return Err(DynamicsError::DimensionMismatch { expected: dim });
        }
        domain.validate(dim).map_err(DynamicsError::InvalidDomain)?;
        let mut steps = Vec::new();
        kind.flatten(dim, &mut steps)?;
        let spec = Self { kind, cone, domain, steps };
        let mut rng = rng_for(0x0D0_A1A, 0);
        for _ in 0..DOMAIN_SAMPLES {
            let x = spec.domain.sample(&mut rng, dim);
            let fx = spec.apply(&x);
            if !spec.domain.contains(&fx) {
                return Err(DynamicsError::DomainNotInvariant { witness: x });
            }
        }
        Ok(spec)
    }

    /// Like [`MapSpec::new`] but also rejects maps that fail [`verify_monotone`].
    pub fn new_monotone(kind: MapKind, cone: ConeRep, domain: DomainSpec) -> Result<Self> {
        let spec = Self::new(kind, cone, domain)?;
        verify_monotone(&spec, 1000, 0)?;
        Ok(spec)
    }

    pub fn kind(&self) -> &MapKind {
        &self.kind
    }

    pub fn cone(&self) -> &ConeRep {
        &self.cone
    }

    pub fn domain(&self) -> &DomainSpec {
        &self.domain
    }

    pub fn dim(&self) -> usize {
        self.cone.dim()
    }

    /// `f(x)`, without a domain check.
    pub fn apply(&self, x: &Point) -> Point {
        let mut v = x.to_dvector();
        for s in &self.steps {
            v = &s.a * v + &s.b;
        }
        Point::from_dvector(&v)
    }

    /// `f^{-1}(x)`, without a domain check.
    pub fn apply_inverse(&self, x: &Point) -> Point {
        let mut v = x.to_dvector();
        for s in self.steps.iter().rev() {
            v = &s.a_inv * (v - &s.b);
        }
        Point::from_dvector(&v)
    }

    /// Linear part `L` with `f(y) - f(x) = L (y - x)`.
    pub fn linear_part(&self) -> DMatrix<f64> {
        let d = self.dim();
        self.steps.iter().fold(DMatrix::identity(d, d), |acc, s| &s.a * acc)
    }

    /// The conjugate `g(v) = f(v + x) - x` on `Omega - x`.
    pub fn translated(&self, x: &Point) -> Result<MapSpec> {
        let kind = self.kind.translated(x.coords());
        let domain = self.domain.translated(&-x);
        MapSpec::new(kind, self.cone.clone(), domain)
    }
}

/// Checks `f(x) <=_C f(y)` for `x <=_C y`. For affine maps this is
/// `L C within C`; polyhedral cones are certified exactly on the
/// generators, second-order cones on `samples` random boundary rays.
pub fn verify_monotone(f: &MapSpec, samples: usize, seed: u64) -> Result<MonotoneCertificate> {
    const TOL: f64 = 1e-9;
    let l = f.linear_part();
    let cone = f.cone();
    let image = |w: &Point| Point::from_dvector(&(&l * w.to_dvector()));
    let witness = |dir: &Point| {
        let lower = f.domain().center(f.dim());
        let mut s = 1.0;
        while !f.domain().contains(&lower.axpy(s, dir)) {
            s *= 0.5;
        }
        DynamicsError::NotMonotone { upper: lower.axpy(s, dir), lower }
    };
    let fails = |w: &Point| -> Result<bool> {
        let iw = image(w);
        let scale = w.norm().max(1.0);
        Ok(cone.membership(&iw.scale(1.0 / scale), TOL)? == Membership::Outside)
    };
    match cone.kind() {
        ConeKind::Polyhedral => {
            for g in cone.generators() {
                if fails(g)? {
                    return Err(witness(g));
                }
            }
            Ok(MonotoneCertificate::Exact)
        }
        ConeKind::SecondOrder => {
            let axis = cone.axis().expect("axis").clone();
            let mut rng = rng_for(seed, 0);
            let mut checked = 0;
            if fails(&axis)? {
                return Err(witness(&axis));
            }
            while checked < samples {
                let r = unit_vector(&mut rng, f.dim());
                let v = r.axpy(-axis.inner(&r), &axis);
                let Some(vhat) = v.normalized() else { continue };
                let w = &axis + &vhat;
                if fails(&w)? {
                    return Err(witness(&w));
                }
                checked += 1;
            }
            Ok(MonotoneCertificate::Sampled { samples })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm3() -> MapKind {
        MapKind::Linear { matrix: vec![vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0], vec![1.0, 0.0, 0.0]] }
    }

    #[test]
    fn permutation_is_exactly_monotone() {
        let f = MapSpec::new(perm3(), ConeRep::orthant(3), DomainSpec::centered_box(3, 2.0)).unwrap();
        assert_eq!(verify_monotone(&f, 100, 1).unwrap(), MonotoneCertificate::Exact);
    }

    #[test]
    fn reflection_is_not_monotone() {
        let kind = MapKind::Linear { matrix: vec![vec![1.0, 0.0], vec![0.0, -1.0]] };
        let f = MapSpec::new(kind, ConeRep::orthant(2), DomainSpec::WholeSpace).unwrap();
        match verify_monotone(&f, 100, 1) {
            Err(DynamicsError::NotMonotone { lower, upper }) => {
                let dir = (&upper - &lower).normalized().unwrap();
                assert!(dir.distance(&Point::from([0.0, 1.0])) < 1e-15);
            }
            other => panic!("expected NotMonotone, got {other:?}"),
        }
    }

    #[test]
    fn lorentz_rotation_is_sampled_monotone() {
        let (c, s) = ((std::f64::consts::PI / 5.0).cos(), (std::f64::consts::PI / 5.0).sin());
        let kind = MapKind::Linear { matrix: vec![vec![1.0, 0.0, 0.0], vec![0.0, c, -s], vec![0.0, s, c]] };
        let f = MapSpec::new(kind, ConeRep::lorentz(3), DomainSpec::centered_ball(3, 2.0)).unwrap();
        assert_eq!(verify_monotone(&f, 500, 2).unwrap(), MonotoneCertificate::Sampled { samples: 500 });
    }

    #[test]
    fn inverse_round_trip() {
        let kind = MapKind::Composition {
            steps: vec![
                MapKind::Affine { matrix: vec![vec![2.0, 1.0], vec![0.0, 1.0]], translation: vec![0.5, -1.0] },
                MapKind::Linear { matrix: vec![vec![0.0, 1.0], vec![1.0, 0.0]] },
            ],
        };
        let f = MapSpec::new(kind, ConeRep::orthant(2), DomainSpec::WholeSpace).unwrap();
        let x = Point::from([0.3, -0.7]);
        assert!(f.apply_inverse(&f.apply(&x)).distance(&x) < 1e-14);
        // (2*0.3 - 0.7 + 0.5, -0.7 - 1) swapped
        assert!(f.apply(&x).distance(&Point::from([-1.7, 0.4])) < 1e-14);
    }

    #[test]
    fn rejects_bad_maps() {
        let sing = MapKind::Linear { matrix: vec![vec![1.0, 1.0], vec![1.0, 1.0]] };
        assert!(matches!(
            MapSpec::new(sing, ConeRep::orthant(2), DomainSpec::WholeSpace),
            Err(DynamicsError::Singular { .. })
        ));
        let expand = MapKind::Linear { matrix: vec![vec![3.0, 0.0], vec![0.0, 3.0]] };
        assert!(matches!(
            MapSpec::new(expand, ConeRep::orthant(2), DomainSpec::centered_box(2, 1.0)),
            Err(DynamicsError::DomainNotInvariant { .. })
        ));
        assert!(matches!(
            MapSpec::new(perm3(), ConeRep::orthant(2), DomainSpec::WholeSpace),
            Err(DynamicsError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn translation_conjugates() {
        let kind = MapKind::Affine { matrix: vec![vec![0.5, 0.0], vec![0.0, 2.0]], translation: vec![1.0, 0.0] };
        let f = MapSpec::new(kind, ConeRep::orthant(2), DomainSpec::WholeSpace).unwrap();
        let x = Point::from([0.4, -1.2]);
        let g = f.translated(&x).unwrap();
        let v = Point::from([1.5, 0.25]);
        let want = &f.apply(&(&v + &x)) - &x;
        assert!(g.apply(&v).distance(&want) < 1e-14);
    }

    #[test]
    fn serde_round_trip() {
        let f = MapSpec::new(perm3(), ConeRep::orthant(3), DomainSpec::centered_box(3, 2.0)).unwrap();
        let json = serde_json::to_string(&f).unwrap();
        let back: MapSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
    }
}
