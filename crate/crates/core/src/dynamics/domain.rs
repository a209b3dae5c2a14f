use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::sampling::{in_ball, in_box};
use crate::vector::Point;

/// An open connected domain `Omega`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DomainSpec {
    WholeSpace,
    OpenBox { lo: Point, hi: Point },
    OpenBall { center: Point, radius: f64 },
}

impl DomainSpec {
    pub fn centered_box(dim: usize, half_width: f64) -> Self {
        DomainSpec::OpenBox {
            lo: Point::new(vec![-half_width; dim]),
            hi: Point::new(vec![half_width; dim]),
        }
    }

    pub fn centered_ball(dim: usize, radius: f64) -> Self {
        DomainSpec::OpenBall { center: Point::zeros(dim), radius }
    }

    /// Checks shape against `dim` and non-emptiness.
    pub fn validate(&self, dim: usize) -> Result<(), String> {
        match self {
            DomainSpec::WholeSpace => Ok(()),
            DomainSpec::OpenBox { lo, hi } => {
                if lo.dim() != dim || hi.dim() != dim {
                    return Err(format!("box corners must have dimension {dim}"));
                }
                if lo.coords().iter().zip(hi.coords()).any(|(l, h)| !(l < h) || !l.is_finite() || !h.is_finite()) {
                    return Err("box must satisfy lo < hi coordinate-wise".into());
                }
                Ok(())
            }
            DomainSpec::OpenBall { center, radius } => {
                if center.dim() != dim {
                    return Err(format!("ball center must have dimension {dim}"));
                }
                if !(*radius > 0.0) || !radius.is_finite() || !center.is_finite() {
                    return Err("ball radius must be positive and finite".into());
                }
                Ok(())
            }
        }
    }

    pub fn contains(&self, x: &Point) -> bool {
        match self {
            DomainSpec::WholeSpace => x.is_finite(),
            DomainSpec::OpenBox { lo, hi } => x
                .coords()
                .iter()
                .zip(lo.coords().iter().zip(hi.coords()))
                .all(|(v, (l, h))| l < v && v < h),
            DomainSpec::OpenBall { center, radius } => x.distance(center) < *radius,
        }
    }

    /// `Omega + shift`.
    pub fn translated(&self, shift: &Point) -> Self {
        match self {
            DomainSpec::WholeSpace => DomainSpec::WholeSpace,
            DomainSpec::OpenBox { lo, hi } => DomainSpec::OpenBox { lo: lo + shift, hi: hi + shift },
            DomainSpec::OpenBall { center, radius } => DomainSpec::OpenBall { center: center + shift, radius: *radius },
        }
    }

    /// A reference interior point.
    pub fn center(&self, dim: usize) -> Point {
        match self {
            DomainSpec::WholeSpace => Point::zeros(dim),
            DomainSpec::OpenBox { lo, hi } => (lo + hi).scale(0.5),
            DomainSpec::OpenBall { center, .. } => center.clone(),
        }
    }

    /// Uniform sample; the whole space is sampled on `[-1, 1]^d`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, dim: usize) -> Point {
        match self {
            DomainSpec::WholeSpace => in_box(rng, &Point::new(vec![-1.0; dim]), &Point::new(vec![1.0; dim])),
            DomainSpec::OpenBox { lo, hi } => loop {
                let x = in_box(rng, lo, hi);
                if self.contains(&x) {
                    return x;
                }
            },
            DomainSpec::OpenBall { center, radius } => in_ball(rng, center, *radius),
        }
    }

    /// Uniform sample of the sub-domain scaled by `shrink` about the center,
    /// which keeps samples away from the boundary.
    pub fn sample_inner<R: Rng + ?Sized>(&self, rng: &mut R, dim: usize, shrink: f64) -> Point {
        let c = self.center(dim);
        let x = self.sample(rng, dim);
        c.axpy(shrink, &(&x - &c))
    }
}
