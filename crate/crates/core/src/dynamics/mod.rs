//! Monotone homeomorphisms, periodic orbits, order-interval traps around
//! periodic points and the boundary density probe.

mod density;
mod domain;
mod map;
mod orbit;
mod systems;
mod trap;

pub use density::{probe_boundary_density, BoundaryProbe};
pub use domain::DomainSpec;
pub use map::{verify_monotone, MapKind, MapSpec, MonotoneCertificate};
pub use orbit::{detect_period, iterate, OrbitRecord};
pub use systems::{make_example_system, ExampleSystem, SystemName};
pub use trap::{build_trap, find_sandwich, trap_invariance_check, TrapCheck, TrapNeighborhood};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cone::GeometryError;
use crate::vector::Point;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynamicsError {
    #[error("dimension mismatch: expected {expected}")]
    DimensionMismatch { expected: usize },
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("matrix is singular (det = {det:e})")]
    Singular { det: f64 },
    #[error("map does not send the domain into itself (witness {witness:?})")]
    DomainNotInvariant { witness: Point },
    #[error("map is not monotone: {lower:?} <= {upper:?} but images are not ordered")]
    NotMonotone { lower: Point, upper: Point },
    #[error("orbit left the domain at step {step}")]
    LeftDomain { step: i64 },
    #[error("periodic point search exhausted after {attempts} candidates")]
    SearchExhausted { attempts: usize },
    #[error("base point is not periodic")]
    NotPeriodic,
    #[error("point is not strictly inside the order interval of its sandwich")]
    NotSandwiched,
    #[error("no periodic point found on the {side} side of the boundary point")]
    SqueezeFailed { side: Side },
    #[error("no boundary fixed point located (residual {residual:e}, h {h:e})")]
    LocatorFailed { residual: f64, h: f64 },
    #[error("bad example parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

pub type Result<T> = std::result::Result<T, DynamicsError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Lower,
    Upper,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Lower => "lower",
            Side::Upper => "upper",
        })
    }
}

/// Parameters of the randomized periodic-point searches.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub seed: u64,
    /// Largest period scanned by `detect_period`.
    pub max_period: u64,
    /// Absolute periodicity residual.
    pub tol: f64,
    /// Number of scales in the geometric grid.
    pub levels: usize,
    /// Jittered candidates tried per scale (the first one is unjittered).
    pub attempts_per_level: usize,
    /// Ratio between consecutive scales.
    pub ratio: f64,
    /// Relative size of the random jitter added to the search direction.
    pub jitter: f64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            seed: 0,
            max_period: crate::defaults::MAX_PERIOD,
            tol: crate::defaults::PERIOD_TOL,
            levels: 12,
            attempts_per_level: 4,
            ratio: 0.5,
            jitter: 0.1,
        }
    }
}

impl SearchBudget {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }
}
