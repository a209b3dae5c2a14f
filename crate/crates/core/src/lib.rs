//! Cone geometry, monotone maps and numerical periodicity certificates.
//!
//! A point `x` of a monotone homeomorphism `f` is certified periodic by
//! finding periodic points on `x + W_i` and `x - W_i`, where the `W_i` are
//! boundary sets whose supporting functionals stay close to a frame of
//! exposed points of the state space, and checking that the two resulting
//! simplicial cones pinch to `{0}`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod certifier;
pub mod cone;
pub mod dynamics;
pub mod frame;
pub mod lemmas;
pub mod linalg;
pub mod sampling;
pub mod vector;

pub use certifier::{
    certify_point, global_report, pinch_shadow_test, verify_pinch, Certificate, CertifyError, CertifyOptions,
    GlobalReport, PinchMargins, Tolerances,
};
pub use cone::{ConeKind, ConeRep, Face, GeometryError, Membership, OrderRelation, StateSpace};
pub use dynamics::{
    make_example_system, DomainSpec, DynamicsError, MapKind, MapSpec, OrbitRecord, SearchBudget, SystemName,
};
pub use frame::{BoundaryOpenSet, Frame, FrameError, SimplicialDualCone};
pub use vector::{Functional, Point};

/// Default tolerances.
pub mod defaults {
    /// Boundary band for membership and supporting faces.
    pub const GEOMETRIC_TOL: f64 = 1e-9;
    /// Residual bound for `|f^r(x) - x|`.
    pub const CERTIFICATION_TOL: f64 = 1e-9;
    /// Absolute periodicity residual used by period detection.
    pub const PERIOD_TOL: f64 = 1e-9;
    pub const MAX_PERIOD: u64 = 64;
}
