//! Single-point periodicity certificates built from boundary periodic points
//! and two simplicial functional frames, plus sampled global reports.

mod certificate;
mod global;
mod pinch;

pub use certificate::{certify_point, BoundaryWitness, CertFrame, Certificate, Check, ValidationReport};
pub use global::{global_report, sample_point, GlobalEntry, GlobalReport, Outcome};
pub use pinch::{pinch_shadow_test, verify_pinch, PinchMargins, ShadowReport};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cone::GeometryError;
use crate::dynamics::{DynamicsError, SearchBudget, Side};
use crate::frame::{FrameError, DEFAULT_SOC_SAMPLES};

/// Largest certified period; `lcm` values beyond it are reported as overflow.
pub const MAX_PERIOD: u128 = 1 << 62;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub geometric: f64,
    pub certification: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { geometric: crate::defaults::GEOMETRIC_TOL, certification: crate::defaults::CERTIFICATION_TOL }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertifyOptions {
    pub budget: SearchBudget,
    pub tolerances: Tolerances,
    pub soc_samples: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self { budget: SearchBudget::default(), tolerances: Tolerances::default(), soc_samples: DEFAULT_SOC_SAMPLES }
    }
}

impl CertifyOptions {
    pub fn with_seed(seed: u64) -> Self {
        Self { budget: SearchBudget::with_seed(seed), ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CertifyError {
    #[error("no periodic point found in the {side} boundary set W_{i}")]
    BoundaryPeriodicSearchFailed { i: usize, side: Side },
    #[error("pinch margins are not positive: {0:?}")]
    PinchDegenerate(PinchMargins),
    #[error("residual {value:e} exceeds the certification tolerance")]
    ResidualTooLarge { value: f64, certificate: Box<Certificate> },
    #[error("period lcm exceeds 2^62")]
    PeriodOverflow,
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
}

impl From<GeometryError> for CertifyError {
    fn from(e: GeometryError) -> Self {
        CertifyError::Dynamics(DynamicsError::Geometry(e))
    }
}

impl CertifyError {
    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            CertifyError::BoundaryPeriodicSearchFailed { .. } => "BoundaryPeriodicSearchFailed",
            CertifyError::PinchDegenerate(_) => "PinchDegenerate",
            CertifyError::ResidualTooLarge { .. } => "ResidualTooLarge",
            CertifyError::PeriodOverflow => "PeriodOverflow",
            CertifyError::Frame(_) => "Frame",
            CertifyError::Dynamics(_) => "Dynamics",
        }
    }
}

pub type Result<T> = std::result::Result<T, CertifyError>;

/// `lcm` of all periods, checked against [`MAX_PERIOD`].
pub fn period_lcm(periods: impl IntoIterator<Item = u64>) -> Result<u64> {
    let mut acc: u128 = 1;
    for p in periods {
        acc = crate::linalg::lcm(acc, p as u128);
        if acc > MAX_PERIOD {
            return Err(CertifyError::PeriodOverflow);
        }
    }
    Ok(acc as u64)
}
