//! Named example systems used by tests, the benchmarks and the CLI demos.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{DomainSpec, DynamicsError, MapKind, MapSpec, Result};
use crate::cone::ConeRep;

/// Half-width of the default box domain / radius of the default ball domain.
pub const DEFAULT_DOMAIN_SIZE: f64 = 4.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case", deny_unknown_fields)]
pub enum SystemName {
    /// Coordinate permutation on the orthant; `sigma` is 1-based, `x'_i = x_{sigma(i)}`.
    OrthantPermutation { sigma: Vec<usize> },
    /// Rotation of the Lorentz cone in `R^3` by `num/den` of a full turn about its axis.
    LorentzRotation { num: i64, den: u64 },
    /// Positive diagonal scaling of the orthant.
    DiagonalScaling { lambdas: Vec<f64> },
    /// `x -> c x` on the orthant of `R^dim`.
    Contraction { factor: f64, dim: usize },
    /// Lorentz rotation by `turns` of a full turn, meant for irrational values.
    IrrationalRotation { turns: f64 },
}

impl fmt::Display for SystemName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SystemName::OrthantPermutation { sigma } => write!(f, "orthant_permutation({sigma:?})"),
            SystemName::LorentzRotation { num, den } => write!(f, "lorentz_rotation({num}/{den})"),
            SystemName::DiagonalScaling { lambdas } => write!(f, "diagonal_scaling({lambdas:?})"),
            SystemName::Contraction { factor, dim } => write!(f, "contraction({factor}, d={dim})"),
            SystemName::IrrationalRotation { turns } => write!(f, "irrational_rotation({turns})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExampleSystem {
    pub name: SystemName,
    pub map: MapSpec,
    pub expected_periodic: bool,
    /// Known order of `f` when it is periodic.
    pub global_period: Option<u64>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn rotation_matrix(angle: f64) -> Vec<Vec<f64>> {
    let snap = crate::cone::snap_unit;
    let (c, s) = (snap(angle.cos()), snap(angle.sin()));
    vec![vec![1.0, 0.0, 0.0], vec![0.0, c, -s], vec![0.0, s, c]]
}

pub fn make_example_system(name: &SystemName) -> Result<ExampleSystem> {
    let bad = |m: &str| DynamicsError::BadParams(m.to_string());
    let (map, expected_periodic, global_period) = match name {
        SystemName::OrthantPermutation { sigma } => {
            let d = sigma.len();
            let mut seen = vec![false; d];
            for &s in sigma {
                if s == 0 || s > d || std::mem::replace(&mut seen[s - 1], true) {
                    return Err(bad("sigma must be a permutation of 1..=d"));
                }
            }
            let matrix = (0..d)
                .map(|i| (0..d).map(|j| if sigma[i] - 1 == j { 1.0 } else { 0.0 }).collect())
                .collect();
            // order = lcm of cycle lengths
            let mut order = 1u64;
            let mut visited = vec![false; d];
            for start in 0..d {
                let mut len = 0u64;
                let mut i = start;
                while !visited[i] {
                    visited[i] = true;
                    i = sigma[i] - 1;
                    len += 1;
                }
                if len > 0 {
                    order = order / gcd(order, len) * len;
                }
            }
            let map = MapSpec::new(
                MapKind::Linear { matrix },
                ConeRep::orthant(d),
                DomainSpec::centered_box(d, DEFAULT_DOMAIN_SIZE),
            )?;
            (map, true, Some(order))
        }
        SystemName::LorentzRotation { num, den } => {
            if *den == 0 {
                return Err(bad("denominator must be positive"));
            }
            let n = num.rem_euclid(*den as i64) as u64;
            let period = *den / gcd(n, *den);
            let angle = 2.0 * PI * n as f64 / *den as f64;
            let map = MapSpec::new(
                MapKind::Linear { matrix: rotation_matrix(angle) },
                ConeRep::lorentz(3),
                DomainSpec::centered_ball(3, DEFAULT_DOMAIN_SIZE),
            )?;
            (map, true, Some(period))
        }
        SystemName::DiagonalScaling { lambdas } => {
            if lambdas.is_empty() || lambdas.iter().any(|l| !(*l > 0.0) || !l.is_finite()) {
                return Err(bad("scaling factors must be positive"));
            }
            let d = lambdas.len();
            let matrix = (0..d)
                .map(|i| (0..d).map(|j| if i == j { lambdas[i] } else { 0.0 }).collect())
                .collect();
            let map = MapSpec::new(MapKind::Linear { matrix }, ConeRep::orthant(d), DomainSpec::WholeSpace)?;
            let identity = lambdas.iter().all(|l| *l == 1.0);
            (map, identity, identity.then_some(1))
        }
        SystemName::Contraction { factor, dim } => {
            if !(*factor > 0.0 && *factor < 1.0) || *dim == 0 {
                return Err(bad("contraction factor must lie in (0, 1) and dim >= 1"));
            }
            let d = *dim;
            let matrix = (0..d)
                .map(|i| (0..d).map(|j| if i == j { *factor } else { 0.0 }).collect())
                .collect();
            let map = MapSpec::new(
                MapKind::Linear { matrix },
                ConeRep::orthant(d),
                DomainSpec::centered_ball(d, DEFAULT_DOMAIN_SIZE),
            )?;
            (map, false, None)
        }
        SystemName::IrrationalRotation { turns } => {
            if !turns.is_finite() {
                return Err(bad("rotation must be finite"));
            }
            let map = MapSpec::new(
                MapKind::Linear { matrix: rotation_matrix(2.0 * PI * turns) },
                ConeRep::lorentz(3),
                DomainSpec::centered_ball(3, DEFAULT_DOMAIN_SIZE),
            )?;
            (map, false, None)
        }
    };
    Ok(ExampleSystem { name: name.clone(), map, expected_periodic, global_period })
}

impl SystemName {
    pub fn identity(dim: usize) -> Self {
        SystemName::OrthantPermutation { sigma: (1..=dim).collect() }
    }

    /// Turn parameter used for the irrational rotation negative control:
    /// a rotation angle of sqrt(2) radians.
    pub fn sqrt2_rotation() -> Self {
        SystemName::IrrationalRotation { turns: std::f64::consts::SQRT_2 / (2.0 * PI) }
    }
}
