use serde::{Deserialize, Serialize};

use super::{detect_period, iterate, DynamicsError, MapSpec, OrbitRecord, Result, SearchBudget, Side};
use crate::cone::ConeRep;
use crate::linalg::lcm;
use crate::sampling::{in_box, rng_for, unit_vector};
use crate::vector::Point;

/// Looks for a periodic point `base -/+ t (u + j)` on a geometric grid of
/// scales `t = t0 * ratio^k`. The first candidate at every scale is
/// unjittered. `accept` filters candidates before the period scan.
#[allow(clippy::too_many_arguments)]
pub(crate) fn search_periodic(
    f: &MapSpec,
    base: &Point,
    u: &Point,
    side: Side,
    t0: f64,
    budget: &SearchBudget,
    stream: u64,
    accept: impl Fn(&Point) -> Result<bool>,
) -> Result<Option<OrbitRecord>> {
    let d = f.dim();
    let sign = match side {
        Side::Lower => -1.0,
        Side::Upper => 1.0,
    };
    let mut rng = rng_for(budget.seed, stream);
    let mut t = t0;
    for _ in 0..budget.levels {
        for attempt in 0..budget.attempts_per_level.max(1) {
            let dir = if attempt == 0 {
                u.clone()
            } else {
                u.axpy(budget.jitter * u.norm(), &unit_vector(&mut rng, d))
            };
            let cand = base.axpy(sign * t, &dir);
            if !f.domain().contains(&cand) || !accept(&cand)? {
                continue;
            }
            match detect_period(f, &cand, budget.max_period, budget.tol) {
                Ok(rec) if rec.is_periodic() => return Ok(Some(rec)),
                Ok(_) | Err(DynamicsError::LeftDomain { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        t *= budget.ratio;
    }
    Ok(None)
}

/// Periodic `y <<_C x <<_C z`, searched along `x -/+ t (u + jitter)` with `u`
/// the cone's default anchor.
pub fn find_sandwich(f: &MapSpec, x: &Point, budget: &SearchBudget) -> Result<(OrbitRecord, OrbitRecord)> {
    if x.dim() != f.dim() {
        return Err(DynamicsError::DimensionMismatch { expected: f.dim() });
    }
    let cone = f.cone();
    let u = cone.default_anchor().normalized().expect("anchor is nonzero");
    let tol = budget.tol;
    let found = |side: Side, stream: u64| {
        search_periodic(f, x, &u, side, 1.0, budget, stream, |c| match side {
            Side::Lower => Ok(cone.strictly_below(c, x, tol)?),
            Side::Upper => Ok(cone.strictly_below(x, c, tol)?),
        })
    };
    let y = found(Side::Lower, 0)?;
    let z = found(Side::Upper, 1)?;
    match (y, z) {
        (Some(y), Some(z)) => Ok((y, z)),
        _ => Err(DynamicsError::SearchExhausted { attempts: 2 * budget.levels * budget.attempts_per_level.max(1) }),
    }
}

/// `U = intersection over k < s of the open intervals [f^{kp}(y), f^{kp}(z)]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrapNeighborhood {
    pub center: Point,
    pub period: u64,
    pub bounds: Vec<(Point, Point)>,
    pub s: u64,
}

impl TrapNeighborhood {
    pub fn contains(&self, cone: &ConeRep, y: &Point, tol: f64) -> Result<bool> {
        for (lo, hi) in &self.bounds {
            if !(cone.strictly_below(lo, y, tol)? && cone.strictly_below(y, hi, tol)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn build_trap(
    f: &MapSpec,
    x: &OrbitRecord,
    y: &OrbitRecord,
    z: &OrbitRecord,
    tol: f64,
) -> Result<TrapNeighborhood> {
    let (Some(p), Some(py), Some(pz)) = (x.period, y.period, z.period) else {
        return Err(DynamicsError::NotPeriodic);
    };
    let s = lcm(py as u128, pz as u128) as u64;
    let mut bounds = Vec::with_capacity(s as usize);
    let step = p as i64;
    let (mut lo, mut hi) = (y.base.clone(), z.base.clone());
    for k in 0..s {
        if k > 0 {
            lo = iterate(f, &lo, step)?;
            hi = iterate(f, &hi, step)?;
        }
        bounds.push((lo.clone(), hi.clone()));
    }
    let trap = TrapNeighborhood { center: x.base.clone(), period: p, bounds, s };
    if !trap.contains(f.cone(), &x.base, tol)? {
        return Err(DynamicsError::NotSandwiched);
    }
    Ok(trap)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum TrapCheck {
    Pass { samples: usize },
    Fail { witness: Point, image: Point },
}

impl TrapCheck {
    pub fn passed(&self) -> bool {
        matches!(self, TrapCheck::Pass { .. })
    }
}

/// Rejection-samples `n_samples` points of the trap from the bounding box of
/// its first interval and checks `f^p` maps each back into the trap.
pub fn trap_invariance_check(
    f: &MapSpec,
    p: u64,
    trap: &TrapNeighborhood,
    n_samples: usize,
    seed: u64,
    tol: f64,
) -> Result<TrapCheck> {
    let cone = f.cone();
    let (lo, hi) = &trap.bounds[0];
    let (blo, bhi) = cone.interval_bounding_box(lo, hi)?;
    let mut rng = rng_for(seed, 0);
    let mut accepted = 0;
    let max_draws = 1000 * n_samples.max(1);
    for _ in 0..max_draws {
        if accepted == n_samples {
            break;
        }
        let y = in_box(&mut rng, &blo, &bhi);
        if !f.domain().contains(&y) || !trap.contains(cone, &y, tol)? {
            continue;
        }
        accepted += 1;
        let image = match iterate(f, &y, p as i64) {
            Ok(v) => v,
            Err(DynamicsError::LeftDomain { .. }) => {
                return Ok(TrapCheck::Fail { image: f.apply(&y), witness: y });
            }
            Err(e) => return Err(e),
        };
        if !trap.contains(cone, &image, 0.0)? {
            return Ok(TrapCheck::Fail { witness: y, image });
        }
    }
    Ok(TrapCheck::Pass { samples: accepted })
}
