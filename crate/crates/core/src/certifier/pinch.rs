use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::frame::{simplicial_positivity_margin, FrameError, SimplicialDualCone};
use crate::linalg::sigma_min;
use crate::sampling::rng_for;
use crate::vector::{Functional, Point};

/// Independence and positivity margins of the two functional frames.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PinchMargins {
    pub sigma_min_rho: f64,
    pub sigma_min_sigma: f64,
    pub margin_rho: f64,
    pub margin_sigma: f64,
}

impl PinchMargins {
    pub fn valid(&self) -> bool {
        self.min() > 0.0
    }

    pub fn min(&self) -> f64 {
        self.sigma_min_rho.min(self.sigma_min_sigma).min(self.margin_rho).min(self.margin_sigma)
    }
}

/// With `K1' = {rho_i >= 0}` and `K2' = {sigma_i >= 0}`, `psi` strictly
/// positive on both forces `K1' ∩ (-K2') = {0}`.
pub fn verify_pinch(
    rhos: &[Functional],
    sigmas: &[Functional],
    psi: &Functional,
) -> Result<PinchMargins, FrameError> {
    let k1 = SimplicialDualCone::new(rhos.to_vec())?;
    let k2 = SimplicialDualCone::new(sigmas.to_vec())?;
    let margin_rho = simplicial_positivity_margin(&k1, psi)?;
    let margin_sigma = simplicial_positivity_margin(&k2, psi)?;
    Ok(PinchMargins {
        sigma_min_rho: sigma_min(&k1.matrix()),
        sigma_min_sigma: sigma_min(&k2.matrix()),
        margin_rho,
        margin_sigma,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShadowReport {
    pub samples: usize,
    /// Samples that fell in both `K1'` and `-K2'`.
    pub hits: usize,
    /// Hits with `|y| > rel_tol * scale`.
    pub violations: usize,
    pub max_hit_norm: f64,
    /// Smallest relative distance `max_i sigma_i(y) / |y|` seen for `y` in
    /// `K1'` (and symmetrically for `-K2'`); positive when no sample hit.
    pub min_separation: f64,
}

impl ShadowReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Brute-force shadow of `S_1 ∩ S_2 = {0}`: samples nonnegative combinations
/// of random subsets of the extreme rays of `K1'` (faces included) and of
/// `-K2'`, and counts samples lying in the other cone.
pub fn pinch_shadow_test(
    rhos: &[Functional],
    sigmas: &[Functional],
    n_samples: usize,
    seed: u64,
    rel_tol: f64,
) -> Result<ShadowReport, FrameError> {
    let k1 = SimplicialDualCone::new(rhos.to_vec())?;
    let k2 = SimplicialDualCone::new(sigmas.to_vec())?;
    let rays1 = k1.rays()?;
    let rays2: Vec<Point> = k2.rays()?.iter().map(|r| -r).collect();
    let scale = rays1.iter().chain(&rays2).map(Point::norm).fold(0.0, f64::max);
    let mut rng = rng_for(seed, 0);
    let mut report = ShadowReport {
        samples: n_samples,
        hits: 0,
        violations: 0,
        max_hit_norm: 0.0,
        min_separation: f64::INFINITY,
    };
    let d = rhos.len();
    for k in 0..n_samples {
        // alternate between the two cones
        let (rays, other, flip) = if k % 2 == 0 { (&rays1, sigmas, -1.0) } else { (&rays2, rhos, 1.0) };
        let mut y = Point::zeros(d);
        let mut used = 0;
        for r in rays.iter() {
            if rng.random_bool(0.5) {
                y = y.axpy(rng.random::<f64>(), r);
                used += 1;
            }
        }
        if used == 0 {
            y = rays[rng.random_range(0..d)].scale(rng.random::<f64>());
        }
        let n = y.norm();
        if n == 0.0 {
            continue;
        }
        // y in -K2' iff sigma_i(y) <= 0; y in K1' iff rho_i(y) >= 0
        let sep = other.iter().map(|f| -flip * f.apply(&y)).fold(f64::NEG_INFINITY, f64::max) / n;
        report.min_separation = report.min_separation.min(sep);
        if sep <= 0.0 {
            report.hits += 1;
            report.max_hit_norm = report.max_hit_norm.max(n);
            if n > rel_tol * scale {
                report.violations += 1;
            }
        }
    }
    Ok(report)
}
