use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{certify_point, period_lcm, Certificate, CertifyOptions};
use crate::cone::StateSpace;
use crate::dynamics::{iterate, MapSpec};
use crate::sampling::{derive_seed, rng_for};
use crate::vector::Point;

/// Sampled points are drawn from the domain shrunk by this factor about its
/// center, away from the domain boundary.
pub const SAMPLE_SHRINK: f64 = 0.5;

const CERTIFY_STREAM: u64 = 1 << 32;
const FRESH_STREAM: u64 = 2 << 32;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Certified { certificate: Box<Certificate> },
    Failed { kind: String, reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GlobalEntry {
    pub index: usize,
    pub point: Point,
    pub outcome: Outcome,
}

impl GlobalEntry {
    pub fn certificate(&self) -> Option<&Certificate> {
        match &self.outcome {
            Outcome::Certified { certificate } => Some(certificate),
            Outcome::Failed { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GlobalReport {
    pub entries: Vec<GlobalEntry>,
    /// Candidate global period: lcm of the certified `r`; 1 when nothing was certified.
    pub n: u64,
    /// True when no entry was certified, so `n` claims nothing.
    pub vacuous: bool,
    pub fresh_samples: usize,
    /// `max |f^n(x) - x|` over the fresh sample; absent when vacuous.
    pub fresh_max_residual: Option<f64>,
}

impl GlobalReport {
    pub fn certified(&self) -> impl Iterator<Item = &Certificate> {
        self.entries.iter().filter_map(GlobalEntry::certificate)
    }
}

/// Point `index` of a seeded sample of the (shrunk) domain.
pub fn sample_point(f: &MapSpec, seed: u64, stream: u64) -> Point {
    let mut rng = rng_for(seed, stream);
    f.domain().sample_inner(&mut rng, f.dim(), SAMPLE_SHRINK)
}

/// Certifies `n_points` seeded random points in parallel, then re-checks
/// `f^N = id` on a disjoint fresh sample of the same size. Output order and
/// content do not depend on the thread count.
pub fn global_report(f: &MapSpec, space: &StateSpace, n_points: usize, opts: &CertifyOptions) -> GlobalReport {
    let seed = opts.budget.seed;
    let entries: Vec<GlobalEntry> = (0..n_points)
        .into_par_iter()
        .map(|index| {
            let point = sample_point(f, seed, index as u64);
            let mut point_opts = opts.clone();
            point_opts.budget.seed = derive_seed(seed, CERTIFY_STREAM + index as u64);
            let outcome = match certify_point(f, space, &point, &point_opts) {
                Ok(c) => Outcome::Certified { certificate: Box::new(c) },
                Err(e) => Outcome::Failed { kind: e.kind().to_string(), reason: e.to_string() },
            };
            GlobalEntry { index, point, outcome }
        })
        .collect();

    let certified: Vec<u64> = entries.iter().filter_map(|e| e.certificate().map(|c| c.r)).collect();
    let vacuous = certified.is_empty();
    let (n, overflow) = match period_lcm(certified) {
        Ok(n) => (n, false),
        Err(_) => (0, true),
    };
    let fresh_max_residual = (!vacuous && !overflow).then(|| {
        (0..n_points)
            .into_par_iter()
            .map(|j| {
                let x = sample_point(f, seed, FRESH_STREAM + j as u64);
                iterate(f, &x, n as i64).map(|y| y.distance(&x)).unwrap_or(f64::INFINITY)
            })
            .collect::<Vec<f64>>()
            .into_iter()
            .fold(0.0, f64::max)
    });
    GlobalReport { entries, n, vacuous, fresh_samples: n_points, fresh_max_residual }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{make_example_system, SystemName};

    fn report(name: SystemName, n: usize) -> GlobalReport {
        let e = make_example_system(&name).unwrap();
        let s = StateSpace::with_default_anchor(e.map.cone(), 1e-9).unwrap();
        global_report(&e.map, &s, n, &CertifyOptions::with_seed(11))
    }

    #[test]
    fn identity_period_one() {
        let r = report(SystemName::identity(2), 10);
        assert_eq!(r.n, 1);
        assert!(!r.vacuous);
        assert_eq!(r.fresh_max_residual, Some(0.0));
        assert_eq!(r.certified().count(), 10);
    }

    #[test]
    fn permutation_period_three() {
        let r = report(SystemName::OrthantPermutation { sigma: vec![2, 3, 1] }, 10);
        assert_eq!(r.n, 3);
        assert!(r.fresh_max_residual.unwrap() <= 1e-12);
        assert!(r.certified().all(|c| 3 % c.r == 0));
    }

    #[test]
    fn contraction_is_vacuous() {
        let r = report(SystemName::Contraction { factor: 0.5, dim: 2 }, 10);
        assert!(r.vacuous);
        assert_eq!(r.n, 1);
        assert_eq!(r.fresh_max_residual, None);
        for e in &r.entries {
            match &e.outcome {
                Outcome::Failed { kind, .. } => assert_eq!(kind, "BoundaryPeriodicSearchFailed"),
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn independent_of_thread_count() {
        let e = make_example_system(&SystemName::LorentzRotation { num: 1, den: 5 }).unwrap();
        let s = StateSpace::with_default_anchor(e.map.cone(), 1e-9).unwrap();
        let opts = CertifyOptions::with_seed(5);
        let run = |threads| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            pool.install(|| serde_json::to_string(&global_report(&e.map, &s, 6, &opts)).unwrap())
        };
        assert_eq!(run(1), run(4));
    }
}
