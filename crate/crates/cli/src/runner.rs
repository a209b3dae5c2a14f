use std::time::{Duration, Instant};

use conecert::certifier::{certify_point, global_report, CertifyOptions, GlobalEntry, GlobalReport, Outcome};
use conecert::dynamics::{probe_boundary_density, BoundaryProbe, DynamicsError};
use conecert::frame::DEFAULT_SOC_SAMPLES;
use conecert::lemmas::{
    check_boundary_density, check_dual_involution, check_exposed_witnesses, check_h_homogeneity,
    check_h_trichotomy, check_homeomorphism, check_open_sets, check_perturbation_radius, check_traps, LemmaCheck,
};
use conecert::sampling::{derive_seed, rng_for};
use conecert::Point;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::scenario::{Loaded, Scenario, Task, DEFAULT_DENSITY_EPS};

/// Derived seed for work item `stream` of task `task`.
fn next_seed(seed: u64, task: usize, stream: u64) -> u64 {
    derive_seed(seed ^ ((task as u64 + 1) << 48), stream)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DensityOutcome {
    Located { probe: Box<BoundaryProbe> },
    Failed { kind: String, reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityEntry {
    pub index: usize,
    pub v: Point,
    pub outcome: DensityOutcome,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum TaskResult {
    Lemmas { checks: Vec<LemmaCheck> },
    Certify { entries: Vec<GlobalEntry> },
    Density { entries: Vec<DensityEntry> },
    Global { report: GlobalReport },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskReport {
    pub task: String,
    pub passed: bool,
    pub summary: String,
    /// Wall-clock time; kept out of the JSON so reports are reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
    pub result: TaskResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub scenario: Scenario,
    pub tasks: Vec<TaskReport>,
    pub all_passed: bool,
    pub expected_fail: bool,
    pub exit_status: u8,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn options(loaded: &Loaded, seed: u64) -> CertifyOptions {
    let mut opts = CertifyOptions::with_seed(seed);
    opts.tolerances = loaded.scenario.tolerances.clone();
    opts
}

fn run_lemmas(loaded: &Loaded, k: usize, density_eps: Option<f64>) -> (bool, String, TaskResult) {
    let (f, space) = (&loaded.map, &loaded.space);
    let s = &loaded.scenario;
    let tol = s.tolerances.geometric;
    let seed = next_seed(s.seed, k, 0);
    let mut checks = vec![
        check_dual_involution(space.cone()),
        check_h_trichotomy(space, 1000, seed, tol),
        check_h_homogeneity(space, 1000, seed),
        check_exposed_witnesses(space, DEFAULT_SOC_SAMPLES, tol),
        check_perturbation_radius(space, DEFAULT_SOC_SAMPLES, 10_000, seed),
        check_open_sets(space, DEFAULT_SOC_SAMPLES, 20, 100, seed, tol),
        check_homeomorphism(f, 1000, seed, tol),
    ];
    if s.map.expected_periodic {
        let budget = options(loaded, seed).budget;
        checks.push(check_traps(f, 10, 1000, &budget));
        checks.push(check_boundary_density(f, space, 20, density_eps.unwrap_or(DEFAULT_DENSITY_EPS), &budget));
    }
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    let summary = if failed.is_empty() {
        format!("{} checks passed", checks.len())
    } else {
        format!("{} of {} checks failed: {}", failed.len(), checks.len(), failed.join(", "))
    };
    (failed.is_empty(), summary, TaskResult::Lemmas { checks })
}

fn run_certify(loaded: &Loaded, k: usize, points: &[Point]) -> (bool, String, TaskResult) {
    let s = &loaded.scenario;
    let entries: Vec<GlobalEntry> = points
        .par_iter()
        .enumerate()
        .map(|(index, point)| {
            let opts = options(loaded, next_seed(s.seed, k, index as u64));
            let outcome = match certify_point(&loaded.map, &loaded.space, point, &opts) {
                Ok(c) => Outcome::Certified { certificate: Box::new(c) },
                Err(e) => Outcome::Failed { kind: e.kind().to_string(), reason: e.to_string() },
            };
            GlobalEntry { index, point: point.clone(), outcome }
        })
        .collect();
    let certified = entries.iter().filter(|e| e.certificate().is_some()).count();
    let rs: Vec<String> = entries.iter().filter_map(|e| e.certificate().map(|c| c.r.to_string())).collect();
    let summary = format!("{certified}/{} certified; r = [{}]", entries.len(), rs.join(", "));
    (certified == entries.len() && !entries.is_empty(), summary, TaskResult::Certify { entries })
}

fn run_density(loaded: &Loaded, k: usize, points: &[Point], eps: f64) -> (bool, String, TaskResult) {
    let s = &loaded.scenario;
    let entries: Vec<DensityEntry> = points
        .par_iter()
        .enumerate()
        .map(|(index, v)| {
            let mut budget = options(loaded, next_seed(s.seed, k, index as u64)).budget;
            budget.tol = s.tolerances.certification;
            let outcome = match probe_boundary_density(&loaded.map, &loaded.space, v, eps, &budget) {
                Ok(p) => DensityOutcome::Located { probe: Box::new(p) },
                Err(e) => {
                    let kind = match &e {
                        DynamicsError::SqueezeFailed { .. } => "SqueezeFailed",
                        DynamicsError::LocatorFailed { .. } => "LocatorFailed",
                        _ => "Dynamics",
                    };
                    DensityOutcome::Failed { kind: kind.to_string(), reason: e.to_string() }
                }
            };
            DensityEntry { index, v: v.clone(), outcome }
        })
        .collect();
    let located = entries.iter().filter(|e| matches!(e.outcome, DensityOutcome::Located { .. })).count();
    let summary = format!("{located}/{} boundary points located", entries.len());
    (located == entries.len() && !entries.is_empty(), summary, TaskResult::Density { entries })
}

fn run_global(loaded: &Loaded, k: usize, n: usize) -> (bool, String, TaskResult) {
    let s = &loaded.scenario;
    let opts = options(loaded, next_seed(s.seed, k, 0));
    let report = global_report(&loaded.map, &loaded.space, n, &opts);
    let certified = report.certified().count();
    let residual_ok = report.fresh_max_residual.is_some_and(|r| r <= s.tolerances.certification);
    let divides = s.map.global_period.is_none_or(|p| report.n != 0 && p % report.n == 0);
    let passed = !report.vacuous && certified == n && residual_ok && divides;
    let summary = format!(
        "{certified}/{n} certified; N = {}{}; fresh max residual = {}",
        report.n,
        if report.vacuous { " (vacuous)" } else { "" },
        report.fresh_max_residual.map_or("n/a".to_string(), |r| format!("{r:e}")),
    );
    (passed, summary, TaskResult::Global { report })
}

/// Runs every task in order. The exit status is 0 when all tasks pass, or
/// when the scenario expects failure and at least one task failed.
pub fn run(loaded: &Loaded) -> RunReport {
    let mut tasks = Vec::new();
    for (k, task) in loaded.scenario.tasks.iter().enumerate() {
        let start = Instant::now();
        let (passed, summary, result) = match task {
            Task::VerifyLemmas { density_eps } => run_lemmas(loaded, k, *density_eps),
            Task::Certify { points } => run_certify(loaded, k, points),
            Task::ProbeDensity { points, eps } => run_density(loaded, k, points, *eps),
            Task::GlobalReport { n } => run_global(loaded, k, *n),
        };
        tasks.push(TaskReport { task: task.label().to_string(), passed, summary, elapsed: start.elapsed(), result });
    }
    let all_passed = tasks.iter().all(|t| t.passed);
    let expected_fail = loaded.scenario.expected_fail;
    let exit_status = if all_passed != expected_fail { 0 } else { 1 };
    RunReport { scenario: loaded.scenario.clone(), tasks, all_passed, expected_fail, exit_status }
}

/// Seeded sample of `n` points of the domain, used by the demos.
pub fn sample_points(loaded: &Loaded, n: usize) -> Vec<Point> {
    let f = &loaded.map;
    (0..n)
        .map(|i| {
            let mut rng = rng_for(loaded.scenario.seed, 1000 + i as u64);
            f.domain().sample_inner(&mut rng, f.dim(), 0.5)
        })
        .collect()
}
