//! Sampled property checks over a cone, its state space and a map. Each
//! check returns a [`LemmaCheck`] with its trial and failure counts.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cone::{ConeKind, ConeRep, Membership, StateSpace};
use crate::dynamics::{
    build_trap, detect_period, find_sandwich, probe_boundary_density, trap_invariance_check, MapSpec, SearchBudget,
};
use crate::frame::{
    membership_w, membership_w_slack, perturbation_radius, select_frame, simplicial_positivity_margin,
    BoundaryOpenSet, SimplicialDualCone,
};
use crate::linalg::sigma_min;
use crate::sampling::{in_ball, in_box, rng_for, unit_vector, SeededRng};
use crate::vector::{Functional, Point};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaCheck {
    pub name: String,
    pub passed: bool,
    pub trials: usize,
    pub failures: usize,
    /// Largest observed error metric (meaning depends on the check).
    pub worst: f64,
    pub detail: String,
}

impl LemmaCheck {
    fn new(name: &str, trials: usize, failures: usize, worst: f64, detail: String) -> Self {
        Self { name: name.to_string(), passed: failures == 0 && trials > 0, trials, failures, worst, detail }
    }

    fn error(name: &str, e: impl std::fmt::Display) -> Self {
        Self { name: name.to_string(), passed: false, trials: 0, failures: 1, worst: f64::NAN, detail: e.to_string() }
    }
}

/// Random pointed solid polyhedral cone in `R^d` spanned by `k >= d`
/// generators clustered around a random axis.
pub fn random_polyhedral_cone(rng: &mut SeededRng, d: usize, k: usize) -> ConeRep {
    loop {
        let axis = unit_vector(rng, d);
        let gens: Vec<Point> = (0..k.max(d))
            .map(|_| axis.axpy(0.9, &unit_vector(rng, d)).normalized().unwrap_or_else(|| axis.clone()))
            .collect();
        if let Ok(c) = ConeRep::from_generators(d, gens) {
            return c;
        }
    }
}

fn same_set(a: &[Point], b: &[Point], tol: f64) -> bool {
    a.len() == b.len() && a.iter().all(|p| b.iter().any(|q| p.distance(q) <= tol))
}

/// `C** = C`, with each dual recomputed from its generators by enumeration.
pub fn check_dual_involution(cone: &ConeRep) -> LemmaCheck {
    const NAME: &str = "dual_involution";
    if cone.kind() == ConeKind::SecondOrder {
        let ok = cone.dual() == *cone;
        return LemmaCheck::new(NAME, 1, usize::from(!ok), 0.0, "second-order cone is self-dual".into());
    }
    let d = cone.dim();
    let dual_of = |c: &ConeRep| ConeRep::from_generators(d, c.facets().iter().map(Functional::to_point).collect());
    let result = dual_of(cone).and_then(|dual| dual_of(&dual));
    match result {
        Ok(dd) => {
            let facets = |c: &ConeRep| c.facets().iter().map(Functional::to_point).collect::<Vec<_>>();
            let ok = same_set(cone.generators(), dd.generators(), 1e-9) && same_set(&facets(cone), &facets(&dd), 1e-9);
            LemmaCheck::new(NAME, 1, usize::from(!ok), 0.0, format!("{} generators", cone.generators().len()))
        }
        Err(e) => LemmaCheck::error(NAME, e),
    }
}

/// `sign h(x)` agrees with membership away from the boundary band, and
/// boundary projections have `h = 0`.
pub fn check_h_trichotomy(space: &StateSpace, n: usize, seed: u64, tol: f64) -> LemmaCheck {
    const NAME: &str = "h_trichotomy";
    let d = space.dim();
    let cone = space.cone();
    let mut rng = rng_for(seed, 0);
    let (lo, hi) = (Point::new(vec![-1.0; d]), Point::new(vec![1.0; d]));
    let mut failures = 0;
    let mut worst: f64 = 0.0;
    for _ in 0..n {
        let x = in_box(&mut rng, &lo, &hi);
        let (Ok(s), Ok(h)) = (cone.slack(&x), space.h(&x)) else { return LemmaCheck::error(NAME, "dimension") };
        let agrees = if s > tol {
            h > 0.0
        } else if s < -tol {
            h < 0.0
        } else {
            true
        };
        failures += usize::from(!agrees);
        let b = space.project_to_boundary(&x).expect("dimension checked");
        let hb = space.h(&b).expect("dimension checked");
        worst = worst.max(hb.abs());
        if hb.abs() > 1e-12 * (1.0 + b.norm()) || cone.membership(&b, tol) != Ok(Membership::Boundary) {
            failures += 1;
        }
    }
    LemmaCheck::new(NAME, n, failures, worst, "max |h| on projected boundary points".into())
}

/// `h(l x) = l h(x)` for `l > 0`.
pub fn check_h_homogeneity(space: &StateSpace, n: usize, seed: u64) -> LemmaCheck {
    let d = space.dim();
    let mut rng = rng_for(seed, 1);
    let mut failures = 0;
    let mut worst: f64 = 0.0;
    for _ in 0..n {
        let x = in_ball(&mut rng, &Point::zeros(d), 2.0);
        let l = rng.random_range(0.01..100.0);
        let (a, b) = (space.h(&x.scale(l)).unwrap(), l * space.h(&x).unwrap());
        let err = (a - b).abs() / (a.abs().max(b.abs()).max(f64::MIN_POSITIVE));
        worst = worst.max(err);
        failures += usize::from(err > 1e-12 && (a - b).abs() > 1e-15 * l);
    }
    LemmaCheck::new("h_homogeneity", n, failures, worst, "relative error".into())
}

/// Every vertex (or sampled boundary point) `phi` of the state space has a
/// witness `y` with `nu(l y) = {phi}` for `l` in `{0.5, 1, 2}` and every other
/// vertex strictly positive on `y`.
pub fn check_exposed_witnesses(space: &StateSpace, soc_samples: usize, tol: f64) -> LemmaCheck {
    const NAME: &str = "exposed_witness";
    let exposed = space.exposed_points(soc_samples);
    let mut failures = 0;
    let mut worst: f64 = 0.0;
    for phi in &exposed {
        let Some(y) = space.exposing_witness(phi, 1e-12) else {
            failures += 1;
            continue;
        };
        for l in [0.5, 1.0, 2.0] {
            match space.supporting_face(&y.scale(l), tol) {
                Ok(face) if face.is_singleton() => {
                    let e = face.vertices[0].distance(phi);
                    worst = worst.max(e);
                    failures += usize::from(e > 1e-12);
                }
                _ => failures += 1,
            }
        }
        let others_positive = space.vertices().iter().filter(|v| v.distance(phi) > 1e-12).all(|v| v.apply(&y) > tol);
        failures += usize::from(!others_positive);
    }
    LemmaCheck::new(NAME, exposed.len(), failures, worst, format!("{} exposed points", exposed.len()))
}

/// Perturbations of the frame within the computed radius stay independent
/// and keep the frame mean strictly positive.
pub fn check_perturbation_radius(space: &StateSpace, soc_samples: usize, n: usize, seed: u64) -> LemmaCheck {
    const NAME: &str = "perturbation_radius";
    let frame = match select_frame(space, soc_samples) {
        Ok(f) => f,
        Err(e) => return LemmaCheck::error(NAME, e),
    };
    let eps = match perturbation_radius(&frame) {
        Ok(e) => e,
        Err(e) => return LemmaCheck::error(NAME, e),
    };
    let d = space.dim();
    let mut rng = rng_for(seed, 2);
    let mut failures = 0;
    let mut worst = f64::INFINITY;
    for _ in 0..n {
        let phis: Vec<Functional> = frame
            .psis()
            .iter()
            .map(|p| &in_ball(&mut rng, &Point::zeros(d), eps).to_functional() + p)
            .collect();
        let k = SimplicialDualCone::new(phis).expect("square");
        let s = sigma_min(&k.matrix());
        match simplicial_positivity_margin(&k, frame.psi_bar()) {
            Ok(m) if s > 0.0 && m > 0.0 => worst = worst.min(m),
            _ => failures += 1,
        }
    }
    LemmaCheck::new(NAME, n, failures, worst, format!("eps = {eps:e}; worst is the smallest margin seen"))
}

/// Boundary points `x` of `W` stay in `W` under boundary perturbations
/// within the reported slack.
pub fn check_open_sets(
    space: &StateSpace,
    soc_samples: usize,
    n_points: usize,
    n_perturb: usize,
    seed: u64,
    tol: f64,
) -> LemmaCheck {
    const NAME: &str = "open_sets";
    let frame = match select_frame(space, soc_samples) {
        Ok(f) => f,
        Err(e) => return LemmaCheck::error(NAME, e),
    };
    let eps = match perturbation_radius(&frame) {
        Ok(e) => e,
        Err(e) => return LemmaCheck::error(NAME, e),
    };
    let d = space.dim();
    let mut rng = rng_for(seed, 3);
    let mut found = 0;
    let mut failures = 0;
    let mut smallest_delta = f64::INFINITY;
    let mut attempts = 0;
    while found < n_points && attempts < 1000 * n_points {
        attempts += 1;
        let i = attempts % d;
        let psi = &frame.psis()[i];
        let set = BoundaryOpenSet { center: psi.clone(), radius: eps };
        let Some(w) = space.exposing_witness(psi, 1e-12).and_then(|w| w.normalized()) else { continue };
        let jitter = rng.random_range(0.0..0.5);
        let dir = w.axpy(jitter, &unit_vector(&mut rng, d));
        let x = space.project_to_boundary(&dir).unwrap().scale(rng.random_range(0.5..2.0));
        if x.norm() <= 1e-3 || space.cone().membership(&x, tol) != Ok(Membership::Boundary) {
            continue;
        }
        let Ok(Some(delta)) = membership_w_slack(space, &set, &x, tol) else { continue };
        found += 1;
        smallest_delta = smallest_delta.min(delta);
        let mut checked = 0;
        let mut tries = 0;
        while checked < n_perturb && tries < 10_000 * n_perturb {
            tries += 1;
            let p = space.project_to_boundary(&in_ball(&mut rng, &x, delta)).unwrap();
            if p.distance(&x) >= delta {
                continue;
            }
            checked += 1;
            if !membership_w(space, &set, &p, tol).unwrap_or(false) {
                failures += 1;
            }
        }
        failures += n_perturb - checked;
    }
    failures += n_points - found;
    LemmaCheck::new(NAME, found * n_perturb, failures, smallest_delta, format!("{found} points in W; worst is the smallest slack"))
}

/// Round trip `f^{-1}(f(x)) = x` and order transport `x <= y => f(x) <= f(y)`.
pub fn check_homeomorphism(f: &MapSpec, n: usize, seed: u64, tol: f64) -> LemmaCheck {
    let d = f.dim();
    let cone = f.cone();
    let space = StateSpace::with_default_anchor(cone, tol).expect("default anchor is interior");
    let mut rng = rng_for(seed, 4);
    let mut failures = 0;
    let mut worst: f64 = 0.0;
    for _ in 0..n {
        let x = f.domain().sample(&mut rng, d);
        let back = f.apply_inverse(&f.apply(&x));
        let err = back.distance(&x) / (1.0 + x.norm());
        worst = worst.max(err);
        failures += usize::from(err > 1e-10);
        let c = space
            .project_to_boundary(&unit_vector(&mut rng, d))
            .unwrap()
            .axpy(rng.random::<f64>(), space.anchor());
        let y = x.axpy(rng.random::<f64>(), &c);
        let diff = &f.apply(&y) - &f.apply(&x);
        if cone.membership(&diff, tol * (1.0 + diff.norm())) == Ok(Membership::Outside) {
            failures += 1;
        }
    }
    LemmaCheck::new("homeomorphism", n, failures, worst, "worst relative round-trip error".into())
}

/// Order-interval traps around periodic points are mapped into themselves
/// by `f^p`.
pub fn check_traps(f: &MapSpec, n_points: usize, n_samples: usize, budget: &SearchBudget) -> LemmaCheck {
    let d = f.dim();
    let mut failures = 0;
    let mut details = Vec::new();
    for k in 0..n_points {
        let mut rng = rng_for(budget.seed, 100 + k as u64);
        let x = f.domain().sample_inner(&mut rng, d, 0.5);
        let mut point_budget = budget.clone();
        point_budget.seed = budget.seed.wrapping_add(k as u64);
        let result = detect_period(f, &x, budget.max_period, budget.tol)
            .and_then(|rec| {
                let (y, z) = find_sandwich(f, &x, &point_budget)?;
                let trap = build_trap(f, &rec, &y, &z, budget.tol)?;
                trap_invariance_check(f, trap.period, &trap, n_samples, point_budget.seed, budget.tol)
            });
        match result {
            Ok(check) if check.passed() => {}
            Ok(check) => {
                failures += 1;
                details.push(format!("point {k}: {check:?}"));
            }
            Err(e) => {
                failures += 1;
                details.push(format!("point {k}: {e}"));
            }
        }
    }
    LemmaCheck::new("trap_invariance", n_points, failures, 0.0, details.join("; "))
}

/// Boundary periodic points near sampled boundary points.
pub fn check_boundary_density(
    f: &MapSpec,
    space: &StateSpace,
    n_points: usize,
    eps: f64,
    budget: &SearchBudget,
) -> LemmaCheck {
    let d = f.dim();
    let mut failures = 0;
    let mut worst: f64 = 0.0;
    let mut details = Vec::new();
    let mut k = 0u64;
    let mut done = 0;
    while done < n_points && k < 100 * n_points as u64 {
        let mut rng = rng_for(budget.seed, 200 + k);
        k += 1;
        let x = f.domain().sample_inner(&mut rng, d, 0.25);
        let v = space.project_to_boundary(&x).unwrap();
        if v.norm() < 1e-3 || !f.domain().contains(&v) {
            continue;
        }
        done += 1;
        let mut b = budget.clone();
        b.seed = budget.seed.wrapping_add(k);
        match probe_boundary_density(f, space, &v, eps, &b) {
            Ok(p) => {
                worst = worst.max(p.fixed_residual).max(p.h.abs());
                if p.distance > eps * space.anchor().norm() {
                    failures += 1;
                    details.push(format!("point {done}: distance {:e}", p.distance));
                }
            }
            Err(e) => {
                failures += 1;
                details.push(format!("point {done}: {e}"));
            }
        }
    }
    failures += n_points - done;
    LemmaCheck::new("boundary_density", n_points, failures, worst, details.join("; "))
}
