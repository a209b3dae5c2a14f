use serde::{Deserialize, Serialize};

use super::{period_lcm, verify_pinch, CertifyError, CertifyOptions, PinchMargins, Result, Tolerances};
use crate::cone::StateSpace;
use crate::dynamics::{detect_period, iterate, verify_monotone, DynamicsError, MapSpec, OrbitRecord, SearchBudget, Side};
use crate::frame::{membership_w, perturbation_radius, select_frame, BoundaryOpenSet, Frame};
use crate::sampling::{rng_for, unit_vector};
use crate::vector::{mean_functional, Functional, Point};

/// The frame part of a certificate: exposed points, their mean and the
/// common radius of the neighbourhoods `U_i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertFrame {
    pub psis: Vec<Functional>,
    pub psi_bar: Functional,
    pub radius: f64,
}

/// A periodic point on `x -/+ boundary of C` with its supporting functional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryWitness {
    pub point: Point,
    pub period: u64,
    pub functional: Functional,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub base: Point,
    pub frame: CertFrame,
    /// `x_i` with `rho_i`.
    pub lower: Vec<BoundaryWitness>,
    /// `z_i` with `sigma_i`.
    pub upper: Vec<BoundaryWitness>,
    pub margins: PinchMargins,
    pub r: u64,
    /// `|f^r(x) - x|`
    pub residual: f64,
    /// Least `p <= r` with `|f^p(x) - x|` within the certification tolerance.
    pub minimal_period: Option<u64>,
    pub tolerances: Tolerances,
    pub map: MapSpec,
    pub anchor: Point,
}

#[allow(clippy::too_many_arguments)]
fn boundary_periodic(
    g: &MapSpec,
    space: &StateSpace,
    set: &BoundaryOpenSet,
    witness: &Point,
    side: Side,
    budget: &SearchBudget,
    tol: f64,
    stream: u64,
) -> Result<Option<(OrbitRecord, Functional)>> {
    let d = g.dim();
    let sign = match side {
        Side::Lower => -1.0,
        Side::Upper => 1.0,
    };
    let w = witness.normalized().expect("witness is nonzero");
    let mut rng = rng_for(budget.seed, stream);
    let mut t = 1.0;
    for _ in 0..budget.levels {
        for attempt in 0..budget.attempts_per_level.max(1) {
            let dir = if attempt == 0 { w.clone() } else { w.axpy(budget.jitter, &unit_vector(&mut rng, d)) };
            let Some(c) = space.project_to_boundary(&dir)?.normalized() else { continue };
            if space.cone().membership(&c, tol)? != crate::cone::Membership::Boundary {
                continue;
            }
            if !membership_w(space, set, &c, tol).map_err(CertifyError::Frame)? {
                continue;
            }
            let cand = c.scale(sign * t);
            if !g.domain().contains(&cand) {
                continue;
            }
            match detect_period(g, &cand, budget.max_period, budget.tol) {
                Ok(rec) if rec.is_periodic() => {
                    let face = space.supporting_face(&c.scale(t), tol)?;
                    return Ok(Some((rec, face.closest_to(&set.center))));
                }
                Ok(_) | Err(DynamicsError::LeftDomain { .. }) => {}
                Err(e) => return Err(e.into()),
            }
        }
        t *= budget.ratio;
    }
    Ok(None)
}

/// Certifies that `x` is periodic: finds periodic points on `x + W_i` and
/// `x - W_i`, checks the two functional frames pinch, and verifies
/// `f^r(x) = x` for `r` the lcm of the `2d` periods.
pub fn certify_point(f: &MapSpec, space: &StateSpace, x: &Point, opts: &CertifyOptions) -> Result<Certificate> {
    let d = f.dim();
    if x.dim() != d || space.dim() != d {
        return Err(DynamicsError::DimensionMismatch { expected: d }.into());
    }
    if !f.domain().contains(x) {
        return Err(DynamicsError::LeftDomain { step: 0 }.into());
    }
    let tol = opts.tolerances.geometric;
    let g = f.translated(x)?;
    let frame = select_frame(space, opts.soc_samples)?;
    let eps = perturbation_radius(&frame)?;

    let mut lower = Vec::with_capacity(d);
    let mut upper = Vec::with_capacity(d);
    for (i, psi) in frame.psis().iter().enumerate() {
        let set = BoundaryOpenSet { center: psi.clone(), radius: eps };
        let witness = space
            .exposing_witness(psi, 1e-12)
            .ok_or(CertifyError::Frame(crate::frame::FrameError::FrameNotFound))?;
        for (side, out) in [(Side::Upper, &mut upper), (Side::Lower, &mut lower)] {
            let stream = 2 * i as u64 + (side == Side::Lower) as u64;
            let (rec, functional) = boundary_periodic(&g, space, &set, &witness, side, &opts.budget, tol, stream)?
                .ok_or(CertifyError::BoundaryPeriodicSearchFailed { i, side })?;
            out.push(BoundaryWitness {
                point: &rec.base + x,
                period: rec.period.expect("periodic"),
                functional,
            });
        }
    }

    let rhos: Vec<Functional> = lower.iter().map(|w| w.functional.clone()).collect();
    let sigmas: Vec<Functional> = upper.iter().map(|w| w.functional.clone()).collect();
    let margins = verify_pinch(&rhos, &sigmas, frame.psi_bar())?;
    if !margins.valid() {
        return Err(CertifyError::PinchDegenerate(margins));
    }
    let r = period_lcm(lower.iter().chain(&upper).map(|w| w.period))?;
    let residual = iterate(f, x, r as i64)?.distance(x);
    let minimal_period = detect_period(f, x, r, opts.tolerances.certification)?.period;
    let cert = Certificate {
        base: x.clone(),
        frame: CertFrame { psis: frame.psis().to_vec(), psi_bar: frame.psi_bar().clone(), radius: eps },
        lower,
        upper,
        margins,
        r,
        residual,
        minimal_period,
        tolerances: opts.tolerances.clone(),
        map: f.clone(),
        anchor: space.anchor().clone(),
    };
    if !(residual <= opts.tolerances.certification) {
        return Err(CertifyError::ResidualTooLarge { value: residual, certificate: Box::new(cert) });
    }
    Ok(cert)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Relative agreement used when comparing recomputed values.
const MATCH_TOL: f64 = 1e-12;
/// Tolerance for `rho_i(x_i - x) = 0`.
const FUNCTIONAL_TOL: f64 = 1e-8;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= MATCH_TOL * a.abs().max(b.abs()).max(1.0)
}

impl Certificate {
    pub fn margin_min(&self) -> f64 {
        self.margins.min()
    }

    pub fn rhos(&self) -> Vec<Functional> {
        self.lower.iter().map(|w| w.functional.clone()).collect()
    }

    pub fn sigmas(&self) -> Vec<Functional> {
        self.upper.iter().map(|w| w.functional.clone()).collect()
    }

    /// Re-checks every field from the embedded map and anchor alone.
    pub fn validate(&self) -> ValidationReport {
        let mut checks = Vec::new();
        let mut check = |name: &str, passed: bool, detail: String| {
            checks.push(Check { name: name.to_string(), passed, detail });
        };
        let f = &self.map;
        let d = f.dim();
        let tol = self.tolerances.geometric;

        match verify_monotone(f, 1000, 0) {
            Ok(c) => check("monotone", true, format!("{c:?}")),
            Err(e) => check("monotone", false, e.to_string()),
        }
        let space = match StateSpace::new(f.cone(), self.anchor.clone(), tol) {
            Ok(s) => s,
            Err(e) => {
                check("state_space", false, e.to_string());
                return ValidationReport { checks };
            }
        };
        let shape_ok = self.base.dim() == d
            && self.frame.psis.len() == d
            && self.lower.len() == d
            && self.upper.len() == d
            && f.domain().contains(&self.base);
        check("shape", shape_ok, format!("d = {d}"));
        if !shape_ok {
            return ValidationReport { checks };
        }

        // frame
        let exposed = self.frame.psis.iter().all(|p| space.contains_boundary_functional(p, FUNCTIONAL_TOL));
        check("frame_exposed", exposed, String::new());
        let mean = mean_functional(&self.frame.psis);
        check(
            "frame_mean",
            mean.distance(&self.frame.psi_bar) <= MATCH_TOL,
            format!("|mean - psi_bar| = {:e}", mean.distance(&self.frame.psi_bar)),
        );
        match Frame::new(self.frame.psis.clone()).and_then(|fr| perturbation_radius(&fr)) {
            Ok(eps) => check("frame_radius", close(eps, self.frame.radius), format!("recomputed {eps:e}")),
            Err(e) => check("frame_radius", false, e.to_string()),
        }

        // boundary witnesses
        for (side, list) in [("lower", &self.lower), ("upper", &self.upper)] {
            for (i, w) in list.iter().enumerate() {
                let offset = if side == "lower" { &self.base - &w.point } else { &w.point - &self.base };
                let value = w.functional.apply(&offset);
                check(
                    &format!("{side}[{i}].functional_vanishes"),
                    value.abs() <= FUNCTIONAL_TOL,
                    format!("value {value:e}"),
                );
                check(
                    &format!("{side}[{i}].functional_in_state_space"),
                    space.contains_boundary_functional(&w.functional, FUNCTIONAL_TOL),
                    String::new(),
                );
                let dist = w.functional.distance(&self.frame.psis[i]);
                check(
                    &format!("{side}[{i}].functional_in_neighbourhood"),
                    dist < self.frame.radius,
                    format!("distance {dist:e} radius {:e}", self.frame.radius),
                );
                let on_boundary = matches!(
                    f.cone().membership(&offset, tol),
                    Ok(crate::cone::Membership::Boundary)
                );
                check(&format!("{side}[{i}].on_boundary"), on_boundary, String::new());
                let per = match iterate(f, &w.point, w.period as i64) {
                    Ok(y) => y.distance(&w.point),
                    Err(_) => f64::INFINITY,
                };
                check(
                    &format!("{side}[{i}].periodic"),
                    w.period >= 1 && per <= self.tolerances.certification.max(tol),
                    format!("period {} residual {per:e}", w.period),
                );
            }
        }

        // pinch
        match verify_pinch(&self.rhos(), &self.sigmas(), &self.frame.psi_bar) {
            Ok(m) => {
                let same = close(m.sigma_min_rho, self.margins.sigma_min_rho)
                    && close(m.sigma_min_sigma, self.margins.sigma_min_sigma)
                    && close(m.margin_rho, self.margins.margin_rho)
                    && close(m.margin_sigma, self.margins.margin_sigma);
                check("margins_match", same, format!("recomputed {m:?}"));
                check("margins_positive", m.valid(), format!("min {:e}", m.min()));
            }
            Err(e) => check("margins_match", false, e.to_string()),
        }

        // period and residual
        match period_lcm(self.lower.iter().chain(&self.upper).map(|w| w.period)) {
            Ok(r) => check("r_is_lcm", r == self.r, format!("recomputed {r}")),
            Err(e) => check("r_is_lcm", false, e.to_string()),
        }
        match iterate(f, &self.base, self.r as i64) {
            Ok(y) => {
                let res = y.distance(&self.base);
                check("residual_match", close(res, self.residual), format!("recomputed {res:e}"));
                check(
                    "residual_within_tolerance",
                    res <= self.tolerances.certification,
                    format!("{res:e} <= {:e}", self.tolerances.certification),
                );
            }
            Err(e) => check("residual_match", false, e.to_string()),
        }
        if let Some(p) = self.minimal_period {
            let ok = self.r.is_multiple_of(p)
                && iterate(f, &self.base, p as i64)
                    .map(|y| y.distance(&self.base) <= self.tolerances.certification)
                    .unwrap_or(false);
            check("minimal_period", ok, format!("{p}"));
        }
        ValidationReport { checks }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{make_example_system, SystemName};

    fn setup(name: SystemName) -> (MapSpec, StateSpace) {
        let e = make_example_system(&name).unwrap();
        let s = StateSpace::with_default_anchor(e.map.cone(), 1e-9).unwrap();
        (e.map, s)
    }

    #[test]
    fn identity_certifies_with_r_one() {
        let (f, s) = setup(SystemName::identity(2));
        let x = Point::from([0.3, 0.7]);
        let c = certify_point(&f, &s, &x, &CertifyOptions::default()).unwrap();
        assert_eq!(c.r, 1);
        assert_eq!(c.residual, 0.0);
        assert!(c.margin_min() > 0.0);
        assert!(c.validate().passed());
    }

    #[test]
    fn permutation_certifies_divisor_of_three() {
        let (f, s) = setup(SystemName::OrthantPermutation { sigma: vec![2, 3, 1] });
        let x = Point::from([1.0, 2.0, 3.0]);
        let c = certify_point(&f, &s, &x, &CertifyOptions::default()).unwrap();
        assert_eq!(3 % c.r, 0);
        assert!(c.r as f64 * c.residual <= 1e-12);
        assert_eq!(c.minimal_period, Some(3));
        // rho_i(x_i - x) = 0 and sigma_i(z_i - x) = 0
        for w in &c.lower {
            assert!(w.functional.apply(&(&w.point - &x)).abs() <= 1e-12);
        }
        for w in &c.upper {
            assert!(w.functional.apply(&(&w.point - &x)).abs() <= 1e-12);
        }
        let report = c.validate();
        assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    }

    #[test]
    fn lorentz_rotation_certifies_divisor_of_five() {
        let (f, s) = setup(SystemName::LorentzRotation { num: 1, den: 5 });
        let x = Point::from([0.4, -0.3, 1.1]);
        let c = certify_point(&f, &s, &x, &CertifyOptions::default()).unwrap();
        assert_eq!(5 % c.r, 0);
        assert!(c.residual <= 1e-9);
        assert!(c.validate().passed());
    }

    #[test]
    fn contraction_fails_on_boundary_search() {
        let (f, s) = setup(SystemName::Contraction { factor: 0.5, dim: 2 });
        let r = certify_point(&f, &s, &Point::from([0.5, 0.25]), &CertifyOptions::default());
        assert!(matches!(r, Err(CertifyError::BoundaryPeriodicSearchFailed { i: 0, side: Side::Upper })));
    }

    #[test]
    fn json_round_trip_revalidates() {
        let (f, s) = setup(SystemName::OrthantPermutation { sigma: vec![2, 3, 1] });
        let c = certify_point(&f, &s, &Point::from([0.5, -1.0, 2.0]), &CertifyOptions::default()).unwrap();
        let back = Certificate::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        assert!(back.validate().passed());
    }

    #[test]
    fn tampered_certificate_is_rejected() {
        let (f, s) = setup(SystemName::OrthantPermutation { sigma: vec![2, 3, 1] });
        let mut c = certify_point(&f, &s, &Point::from([1.0, 2.0, 3.0]), &CertifyOptions::default()).unwrap();
        c.r = 2;
        c.upper[0].point = c.upper[0].point.axpy(1e-3, &Point::from([1.0, 1.0, 1.0]));
        let report = c.validate();
        let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
        assert!(failed.contains(&"r_is_lcm"));
        assert!(failed.contains(&"upper[0].functional_vanishes"));
    }

    #[test]
    fn translation_invariance() {
        let (f, s) = setup(SystemName::OrthantPermutation { sigma: vec![2, 3, 1] });
        let x = Point::from([1.0, 2.0, 3.0]);
        let g = f.translated(&x).unwrap();
        let opts = CertifyOptions::default();
        let a = certify_point(&f, &s, &x, &opts).unwrap();
        let b = certify_point(&g, &s, &Point::zeros(3), &opts).unwrap();
        assert_eq!(a.r, b.r);
        assert_eq!(a.margins, b.margins);
        for (wa, wb) in a.lower.iter().chain(&a.upper).zip(b.lower.iter().chain(&b.upper)) {
            assert!((&wa.point - &x).distance(&wb.point) <= 1e-12);
            assert_eq!(wa.functional, wb.functional);
            assert_eq!(wa.period, wb.period);
        }
    }
}
