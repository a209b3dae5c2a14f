//! Scenario files: one JSON document describing a cone, a map and the tasks
//! to run on them.

use std::path::Path;

use conecert::certifier::Tolerances;
use conecert::dynamics::{DomainSpec, MapKind, MapSpec};
use conecert::{ConeRep, Point, StateSpace};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Default boundary window for the density probe in `verify-lemmas`.
pub const DEFAULT_DENSITY_EPS: f64 = 0.25;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub cone: ConeRep,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor: Option<Point>,
    pub map: MapBlock,
    #[serde(default)]
    pub tasks: Vec<Task>,
    #[serde(default)]
    pub tolerances: Tolerances,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(default)]
    pub expected_fail: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapBlock {
    #[serde(flatten)]
    pub kind: MapKind,
    pub domain: DomainSpec,
    #[serde(default)]
    pub expected_periodic: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub global_period: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "task", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Task {
    VerifyLemmas {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        density_eps: Option<f64>,
    },
    Certify {
        points: Vec<Point>,
    },
    ProbeDensity {
        points: Vec<Point>,
        eps: f64,
    },
    GlobalReport {
        n: usize,
    },
}

impl Task {
    pub fn label(&self) -> &'static str {
        match self {
            Task::VerifyLemmas { .. } => "verify-lemmas",
            Task::Certify { .. } => "certify",
            Task::ProbeDensity { .. } => "probe-density",
            Task::GlobalReport { .. } => "global-report",
        }
    }
}

/// A scenario with its map and state space built and checked.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub scenario: Scenario,
    pub map: MapSpec,
    pub space: StateSpace,
}

impl Scenario {
    pub fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse {
            path: origin.to_string(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    /// Builds the map (checking monotonicity) and the state space, and checks
    /// that every referenced dimension agrees with the cone.
    pub fn load(self) -> Result<Loaded, CliError> {
        let d = self.cone.dim();
        let invalid = |m: String| CliError::Invalid(m);
        let map = MapSpec::new_monotone(self.map.kind.clone(), self.cone.clone(), self.map.domain.clone())
            .map_err(|e| invalid(format!("map block: {e}")))?;
        let anchor = self.anchor.clone().unwrap_or_else(|| self.cone.default_anchor());
        if anchor.dim() != d {
            return Err(invalid(format!("anchor has dimension {}, cone has dimension {d}", anchor.dim())));
        }
        let space = StateSpace::new(&self.cone, anchor, self.tolerances.geometric)
            .map_err(|e| invalid(format!("anchor: {e}")))?;
        let t = &self.tolerances;
        if !(t.geometric > 0.0 && t.certification > 0.0) {
            return Err(invalid("tolerances must be positive".into()));
        }
        for (k, task) in self.tasks.iter().enumerate() {
            let points: &[Point] = match task {
                Task::Certify { points } | Task::ProbeDensity { points, .. } => points,
                _ => &[],
            };
            if let Some(p) = points.iter().find(|p| p.dim() != d) {
                return Err(invalid(format!(
                    "task {k} ({}): point {:?} has dimension {}, cone has dimension {d}",
                    task.label(),
                    p.coords(),
                    p.dim()
                )));
            }
            match task {
                Task::ProbeDensity { eps, .. } | Task::VerifyLemmas { density_eps: Some(eps) } if !(*eps > 0.0) => {
                    return Err(invalid(format!("task {k} ({}): eps must be positive", task.label())));
                }
                Task::GlobalReport { n: 0 } => {
                    return Err(invalid(format!("task {k} (global-report): n must be at least 1")));
                }
                _ => {}
            }
        }
        Ok(Loaded { scenario: self, map, space })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ORTHANT: &str = r#"{
        "cone": {"kind": "polyhedral", "dim": 2, "generators": [[1, 0], [0, 1]]},
        "map": {"kind": "linear", "matrix": [[0, 1], [1, 0]],
                "domain": {"kind": "open_box", "lo": [-4, -4], "hi": [4, 4]},
                "expected_periodic": true, "global_period": 2},
        "tasks": [{"task": "certify", "points": [[0.5, 1.0]]}, {"task": "global-report", "n": 3}],
        "seed": 7
    }"#;

    #[test]
    fn parses_and_loads() {
        let s = Scenario::parse(ORTHANT, "inline").unwrap();
        assert_eq!(s.seed, 7);
        assert_eq!(s.tasks.len(), 2);
        assert_eq!(s.map.global_period, Some(2));
        let l = s.load().unwrap();
        assert_eq!(l.space.anchor().coords(), &[0.5, 0.5]);
    }

    #[test]
    fn echo_round_trips() {
        let s = Scenario::parse(ORTHANT, "inline").unwrap();
        assert_eq!(Scenario::parse(&s.to_json(), "echo").unwrap(), s);
    }

    #[test]
    fn parse_error_has_position() {
        let bad = ORTHANT.replace("\"dim\": 2,", "\"dim\": 2");
        match Scenario::parse(&bad, "inline") {
            Err(CliError::Parse { line, column, .. }) => {
                assert_eq!(line, 2);
                assert!(column > 0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn missing_seed_is_rejected() {
        let bad = ORTHANT.replace(",\n        \"seed\": 7", "");
        assert!(matches!(Scenario::parse(&bad, "inline"), Err(CliError::Parse { .. })));
    }

    #[test]
    fn dimension_mismatch_is_diagnosed() {
        let bad = ORTHANT.replace("[[0.5, 1.0]]", "[[0.5, 1.0, 2.0]]");
        match Scenario::parse(&bad, "inline").unwrap().load() {
            Err(CliError::Invalid(m)) => assert!(m.contains("dimension 3")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_monotone_map_is_invalid() {
        let bad = ORTHANT.replace("[[0, 1], [1, 0]]", "[[1, 0], [0, -1]]");
        assert!(matches!(Scenario::parse(&bad, "inline").unwrap().load(), Err(CliError::Invalid(_))));
    }
}
