//! Bundled example systems runnable end to end with `certifier demo <name>`.

use conecert::certifier::Tolerances;
use conecert::dynamics::{make_example_system, SystemName};

use crate::error::CliError;
use crate::runner::sample_points;
use crate::scenario::{MapBlock, Scenario, Task};

pub const DEMO_SEED: u64 = 2024;

pub fn demo_names() -> &'static [&'static str] {
    &["identity", "orthant_perm3", "lorentz_rot4", "lorentz_rot5", "contraction", "irrational_rotation"]
}

fn system(name: &str) -> Option<SystemName> {
    Some(match name {
        "identity" => SystemName::identity(2),
        "orthant_perm3" => SystemName::OrthantPermutation { sigma: vec![2, 3, 1] },
        "lorentz_rot4" => SystemName::LorentzRotation { num: 1, den: 4 },
        "lorentz_rot5" => SystemName::LorentzRotation { num: 1, den: 5 },
        "contraction" => SystemName::Contraction { factor: 0.5, dim: 2 },
        "irrational_rotation" => SystemName::sqrt2_rotation(),
        _ => return None,
    })
}

/// Scenario running lemma checks, three certifications and a global report
/// on the named example.
pub fn demo_scenario(name: &str) -> Result<Scenario, CliError> {
    let sys = system(name).ok_or_else(|| {
        CliError::Invalid(format!("unknown demo {name:?}; available: {}", demo_names().join(", ")))
    })?;
    let e = make_example_system(&sys).map_err(|e| CliError::Invalid(e.to_string()))?;
    let mut scenario = Scenario {
        name: Some(name.to_string()),
        cone: e.map.cone().clone(),
        anchor: None,
        map: MapBlock {
            kind: e.map.kind().clone(),
            domain: e.map.domain().clone(),
            expected_periodic: e.expected_periodic,
            global_period: e.global_period,
        },
        tasks: Vec::new(),
        tolerances: Tolerances::default(),
        seed: DEMO_SEED,
        output: None,
        expected_fail: !e.expected_periodic,
    };
    let points = sample_points(&scenario.clone().load()?, 3);
    scenario.tasks = vec![
        Task::VerifyLemmas { density_eps: None },
        Task::Certify { points },
        Task::GlobalReport { n: 10 },
    ];
    Ok(scenario)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_demo_builds() {
        for n in demo_names() {
            let s = demo_scenario(n).unwrap();
            assert!(s.clone().load().is_ok(), "{n}");
            assert_eq!(s.expected_fail, matches!(*n, "contraction" | "irrational_rotation"));
        }
        assert!(demo_scenario("nope").is_err());
    }
}
