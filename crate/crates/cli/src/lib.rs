//! Scenario-driven front end for the `conecert` certifier: parses scenario
//! files, runs their tasks and writes JSON/CSV reports.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod demos;
pub mod error;
pub mod report;
pub mod runner;
pub mod scenario;

pub use error::CliError;
pub use report::{emit_report, summary};
pub use runner::{run, RunReport};
pub use scenario::{Loaded, Scenario, Task};

use std::path::{Path, PathBuf};

/// Output prefix: the explicit override, else the scenario's `output`
/// field, else the scenario file name without its extension.
pub fn output_prefix(scenario: &Scenario, path: &Path, out: Option<&Path>) -> PathBuf {
    if let Some(o) = out {
        return o.to_path_buf();
    }
    if let Some(o) = &scenario.output {
        return PathBuf::from(o);
    }
    PathBuf::from(path.file_stem().unwrap_or_default())
}

/// Runs `f` on a pool with `threads` workers (the global pool when `None`).
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Invalid(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Loads, runs and emits a scenario file. Returns the report and the
/// written paths.
pub fn run_scenario_file(
    path: &Path,
    out: Option<&Path>,
    seed: Option<u64>,
    threads: Option<usize>,
) -> Result<(RunReport, Vec<PathBuf>), CliError> {
    let mut scenario = Scenario::from_file(path)?;
    if let Some(s) = seed {
        scenario.seed = s;
    }
    let prefix = output_prefix(&scenario, path, out);
    let loaded = scenario.load()?;
    let report = with_threads(threads, || run(&loaded))?;
    let written = emit_report(&report, &prefix)?;
    Ok((report, written))
}
