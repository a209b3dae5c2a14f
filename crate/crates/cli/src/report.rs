use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::CliError;
use crate::runner::{RunReport, TaskResult};

/// `<prefix><suffix>` as a path.
pub fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn io(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.to_path_buf(), source }
}

/// Writes `<prefix>.report.json`, `<prefix>.residuals.csv` and one
/// `<prefix>.cert-<task>-<point>.json` per certificate of a `certify` task.
/// Returns the written paths.
pub fn emit_report(report: &RunReport, prefix: &Path) -> Result<Vec<PathBuf>, CliError> {
    if let Some(dir) = prefix.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io(dir))?;
    }
    let mut written = Vec::new();

    let json_path = with_suffix(prefix, ".report.json");
    fs::write(&json_path, report.to_json() + "\n").map_err(io(&json_path))?;
    written.push(json_path);

    let csv_path = with_suffix(prefix, ".residuals.csv");
    let mut w = csv::Writer::from_path(&csv_path).map_err(|e| CliError::Io {
        path: csv_path.clone(),
        source: e.into(),
    })?;
    let csv_err = |e: csv::Error| CliError::Io { path: csv_path.clone(), source: e.into() };
    w.write_record(["task", "point_index", "r", "residual", "margin_min"]).map_err(csv_err)?;
    for t in &report.tasks {
        let entries = match &t.result {
            TaskResult::Certify { entries } => entries,
            TaskResult::Global { report } => &report.entries,
            _ => continue,
        };
        for e in entries {
            if let Some(c) = e.certificate() {
                w.write_record([
                    t.task.clone(),
                    e.index.to_string(),
                    c.r.to_string(),
                    c.residual.to_string(),
                    c.margin_min().to_string(),
                ])
                .map_err(csv_err)?;
            }
        }
    }
    w.flush().map_err(io(&csv_path))?;
    written.push(csv_path);

    for (k, t) in report.tasks.iter().enumerate() {
        if let TaskResult::Certify { entries } = &t.result {
            for e in entries {
                if let Some(c) = e.certificate() {
                    let path = with_suffix(prefix, &format!(".cert-{k}-{}.json", e.index));
                    fs::write(&path, c.to_json() + "\n").map_err(io(&path))?;
                    written.push(path);
                }
            }
        }
    }
    Ok(written)
}

/// Human-readable summary, one line per task plus the verdict.
pub fn summary(report: &RunReport) -> String {
    let mut out = String::new();
    if let Some(name) = &report.scenario.name {
        let _ = writeln!(out, "scenario {name} (seed {})", report.scenario.seed);
    }
    for (k, t) in report.tasks.iter().enumerate() {
        let mark = if t.passed { "ok  " } else { "FAIL" };
        let ms = t.elapsed.as_secs_f64() * 1e3;
        let _ = writeln!(out, "[{mark}] {k}: {} - {} ({ms:.1} ms)", t.task, t.summary);
    }
    let verdict = match (report.all_passed, report.expected_fail) {
        (true, false) => "all tasks passed",
        (false, true) => "failure expected and observed",
        (true, true) => "expected a failure but every task passed",
        (false, false) => "some tasks failed",
    };
    let _ = writeln!(out, "{verdict}; exit status {}", report.exit_status);
    out
}
