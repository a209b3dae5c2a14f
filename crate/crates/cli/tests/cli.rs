use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn certifier(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_certifier")).args(args).current_dir(cwd).output().expect("binary runs")
}

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(format!("{name}.scn"))
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

const SMALL: &str = r#"{
    "cone": {"kind": "polyhedral", "dim": 2, "generators": [[1, 0], [0, 1]]},
    "map": {"kind": "linear", "matrix": [[0, 1], [1, 0]],
            "domain": {"kind": "open_box", "lo": [-4, -4], "hi": [4, 4]},
            "expected_periodic": true, "global_period": 2},
    "tasks": [{"task": "certify", "points": [[0.5, 1.0], [2.0, -1.0]]}, {"task": "global-report", "n": 4}],
    "seed": 9
}"#;

#[test]
fn run_writes_report_csv_and_certificates() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("small.scn"), SMALL).unwrap();
    let o = certifier(&["run", "small.scn"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(dir.path().join("small.residuals.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "task,point_index,r,residual,margin_min");
    assert_eq!(lines.len(), 1 + 2 + 4);
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("small.report.json")).unwrap()).unwrap();
    assert_eq!(report["all_passed"], true);
    assert_eq!(report["tasks"][1]["result"]["report"]["n"], 2);
    for i in 0..2 {
        let cert = dir.path().join(format!("small.cert-0-{i}.json"));
        let v = certifier(&["validate", cert.to_str().unwrap()], dir.path());
        assert_eq!(code(&v), 0, "{}", String::from_utf8_lossy(&v.stdout));
    }
}

#[test]
fn tampered_certificate_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("small.scn"), SMALL).unwrap();
    assert_eq!(code(&certifier(&["run", "small.scn"], dir.path())), 0);
    let path = dir.path().join("small.cert-0-0.json");
    let mut cert: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    cert["r"] = serde_json::json!(7);
    std::fs::write(&path, cert.to_string()).unwrap();
    let o = certifier(&["validate", path.to_str().unwrap()], dir.path());
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stdout).contains("INVALID"));
}

#[test]
fn malformed_scenario_exits_2_with_position() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.scn"), SMALL.replace("\"dim\": 2,", "\"dim\": 2")).unwrap();
    let o = certifier(&["run", "bad.scn"], dir.path());
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.scn:2:"));
}

#[test]
fn non_monotone_map_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("neg.scn"), SMALL.replace("[[0, 1], [1, 0]]", "[[1, 0], [0, -1]]")).unwrap();
    assert_eq!(code(&certifier(&["run", "neg.scn"], dir.path())), 2);
}

#[test]
fn empty_task_list_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let empty = SMALL.replace(
        r#"[{"task": "certify", "points": [[0.5, 1.0], [2.0, -1.0]]}, {"task": "global-report", "n": 4}]"#,
        "[]",
    );
    std::fs::write(dir.path().join("empty.scn"), empty).unwrap();
    let o = certifier(&["run", "empty.scn"], dir.path());
    assert_eq!(code(&o), 0);
    let csv = std::fs::read_to_string(dir.path().join("empty.residuals.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1);
}

#[test]
fn unwritable_prefix_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("small.scn"), SMALL).unwrap();
    std::fs::write(dir.path().join("blocker"), "").unwrap();
    let o = certifier(&["run", "small.scn", "--out", "blocker/sub/out"], dir.path());
    assert_eq!(code(&o), 2);
}

#[test]
fn expected_failure_scenario_exits_0() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c");
    let o = certifier(&["run", scenario("contraction").to_str().unwrap(), "--out", out.to_str().unwrap()], dir.path());
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("failure expected and observed"));
    let csv = std::fs::read_to_string(dir.path().join("c.residuals.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1);
}

#[test]
fn seed_override_changes_sampled_points() {
    let dir = tempfile::tempdir().unwrap();
    let path = scenario("lorentz_rot5");
    let p = path.to_str().unwrap();
    assert_eq!(code(&certifier(&["run", p, "--out", "a", "--seed", "1"], dir.path())), 0);
    assert_eq!(code(&certifier(&["run", p, "--out", "b", "--seed", "2"], dir.path())), 0);
    let a = std::fs::read(dir.path().join("a.report.json")).unwrap();
    let b = std::fs::read(dir.path().join("b.report.json")).unwrap();
    assert_ne!(a, b);
}

#[test]
fn demo_runs() {
    let dir = tempfile::tempdir().unwrap();
    let o = certifier(&["demo", "orthant_perm3", "--out", "demo"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    assert!(dir.path().join("demo.report.json").exists());
    assert_eq!(code(&certifier(&["demo", "contraction"], dir.path())), 0);
}
