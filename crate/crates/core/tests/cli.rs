use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn sigforge(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sigforge"))
        .args(args)
        .current_dir(dir)
        .env("SIGFORGE_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json report")
}

fn workspace() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("trefoil.mat"), "2 classical\n-1 1\n0 -1\n").unwrap();
    std::fs::write(dir.path().join("identity.mat"), "2\n1 0\n0 1\n").unwrap();
    std::fs::write(dir.path().join("broken.mat"), "3\n1 2 3\n").unwrap();
    dir
}

#[test]
fn trefoil_signature() {
    let dir = workspace();
    let o = sigforge(&["--format", "json", "signature", "trefoil.mat", "--re", "0/1"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["outputs"]["signature"], -2);
    let o = sigforge(&["signature", "trefoil.mat", "--re", "-1/2"], dir.path());
    assert!(stdout(&o).contains("signature: -2"));
    let o = sigforge(&["--format", "json", "signature", "trefoil.mat", "--at-root", "1"], dir.path());
    assert_eq!(json(&o)["outputs"]["signature"], -1);
    assert_eq!(json(&o)["outputs"]["nullity"], 1);
}

#[test]
fn exit_codes() {
    let dir = workspace();
    assert_eq!(sigforge(&["validate", "identity.mat"], dir.path()).status.code(), Some(3));
    assert_eq!(sigforge(&["validate", "trefoil.mat"], dir.path()).status.code(), Some(0));
    assert_eq!(sigforge(&["validate", "broken.mat"], dir.path()).status.code(), Some(2));
    assert_eq!(sigforge(&["validate", "missing.mat"], dir.path()).status.code(), Some(2));
    assert_eq!(sigforge(&["signature", "trefoil.mat", "--re", "3/2"], dir.path()).status.code(), Some(2));
    assert_eq!(sigforge(&["signature", "trefoil.mat", "--re", "x"], dir.path()).status.code(), Some(2));
    assert_eq!(sigforge(&["frobnicate"], dir.path()).status.code(), Some(2));
    assert_eq!(
        sigforge(&["construct", "metabolic", "--poly", "1,1,1", "--root-index", "1"], dir.path()).status.code(),
        Some(2)
    );
    assert_eq!(sigforge(&["--help"], dir.path()).status.code(), Some(0));
}

#[test]
fn step_function_outputs() {
    let dir = workspace();
    let o = sigforge(&["sigfn", "trefoil.mat", "--json"], dir.path());
    let sf: sigforge::seifert::SignatureStepFunction = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(sf.interval_values, vec![-2, 0]);
    assert_eq!(sf.point_values, vec![-1]);
    let csv = stdout(&sigforge(&["sigfn", "trefoil.mat", "--csv"], dir.path()));
    assert!(csv.starts_with("kind,c_lo,c_hi,value"));
    assert_eq!(csv.lines().count(), 4);
}

#[test]
fn metabolic_roundtrip_through_files() {
    let dir = workspace();
    let o = sigforge(
        &["--oracle", "--format", "json", "construct", "metabolic", "--poly", "1,-1,1", "--root-index", "1", "--out", "w.mat"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report = json(&o);
    assert_eq!(report["outputs"]["dim"], 8);
    assert_eq!(report["outputs"]["step_function"]["point_values"], serde_json::json!([2]));
    assert!(report["checks"].as_array().unwrap().iter().any(|c| c["name"] == "oracle agrees at certified points"));

    std::fs::write(dir.path().join("good.basis"), "4 8\n1 0 0 0 0 0 0 0\n0 1 0 0 0 0 0 0\n0 0 0 0 1 0 0 0\n0 0 0 0 0 1 0 0\n").unwrap();
    std::fs::write(dir.path().join("bad.basis"), "4 8\n0 0 1 0 0 0 0 0\n0 1 0 0 0 0 0 0\n0 0 0 0 1 0 0 0\n0 0 0 0 0 1 0 0\n").unwrap();
    std::fs::write(dir.path().join("short.basis"), "1 8\n1 0 0 0 0 0 0 0\n").unwrap();
    assert_eq!(sigforge(&["verify-metabolizer", "w.mat", "good.basis"], dir.path()).status.code(), Some(0));
    assert_eq!(sigforge(&["verify-metabolizer", "w.mat", "bad.basis"], dir.path()).status.code(), Some(3));
    assert_eq!(sigforge(&["verify-metabolizer", "w.mat", "short.basis"], dir.path()).status.code(), Some(2));

    let o = sigforge(&["--format", "json", "sigfn", "w.mat"], dir.path());
    assert_eq!(json(&o)["outputs"]["step_function"]["interval_values"], serde_json::json!([0, 0]));
}

#[test]
fn jump_commands() {
    let dir = workspace();
    let o = sigforge(&["--format", "json", "construct", "jump", "--re", "0", "--eps", "1/10"], dir.path());
    assert_eq!(json(&o)["outputs"]["coefficients"], "3,-6,5,-6,3");
    let o = sigforge(&["--format", "json", "construct", "jump", "--re", "0", "--eps", "1/10", "--highdim"], dir.path());
    assert_eq!(json(&o)["outputs"]["extra_root"], "11/12");
    let o = sigforge(
        &["--oracle", "construct", "jump", "--re", "-1/3", "--eps", "1/20", "--realize", "--out", "j.mat"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[ok] single breakpoint at c*"));
    let o = sigforge(&["--format", "json", "alexander", "j.mat"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(sigforge(&["construct", "jump", "--re", "0", "--eps", "1/10", "--highdim", "--realize"], dir.path())
        .status
        .code()
        == Some(2));
}

#[test]
fn independence_command() {
    let dir = workspace();
    let o = sigforge(
        &["--format", "json", "independence", "--points", "-3/5,-1/10,2/5", "--target", "3"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let table = json(&o)["outputs"]["signatures"].clone();
    let values: Vec<i64> = table.as_array().unwrap().iter().map(|r| r["signature"].as_i64().unwrap()).collect();
    assert_eq!(values[0], 0);
    assert_eq!(values[1], 0);
    assert_eq!(values[2].abs(), 2);
    assert_eq!(
        sigforge(&["independence", "--points", "1/2,-1/2", "--target", "1"], dir.path()).status.code(),
        Some(2)
    );
}

#[test]
fn highdim_matrix_file() {
    let dir = workspace();
    let o = sigforge(
        &["construct", "metabolic", "--poly", "-1,1,-1", "--root-index", "1", "--highdim", "--out", "h.mat"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(dir.path().join("h.mat")).unwrap();
    assert!(text.starts_with("8 highdim"));
    assert_eq!(sigforge(&["validate", "h.mat"], dir.path()).status.code(), Some(0));
    assert_eq!(sigforge(&["validate", "h.mat", "--parity", "classical"], dir.path()).status.code(), Some(3));
}
