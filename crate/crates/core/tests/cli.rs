//! End-to-end runs of the command line tool.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use torus_strata::problem::{validate_report, Kind};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torus-strata"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("torus-strata-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn generated_documents_run_and_reports_validate() {
    let dir = scratch("gen");
    for kind in Kind::ALL {
        let out = bin(&["gen", "--kind", kind.as_str(), "--count", "2", "--seed", "5", "--out", dir.to_str().unwrap()]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let mut files: Vec<_> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    assert_eq!(files.len(), 2 * Kind::ALL.len());
    for f in &files {
        let path = f.to_str().unwrap();
        let first = bin(&["run", "--input", path]);
        assert_eq!(first.status.code(), Some(0), "{path}: {}", String::from_utf8_lossy(&first.stdout));
        let report: Value = serde_json::from_slice(&first.stdout).unwrap();
        let problems = validate_report(&report);
        assert!(problems.is_empty(), "{path}: {problems:?}");
        // reruns are byte-identical
        assert_eq!(bin(&["run", "--input", path]).stdout, first.stdout);
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn several_inputs_give_an_array_in_order() {
    let dir = scratch("batch");
    bin(&["gen", "--kind", "stability", "--count", "3", "--seed", "9", "--out", dir.to_str().unwrap()]);
    let mut files: Vec<String> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path().to_str().unwrap().to_owned())
        .collect();
    files.sort();
    let mut args = vec!["run"];
    for f in &files {
        args.extend(["--input", f.as_str()]);
    }
    let out = bin(&args);
    assert!(out.status.success());
    let all: Value = serde_json::from_slice(&out.stdout).unwrap();
    let all = all.as_array().unwrap();
    assert_eq!(all.len(), 3);
    for (f, r) in files.iter().zip(all) {
        let single: Value = serde_json::from_slice(&bin(&["run", "--input", f]).stdout).unwrap();
        assert_eq!(&single, r);
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn invalid_documents_report_positions_and_exit_2() {
    let dir = scratch("bad");
    let path = dir.join("bad.json");
    std::fs::write(
        &path,
        r#"{
  "schema_version": 1,
  "kind": "stability",
  "payload": {
    "rank": 1,
    "lines": [
      {"label": "a", "weight": [1], "amplitude": [1, 0]},
      {"label": "b", "weight": [1, 2], "amplitude": [1, 0]}
    ]
  }
}
"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let out = bin(&["validate", "--input", p]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr) + String::from_utf8_lossy(&out.stdout);
    assert!(err.contains("8:32"), "{err}");
    assert!(err.contains("weight has 2 entries, expected 1"), "{err}");

    let out = bin(&["run", "--input", p]);
    assert_eq!(out.status.code(), Some(2));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["status"], "rejected");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn unstable_stratify_input_is_rejected() {
    let dir = scratch("unstable");
    let path = dir.join("u.json");
    std::fs::write(
        &path,
        r#"{"schema_version": 1, "kind": "stratify", "payload": {"rank": 1, "lines": [
            {"label": "a", "weight": [1], "rho": 1, "amplitude": [1, 0]}]}}"#,
    )
    .unwrap();
    let out = bin(&["run", "--input", path.to_str().unwrap(), "--format", "text"]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn shipped_schemas_parse_and_list_every_kind() {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas");
    for name in ["problem.schema.json", "report.schema.json"] {
        let text = std::fs::read_to_string(root.join(name)).unwrap();
        let schema: Value = serde_json::from_str(&text).unwrap();
        for kind in Kind::ALL {
            assert!(text.contains(&format!("\"{}\"", kind.as_str())), "{name} lacks {kind:?}");
        }
        assert!(schema.get("$schema").is_some());
    }
}
