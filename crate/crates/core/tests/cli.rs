//! The `catcoh` binary: exit codes, JSON reports and the bundled data files.

use std::path::{Path, PathBuf};
use std::process::Command;

use catcoh::instances::locality_counterexample;
use catcoh::workbench::{Report, WorkbenchFile};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn catcoh(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_catcoh")).args(args).output().expect("binary runs");
    (out.status.code().expect("exited normally"), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn bundled_files_run_with_documented_exit_codes() {
    for (name, code) in [
        ("example_a.json", 0),
        ("example_b.json", 0),
        ("example_c.json", 0),
        ("galois.json", 0),
        ("adjuntos_counterexample.json", 1),
        ("locality.json", 1),
    ] {
        let (got, stdout) = catcoh(&["run", path_str(&data(name)), "--quiet"]);
        assert_eq!(got, code, "{name}: {stdout}");
        let (valid, _) = catcoh(&["validate", path_str(&data(name))]);
        assert_eq!(valid, 0, "{name} validates");
    }
}

#[test]
fn budget_overrun_exits_with_three() {
    let (code, _) = catcoh(&["run", path_str(&data("example_b.json")), "--budget", "3", "--quiet"]);
    assert_eq!(code, 3);
}

#[test]
fn malformed_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let dangling = dir.path().join("dangling.json");
    std::fs::write(
        &dangling,
        r#"{"categories": {"pt": "terminal"},
            "natural_systems": {"D": {"base": "nowhere", "ring": "zz", "constant": 1}}}"#,
    )
    .unwrap();
    assert_eq!(catcoh(&["validate", path_str(&dangling)]).0, 2);
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{ not json").unwrap();
    assert_eq!(catcoh(&["run", path_str(&garbage)]).0, 2);
    assert_eq!(catcoh(&["check", path_str(&data("galois.json")), "no-such-target"]).0, 2);
}

#[test]
fn non_associative_table_fails_validation() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    // a∘a = b but a∘b = a, so (a∘a)∘a ≠ a∘(a∘a)
    std::fs::write(
        &path,
        r#"{"categories": {"M": {"explicit": {
            "objects": 1,
            "morphisms": [[0, 0], [0, 0], [0, 0]],
            "identities": [0],
            "composition": [[0,0,0],[0,1,1],[0,2,2],[1,0,1],[2,0,2],[1,1,2],[1,2,1],[2,1,2],[2,2,2]]
        }}}}"#,
    )
    .unwrap();
    let (code, stdout) = catcoh(&["validate", path_str(&path)]);
    assert_eq!(code, 1, "{stdout}");
    assert!(stdout.contains("fail"));
}

#[test]
fn json_report_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let (code, _) = catcoh(&[
        "cohomology",
        path_str(&data("example_b.json")),
        "z3_zz",
        "--max-degree",
        "5",
        "--quiet",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(code, 0);
    let report: Report = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let rows = report.tasks[0].cohomology.as_ref().unwrap();
    let shown: Vec<&str> = rows.iter().map(|r| r.display.as_str()).collect();
    assert_eq!(shown, ["Z", "0", "Z/3", "0", "Z/3"]);
}

#[test]
fn spectral_command_reports_pages() {
    let (code, stdout) = catcoh(&["spectral", path_str(&data("example_c.json")), "C", "const_f2", "--max-degree", "3"]);
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("E_2: (0,0)=1 (0,1)=0 (1,0)=0"), "{stdout}");
}

#[test]
fn expanded_file_resolves_to_the_same_workbench() {
    for name in ["example_a.json", "example_b.json", "galois.json", "locality.json"] {
        let file = WorkbenchFile::load(&data(name)).unwrap();
        let wb = file.resolve().unwrap();
        let again = WorkbenchFile::parse(&file.expanded(&wb).to_json()).unwrap().resolve().unwrap();
        assert_eq!(wb, again, "{name}");
    }
}

#[test]
fn bundled_locality_file_matches_library_instance() {
    let wb = WorkbenchFile::load(&data("locality.json")).unwrap().resolve().unwrap();
    let (dg, d) = locality_counterexample();
    assert_eq!(wb.systems["D"], d);
    assert_eq!(*wb.diagrams["K"].base, *dg.base);
}
