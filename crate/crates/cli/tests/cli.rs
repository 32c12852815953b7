use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn ybe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ybe")).args(args).output().expect("run ybe")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn shipped_corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_flip_and_braid_violation() {
    let dir = tempfile::tempdir().unwrap();
    let flip = dir.path().join("flip.json");
    fs::write(&flip, r#"{"size": 2, "lambda": [[0,1],[0,1]], "rho": [[0,1],[0,1]]}"#).unwrap();
    let o = ybe(&["verify", path_str(&flip)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS"));

    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"size": 2, "lambda": [[1,0],[0,1]], "rho": [[0,1],[0,1]]}"#).unwrap();
    let o = ybe(&["verify", path_str(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL: braid at (x,y,z)=(0,0,0)"), "{}", stdout(&o));
}

#[test]
fn construct_then_verify_round_trips_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let o = ybe(&["construct", "byott", "--p", "2", "--q", "3", "--out", path_str(dir.path())]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("brace of order 12, |X| = 8"), "{text}");
    assert!(!text.contains("[FAIL]"));
    let brace = dir.path().join("byott_2_3.brace.json");
    assert_eq!(ybe(&["verify", path_str(&brace)]).status.code(), Some(0));

    // export the shipped corpus again and compare with the checked-in files
    let again = tempfile::tempdir().unwrap();
    assert_eq!(ybe(&["corpus", "--dir", path_str(again.path()), "--export"]).status.code(), Some(0));
    let mut names: Vec<_> = fs::read_dir(again.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert!(names.len() >= 30);
    for name in names {
        let fresh = fs::read(again.path().join(&name)).unwrap();
        let shipped = fs::read(shipped_corpus().join(&name)).unwrap_or_default();
        assert!(fresh == shipped, "{name:?} differs from the shipped corpus");
    }
}

#[test]
fn coro1_ledger_and_rejection() {
    let dir = tempfile::tempdir().unwrap();
    let o = ybe(&["construct", "coro1", "--p", "3", "--n", "1", "--k", "2", "--A", "-1", "--A2", "-1", "--u0", "0", "--out", path_str(dir.path())]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("[FAIL]"));
    assert!(dir.path().join("coro1_p3_n1_k2.brace.json").exists());
    assert!(dir.path().join("coro1_p3_n1_k2.solution.json").exists());

    let o = ybe(&["construct", "coro1", "--p", "5", "--n", "2", "--k", "4", "--A", "0,-1;1,0", "--A2", "0,-1;1,0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("invariant subspace found"), "{}", stdout(&o));
}

#[test]
fn analyze_reports() {
    let quandle = shipped_corpus().join("quandle_sym3_transpositions.solution.json");
    let o = ybe(&["analyze", path_str(&quandle), "--criterion", "both"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("simple: true (brute) / true (simpleNL)"), "{}", stdout(&o));

    let lyu = shipped_corpus().join("lyubashenko_z4_1_1.solution.json");
    let text = stdout(&ybe(&["analyze", path_str(&lyu)]));
    assert!(text.contains("retractable; Lyubashenko") && text.contains("simple: false (brute) / false (simpleNL)"), "{text}");

    let o = ybe(&["analyze", path_str(&quandle), "--criterion", "brute", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["kind"], "solution");
    assert_eq!(v["verdicts"][0]["simple"], true);

    let dir = tempfile::tempdir().unwrap();
    assert_eq!(ybe(&["construct", "example", "sym-n", "--n", "5", "--out", path_str(dir.path())]).status.code(), Some(0));
    let text = stdout(&ybe(&["analyze", path_str(&dir.path().join("sym_n_5.brace.json"))]));
    assert!(text.contains("solution on X (|X| = 10)") && text.contains("simple: true (brute) / true (simpleNL)"), "{text}");
}

#[test]
fn caps_give_exit_three() {
    let quandle = shipped_corpus().join("quandle_sym4_transpositions.solution.json");
    let o = Command::new(env!("CARGO_BIN_EXE_ybe"))
        .args(["analyze", path_str(&quandle), "--criterion", "simpleNL"])
        .env("YBE_ELEMENT_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
    let dir = tempfile::tempdir().unwrap();
    let o = ybe(&["construct", "example", "ex1", "--group", "a5", "--n", "2", "--out", path_str(dir.path())]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn corpus_directory_checks() {
    let o = ybe(&["corpus", "--dir", path_str(&shipped_corpus())]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains(" 0 failures"));

    let dir = tempfile::tempdir().unwrap();
    for e in fs::read_dir(shipped_corpus()).unwrap() {
        let e = e.unwrap();
        fs::copy(e.path(), dir.path().join(e.file_name())).unwrap();
    }
    fs::write(dir.path().join("corrupted.solution.json"), r#"{"size": 3, "lambda": [[0,1,2]], "rho": []}"#).unwrap();
    let o = ybe(&["corpus", "--dir", path_str(dir.path()), "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["failures"], 1);
    let failed: Vec<&serde_json::Value> = v["results"].as_array().unwrap().iter().filter(|r| !r["error"].is_null()).collect();
    assert_eq!(failed[0]["file"], "corrupted.solution.json");

    let empty = tempfile::tempdir().unwrap();
    let o = ybe(&["corpus", "--dir", path_str(empty.path())]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("0 objects"));
}
