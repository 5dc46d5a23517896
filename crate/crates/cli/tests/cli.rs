use std::path::PathBuf;
use std::process::{Command, Output};

fn sepsplit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sepsplit")).args(args).output().unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_failure_exits_one_with_counterexample() {
    let input = scratch("min_sep.txt", "11110000\n11001100\n10101010\n");
    let o = sepsplit(&["verify", "nsep", "--n", "2", "--input", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!stdout(&o).trim().is_empty());

    let o = sepsplit(&["verify", "sep", "--input", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn guards_and_usage_errors_exit_two() {
    assert_eq!(sepsplit(&["search", "min", "separating", "--k", "40"]).status.code(), Some(2));
    assert_eq!(sepsplit(&["construct", "bogus"]).status.code(), Some(2));
    let missing = sepsplit(&["verify", "sep", "--input", "/nonexistent/family.txt"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn guarded_experiment_aborts_with_summary() {
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("census_guard.csv");
    let spec = scratch(
        "census_guard.toml",
        &format!("experiment = \"census\"\nm = 7\nout = {:?}\n", out.to_str().unwrap()),
    );
    let o = sepsplit(&["experiment", "run", spec.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("GuardExceeded"));
}

#[test]
fn seeded_construction_is_reproducible() {
    let args = ["construct", "rand-nsep", "--n", "2", "--k", "8", "--seed", "3", "--verify", "--format", "json"];
    let a = sepsplit(&args);
    let b = sepsplit(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(doc["k"], 8);
}

#[test]
fn unsafe_limits_lift_guards() {
    let o = sepsplit(&["--unsafe-limits", "search", "min", "separating", "--k", "11", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["value"], 4);
}
