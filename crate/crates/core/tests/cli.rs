use std::path::PathBuf;
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> String {
    root().join("fixtures").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bivariant")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn validate_diamond() {
    let o = run(&["validate", "--category", &fixture("diamond.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "no violations\n");
    let o = run(&["validate", "--category", &fixture("diamond.json"), "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["violations"], serde_json::json!([]));
}

#[test]
fn schema_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"objects\": []}").unwrap();
    let o = run(&["validate", "--category", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["validate", "--category", "/nonexistent.json"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn generators_over_the_point() {
    let o = run(&[
        "generators", "--category", &fixture("fs4.json"), "--context", "bang_2", "--max-bundles", "0", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["count"], 6);
}

#[test]
fn eval_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.expr");
    std::fs::write(&bad, "gamma(cyc(const_a;)\n").unwrap();
    let fs4 = fixture("fs4.json");
    let o = run(&["eval", "--category", &fs4, "--expr", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 1") && err.contains("parse error"), "{err}");

    let o = run(&["eval", "--category", &fs4, "--text", "prod(cyc(id_2;), cyc(id_2;))"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["eval", "--category", &fs4, "--text", "cyc(nope;)"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["eval", "--category", &fs4, "--text", "pull(bang_4, cyc(id_4;))"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8(o.stderr).unwrap().contains("no declared fiber product"));
    let o = run(&["eval", "--category", &fs4, "--text", "cyc(id_2;) == cyc(swap;) over bang_2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["eval", "--category", &fs4, "--text", "cyc(id_2;) == cyc(const_a;)"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn eval_and_gamma_output() {
    let fs4 = fixture("fs4.json");
    let o = run(&["eval", "--category", &fs4, "--target", "fiberwise", "--text", "gamma(cyc(const_a;))"]);
    assert_eq!(stdout(&o), "gamma(cyc(const_a; ))\n  = (a↦2, b↦0)\n");
    let o = run(&["gamma", "--category", &fs4, "--context", "bang_2", "--max-bundles", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 6);
    assert!(text.contains("[2to2_aa ; ] ↦ (a↦2, b↦0)"), "{text}");
}

#[test]
fn genfixture_reproduces_bundled_files() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["diamond", "fs4"] {
        let out = dir.path().join(format!("{name}.json"));
        let o = run(&["genfixture", name, "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(
            std::fs::read(&out).unwrap(),
            std::fs::read(fixture(&format!("{name}.json"))).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn check_reports_are_deterministic() {
    let args = [
        "check", "--category", &fixture("fs4.json"), "--fibered", "--target", "fiberwise", "--max-source", "1",
        "--format", "json",
    ];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(doc["report"]["theory"], "fiberwise");
    let sampled = [&args[..], &["--cap", "50", "--seed", "7"]].concat();
    let (a, b) = (run(&sampled), run(&sampled));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("seeded sample"));
}

#[test]
fn additivity_on_diamond_is_not_applicable() {
    let o = run(&["check", "--category", &fixture("diamond.json"), "--suites", "additivity"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("n/a").count(), 3);
}
