//! The acceptance criteria, one pass/fail line each.

mod common;

use bivariant::catcore::{Category, MorId};
use bivariant::dsl::parse_statement;
use bivariant::fixtures;
use bivariant::suite::{check_additivity, check_bivariant_axioms, check_grothendieck, check_orientation_axioms, Bounds, Status};
use bivariant::targets::Fiberwise;
use bivariant::transform;
use bivariant::universal::{Cycle, Universal};
use num_bigint::BigInt;
use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .display()
        .to_string()
}

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bivariant")).args(args).output().unwrap()
}

fn diamond_check() -> Vec<String> {
    [
        "check", "--category", &fixture("diamond.json"), "--fibered", "--max-source", "none", "--max-bundles", "2",
        "--coeff-range", "2", "--exhaustive", "--format", "json",
    ]
    .map(String::from)
    .to_vec()
}

fn fs4_check() -> Vec<String> {
    [
        "check", "--category", &fixture("fs4.json"), "--fibered", "--max-source", "2", "--max-bundles", "1", "--cap",
        "10000", "--format", "json",
    ]
    .map(String::from)
    .to_vec()
}

fn run_check(args: &[String]) -> (Output, Duration) {
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    let start = Instant::now();
    let out = cli(&args);
    (out, start.elapsed())
}

fn m(cat: &Category, name: &str) -> MorId {
    cat.morphism_by_name(name).unwrap()
}

const UNIVERSAL_RECORDS: &[&str] = &[
    "product-associative",
    "push-functorial",
    "pull-functorial",
    "push-product",
    "pull-product",
    "push-pull",
    "projection-formula",
    "unit-right",
    "unit-left",
    "unit-pull",
    "commutativity",
    "theta-composite",
    "theta-identity",
    "theta-nice",
    "orient-identity",
    "orient-commute",
    "orient-product-left",
    "orient-product-right",
    "orient-push",
    "orient-pull",
    "orient-as-product",
    "generator-decomposition",
];

fn criterion_1() {
    for args in [diamond_check(), fs4_check()] {
        let (out, took) = run_check(&args);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        let records = doc["report"]["records"].as_array().unwrap();
        for r in records {
            assert_eq!(r["failures"], 0, "{}", r["name"]);
            assert!(r["status"] == "pass" || r["status"] == "not-applicable", "{r}");
        }
        for name in UNIVERSAL_RECORDS {
            let r = records.iter().find(|r| r["name"] == *name).unwrap_or_else(|| panic!("missing {name}"));
            assert_eq!(r["status"], "pass", "{name}");
        }
        println!("    {} in {:.1?}", args[2].rsplit('/').next().unwrap(), took);
        assert!(took < Duration::from_secs(120));
    }
}

/// Maps `W → 2` for `|W| ≤ 2` up to bijections of `W`: one sorted value tuple per class.
fn brute_force_classes() -> usize {
    let mut classes = BTreeSet::new();
    for w in 0..=2u32 {
        for code in 0..2u32.pow(w) {
            let mut values: Vec<u32> = (0..w).map(|i| (code >> i) & 1).collect();
            values.sort();
            classes.insert(values);
        }
    }
    classes.len()
}

fn criterion_2() {
    let out = cli(&[
        "generators", "--category", &fixture("fs4.json"), "--context", "bang_2", "--max-source", "2", "--max-bundles",
        "0", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["count"], 6);
    assert_eq!(brute_force_classes(), 6);
}

fn criterion_3() {
    let cat = fixtures::fs4();
    let t = Fiberwise::new(&cat).unwrap();
    let b = Bounds::default();
    for r in [check_bivariant_axioms(&t, &b).unwrap(), check_orientation_axioms(&t, &b).unwrap()] {
        assert_eq!(r.failures(), 0, "{r}");
        assert_eq!(r.skips(), 0, "{r}");
        assert!(r.all_pass(), "{r}");
    }
}

fn criterion_4() {
    let cat = fixtures::fs4();
    let t = Fiberwise::new(&cat).unwrap();
    let b = Bounds {
        max_source: Some(2),
        max_bundles: 1,
        instance_cap: None,
        ..Bounds::default()
    };
    let r = check_grothendieck(&t, &b).unwrap();
    assert!(r.all_pass(), "{r}");
    for name in [
        "gamma-product",
        "gamma-push",
        "gamma-pull",
        "gamma-normalization",
        "gamma-orient",
        "gamma-representative",
        "gamma-decomposed",
        "gamma-decomposed-reversed",
        "gamma-fold-order",
    ] {
        let rec = r.record(name).unwrap();
        assert_eq!(rec.status, Status::Pass, "{name}");
        assert_eq!(rec.instances, rec.space, "{name} must be exhaustive");
    }
}

fn criterion_5() {
    let cat = fixtures::fs4();
    let (t, u) = (Fiberwise::new(&cat).unwrap(), Universal::new(&cat));
    let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();

    let c = u.generator(m(&cat, "bang_2"), Cycle::bare(m(&cat, "const_a"))).unwrap();
    assert_eq!(transform::gamma(&t, &c).unwrap().values, ints(&[2, 0]));

    let a = u.generator(m(&cat, "swap"), Cycle::bare(m(&cat, "id_2"))).unwrap();
    let b = u.generator(m(&cat, "bang_2"), Cycle::bare(m(&cat, "const_a"))).unwrap();
    let expect = u.generator(m(&cat, "bang_2"), Cycle::bare(m(&cat, "const_b"))).unwrap();
    assert_eq!(u.product(&a, &b).unwrap(), expect);

    let x = t.value(m(&cat, "bang_2"), [1, 2]).unwrap();
    let y = t.value(m(&cat, "bang_2"), [3, 4]).unwrap();
    assert_eq!(transform::exterior_covariant(&t, &x, &y).unwrap().values, ints(&[3, 4, 6, 8]));

    let z = t.value(m(&cat, "bang_2"), [3, 7]).unwrap();
    assert_eq!(transform::gysin_pullback(&t, m(&cat, "const_a"), &z).unwrap().values, ints(&[3, 3]));
}

fn criterion_6() {
    let families: BTreeSet<&str> = common::DESIGNATED.iter().map(|(_, _, rec)| *rec).collect();
    assert!(families.len() >= 10);
    let mut faults = BTreeSet::new();
    for &(fault, suite, record) in common::DESIGNATED {
        common::assert_caught(fault, suite, record);
        faults.insert(format!("{fault:?}"));
    }
    println!("    {} mutants, {} designated records, none survive", faults.len(), common::DESIGNATED.len());
}

fn criterion_7() {
    let cat = fixtures::fs4();
    let t = Fiberwise::new(&cat).unwrap();
    let b = Bounds {
        max_source: Some(3),
        ..Bounds::default()
    };
    let r = check_additivity(&t, &b).unwrap();
    assert!(r.all_pass(), "{r}");
    assert!(r.records.iter().all(|x| x.status == Status::Pass && x.instances > 0));

    let d = fixtures::diamond();
    let t = Universal::new(&d);
    let r = check_additivity(&t, &b).unwrap();
    assert!(r.records.iter().all(|x| x.status == Status::NotApplicable), "{r}");
}

fn criterion_8() {
    for args in [diamond_check(), fs4_check()] {
        let (a, _) = run_check(&args);
        let (b, _) = run_check(&args);
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{}", args[2]);
    }
    let examples = fixture("examples.expr");
    let out = cli(&[
        "eval", "--category", &fixture("fs4.json"), "--fibered", "--target", "fiberwise", "--expr", &examples,
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&examples).unwrap();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let s = parse_statement(line).unwrap();
        let again = parse_statement(&s.to_string()).unwrap();
        assert_eq!(again, s);
        assert_eq!(again.to_string(), s.to_string());
    }
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn()); 8] = [
        ("axiom certification of the universal theory", criterion_1),
        ("generator count against a brute-force oracle", criterion_2),
        ("fiberwise target certification", criterion_3),
        ("universal transformation into the fiberwise target", criterion_4),
        ("worked values", criterion_5),
        ("mutation sensitivity", criterion_6),
        ("additivity", criterion_7),
        ("CLI determinism and example round-trip", criterion_8),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let ok = catch_unwind(AssertUnwindSafe(f)).is_ok();
        println!("criterion {}: {} ({name})", i + 1, if ok { "PASS" } else { "FAIL" });
        if !ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
