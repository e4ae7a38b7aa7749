use std::io::Write as _;
use std::process::Command;

use qll::cli::report::{Report, Status};
use qll::cli::{run, EXIT_BUDGET, EXIT_FAILED, EXIT_OK, EXIT_USAGE};

fn qll(args: &[&str]) -> (i32, String, String) {
    qll_with_budget(args, None)
}

fn qll_with_budget(args: &[&str], budget: Option<&str>) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("qll").chain(args.iter().copied());
    let code = run(argv, budget, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Report) {
    let mut all = vec!["--json", "--no-timings"];
    all.extend_from_slice(args);
    let (code, out, err) = qll(&all);
    assert!(err.is_empty(), "{err}");
    (code, serde_json::from_str(&out).unwrap())
}

fn value(r: &Report, name: &str) -> String {
    r.entries[0]
        .values
        .iter()
        .find(|v| v.name == name)
        .unwrap()
        .exact
        .clone()
}

#[test]
fn invariants_of_the_trefoil() {
    let (code, r) = json(&[
        "invariants",
        "--strands",
        "2",
        "--word",
        "1 1 1",
        "--jones",
        "3",
        "--dp",
        "3",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(value(&r, "jones.l3"), "1");
    assert_eq!(value(&r, "d3"), "1");
    let (_, r) = json(&["invariants", "--strands", "2", "--word", "1 1", "--hom", "cyclic 2"]);
    assert_eq!(value(&r, "hom.cyclic 2"), "4");
}

#[test]
fn negative_letters_in_words() {
    let (code, r) = json(&[
        "invariants",
        "--strands",
        "3",
        "--word",
        "-1 2 -1 2",
        "--det",
        "--jones",
        "4",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(value(&r, "det"), "5");
    assert_eq!(value(&r, "jones.l4"), "-1");
}

#[test]
fn estimate_is_reproducible() {
    let args = [
        "hom",
        "--strands",
        "2",
        "--word",
        "1 1 1",
        "--group",
        "S3",
        "--estimate",
        "3000",
        "--seed",
        "9",
    ];
    let (code, a) = json(&args);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&args).1, a);
    let (_, b) = json(&[
        "invariants",
        "--strands",
        "2",
        "--word",
        "1 1 1",
        "--hom-estimate",
        "S3",
        "3000",
        "9",
    ]);
    assert_eq!(value(&b, "hom-estimate.S3"), a.entries[0].values[1].exact);
}

#[test]
fn bundled_table_passes_and_round_trips() {
    let (code, out, _) = qll(&["--json", "--no-timings", "check-table"]);
    assert_eq!(code, EXIT_OK);
    let report: Report = serde_json::from_str(&out).unwrap();
    assert!(report.entries.len() >= 12);
    assert_eq!(report.summary.failed, 0);
    assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", out);
    // identical runs give identical bytes
    assert_eq!(qll(&["--json", "--no-timings", "check-table"]).1, out);
}

#[test]
fn wrong_expectation_fails_with_both_sides() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "trefoil ; 2 ; 1 1 1 ; det=3\nliar ; 3 ; 1 -2 1 -2 ; det=7").unwrap();
    let (code, r) = json(&["check-table", f.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_FAILED);
    assert_eq!(r.summary.failed, 1);
    let failed: Vec<_> = r
        .entries
        .iter()
        .flat_map(|e| e.checks.iter().map(move |c| (&e.name, c)))
        .filter(|(_, c)| c.status == Status::Fail)
        .collect();
    assert_eq!(failed.len(), 1);
    let (name, check) = failed[0];
    assert_eq!(name, "liar");
    assert_eq!(check.actual.as_deref(), Some("5"));
    assert_eq!(check.expected.as_deref(), Some("7"));
    let (_, text, _) = qll(&["check-table", f.path().to_str().unwrap()]);
    assert!(text.contains("[FAIL] expect det: got 5, expected 7"), "{text}");
}

#[test]
fn empty_corpus_passes() {
    let f = tempfile::NamedTempFile::new().unwrap();
    let (code, r) = json(&["check-table", f.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(r.entries.is_empty());
}

#[test]
fn image_verdicts() {
    use qll::image::Verdict;
    let (code, r) = json(&["image", "--tl", "3", "--strands", "3"]);
    assert_eq!(code, EXIT_OK);
    assert!(matches!(r.image.unwrap().verdict, Verdict::FiniteAbelian { .. }));
    let (_, r) = json(&["image", "--tl", "5", "--strands", "3"]);
    assert!(matches!(r.image.unwrap().verdict, Verdict::Infinite { .. }));
    let (_, r) = json(&["image", "--burau", "5", "2", "--strands", "3"]);
    match r.image.unwrap().verdict {
        Verdict::Finite { order } => assert_eq!(480 % order, 0),
        v => panic!("{v:?}"),
    }
    let (code, r) = json(&["image", "--tl", "5", "--strands", "3", "--bound", "10"]);
    assert_eq!(code, EXIT_OK);
    assert!(matches!(
        r.image.unwrap().verdict,
        Verdict::Infinite { .. } | Verdict::Unknown { .. }
    ));
}

#[test]
fn usage_errors() {
    for args in [
        &["frobnicate"][..],
        &["invariants", "--strands", "2", "--word", "3"],
        &["invariants", "--strands", "2", "--word", "1 1", "--arf"],
        &["invariants", "--strands", "2", "--hom", "banana"],
        &["image", "--strands", "3"],
        &["check-table", "/nonexistent/corpus.txt"],
    ] {
        let (code, _, err) = qll(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(!err.is_empty());
    }
    let (code, _, _) = qll_with_budget(&["version"], Some("lots"));
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn budget_refusal() {
    let (code, _, err) = qll_with_budget(
        &["hom", "--strands", "3", "--word", "1 2", "--group", "S3"],
        Some("100"),
    );
    assert_eq!(code, EXIT_BUDGET);
    assert!(err.contains("216"), "{err}");
    let (code, _, _) = qll_with_budget(
        &["hom", "--strands", "3", "--word", "1 2", "--group", "S3"],
        Some("1000"),
    );
    assert_eq!(code, EXIT_OK);
}

#[test]
fn small_budget_skips_state_sums() {
    // 2^4 states allowed: the 7-crossing entries are skipped, not failed
    let (code, _, _) = qll_with_budget(&["--no-timings", "check-table"], Some("16"));
    assert_eq!(code, EXIT_OK);
}

#[test]
fn group_from_table_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# Z3\n0,1,2\n1,2,0\n2,0,1").unwrap();
    let (code, r) = json(&[
        "hom",
        "--strands",
        "2",
        "--word",
        "1 1",
        "--table",
        f.path().to_str().unwrap(),
        "--wirtinger",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r.entries[0].values[1].exact, "9");
    assert_eq!(r.entries[0].checks[0].status, Status::Pass);
}

#[test]
fn binary_entry_point() {
    let out = Command::new(env!("CARGO_BIN_EXE_qll"))
        .args(["invariants", "--strands", "2", "--word", "1 1 1", "--det"])
        .env_remove("QLL_BUDGET")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("det = 3"));
    let out = Command::new(env!("CARGO_BIN_EXE_qll")).arg("version").output().unwrap();
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("qll "));
    let out = Command::new(env!("CARGO_BIN_EXE_qll")).arg("nope").output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
}
