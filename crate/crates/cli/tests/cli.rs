use std::process::{Command, Output};

fn kumjac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kumjac"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn passing_suite_exits_zero() {
    let out = kumjac(&["--suite", "ideban", "--cases", "n05"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("42 passed, 0 failed"), "{text}");
}

#[test]
fn failing_case_exits_one_and_shows_both_values() {
    let out = kumjac(&[
        "--suite", "theta", "--n", "2", "--cases", "triple", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let json = String::from_utf8(out.stdout).unwrap();
    assert!(json.contains(r#""expected": "(-1, -3, -3)""#), "{json}");
    assert!(json.contains(r#""actual": "(-1, -3, 3)""#), "{json}");
    assert!(json.contains(r#""status": "fail""#));
}

#[test]
fn json_is_reproducible_for_a_seed() {
    let args = [
        "--suite", "spinor", "--n", "3", "--trials", "5", "--seed", "7", "--format", "json",
    ];
    let a = kumjac(&args);
    let b = kumjac(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&a.stdout).contains(r#""seed": 7"#));
}

#[test]
fn empty_selection_is_a_valid_document() {
    let out = kumjac(&[
        "--suite",
        "ideban",
        "--cases",
        "no-such-case",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json = String::from_utf8(out.stdout).unwrap();
    assert!(json.contains(r#""cases": []"#), "{json}");
}

#[test]
fn writes_to_file() {
    let path = std::env::temp_dir().join(format!("kumjac-cli-test-{}.json", std::process::id()));
    let out = kumjac(&[
        "--suite",
        "divisors",
        "--e-range",
        "2..3",
        "--cases",
        "d3",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let body = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(body.matches(r#""status": "pass""#).count(), 6);
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(kumjac(&["--suite", "nope"]).status.code(), Some(2));
    assert_eq!(
        kumjac(&["--suite", "divisors", "--e-range", "5..2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        kumjac(&["--suite", "bellaform", "--n", "9"]).status.code(),
        Some(2)
    );
}
