use std::path::Path;
use std::process::{Command, Output};

fn gwa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gwa"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).expect("golden file")
}

#[test]
fn json_matches_golden_files() {
    let cases: [(&str, &[&str]); 3] = [
        ("simple.json", &["simple", "--a", "(h-1)^2"]),
        ("limit.json", &["limit", "--a", "h^2+1", "--pair", "y,x"]),
        ("endos.json", &["endos", "--a", "h^2+1"]),
    ];
    for (file, args) in cases {
        let mut full = args.to_vec();
        full.extend(["--format", "json"]);
        let out = gwa(&full);
        assert_eq!(out.status.code(), Some(0), "{file}");
        assert_eq!(String::from_utf8(out.stdout).unwrap(), golden(file), "{file}");
    }
}

#[test]
fn text_output_names_each_row() {
    let out = gwa(&["limit", "--a", "h^2+1", "--pair", "y,x"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("limit: a = h^2 + 1, conductor = 1\n"), "{text}");
    assert!(text.contains("{y,x} = -2*h^2"), "{text}");
    assert!(text.contains("[PASS] closed form"), "{text}");
}

#[test]
fn failing_checks_exit_one() {
    for args in [
        &["check-endo", "--a", "h^2+1", "--kind", "positive", "--gamma", "2"][..],
        &["jacobi", "--a", "h^2+1", "--yx", "x"],
    ] {
        assert_eq!(gwa(args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["simple", "--a", "h^2+1", "--bogus"][..],
        &["simple", "--a", "h^2 +"],
        &["simple", "--a", "z8*h + 1"],
        &["simple"],
        &["frobnicate"],
    ] {
        let out = gwa(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn identity_check_passes() {
    let out = gwa(&["check-endo", "--a", "(h^2+1)^2", "--kind", "positive", "--gamma", "1"]);
    assert_eq!(out.status.code(), Some(0));
}
