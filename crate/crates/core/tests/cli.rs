use std::path::PathBuf;
use std::process::{Command, Output};

use hyperkit::io::{parse_document, Document};

fn hyperkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperkit"))
        .args(args)
        .env_remove("HYPERKIT_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hyperkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

const BROKEN: &str = r#"{
  "kind": "hypergroup", "version": 1,
  "labels": ["a", "b"], "unit": 0, "involution": [0, 1],
  "lambda": [[[1, 0], [0, 1]], [[0, 1], [0.5, 0.4]]]
}"#;

#[test]
fn exit_code_matrix() {
    let broken = scratch("broken.json", BROKEN);
    let broken = broken.to_str().unwrap();
    let cases: &[(&[&str], i32)] = &[
        (&["validate", "--builtin", "ghj"], 0),
        (&["validate", "--builtin", "conj-s3"], 0),
        (&["validate", "--builtin", "s3-cosets"], 0),
        (&["validate", broken], 1),
        (&["validate", "/nonexistent/table.json"], 2),
        (&["validate", "--builtin", "nope"], 2),
        (&["validate"], 2),
        (&["frobnicate"], 2),
        (&["characters", "--builtin", "ghj"], 0),
        (&["characters", "--builtin", "s3-group"], 1),
        (&["characters", "--builtin", "conj-s3", "--dual"], 0),
        (&["compose", "--builtin", "ising", "dual", "dual"], 0),
        (&["compose", "--builtin", "s3-cosets", "T<P:[e]", "T<P:[e]"], 2),
        (&["compose", "--builtin", "ghj", "a7"], 2),
        (&["indices", "--bound", "4"], 0),
        (&["indices", "--bound", "0.5"], 2),
        (&["indices", "--bound", "4", "--nmax", "2"], 2),
        (&["build", "two-element", "--lambda", "1.0"], 0),
        (&["build", "two-element", "--lambda", "1.5"], 2),
        (&["build", "classes", "--builtin", "s3"], 0),
        (&["build", "double-cosets", "--builtin", "s3", "--generators", "(12)"], 0),
        (&["build", "double-cosets", "--builtin", "s3", "--generators", "(99)"], 2),
        (&["build", "fusion", "--builtin", "ising"], 0),
        (&["--tol", "-1", "validate", "--builtin", "ghj"], 2),
    ];
    for (args, code) in cases {
        let out = hyperkit(args);
        assert_eq!(out.status.code(), Some(*code), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn broken_table_lists_convexity() {
    let broken = scratch("broken-convexity.json", BROKEN);
    let out = hyperkit(&["validate", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("convexity"));
}

#[test]
fn json_output_parses() {
    let runs: &[(&[&str], &str)] = &[
        (&["--json", "validate", "--builtin", "ghj"], "validation-report"),
        (&["--json", "characters", "--builtin", "ghj", "--dual"], "character-analysis"),
        (&["--json", "characters", "--builtin", "z3"], "character-analysis"),
        (&["--json", "compose", "--builtin", "ghj", "--steps", "a1", "a1", "a1"], "boundary-state"),
        (&["--json", "indices", "--bound", "5", "--nmax", "12"], "admissible-indices"),
        (&["--json", "build", "fusion", "--builtin", "fibonacci"], "hypergroup"),
        (&["build", "group", "--builtin", "q8"], "hypergroup"),
    ];
    for (args, kind) in runs {
        let out = hyperkit(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let doc = parse_document(&stdout(&out), 1e-9).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        assert_eq!(doc.kind(), *kind);
    }
}

#[test]
fn ising_juxtaposition() {
    let out = hyperkit(&["--json", "compose", "--builtin", "ising", "dual", "dual"]);
    let Document::BoundaryState(s) = parse_document(&stdout(&out), 1e-9).unwrap() else {
        panic!("wrong kind");
    };
    assert_eq!(s.result.arrows, ["trivial", "fermionic", "dual"]);
    let expected = [0.5, 0.5, 0.0];
    for (c, e) in s.result.coeffs.iter().zip(expected) {
        assert!((c - e).abs() < 1e-9);
    }
    let text = stdout(&hyperkit(&["compose", "--builtin", "ising", "dual", "fermionic"]));
    assert!(text.contains("1.0000000000 dual"), "{text}");
}

#[test]
fn human_output_annotations() {
    let text = stdout(&hyperkit(&["characters", "--builtin", "ghj"]));
    assert!(text.contains("-0.2679491924 (-2+√3)"), "{text}");
    let text = stdout(&hyperkit(&["indices", "--bound", "4"]));
    assert!(text.contains("non-integer values below 4: 3.6180339887 ((5+√5)/2)"), "{text}");
    let text = stdout(&hyperkit(&["indices", "--bound", "5", "--nmax", "12"]));
    assert!(text.contains("1 + 4cos^2(pi/7)"), "{text}");
    assert!(text.contains("1 + 4cos^2(pi/8)"), "{text}");
    assert!(text.contains("every value in [5, 5]"), "{text}");
}

#[test]
fn built_table_round_trips_through_a_file() {
    let dir = std::env::temp_dir().join(format!("hyperkit-build-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("conj-s3.json");
    let out = hyperkit(&["build", "classes", "--builtin", "s3", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("weights"));
    let out = hyperkit(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = hyperkit(&["characters", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn tolerance_comes_from_the_environment() {
    let near = r#"{
      "kind": "hypergroup", "version": 1,
      "labels": ["a", "b"], "unit": 0,
      "lambda": [[[1, 0], [0, 1]], [[0, 1], [0.5, 0.500001]]]
    }"#;
    let path = scratch("near.json", near);
    let strict = hyperkit(&["validate", path.to_str().unwrap()]);
    assert_eq!(strict.status.code(), Some(1));
    let loose = Command::new(env!("CARGO_BIN_EXE_hyperkit"))
        .args(["validate", path.to_str().unwrap()])
        .env("HYPERKIT_TOL", "1e-4")
        .output()
        .unwrap();
    assert_eq!(loose.status.code(), Some(0));
}

#[test]
fn seeds_do_not_change_the_answer() {
    let a = stdout(&hyperkit(&["--json", "characters", "--builtin", "conj-s4"]));
    let b = stdout(&hyperkit(&["--json", "--seed", "7", "characters", "--builtin", "conj-s4"]));
    let (Document::CharacterAnalysis(a), Document::CharacterAnalysis(b)) =
        (parse_document(&a, 1e-9).unwrap(), parse_document(&b, 1e-9).unwrap())
    else {
        panic!("wrong kind");
    };
    for (ra, rb) in a.characters.chars.iter().zip(&b.characters.chars) {
        for (x, y) in ra.iter().zip(rb) {
            assert!((x - y).norm() < 1e-9);
        }
    }
}
