use std::path::PathBuf;

use bicyclic_cli::{load_table, parse_and_dispatch, TableError, EXIT_FAIL, EXIT_OK, EXIT_USAGE};
use bicyclic_core::oracle::tabulate;
use bicyclic_core::{Elem, NormalForm};
use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("bicyclic").chain(args.iter().copied());
    let code = parse_and_dispatch(argv, &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn ok(args: &[&str]) -> String {
    let r = run(args);
    assert_eq!(r.code, EXIT_OK, "{args:?}: {}", r.stderr);
    r.stdout.trim_end().to_owned()
}

fn write_temp(contents: &str) -> tempfile::NamedTempFile {
    let file = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(file.path(), contents).unwrap();
    file
}

fn table_json(f: NormalForm, bound: u64) -> String {
    ok(&["tabulate", &f.to_string(), "--N", &bound.to_string()])
}

#[test]
fn multiplies_elements() {
    assert_eq!(ok(&["mul", "(1,1,0)", "(0,0,2)"]), "(1,1,1)");
    assert_eq!(ok(&["mul", "( 2 , 0 , 1 )", "(0,3,0)"]), "(2,3,1)");
}

#[test]
fn composes_reversals_into_a_shift() {
    assert_eq!(ok(&["compose", "a1.l0.w1", "a1.l0.w1"]), "a1.l2.w0");
}

#[test]
fn element_verbs() {
    assert_eq!(ok(&["inv", "(3,1,2)"]), "(1,3,2)");
    assert_eq!(ok(&["order", "(2,2,0)", "(1,1,1)"]), "true");
    assert_eq!(ok(&["order", "(1,1,1)", "(2,2,0)"]), "false");
    assert_eq!(ok(&["drel", "(0,5,1)", "(3,2,1)"]), "true");
    assert_eq!(ok(&["drel", "(0,5,1)", "(3,2,2)"]), "false");
    assert_eq!(ok(&["shift", "(1,2,3)", "1"]), "(1,2,2)");
    assert_eq!(ok(&["corner", "(3,4,0)", "2"]), "true");
    assert_eq!(ok(&["family", "2,0,1"]), "0,1,2");
}

#[test]
fn map_verbs() {
    assert_eq!(ok(&["apply", "a1.l0.w1", "(0,0,2)"]), "(2,2,0)");
    assert_eq!(ok(&["normalize", "varpi", "varpi"]), "a1.l2.w0");
    assert_eq!(
        ok(&["normalize", "alpha2", "lambda^3", "varpi"]),
        "a2.l3.w1"
    );
    assert_eq!(ok(&["normalize", "id"]), "a1.l0.w0");
    assert_eq!(ok(&["sd", "a2.l3.w0"]), "(2,3)");
    assert_eq!(ok(&["sd", "(2,3)", "(3,1)"]), "(6,10)");
}

#[test]
fn decompose_recovers_tabulated_form() {
    let file = write_temp(&table_json(NormalForm::new(3, 2, 1).unwrap(), 2));
    assert_eq!(
        ok(&["decompose", "--from-file", file.path().to_str().unwrap()]),
        "a3.l2.w1"
    );
}

#[test]
fn decompose_rejects_non_endomorphism() {
    let mut table: Value = serde_json::from_str(&table_json(NormalForm::IDENTITY, 2)).unwrap();
    // Send the identity to a non-idempotent element.
    for entry in table["entries"].as_array_mut().unwrap() {
        if entry["x"] == serde_json::json!({"i": 0, "j": 0, "p": 0}) {
            entry["fx"] = serde_json::json!({"i": 1, "j": 0, "p": 0});
        }
    }
    let file = write_temp(&table.to_string());
    let r = run(&["decompose", "--from-file", file.path().to_str().unwrap()]);
    assert_eq!(r.code, EXIT_FAIL);
    assert!(r.stderr.contains("NotClassifiable"), "{}", r.stderr);
}

#[test]
fn decompose_rejects_middle_layer_identity_image() {
    let mut table: Value = serde_json::from_str(&table_json(NormalForm::IDENTITY, 2)).unwrap();
    for entry in table["entries"].as_array_mut().unwrap() {
        if entry["x"] == serde_json::json!({"i": 0, "j": 0, "p": 0}) {
            entry["fx"] = serde_json::json!({"i": 0, "j": 0, "p": 1});
        }
    }
    let file = write_temp(&table.to_string());
    let r = run(&[
        "--json",
        "decompose",
        "--from-file",
        file.path().to_str().unwrap(),
    ]);
    assert_eq!(r.code, EXIT_FAIL);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["error"], "MiddleLayerIdentityImage");
}

#[test]
fn verify_passes_for_normal_forms_and_fails_for_tampered_tables() {
    let r = run(&["verify", "a2.l1.w1", "--N", "3"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stdout);
    assert!(r.stdout.contains("PASS homomorphism"));

    let mut table: Value = serde_json::from_str(&table_json(NormalForm::LAMBDA, 4)).unwrap();
    let entries = table["entries"].as_array_mut().unwrap();
    let victim = entries
        .iter_mut()
        .find(|e| e["x"] == serde_json::json!({"i": 1, "j": 0, "p": 0}))
        .unwrap();
    victim["fx"] = serde_json::json!({"i": 9, "j": 0, "p": 0});
    let file = write_temp(&table.to_string());
    let r = run(&["verify", "--from-file", file.path().to_str().unwrap()]);
    assert_eq!(r.code, EXIT_FAIL);
    assert!(r.stdout.contains("FAIL homomorphism"), "{}", r.stdout);
}

#[test]
fn verify_window_must_fit_table() {
    let file = write_temp(&table_json(NormalForm::LAMBDA, 2));
    let r = run(&[
        "verify",
        "--from-file",
        file.path().to_str().unwrap(),
        "--N",
        "3",
    ]);
    assert_eq!(r.code, EXIT_FAIL);
    assert!(r.stderr.contains("DomainTooSmall"), "{}", r.stderr);
}

#[test]
fn scan_and_suite_pass() {
    let r = run(&["scan", "--K", "2", "--M", "1"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.stdout.contains("checks=32"), "{}", r.stdout);
    let r = run(&["suite", "--K", "2", "--M", "2", "--N", "3"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stdout);
    assert!(!r.stdout.contains("FAIL"));
}

#[test]
fn malformed_literals_exit_2_and_name_the_token() {
    let r = run(&["mul", "(1,x,0)", "(0,0,0)"]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.stderr.contains("(1,x,0)"), "{}", r.stderr);

    let r = run(&["compose", "a0.l1.w0", "a1.l0.w0"]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.stderr.contains("a0.l1.w0"), "{}", r.stderr);

    let r = run(&["normalize", "lambda^x"]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.stderr.contains("lambda^x"), "{}", r.stderr);

    let r = run(&["family", "0,2"]);
    assert_eq!(r.code, EXIT_FAIL);
    assert!(r.stderr.contains("NotOmegaClosed"), "{}", r.stderr);

    assert_eq!(run(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(run(&["scan", "--K", "0"]).code, EXIT_USAGE);
}

#[test]
fn help_and_version_exit_0() {
    assert!(ok(&["--help"]).contains("decompose"));
    assert!(ok(&["--version"]).starts_with("bicyclic"));
}

#[test]
fn layer_outside_family_is_rejected() {
    let r = run(&["mul", "(0,0,3)", "(0,0,0)"]);
    assert_eq!(r.code, EXIT_FAIL);
    assert!(r.stderr.contains("NotInFamily"), "{}", r.stderr);
    assert_eq!(
        ok(&["mul", "(0,0,3)", "(0,0,0)", "--family", "0,1,2,3"]),
        "(0,0,3)"
    );
}

#[test]
fn load_table_errors() {
    let missing = PathBuf::from("/nonexistent/table.json");
    assert!(matches!(load_table(&missing), Err(TableError::Io { .. })));

    let file = write_temp("{\"N\": 1, \"entries\": [");
    assert!(matches!(
        load_table(file.path()),
        Err(TableError::Syntax { .. })
    ));

    let mut table: Value = serde_json::from_str(&table_json(NormalForm::IDENTITY, 1)).unwrap();
    table["entries"].as_array_mut().unwrap().pop();
    let file = write_temp(&table.to_string());
    match load_table(file.path()) {
        Err(TableError::MissingEntry(keys)) => assert_eq!(keys, vec![Elem::new(1, 1, 2)]),
        other => panic!("unexpected {other:?}"),
    }
    let r = run(&["decompose", "--from-file", file.path().to_str().unwrap()]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(
        r.stderr.contains("MissingEntry") && r.stderr.contains("(1,1,2)"),
        "{}",
        r.stderr
    );

    let good = tabulate(NormalForm::VARPI, 1).unwrap();
    let file = write_temp(&table_json(NormalForm::VARPI, 1));
    let loaded = load_table(file.path()).unwrap();
    assert_eq!(
        loaded.entries().collect::<Vec<_>>(),
        good.entries().collect::<Vec<_>>()
    );
}

#[test]
fn text_outputs_round_trip_through_the_cli() {
    let x = ok(&["mul", "(4,1,1)", "(0,2,2)"]);
    assert_eq!(ok(&["mul", &x, "(0,0,0)"]), x);
    let f = ok(&["compose", "a2.l1.w1", "a3.l0.w1"]);
    assert_eq!(ok(&["compose", &f, "a1.l0.w0"]), f);
    assert_eq!(ok(&["normalize", &f, "id"]), f);
}
