//! Every `--json` output validates against the shipped schema for its verb.

use std::path::{Path, PathBuf};

use bicyclic_cli::{parse_and_dispatch, EXIT_FAIL, EXIT_OK};
use jsonschema::JSONSchema;
use serde_json::Value;

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas")
}

fn read_schema(name: &str) -> Value {
    let path = schema_dir().join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    serde_json::from_str(&text).unwrap()
}

fn compile(name: &str) -> JSONSchema {
    let mut options = JSONSchema::options();
    for entry in std::fs::read_dir(schema_dir()).unwrap() {
        let file = entry.unwrap().file_name().into_string().unwrap();
        options.with_document(
            format!("https://bicyclic.invalid/schemas/{file}"),
            read_schema(&file),
        );
    }
    options
        .compile(&read_schema(name))
        .unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn json_output(args: &[&str], expected_code: i32) -> Value {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = ["bicyclic", "--json"]
        .into_iter()
        .chain(args.iter().copied());
    let code = parse_and_dispatch(argv, &mut out, &mut err);
    assert_eq!(
        code,
        expected_code,
        "{args:?}: {}",
        String::from_utf8_lossy(&err)
    );
    serde_json::from_slice(&out).unwrap_or_else(|e| panic!("{args:?}: {e}"))
}

fn assert_valid(schema: &str, doc: &Value) {
    let compiled = compile(schema);
    let msgs: Vec<String> = match compiled.validate(doc) {
        Ok(()) => return,
        Err(errors) => errors
            .map(|e| format!("{} at {}", e, e.instance_path))
            .collect(),
    };
    panic!("{schema} rejects {doc}: {}", msgs.join("; "));
}

fn table_file(form: &str, bound: &str) -> tempfile::NamedTempFile {
    let doc = json_output(&["tabulate", form, "--N", bound], EXIT_OK);
    let file = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(file.path(), doc.to_string()).unwrap();
    file
}

#[test]
fn element_outputs() {
    for args in [
        &["mul", "(1,1,0)", "(0,0,2)"][..],
        &["inv", "(3,1,2)"],
        &["shift", "(1,2,3)", "1"],
        &["apply", "a2.l3.w1", "(1,0,1)"],
    ] {
        assert_valid("element.schema.json", &json_output(args, EXIT_OK));
    }
    assert_eq!(
        json_output(&["mul", "(1,1,0)", "(0,0,2)"], EXIT_OK),
        serde_json::json!({"i": 1, "j": 1, "p": 1})
    );
}

#[test]
fn boolean_outputs() {
    for args in [
        &["order", "(2,2,0)", "(1,1,1)"][..],
        &["drel", "(0,1,0)", "(1,0,0)"],
        &["corner", "(3,4,0)", "5"],
    ] {
        assert_valid("bool_result.schema.json", &json_output(args, EXIT_OK));
    }
}

#[test]
fn family_output() {
    assert_valid(
        "family.schema.json",
        &json_output(&["family", "1,2,3"], EXIT_OK),
    );
}

#[test]
fn normal_form_outputs() {
    for args in [
        &["compose", "a1.l0.w1", "a1.l0.w1"][..],
        &["normalize", "alpha3", "varpi", "lambda^2"],
    ] {
        assert_valid("normal_form.schema.json", &json_output(args, EXIT_OK));
    }
    let file = table_file("a2.l1.w1", "2");
    let doc = json_output(
        &["decompose", "--from-file", file.path().to_str().unwrap()],
        EXIT_OK,
    );
    assert_valid("normal_form.schema.json", &doc);
    assert_eq!(doc, serde_json::json!({"k": 2, "m": 1, "w": 1}));
}

#[test]
fn sd_pair_outputs() {
    assert_valid(
        "sd_pair.schema.json",
        &json_output(&["sd", "a2.l3.w0"], EXIT_OK),
    );
    assert_valid(
        "sd_pair.schema.json",
        &json_output(&["sd", "(2,3)", "(3,1)"], EXIT_OK),
    );
}

#[test]
fn table_output() {
    assert_valid(
        "table.schema.json",
        &json_output(&["tabulate", "a1.l1.w1", "--N", "2"], EXIT_OK),
    );
}

#[test]
fn report_outputs() {
    assert_valid(
        "report.schema.json",
        &json_output(&["scan", "--K", "2", "--M", "2"], EXIT_OK),
    );
    assert_valid(
        "report_list.schema.json",
        &json_output(&["verify", "a2.l0.w1", "--N", "3"], EXIT_OK),
    );
    assert_valid(
        "report_list.schema.json",
        &json_output(&["suite", "--K", "2", "--M", "1", "--N", "3"], EXIT_OK),
    );
}

#[test]
fn failing_report_output() {
    let mut table: Value = json_output(&["tabulate", "a1.l1.w0", "--N", "4"], EXIT_OK);
    for entry in table["entries"].as_array_mut().unwrap() {
        entry["fx"]["i"] = Value::from(entry["fx"]["i"].as_u64().unwrap() * 2);
    }
    let file = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(file.path(), table.to_string()).unwrap();
    let doc = json_output(
        &["verify", "--from-file", file.path().to_str().unwrap()],
        EXIT_FAIL,
    );
    assert_valid("report_list.schema.json", &doc);
    assert_eq!(doc["status"], "fail");
}

#[test]
fn error_output() {
    let doc = json_output(&["family", "0,2"], EXIT_FAIL);
    assert_valid("error.schema.json", &doc);
    assert_eq!(doc["error"], "NotOmegaClosed");
}

#[test]
fn schemas_reject_wrong_shapes() {
    let compiled = compile("element.schema.json");
    assert!(!compiled.is_valid(&serde_json::json!({"i": 0, "j": 0})));
    assert!(!compiled.is_valid(&serde_json::json!({"i": -1, "j": 0, "p": 0})));
    let compiled = compile("normal_form.schema.json");
    assert!(!compiled.is_valid(&serde_json::json!({"k": 0, "m": 0, "w": 0})));
    assert!(!compiled.is_valid(&serde_json::json!({"k": 1, "m": 0, "w": 2})));
    let compiled = compile("table.schema.json");
    assert!(!compiled.is_valid(
        &serde_json::json!({"N": 1, "entries": [{"x": {"i": 0}, "fx": {"i": 0, "j": 0, "p": 0}}]})
    ));
}
