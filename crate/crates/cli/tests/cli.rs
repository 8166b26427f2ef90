use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn problem(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("problems").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liespray")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Writes `value` to a temporary problem file.
fn temp_problem(dir: &tempfile::TempDir, value: &Value) -> String {
    let path = dir.path().join("p.json");
    std::fs::write(&path, serde_json::to_string_pretty(value).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

fn load_json(name: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(problem(name)).unwrap()).unwrap()
}

fn hyperbolic_plane() -> Value {
    json!({
        "dim": 2,
        "metric": { "kind": "diagonal", "entries": [["exp(x2)", "0"], ["0", "1"]] },
        "fields": {
            "a": ["1", "0"],
            "b": ["x1", "-2"],
            "c": ["x1^2/4 - exp(-x2)", "-x1"]
        },
        "sets": { "A": ["a", "b", "c"], "one": ["a"], "open": ["a", "c"] }
    })
}

#[test]
fn analyze_succeeds_on_bundled_problems_and_is_deterministic() {
    for name in ["hyperbolic3.json", "product_h2.json", "flat3.json"] {
        let p = problem(name);
        let first = run(&["analyze", p.to_str().unwrap()]);
        assert_eq!(code(&first), 0, "{name}: {}", stderr(&first));
        let second = run(&["analyze", p.to_str().unwrap()]);
        assert_eq!(first.stdout, second.stdout, "{name}: report is not deterministic");
    }
}

#[test]
fn analyze_json_output_parses_and_out_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let p = problem("hyperbolic3.json");
    let o = run(&["analyze", p.to_str().unwrap(), "--format", "json", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert!(v.is_object());
}

#[test]
fn table_formats() {
    let dir = tempfile::tempdir().unwrap();
    let p = temp_problem(&dir, &hyperbolic_plane());
    let o = run(&["table", &p, "--set", "A", "--format", "csv"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0], "[.],a,b,c");
    let o = run(&["table", &p, "--set", "A"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("| [.] | a | b | c |"));
}

#[test]
fn single_generator_table_is_one_zero_cell() {
    let dir = tempfile::tempdir().unwrap();
    let p = temp_problem(&dir, &hyperbolic_plane());
    let o = run(&["table", &p, "--set", "one", "--format", "csv"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o), "[.],a\na,0\n");
}

#[test]
fn non_closed_set_is_an_input_error_naming_the_pair() {
    let dir = tempfile::tempdir().unwrap();
    let p = temp_problem(&dir, &hyperbolic_plane());
    let o = run(&["table", &p, "--set", "open"]);
    assert_eq!(code(&o), 1);
    let err = stderr(&o);
    assert!(err.contains('a') && err.contains('c'), "{err}");
}

#[test]
fn malformed_inputs_exit_with_input_code() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, "").unwrap();
    assert_eq!(code(&run(&["analyze", empty.to_str().unwrap()])), 1);

    let mut v = hyperbolic_plane();
    v["metric"]["entries"] = json!([["x1 +", "0"], ["0", "1"]]);
    assert_eq!(code(&run(&["analyze", &temp_problem(&dir, &v)])), 1);

    let mut v = hyperbolic_plane();
    v["unexpected"] = json!(true);
    assert_eq!(code(&run(&["analyze", &temp_problem(&dir, &v)])), 1);

    let missing = dir.path().join("missing.json");
    assert_eq!(code(&run(&["analyze", missing.to_str().unwrap()])), 1);
    assert_eq!(code(&run(&["no-such-command"])), 1);
}

#[test]
fn unknown_oracle_selector_is_an_input_error() {
    let p = problem("hyperbolic3.json");
    assert_eq!(code(&run(&["oracle", p.to_str().unwrap(), "--check", "no-such-check"])), 1);
}

#[test]
fn oracle_identity_check_passes() {
    let p = problem("hyperbolic3.json");
    let o = run(&["oracle", p.to_str().unwrap(), "--check", "R-vs-half-[h,h]", "--points", "3"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn solve_over_empty_dictionary_has_dimension_zero() {
    let dir = tempfile::tempdir().unwrap();
    let mut v = hyperbolic_plane();
    v["sets"]["none"] = json!([]);
    let p = temp_problem(&dir, &v);
    let o = run(&["solve", &p, "--dict", "none", "--isometry"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "dimension 0");
}

#[test]
fn solve_recovers_isometries_of_the_flat_example() {
    let p = problem("flat3.json");
    let o = run(&["solve", p.to_str().unwrap(), "--dict", "AS", "--isometry"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).starts_with("dimension 6\n"));
}

#[test]
fn undocumented_discrepancy_is_a_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let mut v = load_json("product_h2.json");
    v["known_discrepancies"].as_array_mut().unwrap().remove(0);
    let o = run(&["analyze", &temp_problem(&dir, &v)]);
    assert_eq!(code(&o), 2, "{}", stderr(&o));
}

#[test]
fn wrong_expectation_is_a_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let mut v = load_json("hyperbolic3.json");
    v["analyses"]["algebra"][0]["expect"]["simple"] = json!(false);
    let o = run(&["analyze", &temp_problem(&dir, &v)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("mismatch"));
}
