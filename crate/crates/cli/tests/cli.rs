use std::io::Write;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn data(name: &str) -> String {
    format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn bmfp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bmfp"))
        .args(args)
        .env_remove("BMFP_TOLERANCE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn parse(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

/// The file lives as long as the returned handle.
fn temp(contents: &str) -> (tempfile::NamedTempFile, String) {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    let path = f.path().to_string_lossy().into_owned();
    (f, path)
}

#[test]
fn validate_example_b() {
    let o = bmfp(&["validate", &data("example-b.space.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).contains("minimal coefficient 3.0"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn validate_under_declared() {
    let space = data("example-a.space.json");
    let o = bmfp(&[
        "validate",
        &space,
        "--coefficient",
        "1.4",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v = parse(&o);
    assert_eq!(v["passed"], false);
    assert_eq!(v["violations"][0]["axiom"], "iii");
    assert_eq!(v["violations"][0]["points"], json!(["1", "3", "2"]));
    assert_eq!(v["violations"][0]["lhs"], 3.0);
    assert_eq!(v["violations"][0]["rhs"], 2.8);
    assert_eq!(v["minimal_coefficient"], 1.5);
    let table = stdout(&bmfp(&["validate", &space, "--coefficient", "1.4"]));
    assert!(table.contains("violation (iii) x=1 y=3 z=2"), "{table}");
}

#[test]
fn validate_sqrt_override() {
    let space = data("example-b.space.json");
    let o = bmfp(&["validate", &space, "--coefficient", "sqrt(3)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("coefficient sqrt(3) = 1.73205"));
}

#[test]
fn empty_points_is_input_error() {
    let (_f, path) = temp(r#"{"points": [], "distances": [], "coefficient": 1}"#);
    let o = bmfp(&["validate", &path]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("empty"));
}

#[test]
fn malformed_json_reports_position() {
    let (_f, path) = temp("{\n  \"points\": [\"a\",\n  ]\n}");
    let o = bmfp(&["validate", &path]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains(":3:3:"), "{err}");
    assert!(o.stdout.is_empty());
}

#[test]
fn bad_inputs_never_panic() {
    let cases = [
        "",
        "null",
        "[]",
        r#"{"points": ["a"], "distances": [[0, 1]], "coefficient": 1}"#,
        r#"{"points": ["a", "a"], "distances": [[0, 1], [1, 0]], "coefficient": 1}"#,
        r#"{"points": ["a", "b"], "distances": [[0, -1], [-1, 0]], "coefficient": 1}"#,
        r#"{"points": ["a", "b"], "distances": [[0, 1], [1, 0]], "coefficient": 0.5}"#,
        r#"{"points": ["a", "b"], "distances": [[0, 1], [1, 0]], "coefficient": "pi"}"#,
        r#"{"points": ["a", "b"], "distances": [[0, 1], [1, 0]]}"#,
        r#"{"points": ["a", "b"], "distances": [[0, 1], [1, 0]], "coefficient": 1, "extra": 0}"#,
    ];
    for case in cases {
        let (_f, path) = temp(case);
        for cmd in ["validate", "coefficient"] {
            let o = bmfp(&[cmd, &path]);
            let code = o.status.code();
            // the coefficient command does not need a declared coefficient
            let ok = code == Some(2) || (cmd == "coefficient" && code == Some(0));
            assert!(ok, "{cmd} {case:?}: {code:?} {}", stderr(&o));
            assert!(!stderr(&o).contains("panicked"), "{case:?}");
        }
    }
    let o = bmfp(&["validate", "/nonexistent/space.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn coefficient_reports_minimal_and_declared() {
    let o = bmfp(&[
        "coefficient",
        &data("example-a.space.json"),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = parse(&o);
    assert_eq!(v["minimal_coefficient"], 1.5);
    assert_eq!(v["minimal_triple"], json!(["1", "3", "2"]));
    assert_eq!(v["declared"], 1.73205);
    assert_eq!(v["declared_admissible"], true);
}

#[test]
fn coefficient_of_asymmetric_table_fails() {
    let (_f, path) = temp(r#"{"points": ["a", "b"], "distances": [[0, 1], [2, 0]]}"#);
    let o = bmfp(&["coefficient", &path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("violation (ii) d(a, b) = 1.0 but d(b, a) = 2.0"));
}

fn certify(space: &str, suite: &str, theorem: &str) -> Output {
    bmfp(&[
        "certify",
        &data(space),
        &data("example.map.json"),
        &data(suite),
        "--theorem",
        theorem,
        "--format",
        "json",
    ])
}

#[test]
fn certify_example_b_basic_fails() {
    let o = certify("example-b.space.json", "example-b.suite.json", "basic");
    assert_eq!(o.status.code(), Some(1));
    let c = &parse(&o)["certificate"];
    assert_eq!(c["certified"], false);
    assert_eq!(c["witnesses"][0]["x"], "2");
    assert_eq!(c["witnesses"][0]["y"], "4");
    assert_eq!(c["witnesses"][0]["margin"], -0.166667);
    assert_eq!(c["min_margin"], -0.166667);
}

#[test]
fn certify_example_b_generalized_passes() {
    let o = certify(
        "example-b.space.json",
        "example-b.suite.json",
        "generalized",
    );
    assert_eq!(o.status.code(), Some(0));
    let c = &parse(&o)["certificate"];
    assert_eq!(c["certified"], true);
    assert_eq!(c["min_j_value"], 2.66667);
    for p in c["pairs"].as_array().unwrap() {
        assert_eq!(p["argument"], 15.0);
    }
}

#[test]
fn certify_example_a_basic_passes() {
    let o = certify("example-a.space.json", "example-a.suite.json", "basic");
    assert_eq!(o.status.code(), Some(0));
    let v = parse(&o);
    assert_eq!(v["certificate"]["min_j_value"], 1.44338);
    assert_eq!(v["suite"]["k_expr"], "sqrt(3)");
    assert!(o.stderr.is_empty(), "{}", stderr(&o));
}

#[test]
fn precision_flag() {
    let o = bmfp(&[
        "certify",
        &data("example-a.space.json"),
        &data("example.map.json"),
        &data("example-a.suite.json"),
        "--precision",
        "12",
    ]);
    assert!(
        stdout(&o).contains("min j_value 1.44337567297"),
        "{}",
        stdout(&o)
    );
    assert_eq!(
        bmfp(&["demo", "A", "--precision", "0"]).status.code(),
        Some(2)
    );
}

#[test]
fn certify_warns_on_non_member_suite() {
    let (_f, suite) = temp(
        r#"{"theta": {"kind": "affine_plus_one"}, "fc": {"kind": "ratio", "c": 1}, "j": {"kind": "scaled_ratio", "k": 2}}"#,
    );
    let o = bmfp(&[
        "certify",
        &data("example-b.space.json"),
        &data("example.map.json"),
        &suite,
    ]);
    assert!(
        stderr(&o).contains("warning: suite is not a verified member"),
        "{}",
        stderr(&o)
    );
    assert!(stdout(&o).contains("membership not a member"));
}

#[test]
fn certify_bad_inputs_are_input_errors() {
    let o = bmfp(&[
        "certify",
        &data("example-a.space.json"),
        &data("swap.map.json"),
        &data("example-a.suite.json"),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown point"), "{}", stderr(&o));

    let (_f, partial) = temp(r#"{"table": {"1": "3", "2": "3", "3": "3"}}"#);
    let o = bmfp(&[
        "certify",
        &data("example-a.space.json"),
        &partial,
        &data("example-a.suite.json"),
    ]);
    assert_eq!(o.status.code(), Some(2));

    let (_g, suite) = temp(
        r#"{"theta": {"kind": "cubic"}, "fc": {"kind": "ratio", "c": 1}, "j": {"kind": "scaled_ratio", "k": 2}}"#,
    );
    let o = bmfp(&[
        "certify",
        &data("example-a.space.json"),
        &data("example.map.json"),
        &suite,
    ]);
    assert_eq!(o.status.code(), Some(2));

    // a space that fails its own axioms cannot be certified against
    let (_h, space) = temp(
        r#"{"points": ["1", "2", "3", "4"], "distances": [[0,3,1,4],[3,0,1,4],[1,1,0,4],[4,4,4,0]], "coefficient": 1.4}"#,
    );
    let o = bmfp(&[
        "certify",
        &space,
        &data("example.map.json"),
        &data("example-a.suite.json"),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn certify_table_columns() {
    let o = bmfp(&[
        "certify",
        &data("example-b.space.json"),
        &data("example.map.json"),
        &data("example-b.suite.json"),
    ]);
    let out = stdout(&o);
    assert!(
        out.contains("pair    d(Sx,Sy)  d(x,y)  j_value   margin     verdict"),
        "{out}"
    );
    assert!(
        out.contains("(2, 4)  1.0       4.0     0.833333  -0.166667  fail"),
        "{out}"
    );
    assert!(out.contains("witness (2, 4) j_value 0.833333 margin -0.166667"));
}

#[test]
fn iterate_from_four() {
    let o = bmfp(&[
        "iterate",
        &data("example-a.space.json"),
        &data("example.map.json"),
        "--seed",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let t = &parse(&o)["trajectories"][0];
    assert_eq!(t["seed"], "4");
    assert_eq!(t["visited"], json!(["4", "1", "3"]));
    assert_eq!(t["step_distances"], json!([4.0, 1.0, 0.0]));
    assert_eq!(
        t["outcome"],
        json!({"kind": "fixed_point", "point": "3", "step": 2})
    );
}

#[test]
fn iterate_example_b_from_fixed_point() {
    let o = bmfp(&[
        "iterate",
        &data("example-b.space.json"),
        &data("example.map.json"),
        "--seed",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "seed 3: 3; fixed point 3 at step 0; step distances [0.0]\n"
    );
}

#[test]
fn iterate_all_seeds() {
    let o = bmfp(&[
        "iterate",
        &data("example-b.space.json"),
        &data("example.map.json"),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = parse(&o);
    let seeds: Vec<&str> = v["trajectories"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["seed"].as_str().unwrap())
        .collect();
    assert_eq!(seeds, ["1", "2", "3", "4"]);
    assert_eq!(v["max_steps"], 5);
}

#[test]
fn iterate_swap_cycles() {
    let o = bmfp(&[
        "iterate",
        &data("swap.space.json"),
        &data("swap.map.json"),
        "--seed",
        "p",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(
        parse(&o)["trajectories"][0]["outcome"],
        json!({"kind": "cycle", "period": 2, "entry": 0, "entry_point": "p"})
    );
}

#[test]
fn iterate_errors() {
    let space = data("example-a.space.json");
    let map = data("example.map.json");
    for extra in [["--seed", "9"], ["--max-steps", "1"]] {
        let o = bmfp(&["iterate", &space, &map, extra[0], extra[1]]);
        assert_eq!(o.status.code(), Some(2), "{extra:?}");
    }
}

#[test]
fn fixed_points_command() {
    let o = bmfp(&[
        "fixed-points",
        &data("example-b.space.json"),
        &data("example.map.json"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "unique fixed point: 3\n");
    let o = bmfp(&[
        "fixed-points",
        &data("swap.space.json"),
        &data("swap.map.json"),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(parse(&o)["fixed_points"], json!([]));
}

#[test]
fn demo_a_table() {
    let o = bmfp(&["demo", "A"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("unique fixed point: 3"));
    assert!(out.contains("min margin 0.443376"));
    assert!(out.contains("minimal coefficient 1.5"));
}

#[test]
fn demo_b_shows_basic_failure_then_generalized() {
    let o = bmfp(&["demo", "b", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = parse(&o);
    let certs = v["certificates"].as_array().unwrap();
    assert_eq!(certs.len(), 2);
    assert_eq!(certs[0]["certified"], false);
    assert_eq!(certs[0]["witnesses"][0]["x"], "2");
    assert_eq!(certs[0]["witnesses"][0]["y"], "4");
    assert_eq!(certs[1]["condition"], "generalized");
    assert_eq!(certs[1]["min_j_value"], 2.66667);
    assert_eq!(v["consequence"]["status"], "holds");
}

/// Every non-integer number in the JSON report appears verbatim in the table.
#[test]
fn demo_json_and_table_agree() {
    fn numbers(v: &Value, out: &mut Vec<f64>) {
        match v {
            Value::Number(n) => out.extend(n.as_f64()),
            Value::Array(a) => a.iter().for_each(|x| numbers(x, out)),
            Value::Object(m) => m.values().for_each(|x| numbers(x, out)),
            _ => {}
        }
    }
    for example in ["A", "B"] {
        let table = stdout(&bmfp(&["demo", example]));
        let mut values = Vec::new();
        numbers(
            &parse(&bmfp(&["demo", example, "--format", "json"])),
            &mut values,
        );
        for x in values.iter().filter(|x| x.fract() != 0.0) {
            assert!(
                table.contains(&format!("{x:?}")),
                "{example}: {x} missing from table"
            );
        }
    }
}

#[test]
fn tolerance_from_env_and_flag() {
    let run = |args: &[&str], env: &str| {
        Command::new(env!("CARGO_BIN_EXE_bmfp"))
            .args(args)
            .env("BMFP_TOLERANCE", env)
            .output()
            .unwrap()
            .status
            .code()
    };
    assert_eq!(run(&["demo", "A"], "-1"), Some(2));
    assert_eq!(run(&["demo", "A", "--tolerance", "1e-6"], "-1"), Some(0));
    // the table's minimum is 1.5, so 1.4999 only passes under a loose tolerance
    let space = data("example-a.space.json");
    let validate = ["validate", space.as_str(), "--coefficient", "1.4999"];
    assert_eq!(run(&validate, "1e-9"), Some(1));
    assert_eq!(run(&validate, "1e-3"), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(bmfp(&["demo", "C"]).status.code(), Some(2));
    assert_eq!(bmfp(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(bmfp(&["certify", "only-one-path"]).status.code(), Some(2));
}
