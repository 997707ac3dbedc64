use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn gerst(args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gerst"));
    for var in [
        "GERST_FIELD",
        "GERST_MAX_DIM_U",
        "GERST_MAX_BAR_DEGREE",
        "GERST_MAX_AMBIENT",
    ] {
        cmd.env_remove(var);
    }
    cmd.args(args).output().expect("gerst runs")
}

fn gerst_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gerst"));
    cmd.args(args).envs(env.iter().copied());
    cmd.output().expect("gerst runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn dims(v: &Value) -> Vec<u64> {
    v["dims"]
        .as_array()
        .expect("dims")
        .iter()
        .map(|d| d.as_u64().unwrap())
        .collect()
}

fn check<'a>(v: &'a Value, name: &str) -> &'a Value {
    v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check `{name}` in {v}"))
}

/// Writes `src` to a scratch spec file.
fn scratch(name: &str, src: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, src).unwrap();
    path.display().to_string()
}

#[test]
fn ext_of_the_dual_numbers() {
    let out = gerst(&[
        "ext",
        "--max-degree",
        "3",
        "--json",
        &fixture("dual_numbers.spec"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(dims(&v), [2, 1, 1, 1]);
    assert_eq!(v["field"], "Q");
    assert_eq!(v["bialgebroid"], "U");
    assert_eq!(v["cochains"].as_array().unwrap().len(), 5);
}

#[test]
fn text_output_has_a_dimension_table() {
    let out = gerst(&["ext", &fixture("dual_numbers.spec")]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("degree  dim Ext\n     0        2\n     1        1\n"),
        "{text}"
    );
    assert!(text.ends_with("result: PASS\n"));
}

#[test]
fn the_bundled_fixture_is_the_default_spec() {
    let bundled = json(&gerst(&["ext", "--json"]));
    let explicit = json(&gerst(&["ext", "--json", &fixture("dual_numbers.spec")]));
    assert_eq!(bundled["spec"], "<bundled dual_numbers.spec>");
    assert_eq!(bundled["dims"], explicit["dims"]);
    assert_eq!(bundled["cochains"], explicit["cochains"]);
}

#[test]
fn reports_are_byte_reproducible() {
    for args in [
        &["verify-operad", "--trials", "20", "--seed", "9", "--json"][..],
        &["verify-extension-loop", "--p", "1", "--q", "2", "--json"][..],
        &["verify-gerstenhaber", "--cap", "2"][..],
        &["cup", "--max-degree", "3"][..],
    ] {
        let a = gerst(args);
        let b = gerst(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn timing_is_opt_in() {
    let plain = json(&gerst(&["ext", "--json"]));
    assert!(plain.get("elapsed_ms").is_none());
    let timed = json(&gerst(&["ext", "--json", "--timing"]));
    assert!(timed["elapsed_ms"].is_u64());
}

#[test]
fn extension_loop_for_p_q_one() {
    let out = gerst(&[
        "verify-extension-loop",
        "--p",
        "1",
        "--q",
        "1",
        "--json",
        &fixture("dual_numbers.spec"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(check(&v, "ξ = [d,s]")["passed"], true);
    assert_eq!(check(&v, "Φ(η) = [d,Ψ(s)]")["passed"], true);
    assert_eq!(v["seed"], 1, "the fixture's task block sets the seed");
}

#[test]
fn verify_operad_on_the_ground_field() {
    let out = gerst(&["verify-operad", "--json", &fixture("trivial.spec")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["seed"], 0);
    assert_eq!(check(&v, "mu-associative")["passed"], true);
}

#[test]
fn verify_operad_hits_every_branch() {
    let v = json(&gerst(&["verify-operad", "--json", "--trials", "60"]));
    for branch in ["before", "nested", "after"] {
        assert_eq!(
            check(&v, &format!("operad-associative-{branch}"))["passed"],
            true
        );
    }
}

#[test]
fn verify_gerstenhaber_exhibits_coboundaries() {
    let out = gerst(&["verify-gerstenhaber", "--cap", "3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for name in [
        "cup-graded-commutative",
        "bracket-antisymmetric",
        "bracket-jacobi",
        "bracket-leibniz",
    ] {
        assert_eq!(check(&v, name)["passed"], true);
    }
    assert!(!v["cochains"].as_array().unwrap().is_empty());
}

#[test]
fn brackets_of_the_dual_numbers() {
    let v = json(&gerst(&["bracket", "--json"]));
    let products = v["products"].as_array().unwrap();
    let find = |l: &str, r: &str| {
        products
            .iter()
            .find(|p| p["left"] == l && p["right"] == r)
            .unwrap()["coordinates"]
            .clone()
    };
    assert_eq!(find("[1.0]", "[2.0]"), serde_json::json!(["-2"]));
    assert_eq!(find("[2.0]", "[1.0]"), serde_json::json!(["2"]));
}

#[test]
fn check_axioms_verdicts_and_witnesses() {
    assert_eq!(
        gerst(&["check-axioms", &fixture("dual_numbers.spec")])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        gerst(&["check-axioms", &fixture("group_c2.spec")])
            .status
            .code(),
        Some(0)
    );

    let out = gerst(&[
        "check-axioms",
        "--coefficients",
        "sign",
        "--json",
        &fixture("group_c2.spec"),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let c = check(&v, "commuting-pair");
    assert_eq!(c["passed"], false);
    assert!(c["witness"].as_str().unwrap().starts_with("(x0, z0)"));

    let out = gerst(&["check-axioms", "--json", &fixture("broken_counit.spec")]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let failed: Vec<&Value> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .collect();
    let own: Vec<&&Value> = failed
        .iter()
        .filter(|c| c["name"].as_str().unwrap().starts_with("bialgebroid H: "))
        .collect();
    assert!(!own.is_empty());
    assert!(
        own.iter().all(|c| c["name"]
            .as_str()
            .unwrap()
            .starts_with("bialgebroid H: counit")),
        "{own:?}"
    );
    assert!(own
        .iter()
        .all(|c| c["witness"].as_str().unwrap().contains("e1")));
}

#[test]
fn computations_refuse_broken_input_with_exit_one() {
    let out = gerst(&["ext", "--json", &fixture("broken_counit.spec")]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "math");
    let out = gerst(&["ext", "--coefficients", "sign", &fixture("group_c2.spec")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("commuting-pair"));
}

#[test]
fn hochschild_of_truncated_polynomials() {
    let path = fixture("truncated_cubic.spec");
    let out = gerst(&["hochschild", "--json", &path]);
    assert_eq!(
        out.status.code(),
        Some(2),
        "dim U = 9 is above the default cap"
    );
    assert_eq!(json(&out)["error"]["kind"], "resource");

    // HH^0 = A, and HH^n is the kernel or cokernel of multiplication by 3x^2 on A.
    let v = json(&gerst(&["hochschild", "--max-dim-u", "9", "--json", &path]));
    assert_eq!(dims(&v), [3, 2, 2, 2]);
    assert_eq!(v["bialgebroid"], "enveloping(cubic)");
    let v = json(&gerst(&[
        "hochschild",
        "--max-dim-u",
        "9",
        "--field",
        "F(3)",
        "--json",
        &path,
    ]));
    assert_eq!(dims(&v), [3, 3, 3, 3]);
    let v = json(&gerst(&[
        "hochschild",
        "--field",
        "F(2)",
        "--json",
        &fixture("dual_numbers.spec"),
    ]));
    assert_eq!(dims(&v), [2, 2, 2, 2]);
}

#[test]
fn prime_fields_from_the_spec_and_the_environment() {
    let spec = scratch(
        "f7.spec",
        "field: \"F(7)\"\nalgebra k\n  dim 1\n  unit 1\n  constants 1\nend\n",
    );
    let v = json(&gerst(&["hochschild", "--json", &spec]));
    assert_eq!(v["field"], "F(7)");
    let v = json(&gerst_env(
        &[
            "hochschild",
            "--json",
            &fixture("truncated_cubic.spec"),
            "--max-dim-u",
            "9",
        ],
        &[("GERST_FIELD", "F(3)")],
    ));
    assert_eq!(v["field"], "F(3)");
    assert_eq!(dims(&v), [3, 3, 3, 3]);
    let out = gerst_env(&["ext"], &[("GERST_FIELD", "F(3)")]);
    assert!(
        String::from_utf8_lossy(&out.stdout).contains("field: Q"),
        "the input file's field wins over the environment"
    );
    let out = gerst_env(
        &["hochschild", &fixture("trivial.spec")],
        &[("GERST_FIELD", "F(9)")],
    );
    assert_eq!(out.status.code(), Some(2));
    let spec = scratch("f17.spec", "field F(17)\n");
    let out = gerst(&["ext", "--json", &spec]);
    assert_eq!(out.status.code(), Some(2));
    assert!(json(&out)["error"]["message"]
        .as_str()
        .unwrap()
        .starts_with("line 1, column 7"));
}

#[test]
fn caps_come_from_flags_and_environment() {
    let out = gerst(&["ext", "--max-degree", "5", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "resource");
    let out = gerst_env(
        &["ext", "--max-degree", "2", "--json"],
        &[("GERST_MAX_BAR_DEGREE", "2")],
    );
    assert_eq!(out.status.code(), Some(2));
    let v = json(&gerst_env(
        &["ext", "--max-degree", "2", "--json"],
        &[("GERST_MAX_BAR_DEGREE", "3")],
    ));
    assert_eq!(v["caps"]["max_bar_degree"], 3);
    assert_eq!(dims(&v), [2, 1, 1]);
    let out = gerst(&["ext", "--max-ambient", "10", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(json(&out)["error"]["message"]
        .as_str()
        .unwrap()
        .contains("cap 10"));
}

#[test]
fn shape_errors_name_the_block() {
    let spec = scratch(
        "short.spec",
        "algebra bad\n  dim 2\n  unit 1 0\n  constants 1 0 0 1 0 1 0\nend\n",
    );
    let out = gerst(&["hochschild", "--json", &spec]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["error"]["kind"], "shape");
    assert_eq!(
        v["error"]["message"],
        "block `algebra bad`: dimension 2 needs 8 structure constants, got 7"
    );
}

#[test]
fn parse_errors_carry_line_and_column() {
    let spec = scratch(
        "typo.spec",
        "field Q\n\nalgebra a\n  dim 1\n  unit 1\n  constants 1/0\nend\n",
    );
    let out = gerst(&["hochschild", &spec]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("parse error: line 6, column 13: `1/0` is not a number in Q"),
        "{err}"
    );

    let spec = scratch("unclosed.spec", "algebra a\n  dim 1\n");
    let v = json(&gerst(&["hochschild", "--json", &spec]));
    assert_eq!(v["error"]["kind"], "parse");

    let spec = scratch(
        "unresolved.spec",
        "bialgebroid U\n  constructor enveloping\n  algebra nope\nend\n",
    );
    let v = json(&gerst(&["ext", "--json", &spec]));
    assert_eq!(
        v["error"]["message"],
        "line 3, column 11: unresolved reference: no `algebra nope` block"
    );
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(gerst(&["ext", "--no-such-flag"]).status.code(), Some(2));
    assert_eq!(gerst(&["ext", "/no/such/file.spec"]).status.code(), Some(2));
    assert_eq!(gerst(&["ext", "--bialgebroid", "V"]).status.code(), Some(2));
    assert_eq!(
        gerst(&["verify-extension-loop", "--p", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(gerst(&["ext", "--field", "F(4)"]).status.code(), Some(2));
}
