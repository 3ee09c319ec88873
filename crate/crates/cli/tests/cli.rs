use std::process::{Command, Output};

use serde_json::Value;

use orbjac_core::json::cycnum_from_json;
use orbjac_core::scalar::{rat, root_of_unity, CycField, CycNum};

fn orbjac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbjac"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = orbjac(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn find_pair<'a>(doc: &'a Value, g: &str, h: &str) -> &'a Value {
    doc["pairs"]
        .as_array()
        .unwrap()
        .iter()
        .find(|p| p["g"][0] == g && p["h"][0] == h)
        .unwrap()
}

#[test]
fn analyze_reports_chain_data() {
    let out = orbjac(&["analyze", "x1^2*x2 + x2^3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("weights: (1,1)"));
    assert!(text.contains("degree: 3"));
    assert!(text.contains("chain (x1,x2) a=(2,3)"));
    assert!(text.contains("|G_f|: 6"));

    let doc = json(&["analyze", "x1^2*x2 + x2^3", "--json"]);
    assert_eq!(doc["determinant"], 6);
    assert_eq!(doc["atoms"][0]["kind"], "chain");
    let again = json(&["analyze", doc["polynomial"].as_str().unwrap(), "--json"]);
    assert_eq!(again, doc);
}

#[test]
fn compare_passes_on_cube() {
    let out = orbjac(&["compare", "x1^3", "--group", "maximal"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).trim_end().ends_with("PASS"));
    let doc = json(&["compare", "x1^3", "--json"]);
    assert_eq!(doc["verdict"], "PASS");
}

#[test]
fn hochschild_cube_class() {
    let doc = json(&[
        "product",
        "x1^3",
        "--group",
        "maximal",
        "--side",
        "hochschild",
        "--json",
    ]);
    let pair = find_pair(&doc, "1/3", "2/3");
    let got = cycnum_from_json(&pair["class"]["x1"]).unwrap();
    let field = CycField::get(12);
    let e = root_of_unity(&rat(1, 3), &field).unwrap();
    let expect = (&e - &CycNum::one(&field)).inv().unwrap().scale_int(3);
    assert_eq!(got, expect);
    assert_eq!(find_pair(&doc, "1/3", "1/3")["class"], "zero");
}

#[test]
fn conductor_override_gives_the_same_values() {
    for side in ["orbifold", "hochschild"] {
        let base = json(&["product", "x1^2*x2 + x2^2*x1", "--side", side, "--json"]);
        let wide = json(&[
            "product",
            "x1^2*x2 + x2^2*x1",
            "--side",
            side,
            "--json",
            "--conductor",
            "24",
        ]);
        assert_eq!(base["conductor"], 12);
        assert_eq!(wide["conductor"], 24);
        let field = CycField::get(24);
        let (a, b) = (
            base["pairs"].as_array().unwrap(),
            wide["pairs"].as_array().unwrap(),
        );
        assert_eq!(a.len(), b.len());
        for (p, q) in a.iter().zip(b) {
            assert_eq!((&p["g"], &p["h"]), (&q["g"], &q["h"]));
            match (&p["class"], &q["class"]) {
                (Value::Object(x), Value::Object(y)) => {
                    assert_eq!(x.keys().collect::<Vec<_>>(), y.keys().collect::<Vec<_>>());
                    for (k, v) in x {
                        let lhs = cycnum_from_json(v).unwrap().embed(&field).unwrap();
                        assert_eq!(lhs, cycnum_from_json(&y[k]).unwrap());
                    }
                }
                (x, y) => assert_eq!(x, y),
            }
        }
    }
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(orbjac(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(orbjac(&["analyze", "x1^2 + 2*x2"]).status.code(), Some(64));
    assert_eq!(
        orbjac(&["analyze", "x1^2 + x2^2 + x1*x2"]).status.code(),
        Some(64)
    );
    assert_eq!(
        orbjac(&["compare", "x1^3", "--conductor", "18"])
            .status
            .code(),
        Some(64)
    );
    assert_eq!(
        orbjac(&["compare", "x1^3", "--group", "1/2"]).status.code(),
        Some(64)
    );
    assert_eq!(orbjac(&["product", "x1^3"]).status.code(), Some(64));
    assert_eq!(orbjac(&["--help"]).status.code(), Some(0));
}

#[test]
fn group_listing() {
    let out = orbjac(&["group", "x1^2*x2 + x2^2"]);
    assert!(stdout(&out).starts_with("order 4"));
    let doc = json(&["group", "x1^3", "--sl", "--json"]);
    assert_eq!(doc["order"], 1);
    let doc = json(&["group", "x1^3 + x2^3", "--subgroup", "1/3,2/3", "--json"]);
    assert_eq!(doc["order"], 3);
}

#[test]
fn jacobian_of_a_sector() {
    let doc = json(&["jacobian", "x1^2*x2 + x2^2", "--json"]);
    assert_eq!(doc["milnor_number"], 3);
    assert_eq!(doc["basis"], serde_json::json!(["1", "x1", "x1^2"]));
    let doc = json(&["jacobian", "x1^3 + x2^3", "--sector", "1/3,0", "--json"]);
    assert_eq!(doc["milnor_number"], 2);
    assert_eq!(
        orbjac(&["jacobian", "x1^3", "--sector", "1/2"])
            .status
            .code(),
        Some(64)
    );
}

#[test]
fn invariants_agree_across_sides() {
    let doc = json(&["invariants", "x1^3", "--side", "hochschild", "--json"]);
    assert_eq!(doc["dimension"], 1);
    assert_eq!(doc["other_dimension"], 1);
    let doc = json(&[
        "invariants",
        "x1^3 + x2^3",
        "--group",
        "1/3,2/3",
        "--side",
        "orbifold",
        "--json",
    ]);
    assert_eq!(doc["dimension"], doc["other_dimension"]);
}

#[test]
fn selftest_passes() {
    let out = orbjac(&["selftest", "--seed", "11", "--parallel"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("selftest passed"));
}
