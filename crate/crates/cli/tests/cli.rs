use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn dimerlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dimerlab")).args(args).env_remove("DIMERLAB_BUDGET").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON report")
}

#[test]
fn conifold_fixture_passes() {
    let o = dimerlab(&["fixtures", "run", "conifold"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count() >= 5);
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn every_fixture_passes() {
    let o = dimerlab(&["fixtures", "run", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let report = json(&o);
    let fixtures = report.as_array().unwrap();
    assert_eq!(fixtures.len(), 6);
    for f in fixtures {
        for r in f["results"].as_array().unwrap() {
            assert_eq!(r["pass"], Value::Bool(true), "{r}");
            assert!(["published-example", "computed", "definitional"].contains(&r["origin"].as_str().unwrap()));
        }
    }
}

#[test]
fn invalid_dimer_lists_errors_and_exits_2() {
    let bad = tmp("bad_conifold.json");
    std::fs::write(
        &bad,
        r#"{"vertices":["1","2"],
            "arrows":[{"id":"a1","tail":"1","head":"2"},{"id":"a2","tail":"1","head":"2"},
                      {"id":"b1","tail":"2","head":"1"},{"id":"b2","tail":"2","head":"1"}],
            "faces":[{"arrows":["a1","b1","a2","b2"],"sign":"+"},{"arrows":["a1","b2","a2","b1"],"sign":"+"}]}"#,
    )
    .unwrap();
    let o = dimerlab(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("ArrowFaceCount"));
    let o = dimerlab(&["validate", "--format", "json", bad.to_str().unwrap()]);
    assert_eq!(json(&o)["errors"][0]["kind"], "ArrowFaceCount");
}

#[test]
fn unreadable_input_exits_2() {
    assert_eq!(dimerlab(&["matchings", "--dimer", "no/such/file.json"]).status.code(), Some(2));
    assert_eq!(dimerlab(&["contract", "--dimer", "conifold", "--stars", "zz"]).status.code(), Some(2));
    assert_eq!(dimerlab(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn matching_catalog_is_a_json_array() {
    let o = dimerlab(&["matchings", "--dimer", "conifold", "--format", "json"]);
    let cat = json(&o);
    let entries = cat.as_array().unwrap();
    assert_eq!(entries.len(), 4);
    assert_eq!(entries[0]["simple"], true);
    assert_eq!(entries[0]["var"], "x0");
    assert_eq!(entries[0]["arrows"], serde_json::json!(["a1"]));
}

#[test]
fn render_draws_each_element_once() {
    let o = dimerlab(&["render", "fig_ab_a"]);
    assert_eq!(o.status.code(), Some(0));
    let svg = stdout(&o);
    assert_eq!(svg.matches("<circle class=\"vertex\"").count(), 2);
    assert_eq!(svg.matches("<path class=\"arrow\"").count(), 4);
    assert_eq!(svg.matches("<polygon class=\"face").count(), 2);
    assert_eq!(svg.matches("class=\"face plus\"").count(), 1);
    assert_eq!(stdout(&dimerlab(&["render", "fig_ab_a"])), svg, "not byte-stable");
}

#[test]
fn render_styles() {
    let styles = tmp("styles.json");
    std::fs::write(&styles, r#"{"p1": "dotted", "q1": "double"}"#).unwrap();
    let o = dimerlab(&["render", "fig_q_prime", "--styles", styles.to_str().unwrap()]);
    let svg = stdout(&o);
    assert_eq!(svg.matches("<circle class=\"vertex\"").count(), 16);
    assert_eq!(svg.matches("stroke-dasharray=\"2,4\"").count(), 1);
    assert_eq!(svg.matches("class=\"arrow-gap\"").count(), 1);
    std::fs::write(&styles, r#"{"p1": "wavy"}"#).unwrap();
    assert_eq!(dimerlab(&["render", "fig_q_prime", "--styles", styles.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn contract_writes_the_target() {
    let out = tmp("qprime.json");
    let o = dimerlab(&["contract", "--dimer", "fig_q", "--stars", "p5a", "--budget", "12", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("S = S′ up to 12"));
    let written = dimerlab::DimerQuiver::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(written.same_dimer(&dimerlab::fixtures::load("fig_q_prime")));
}

#[test]
fn contraction_losing_a_generator_is_negative() {
    let o = dimerlab(&["contract", "--dimer", "conifold", "--stars", "a1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["s_equals_s_prime"]["side"], "S′");
}

#[test]
fn locus_at_the_azumaya_example() {
    let point = tmp("b.json");
    std::fs::write(&point, r#"{"x0": "1", "x1": "1", "x2": "0", "x3": "0"}"#).unwrap();
    let o = dimerlab(&["locus", "--dimer", "fig_q", "--stars", "p5a", "--point", point.to_str().unwrap(), "--budget", "16", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["in_azumaya_aprime"], false);
    assert_eq!(v["in_u"]["verdict"], "in");
    assert_eq!(v["in_azumaya_a"], "no");
    let certs = v["in_u"]["certificates"].as_array().unwrap();
    let s = certs.iter().find(|c| c["generator"]["monomial"] == "x2^4*x3^4").unwrap();
    assert_eq!(s["f1"]["exponents"], serde_json::json!([4, 4, 4, 4]));
    assert_eq!(s["f2"]["exponents"], serde_json::json!([4, 4, 0, 0]));

    std::fs::write(&point, r#"{"x0": "2", "x1": "3", "x2": "5", "x3": "7"}"#).unwrap();
    let o = dimerlab(&["locus", "--dimer", "fig_q", "--stars", "p5a", "--point", point.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["in_azumaya_a"], "yes");

    std::fs::write(&point, r#"{"x0": "2"}"#).unwrap();
    let o = dimerlab(&["locus", "--dimer", "fig_q", "--stars", "p5a", "--point", point.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn pi_check_verdicts() {
    let o = dimerlab(&["pi-check", "--dimer", "fig_ab_a", "--stars", "a", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["verdict"]["free_up_to"], 4);
    assert_eq!(v["inout_hypothesis"], true);

    let o = dimerlab(&["pi-check", "--dimer", "fig_ab_c", "--stars", "e"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("no claim about PI"));
    assert!(!text.contains("not PI"));
}

#[test]
fn budget_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_dimerlab"))
        .args(["rings", "--dimer", "conifold", "--format", "json"])
        .env("DIMERLAB_BUDGET", "6")
        .output()
        .unwrap();
    assert_eq!(json(&o)["S"]["budget"], 6);
    let o = dimerlab(&["rings", "--dimer", "conifold", "--format", "json"]);
    assert_eq!(json(&o)["S"]["budget"], 12);
    assert_eq!(json(&o)["R_equals_S"], true);
}

#[test]
fn simples_of_the_conifold() {
    let o = dimerlab(&["simples", "--dimer", "conifold", "--format", "json"]);
    let rows = json(&o);
    assert_eq!(rows.as_array().unwrap().len(), 5);
    assert!(rows.as_array().unwrap().iter().all(|r| r["simple"] == true));
}

#[test]
fn reports_are_byte_stable() {
    let a = stdout(&dimerlab(&["fixtures", "run", "fig_ab_b", "--format", "json"]));
    let b = stdout(&dimerlab(&["fixtures", "run", "fig_ab_b", "--format", "json"]));
    assert_eq!(a, b);
}
