//! End-to-end runs of the `subord` binary: exit codes, transcripts,
//! determinism, environment overrides and command-table coverage.

use std::collections::BTreeSet;
use std::process::{Command, Output};

use serde_json::Value;

const ORDER_2: &str = r#"{"kind":"subordination","atoms":2,"pairs":[[0,0],[0,1],[0,2],[0,3],[1,1],[1,3],[2,2],[2,3],[3,3]]}"#;
const ONE_ONE: &str = r#"{"kind":"subordination","atoms":1,"pairs":[[1,1]]}"#;
const ARROW: &str = r#"{"kind":"frame","points":["a","b"],"edges":[["a","b"]]}"#;
const CHAIN: &str = r#"{"kind":"frame","points":["a","b","c"],"edges":[["a","b"],["b","c"]]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subord")).args(args).output().expect("binary runs")
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_subord"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON report")
}

#[test]
fn order_algebra_passes_basic_axioms() {
    let o = run(&["check", ORDER_2, "--axioms", "S1..S4"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).ends_with("result: pass\n"));
}

#[test]
fn top_only_relation_fails_s1_with_witness() {
    let o = run(&["check", ONE_ONE]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("S1: 0⊀0"), "{}", stdout(&o));
}

#[test]
fn contact_check_on_asymmetric_frame_reports_s7_pair() {
    let o = run(&["check", ARROW, "--axioms", "S7", "--format", "json"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["status"], "violation");
    let line = v["transcript"].as_array().unwrap().iter().find(|l| l.as_str().unwrap().starts_with("S7:")).unwrap();
    let line = line.as_str().unwrap();
    assert!(line.contains('≺') && line.contains('⊀'), "{line}");
}

#[test]
fn malformed_json_is_an_input_error() {
    assert_eq!(code(&run(&["check", r#"{"kind":"subordination""#])), 2);
    assert_eq!(code(&run(&["check", "/nonexistent/structure.json"])), 2);
    let o = run(&["check", "{", "--format", "json"]);
    assert_eq!(code(&o), 2);
    assert_eq!(json(&o)["status"], "error");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&["examples", "nope"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["check", ORDER_2, "--max-atoms", "0"])), 2);
    assert_eq!(code(&run(&["validate", "--structure", ORDER_2, "--formula", "p ->"])), 2);
}

#[test]
fn dualize_round_trips_through_json() {
    let dir = std::env::temp_dir().join(format!("subord-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let algebra = dir.join("of.json");
    let o = run(&["dualize", CHAIN, "--emit", algebra.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("round trip Ult(Of(F)) ≅ F: yes"));

    let o = run(&["dualize", algebra.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert!(v["transcript"].as_array().unwrap().iter().any(|l| l == "round trip Of(Ult(S)) ≅ S: yes"));
    let frame = &v["structure"];
    assert_eq!(frame["kind"], "frame");
    assert_eq!(frame["points"].as_array().unwrap().len(), 3);
    assert_eq!(frame["edges"].as_array().unwrap().len(), 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn quotient_by_identity_partition_echoes_input() {
    let o = run(&["quotient", ORDER_2, "--kernel", "0", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let input: Value = serde_json::from_str(ORDER_2).unwrap();
    assert_eq!(v["structure"], input);
    assert_eq!(v["data"]["projection_kinds"], serde_json::json!(["weak", "white", "black", "strong"]));
}

#[test]
fn quotient_with_non_congruence_is_a_violation() {
    let o = run(&["quotient", r#"{"kind":"subordination","atoms":2,"pairs":[[0,0],[0,1],[1,1],[0,3],[1,3],[3,3]]}"#, "--kernel", "2"]);
    assert_ne!(code(&o), 0);
    assert_ne!(code(&o), 2);
}

#[test]
fn modalize_reports_closure_size() {
    let o = run(&["modalize", CHAIN, "--colour", "white", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["data"]["closure_size"], 8);
    assert_eq!(v["data"]["extension_size"], 8);
}

#[test]
fn product_of_two_orders_has_strong_projections() {
    let one = r#"{"kind":"subordination","atoms":1,"pairs":[[0,0],[0,1],[1,1]]}"#;
    let o = run(&["product", one, one, "--format", "json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["structure"], serde_json::from_str::<Value>(ORDER_2).unwrap());
}

#[test]
fn accumulation_loop_formula_is_valid_but_scheme_is_not() {
    let o = run(&["validate", "--structure", "omega-accumulation", "--formula", "p -> <>[]p"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("valid: yes"));
    assert!(out.contains("exceptions below k=6"), "{out}");

    let o = run(&["validate", "--structure", "omega-accumulation", "--formula", "p -> <>[]p", "--scheme"]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.contains("valid: no"));
    assert!(out.contains("counter-valuation: p = {ω}"), "{out}");
}

#[test]
fn seriality_builtin_is_equivalent_on_small_frames() {
    let o = run(&["correspond", "--builtin", "seriality", "--family", "frames:3", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let reports = json(&o)["data"]["reports"].as_array().unwrap().clone();
    assert!(!reports.is_empty());
    for r in reports {
        assert_eq!(r[1]["divergences"].as_array().unwrap().len(), 0);
    }
}

#[test]
fn family_size_respects_max_points() {
    assert_eq!(code(&run(&["correspond", "--builtin", "seriality", "--family", "frames:4", "--max-points", "3"])), 2);
}

#[test]
fn named_examples_reproduce() {
    let o = run(&["examples", "omega-congruences"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("(2, ω, 0)"), "{out}");
    assert!(!out.contains("DIVERGES"));

    let o = run(&["examples", "unicolour-gap"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("[ok] the 5-point frame validates"));
}

#[test]
fn all_examples_pass() {
    let o = run(&["examples", "all", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let summary = json(&o)["data"]["examples"].as_object().unwrap().clone();
    assert_eq!(summary.len(), 7);
    assert!(summary.values().all(|v| v == true));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let cases: [&[&str]; 4] = [
        &["check", ARROW, "--axioms", "all"],
        &["correspond", "--builtin", "two-variable", "--family", "random:20:4", "--seed", "7", "--format", "json"],
        &["validate", "--structure", "omega-accumulation", "--formula", "p -> <>[]p", "--scheme", "--format", "json"],
        &["quotient", ORDER_2, "--lattice", "--format", "json"],
    ];
    for args in cases {
        let (a, b) = (run(args), run(args));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(code(&a), code(&b));
    }
}

#[test]
fn seed_changes_random_family_only_through_the_seed() {
    let base = ["correspond", "--builtin", "symmetry", "--family", "random:10:4", "--format", "json"];
    let with = |seed: &str| {
        let mut args = base.to_vec();
        args.extend(["--seed", seed]);
        run(&args).stdout
    };
    assert_eq!(with("3"), with("3"));
    assert_eq!(with("3"), run_env(&base, &[("SUBORD_SEED", "3")]).stdout);
}

#[test]
fn environment_overrides_bounds_and_format() {
    let o = run_env(&["check", ORDER_2], &[("SUBORD_MAX_ATOMS", "1")]);
    assert_eq!(code(&o), 2);
    let o = run_env(&["check", ORDER_2, "--max-atoms", "2"], &[("SUBORD_MAX_ATOMS", "1")]);
    assert_eq!(code(&o), 0);
    let o = run_env(&["check", ORDER_2], &[("SUBORD_FORMAT", "json")]);
    assert_eq!(json(&o)["command"], "check");
    let o = run_env(&["validate", "--structure", "omega-accumulation", "--formula", "p -> <>[]p"], &[("SUBORD_K", "3")]);
    assert!(stdout(&o).contains("exceptions below k=3"));
}

const OPERATIONS: &[&str] = &[
    "powerset_algebra",
    "filter_ideal_check",
    "generated_boolean_subalgebra",
    "check_boolean_morphism",
    "check_axioms",
    "from_operator",
    "to_multi_operator",
    "check_morphism",
    "is_congruence",
    "congruence_lattice",
    "quotient",
    "isomorphism_theorems",
    "is_subalgebra",
    "product",
    "ult",
    "of",
    "dual_morphism",
    "discrete_duals",
    "canonical_extension",
    "factor_through_delta",
    "modalize",
    "canonical_product_map",
    "sigma_pi_extension",
    "set_ops",
    "rel_images",
    "subordination_holds",
    "nonprincipal_witness",
    "eval_formula",
    "congruence_check",
    "sigma_pi_symbolic",
    "parse",
    "print",
    "eval",
    "validity",
    "scheme_validity",
    "classify",
    "tense_check",
    "eval_frame_condition",
    "eval_sub_condition",
    "builtin_library",
    "correspondent_klmn",
    "translate_leq",
    "translate_geq",
    "translate_g_closed",
    "check_equivalence",
];

#[test]
fn command_table_covers_every_operation() {
    let o = run(&["commands", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let table = json(&o)["data"]["commands"].as_array().unwrap().clone();
    let reached: BTreeSet<String> = table
        .iter()
        .flat_map(|c| c["operations"].as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()))
        .collect();
    let missing: Vec<&&str> = OPERATIONS.iter().filter(|op| !reached.contains(**op)).collect();
    assert!(missing.is_empty(), "unreachable operations: {missing:?}");
}

#[test]
fn every_table_example_runs() {
    let table = json(&run(&["commands", "--format", "json"]))["data"]["commands"].as_array().unwrap().clone();
    for c in table {
        let args: Vec<String> = c["example"].as_array().unwrap().iter().map(|a| a.as_str().unwrap().to_string()).collect();
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = run(&args);
        assert_ne!(code(&o), 2, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn omega_images_on_accumulation_loop() {
    let o = run(&["omega", "accumulation-loop", "--set", r#"{"kind":"finite","exceptions":[0],"omega":false}"#, "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["data"]["principal"], false);
    assert_eq!(v["data"]["sigma_pi"]["sigma"], v["data"]["sigma_pi"]["pi"]);
}
