//! End-to-end runs of the `lcoalg` binary.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("fixtures")
}

fn run(args: &[&str]) -> Output {
    let dir = fixtures();
    let args: Vec<String> = args.iter().map(|a| a.replace("{fixtures}", dir.to_str().unwrap())).collect();
    Command::new(env!("CARGO_BIN_EXE_lcoalg")).args(&args).output().expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = run(&all);
    let code = out.status.code().unwrap_or(-1);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}; stderr {}", String::from_utf8_lossy(&out.stderr)));
    (code, v)
}

fn verdicts(v: &Value) -> BTreeMap<String, String> {
    v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["name"].as_str().unwrap().to_string(), c["verdict"].as_str().unwrap().to_string()))
        .collect()
}

#[test]
fn sl2q_axioms_pass_with_expected_cocommutativity_failure() {
    let (code, v) = run_json(&["axioms", "--catalog", "sl2q"]);
    assert_eq!(code, 0);
    let m = verdicts(&v);
    assert_eq!(m["coassociativity"], "PASS");
    assert_eq!(m["breaking_equation"], "PASS");
    assert_eq!(m["cocommutativity"], "FAIL (expected)");
}

#[test]
fn text_report_lists_verdicts() {
    let out = run(&["axioms", "--catalog", "sl2q"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("PASS") && l.contains("coassociativity")));
    assert!(text.lines().any(|l| l.starts_with("FAIL (expected)") && l.contains("cocommutativity")));
}

#[test]
fn json_schema_fields() {
    let (_, v) = run_json(&["axioms", "--catalog", "group_Z3"]);
    assert!(v["version"].is_string());
    assert!(v.get("seed").is_some());
    for c in v["checks"].as_array().unwrap() {
        assert!(c["name"].is_string() && c["anchor"].is_string());
        assert!(["PASS", "FAIL", "FAIL (expected)"].contains(&c["verdict"].as_str().unwrap()));
    }
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(run(&["axioms", "--catalog", "no_such_coalgebra"]).status.code(), Some(2));
    assert_eq!(run(&["walks", "--graph", "{fixtures}/missing.json", "--seed", "1"]).status.code(), Some(2));
    // stochastic subcommands need a seed
    assert_eq!(run(&["walks", "--graph", "{fixtures}/walk.json"]).status.code(), Some(2));
    assert_eq!(run(&["poly"]).status.code(), Some(2));
    assert_eq!(run(&["ito", "--algebra", "quaternions", "--element", "0"]).status.code(), Some(2));
    assert_eq!(run(&["axioms"]).status.code(), Some(2));
}

#[test]
fn failing_check_exits_1_with_witness() {
    let (code, v) = run_json(&["axioms", "--algebra", "quaternions", "--hopf"]);
    assert_eq!(code, 1);
    let failed: Vec<&Value> = v["checks"].as_array().unwrap().iter().filter(|c| c["verdict"] == "FAIL").collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|c| c["witness"].is_string()));
}

#[test]
fn reports_are_deterministic() {
    for args in [
        &["walks", "--graph", "{fixtures}/walk.json", "--seed", "9", "--adjoin-identity"][..],
        &["poly", "--seed", "4", "--samples", "10", "--runs", "500"][..],
        &["mutate", "--config", "{fixtures}/mproc.json"][..],
    ] {
        let a = run(&[args, &["--json"][..]].concat());
        let b = run(&[args, &["--json"][..]].concat());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn cp_on_complete_graph_matches_usual_power() {
    let (code, v) = run_json(&["cp", "--graph", "{fixtures}/complete3.json", "--kraus", "{fixtures}/k.json", "--steps", "3", "--compare-usual"]);
    assert_eq!(code, 0);
    let gap = v["output"]["usual_power_gap"].as_f64().unwrap();
    assert!(gap < 1e-10, "gap {gap}");
    let m = verdicts(&v);
    assert_eq!(m["usual_power(3)"], "PASS");
    assert_eq!(m["semigroup(1,2)"], "PASS");
    assert_eq!(v["output"]["kraus_count"], 27);
}

#[test]
fn mutate_prints_worked_trajectory() {
    let out = run(&["mutate", "--config", "{fixtures}/m.json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let want = format!("corner: 2, 8, 128, {}, {}", 128i64.pow(2), 128i64.pow(4));
    assert!(text.contains(&want), "{text}");
    let (_, v) = run_json(&["mutate", "--config", "{fixtures}/m.json"]);
    assert_eq!(v["output"]["corner"][3], "16384");
}

#[test]
fn algebra_files_load() {
    let (code, v) = run_json(&["axioms", "--algebra", "{fixtures}/dual.json"]);
    assert_eq!(code, 0);
    assert_eq!(verdicts(&v)["algebra/associativity"], "PASS");
}

/// Every library operation is reached by the invocation the coverage table names.
#[test]
fn coverage_table_is_complete_and_live() {
    let (code, v) = run_json(&["report", "--coverage"]);
    assert_eq!(code, 0);
    let rows = v["output"]["coverage"].as_array().unwrap();
    let ops: Vec<(String, String)> =
        rows.iter().map(|r| (r["module"].as_str().unwrap().to_string(), r["op"].as_str().unwrap().to_string())).collect();
    let expected: &[(&str, &[&str])] = &[
        ("tensor_core", &["tensor_product", "apply", "tensor_of_maps", "tau_cyclic", "kernel_basis"]),
        ("graph_model", &["load_graph", "to_markov_lcoalgebra", "reverse", "sample_walk"]),
        (
            "lcoalgebra",
            &["check_axioms", "cocommutator_kernel", "graph_of", "walk_expansion", "star_compose", "tensor_product_lc", "lift_degree_n", "check_bialgebra_hopf"],
        ),
        (
            "coassoc_constructions",
            &["coproduct_from_matrices", "builtin_catalog", "path_deconcatenation_coalgebra", "convolution_product", "ito_embedding", "check_chiral_ito"],
        ),
        ("algebra_core", &["algebra_catalog", "flower_lcoalgebra", "hochschild_boundaries", "reading_map", "nonlocal_complex", "triangle_degree2_hopf"]),
        (
            "ito_calculus",
            &["classify_map", "ito_hom_bijection", "carre_star_check", "cochain_complex_fn", "conjugation_ito_identity", "lbialgebra_differentials", "virtual_petals"],
        ),
        ("dialgebra_forms", &["form_star_product", "form_differential", "dialgebra_ops", "dendriform_convert", "leibnitz_bracket", "trace_Tr"]),
        ("cp_semigroup", &["cp_apply", "iterate_circle_g", "compose_circle_g", "diagnostics"]),
        ("poly_products", &["pointer_product", "matrix_iso_check", "cross_product_check", "random_pointer_product", "mutation_simulate"]),
        ("cli", &["run"]),
    ];
    for (module, names) in expected {
        for op in *names {
            assert!(ops.contains(&(module.to_string(), op.to_string())), "{module}::{op} missing from the coverage table");
        }
    }
    assert_eq!(ops.len(), expected.iter().map(|(_, n)| n.len()).sum::<usize>());

    let mut by_args: BTreeMap<Vec<String>, Vec<(String, String)>> = BTreeMap::new();
    for r in rows {
        let args: Vec<String> = r["args"].as_array().unwrap().iter().map(|a| a.as_str().unwrap().to_string()).collect();
        by_args.entry(args).or_default().push((r["op"].as_str().unwrap().to_string(), r["check"].as_str().unwrap().to_string()));
    }
    for (args, wanted) in by_args {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, v) = run_json(&refs);
        assert!(code == 0 || code == 1, "{args:?} exited {code}");
        let names: Vec<String> = verdicts(&v).into_keys().collect();
        for (op, prefix) in wanted {
            assert!(names.iter().any(|n| n.starts_with(&prefix)), "{op}: no check starting with '{prefix}' in {args:?}");
        }
    }
}
