//! `report`: the full battery of checks, and the table mapping every library operation
//! to a subcommand invocation and the check it produces.

use std::collections::BTreeMap;

use clap::Args;
use lcoalg::coassoc_constructions::CATALOG_NAMES;
use lcoalg::cp_semigroup::{random_matrix, CMat, Grouping, KrausFamily};
use lcoalg::graph_model::{ProbabilityConvention, WeightedDigraph};
use lcoalg::poly_products::matrix_value;
use lcoalg::scalar::q;
use lcoalg::Q;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::calculus::{forms_cmd, ito_cmd, FormArgs, ItoArgs};
use crate::inputs::{require_seed, CliResult};
use crate::processes::{cp_run, mutate_run, poly_cmd, PolyArgs};
use crate::report::Report;
use crate::structure::{axioms_cmd, catalog_cmd, walks_run, AxiomArgs, CatalogArgs, WalkArgs};

#[derive(Args, Debug, Clone, Default)]
pub struct ReportArgs {
    /// Print the operation coverage table instead of running the battery.
    #[arg(long)]
    pub coverage: bool,
}

/// One library operation, an invocation that reaches it, and the prefix of a check it produces.
/// `{fixtures}` in the arguments stands for a directory holding the test fixtures.
#[derive(Debug, Clone, Copy)]
pub struct CoverageRow {
    pub module: &'static str,
    pub op: &'static str,
    pub args: &'static [&'static str],
    pub check: &'static str,
}

const fn row(module: &'static str, op: &'static str, args: &'static [&'static str], check: &'static str) -> CoverageRow {
    CoverageRow { module, op, args, check }
}

const SL2Q: &[&str] = &["axioms", "--catalog", "sl2q", "--tensor", "--degree", "2"];
const Z3: &[&str] = &["axioms", "--catalog", "group_Z3"];
const WALK: &[&str] = &["walks", "--graph", "{fixtures}/walk.json", "--seed", "7", "--adjoin-identity"];
const GRAPH: &[&str] = &["axioms", "--graph", "{fixtures}/walk.json", "--reverse", "--convention", "equiprobable", "--adjoin-identity"];
const ITO_Q: &[&str] = &["ito", "--algebra", "quaternions", "--element", "1 + j", "--petals", "2"];
const ITO_Z3: &[&str] = &["ito", "--algebra", "group_algebra:3"];
const FORMS: &[&str] = &["forms"];
const CP: &[&str] = &["cp", "--graph", "{fixtures}/complete3.json", "--kraus", "{fixtures}/k.json", "--steps", "3", "--compare-usual"];
const POLY: &[&str] = &["poly", "--seed", "3", "--catalog", "triangle", "--convention", "shift:x0>x2,x1>x0,x2>x1", "--samples", "20", "--runs", "1000"];
const MUTATE: &[&str] = &["mutate", "--config", "{fixtures}/mproc.json"];

pub const COVERAGE: &[CoverageRow] = &[
    row("tensor_core", "tensor_product", WALK, "walk_expansion"),
    row("tensor_core", "apply", SL2Q, "breaking_equation"),
    row("tensor_core", "tensor_of_maps", SL2Q, "coassociativity"),
    row("tensor_core", "tau_cyclic", SL2Q, "cocommutativity"),
    row("tensor_core", "kernel_basis", SL2Q, "cocommutator_kernel"),
    row("graph_model", "load_graph", GRAPH, "graph_loaded"),
    row("graph_model", "to_markov_lcoalgebra", GRAPH, "graph_of_roundtrip"),
    row("graph_model", "reverse", GRAPH, "reverse_involution"),
    row("graph_model", "sample_walk", WALK, "sample_walk"),
    row("lcoalgebra", "check_axioms", Z3, "right_counit"),
    row("lcoalgebra", "cocommutator_kernel", Z3, "cocommutator_kernel"),
    row("lcoalgebra", "graph_of", GRAPH, "graph_of"),
    row("lcoalgebra", "walk_expansion", WALK, "walk_expansion"),
    row("lcoalgebra", "star_compose", GRAPH, "star_compose("),
    row("lcoalgebra", "tensor_product_lc", SL2Q, "tensor/"),
    row("lcoalgebra", "lift_degree_n", SL2Q, "lift(2)/"),
    row("lcoalgebra", "check_bialgebra_hopf", Z3, "hopf/"),
    row("coassoc_constructions", "coproduct_from_matrices", POLY, "matrix_iso(M2)/"),
    row("coassoc_constructions", "builtin_catalog", &["catalog"], "catalog["),
    row("coassoc_constructions", "path_deconcatenation_coalgebra", WALK, "paths/"),
    row("coassoc_constructions", "convolution_product", WALK, "convolution_associative"),
    row("coassoc_constructions", "ito_embedding", Z3, "ito_embedding"),
    row("coassoc_constructions", "check_chiral_ito", Z3, "chiral/"),
    row("algebra_core", "algebra_catalog", &["catalog", "--algebra", "quaternions"], "algebra_catalog["),
    row("algebra_core", "flower_lcoalgebra", &["axioms", "--algebra", "quaternions"], "flower/"),
    row("algebra_core", "hochschild_boundaries", ITO_Z3, "reading_map("),
    row("algebra_core", "reading_map", ITO_Q, "reading_map("),
    row("algebra_core", "nonlocal_complex", ITO_Z3, "nonlocal/"),
    row("algebra_core", "triangle_degree2_hopf", &["axioms", "--algebra", "quaternion_group", "--hopf"], "hopf2/"),
    row("ito_calculus", "classify_map", ITO_Q, "classify["),
    row("ito_calculus", "ito_hom_bijection", ITO_Q, "ito_hom_bijection"),
    row("ito_calculus", "carre_star_check", ITO_Q, "carre_star_"),
    row("ito_calculus", "cochain_complex_fn", ITO_Z3, "fn/"),
    row("ito_calculus", "conjugation_ito_identity", ITO_Q, "conj_ito/"),
    row("ito_calculus", "lbialgebra_differentials", ITO_Q, "lbialg/"),
    row("ito_calculus", "virtual_petals", ITO_Q, "petals/"),
    row("dialgebra_forms", "form_star_product", FORMS, "star_associative"),
    row("dialgebra_forms", "form_differential", FORMS, "d_squared_zero"),
    row("dialgebra_forms", "dialgebra_ops", FORMS, "dialgebra_axiom_1"),
    row("dialgebra_forms", "dendriform_convert", FORMS, "convert["),
    row("dialgebra_forms", "leibnitz_bracket", FORMS, "leibnitz_identity"),
    row("dialgebra_forms", "trace_Tr", FORMS, "trace/"),
    row("cp_semigroup", "cp_apply", CP, "cp_apply"),
    row("cp_semigroup", "iterate_circle_g", CP, "usual_power("),
    row("cp_semigroup", "compose_circle_g", CP, "semigroup("),
    row("cp_semigroup", "diagnostics", CP, "contractive"),
    row("poly_products", "pointer_product", POLY, "placement/"),
    row("poly_products", "matrix_iso_check", POLY, "matrix_iso("),
    row("poly_products", "cross_product_check", POLY, "cross/"),
    row("poly_products", "random_pointer_product", POLY, "random_product_distribution"),
    row("poly_products", "mutation_simulate", MUTATE, "first_time_law("),
    row("cli", "run", &["mutate", "--config", "{fixtures}/m.json"], "matrix_square@"),
];

fn coverage_report() -> Report {
    let mut rep = Report::new();
    let mut rows = Vec::new();
    for r in COVERAGE {
        rep.line(format!("{:<22} {:<32} {:<28} lcoalg {}", r.module, r.op, r.check, r.args.join(" ")));
        rows.push(json!({"module": r.module, "op": r.op, "args": r.args, "check": r.check}));
    }
    let mut per_module: BTreeMap<&str, usize> = BTreeMap::new();
    for r in COVERAGE {
        *per_module.entry(r.module).or_default() += 1;
    }
    rep.set("coverage", json!(rows));
    rep.set("operations_per_module", json!(per_module));
    rep
}

/// Deterministic Kraus operators on the complete graph with three vertices and unit weights.
fn battery_kraus(seed: u64) -> CliResult<KrausFamily> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names = ["v0", "v1", "v2"];
    let edges: Vec<(&str, &str, Q)> = names.iter().flat_map(|&x| names.iter().map(move |&y| (x, y, q(1)))).collect();
    let g = WeightedDigraph::from_edges(&names, &edges)?;
    let ops: BTreeMap<String, CMat> = g.vertices.iter().map(|v| (v.clone(), random_matrix(&mut rng, 2, 0.5))).collect();
    Ok(KrausFamily::from_graph(&g, ProbabilityConvention::UnitWeights, false, &ops, Grouping::PerWord)?)
}

/// Every subcommand on built-in inputs.
pub fn report_cmd(a: &ReportArgs, seed: Option<u64>, tol: f64) -> CliResult<Report> {
    if a.coverage {
        return Ok(coverage_report());
    }
    let seed = require_seed(seed, "report")?;
    let mut rep = Report::new();
    rep.seed = Some(seed);
    rep.absorb("catalog", catalog_cmd(&CatalogArgs::default())?);
    for name in CATALOG_NAMES {
        rep.absorb(&format!("axioms[{name}]"), axioms_cmd(&AxiomArgs::catalog(name))?);
    }
    for (name, hopf) in [("quaternions", true), ("m2_pauli", true), ("quaternion_group", true), ("group_algebra:3", false)] {
        rep.absorb(&format!("axioms[{name}]"), axioms_cmd(&AxiomArgs::algebra(name, hopf))?);
    }
    let walk = WalkArgs {
        graph: Default::default(),
        convention: "given".into(),
        adjoin_identity: false,
        start: None,
        length: 20,
        depth: 2,
        runs: 20_000,
        paths: 2,
    };
    rep.absorb("walks[K3]", walks_run(&WeightedDigraph::complete(3), &walk, Some(seed))?);
    for name in ["quaternions", "m2_pauli", "group_algebra:3"] {
        rep.absorb(&format!("ito[{name}]"), ito_cmd(&ItoArgs::new(name), Some(seed))?);
    }
    rep.absorb("forms[Z2]", forms_cmd(&FormArgs { degree: 2, ..Default::default() }, Some(seed))?);
    rep.absorb(
        "forms[m2_pauli]",
        forms_cmd(&FormArgs { algebra: Some("m2_pauli".into()), samples: Some(30), degree: 2, ..Default::default() }, Some(seed))?,
    );
    rep.absorb("cp[K3]", cp_run(&battery_kraus(seed)?, 3, true, None, false, tol)?);
    let poly = PolyArgs { catalog: Some("sl2q".into()), p: None, r: None, convention: "static".into(), samples: 100, runs: 4000 };
    rep.absorb("poly", poly_cmd(&poly, Some(seed))?);
    let z = matrix_value([[1, 1], [1, 1]])?;
    rep.absorb("mutate[sequence]", mutate_run(&json!({"sequence": ["H2", "H2", "H2", "diamond_a", "H2"]}), &z, None, None)?);
    let process = json!({
        "states": ["H2", "diamond_a", "triangle"],
        "probs": ["4/5", "1/10", "1/10"],
        "steps": 6,
        "first_time": {"target": "triangle", "runs": 20000, "max_t": 4},
    });
    rep.absorb("mutate[process]", mutate_run(&process, &z, None, Some(seed))?);
    Ok(rep)
}
