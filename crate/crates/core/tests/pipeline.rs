//! Cross-module pipelines: graphs through coalgebras into channels and products.

use lcoalg::coassoc_constructions::{catalog, CATALOG_NAMES};
use lcoalg::cp_semigroup::{KrausFamily, CP_TOL};
use lcoalg::graph_model::{random_stochastic_digraph, to_markov_lcoalgebra, ProbabilityConvention, WeightedDigraph};
use lcoalg::lcoalgebra::{graph_of, tensor_product_lc};
use lcoalg::poly_products::{matrix_iso_check_on, sl2q_layout};
use lcoalg::scalar::q;
use lcoalg::Vect;
use proptest::prelude::*;
use serde_json::json;

#[test]
fn graph_document_to_axioms_and_back() {
    let text = r#"{"vertices": ["a", "b", "c"],
        "arrows": [{"id": "x", "src": "a", "dst": "b", "weight": "1/3"},
                   {"id": "y", "src": "a", "dst": "c", "weight": "2/3"},
                   {"id": "z", "src": "b", "dst": "a", "weight": 1},
                   {"id": "w", "src": "c", "dst": "a", "weight": 1}]}"#;
    let g = WeightedDigraph::load(text).unwrap();
    let c = to_markov_lcoalgebra(&g, ProbabilityConvention::GivenWeights, false).unwrap();
    let r = c.check_axioms();
    for name in ["breaking_equation", "right_counit", "left_counit"] {
        assert!(r.passed(name), "{name}");
    }
    let back = graph_of(&c, false).unwrap();
    assert_eq!(back.arrow_multiset(), g.arrow_multiset());
    let g2 = WeightedDigraph::load(&g.save()).unwrap();
    assert_eq!(g2.arrow_multiset(), g.arrow_multiset());
}

#[test]
fn walk_expansion_weights_sum_to_one() {
    let g = random_stochastic_digraph(5, 4, 11);
    let c = to_markov_lcoalgebra(&g, ProbabilityConvention::GivenWeights, true).unwrap();
    for s in c.basis.syms() {
        let e = c.walk_expansion(&Vect::sym(s), 3).unwrap();
        let total = e.terms().fold(q(0), |acc, (_, x)| acc + x);
        assert_eq!(total, q(1));
    }
}

#[test]
fn catalog_tensor_squares_keep_the_breaking_equation() {
    for name in CATALOG_NAMES {
        let c = catalog(name).unwrap().coalgebra;
        if c.degree != 1 {
            continue;
        }
        let t = tensor_product_lc(&c, &c).unwrap();
        assert!(t.check_axioms().passed("breaking_equation"), "{name}");
    }
}

#[test]
fn sl2q_products_are_matrix_products() {
    let c = catalog("sl2q").unwrap().coalgebra;
    let r = matrix_iso_check_on(&c, &sl2q_layout(&c).unwrap(), 25, 8).unwrap();
    assert!(r.ok(), "{:?}", r.failures().collect::<Vec<_>>());
}

#[test]
fn kraus_document_to_semigroup() {
    let doc = json!({
        "graph": {"vertices": ["p", "r"], "arrows": [
            {"id": "pp", "src": "p", "dst": "p", "weight": "1/2"},
            {"id": "pr", "src": "p", "dst": "r", "weight": "1/2"},
            {"id": "rp", "src": "r", "dst": "p", "weight": 1}]},
        "convention": "given",
        "operators": {"p": [[0.6, 0.0], [0.0, 0.3]], "r": [[[0.0, 0.2], 0.1], [0.0, 0.5]]}
    });
    let fam = KrausFamily::from_json(&doc).unwrap();
    let (m, check) = fam.compose_circle_g(2, 1).unwrap();
    assert!(check.passed, "{:?}", check.witness);
    assert!(m.distance(&fam.iterate_circle_g(3).unwrap()) < CP_TOL);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_markov_coalgebras_satisfy_their_laws(n in 1usize..7, extra in 0usize..6, seed in 0u64..1000) {
        let g = random_stochastic_digraph(n, extra, seed);
        let c = to_markov_lcoalgebra(&g, ProbabilityConvention::GivenWeights, true).unwrap();
        let r = c.check_axioms();
        prop_assert!(r.passed("breaking_equation"));
        prop_assert!(r.passed("right_counit"));
        prop_assert!(r.passed("left_counit"));
        for (k, l) in [(1, 1), (1, 2), (2, 1)] {
            prop_assert!(c.star_compose(k, l).unwrap().passed);
        }
    }
}
