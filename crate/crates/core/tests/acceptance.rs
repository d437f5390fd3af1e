//! The ten acceptance criteria, each printed as one PASS/FAIL line with its runtime.
//! Exits non-zero when any criterion fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use lcoalg::algebra_core::{group_algebra, m2_pauli, quaternion_group, quaternions, triangle_degree2_hopf, OrbitPattern, reading_map, StructAlgebra};
use lcoalg::coassoc_constructions::{catalog, CATALOG_NAMES};
use lcoalg::cp_semigroup::{random_matrix, symbolic_kraus, polynomial_text, xg_coalgebra, Grouping, KrausFamily, CMat, CP_TOL};
use lcoalg::dialgebra_forms::{
    dendriform_convert, form_words, forms_dialgebra, forms_report, inverse_kind, leibnitz_checks, random_form, z2_example, ConversionKind, Form,
    FormTrace, OpPair,
};
use lcoalg::graph_model::{random_stochastic_digraph, to_markov_lcoalgebra, ProbabilityConvention, WeightedDigraph};
use lcoalg::ito_calculus::{
    carre_star_classes, cochain_complex_fn, conjugation, conjugation_ito, converse_class, inner_derivation, ito_hom_bijection, Direction, MapClass,
};
use lcoalg::poly_products::{cross_product_check, matrix_iso_check_on, matrix_value, path_convention_example, run_sequence, sl2q_layout, value_rows, MutationProcess, MutationState};
use lcoalg::report::AxiomReport;
use lcoalg::scalar::{q, qi, Q, Qi};
use lcoalg::tensor_core::{all_words, Sym, Vect, Word};
use lcoalg::{LinMap, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(bool, String), String>;

fn failures(r: &AxiomReport) -> String {
    r.failures().map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_default())).collect::<Vec<_>>().join("; ")
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

// 1. breaking equation and counits on the catalog and on random digraphs
fn axiom_suite() -> Outcome {
    let mut bad = Vec::new();
    let mut t4_no_left_counit = false;
    for name in CATALOG_NAMES {
        let c = catalog(name).map_err(err)?.coalgebra;
        let r = c.check_axioms();
        for req in ["breaking_equation", "right_counit", "left_counit"] {
            if let Some(chk) = r.get(req) {
                if !chk.passed {
                    bad.push(format!("{name}/{req}"));
                }
            }
        }
        if *name == "two_point_T4" {
            t4_no_left_counit = r.get("left_counit_exists").map(|c| !c.passed).unwrap_or(false);
        }
    }
    for seed in 0..100u64 {
        let g = random_stochastic_digraph(1 + (seed % 8) as usize, (seed % 5) as usize, seed);
        let c = to_markov_lcoalgebra(&g, ProbabilityConvention::GivenWeights, true).map_err(err)?;
        let r = c.check_axioms();
        for req in ["breaking_equation", "right_counit", "left_counit"] {
            if !r.passed(req) {
                bad.push(format!("random#{seed}/{req}"));
            }
        }
    }
    if !t4_no_left_counit {
        bad.push("T4 left counit unexpectedly exists".into());
    }
    Ok((bad.is_empty(), if bad.is_empty() { format!("{} catalog entries, 100 random digraphs, T4 has no left counit", CATALOG_NAMES.len()) } else { bad.join(", ") }))
}

/// Direct `b′` and `b` on a basis word.
fn hochschild_oracle(a: &StructAlgebra<Q>, w: &[Sym]) -> (Vect<Q>, Vect<Q>) {
    let n = w.len();
    let mut bp = Vect::zero(n - 1);
    for i in 0..n - 1 {
        let sign = if i % 2 == 0 { q(1) } else { q(-1) };
        for (m, c) in a.mul_sym(w[i], w[i + 1]).terms() {
            let mut word: Word = w[..i].iter().copied().collect();
            word.push(m[0]);
            word.extend(w[i + 2..].iter().copied());
            bp.add_term(word, c * &sign);
        }
    }
    let mut b = bp.clone();
    let sign = if (n - 1).is_multiple_of(2) { q(1) } else { q(-1) };
    for (m, c) in a.mul_sym(w[n - 1], w[0]).terms() {
        let mut word: Word = Word::new();
        word.push(m[0]);
        word.extend(w[1..n - 1].iter().copied());
        b.add_term(word, c * &sign);
    }
    (bp, b)
}

// 2. reading map against the Hochschild boundaries
fn reading_map_check() -> Outcome {
    let a = quaternions::<Q>();
    let mut words: Vec<Word> = all_words(4, 2).into_iter().chain(all_words(4, 3)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for k in 0..200 {
        let n = 4 + k % 2;
        words.push((0..n).map(|_| rng.gen_range(0..4u32)).collect());
    }
    for w in &words {
        let p = OrbitPattern::from_word(&a, w).map_err(err)?;
        let (bp, b) = hochschild_oracle(&a, w);
        if reading_map(&a, &p, false).map_err(err)? != bp || reading_map(&a, &p, true).map_err(err)? != b {
            return Ok((false, format!("mismatch on {}", a.basis.word_text(w))));
        }
    }
    Ok((true, format!("{} tuples", words.len())))
}

fn four_classes<S: Scalar>(a: &StructAlgebra<S>, u: &Vect<S>, h: &Vect<S>) -> Result<Option<String>, String> {
    let hom = conjugation(a, u).map_err(err)?;
    let ito = conjugation_ito(a, u).map_err(err)?;
    let der = inner_derivation(a, h);
    let r = carre_star_classes(a, &hom, &ito, &der).map_err(err)?;
    if !r.ok() {
        return Ok(Some(format!("{}: {}", a.name, failures(&r))));
    }
    let (ch, ci) = (converse_class(a, &hom).map_err(err)?, converse_class(a, &ito).map_err(err)?);
    if ch != MapClass::Homomorphism || ci != MapClass::ItoDerivative {
        return Ok(Some(format!("{}: converse gave {ch} and {ci}", a.name)));
    }
    Ok(None)
}

// 3. the four □* classes and the converse classification
fn carre_star() -> Outcome {
    let h = quaternions::<Q>();
    let p = m2_pauli();
    let mut bad = Vec::new();
    bad.extend(four_classes(&h, &h.parse_elem("1 + j").map_err(err)?, &h.parse_elem("k").map_err(err)?)?);
    let u = p.elem(&[("1", qi(1, 0)), ("u0", qi(0, 1)), ("u2", qi(2, 0))]).map_err(err)?;
    let hh = p.elem(&[("u0", qi(1, 0)), ("u2", qi(0, 2))]).map_err(err)?;
    bad.extend(four_classes(&p, &u, &hh)?);
    Ok((bad.is_empty(), if bad.is_empty() { "ℍ and M₂(ℚ(i)), all basis pairs".into() } else { bad.join("; ") }))
}

fn roundtrips<S: Scalar>(a: &StructAlgebra<S>, seed: u64) -> Result<Option<String>, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let words = all_words(a.dim(), 1);
    let mut done = 0;
    while done < 50 {
        let u = a.random_elem(&mut rng, 3);
        if a.inverse(&u).is_err() {
            continue;
        }
        let hom = conjugation(a, &u).map_err(err)?;
        let ito = ito_hom_bijection(&hom, a, Direction::ToIto).map_err(err)?;
        let back = ito_hom_bijection(&ito, a, Direction::ToHom).map_err(err)?;
        let direct = conjugation_ito(a, &u).map_err(err)?;
        if back.agrees_on(&hom, &words).map_err(err)?.is_some() || ito.agrees_on(&direct, &words).map_err(err)?.is_some() {
            return Ok(Some(format!("{}: roundtrip failed for u = {}", a.name, u.display(&a.basis))));
        }
        done += 1;
    }
    Ok(None)
}

// 4. Ito ↔ homomorphism bijection
fn bijection() -> Outcome {
    let mut bad = Vec::new();
    bad.extend(roundtrips(&quaternions::<Q>(), 4)?);
    bad.extend(roundtrips(&quaternion_group::<Q>(), 5)?);
    bad.extend(roundtrips(&m2_pauli(), 6)?);
    Ok((bad.is_empty(), if bad.is_empty() { "50 conjugations each on ℍ, ℚ[Q8], M₂(ℚ(i))".into() } else { bad.join("; ") }))
}

// 5. the f_n cochain complex
fn f_complex() -> Outcome {
    let z3 = group_algebra::<Q>(3).map_err(err)?;
    let sq = z3.clone();
    let hom = LinMap::on_symbols(1, move |s| Ok(sq.mul_sym(s, s).clone()));
    let rho = hom.sub(&LinMap::identity(1)).map_err(err)?;
    let r1 = cochain_complex_fn(&z3, &rho, 5, 1).map_err(err)?;
    let p = m2_pauli();
    let u = p.elem(&[("1", qi(2, 0)), ("u0", qi(0, 1)), ("u1", qi(1, 0))]).map_err(err)?;
    let r2 = cochain_complex_fn(&p, &conjugation_ito(&p, &u).map_err(err)?, 5, 2).map_err(err)?;
    let mut bad = Vec::new();
    if !r1.ok() {
        bad.push(format!("ℚ[ℤ₃]: {}", failures(&r1)));
    }
    if !r2.ok() {
        bad.push(format!("M₂: {}", failures(&r2)));
    }
    Ok((bad.is_empty(), if bad.is_empty() { format!("{} + {} checks, f_n up to n = 5", r1.checks.len(), r2.checks.len()) } else { bad.join("; ") }))
}

fn conversions<S: Scalar>(ops: &OpPair<Form<S>>, triples: &[(Form<S>, Form<S>, Form<S>)]) -> Result<Option<String>, String> {
    for kind in [ConversionKind::TypeI, ConversionKind::TypeIII] {
        let (d, r) = dendriform_convert(ops, kind, triples).map_err(err)?;
        if !r.ok() {
            return Ok(Some(format!("{kind:?}: {}", failures(&r))));
        }
        let (back, r) = dendriform_convert(&d, inverse_kind(kind), triples).map_err(err)?;
        if !r.ok() {
            return Ok(Some(format!("{kind:?} inverse: {}", failures(&r))));
        }
        for (x, y, _) in triples {
            if back.l(x, y).map_err(err)? != ops.l(x, y).map_err(err)? || back.r(x, y).map_err(err)? != ops.r(x, y).map_err(err)? {
                return Ok(Some(format!("{kind:?}: roundtrip changed the operations")));
            }
        }
    }
    Ok(None)
}

fn forms_suite<S: Scalar>(label: &str, triples: &[(Form<S>, Form<S>, Form<S>)], tr: &FormTrace<S>) -> Result<Vec<String>, String> {
    let mut bad = Vec::new();
    let r = forms_report(triples).map_err(err)?;
    if !r.ok() {
        bad.push(format!("{label}: {}", failures(&r)));
    }
    let r = leibnitz_checks(triples).map_err(err)?;
    if !r.ok() {
        bad.push(format!("{label}: {}", failures(&r)));
    }
    if let Some(w) = conversions(&forms_dialgebra::<S>(), triples)? {
        bad.push(format!("{label}: {w}"));
    }
    let pairs: Vec<_> = triples.iter().map(|(x, y, _)| (x.clone(), y.clone())).collect();
    let r = tr.check(&pairs).map_err(err)?;
    if !r.ok() {
        bad.push(format!("{label}: {}", failures(&r)));
    }
    Ok(bad)
}

// 6. the forms dialgebra
fn forms() -> Outcome {
    const U: Sym = 0;
    let mut small = vec![Form::<Q>::identity(U)];
    small.extend(form_words::<Q>(2, U, 1));
    let mut triples = Vec::new();
    for x in &small {
        for y in &small {
            for z in &small {
                triples.push((x.clone(), y.clone(), z.clone()));
            }
        }
    }
    let mut bad = forms_suite("ℚ[ℤ₂]", &triples, &z2_example::<Q>().map_err(err)?)?;

    let p = m2_pauli();
    let u = p.elem(&[("1", qi(1, 0)), ("u0", qi(0, 1)), ("u2", qi(2, 0))]).map_err(err)?;
    let rho = conjugation_ito(&p, &u).map_err(err)?;
    let sigma = LinMap::on_symbols(0, |s| Ok(if s == 0 { Vect::scalar(qi(2, 0)) } else { Vect::zero(0) }));
    let tr = FormTrace::new(&p, &rho, sigma).map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let sampled: Vec<_> = (0..30)
        .map(|_| {
            let mut f = || {
                let k = rng.gen_range(1..=2);
                random_form::<Qi, _>(&mut rng, 4, U, k)
            };
            (f(), f(), f())
        })
        .collect();
    bad.extend(forms_suite("M₂", &sampled, &tr)?);
    Ok((bad.is_empty(), if bad.is_empty() { format!("{} exhaustive + 30 sampled triples", triples.len()) } else { bad.join("; ") }))
}

fn unit_complete(n: usize) -> WeightedDigraph {
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let edges: Vec<(&str, &str, Q)> = refs.iter().flat_map(|&a| refs.iter().map(move |&b| (a, b, q(1)))).collect();
    WeightedDigraph::from_edges(&refs, &edges).expect("complete graph")
}

fn ops_for(names: &[String], d: usize, rng: &mut ChaCha8Rng) -> BTreeMap<String, CMat> {
    names.iter().map(|n| (n.clone(), random_matrix(rng, d, 0.7))).collect()
}

// 7. the graph-driven CP semigroup
fn cp() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    let mut bad = Vec::new();
    for n in 1..=3 {
        for d in 1..=3 {
            let g = unit_complete(n);
            let fam = KrausFamily::from_graph(&g, ProbabilityConvention::UnitWeights, false, &ops_for(&g.vertices, d, &mut rng), Grouping::PerWord)
                .map_err(err)?;
            for k in 1..=4 {
                let dist = fam.iterate_circle_g(k).map_err(err)?.distance(&fam.psi().power(k));
                worst = worst.max(dist);
                if dist > CP_TOL {
                    bad.push(format!("complete n={n} d={d} k={k}: {dist:e}"));
                }
            }
        }
    }
    let c = xg_coalgebra().map_err(err)?;
    let text: Vec<String> = symbolic_kraus(&c, 2, Grouping::PerStartVertex).map_err(err)?.iter().map(|p| polynomial_text(p, "1")).collect();
    if text != ["1", "X + g·X", "g·g"] {
        bad.push(format!("(1,X,g) Kraus set {text:?}"));
    }
    let tri = WeightedDigraph::cycle(3);
    let k2 = unit_complete(2);
    for (g, label) in [(&tri, "triangle"), (&k2, "K2")] {
        let ops = ops_for(&g.vertices, 2, &mut rng);
        for grouping in [Grouping::PerWord, Grouping::PerStartVertex] {
            let fam = KrausFamily::from_graph(g, ProbabilityConvention::UnitWeights, false, &ops, grouping).map_err(err)?;
            for k in 1..=4 {
                for l in 1..=5 - k {
                    let (_, chk) = fam.compose_circle_g(k, l).map_err(err)?;
                    if !chk.passed {
                        bad.push(format!("{label} {grouping:?} ({k},{l}): {}", chk.witness.unwrap_or_default()));
                    }
                }
            }
        }
    }
    Ok((bad.is_empty(), if bad.is_empty() { format!("max superoperator gap {worst:.1e}; Kraus set {{{}}}", text.join(", ")) } else { bad.join("; ") }))
}

// 8. pointer products
fn poly() -> Outcome {
    let sl2 = catalog("sl2q").map_err(err)?.coalgebra;
    let r = matrix_iso_check_on(&sl2, &sl2q_layout(&sl2).map_err(err)?, 100, 8).map_err(err)?;
    let mut bad = Vec::new();
    if !r.passed("matrix_product_scalar") || !r.ok() {
        bad.push(format!("Sl(2)_q: {}", failures(&r)));
    }
    let r = cross_product_check(100, 8).map_err(err)?;
    if !r.ok() {
        bad.push(format!("triangle: {}", failures(&r)));
    }
    let (got, want) = path_convention_example().map_err(err)?;
    if got != want {
        bad.push(format!("path convention gave {}", got.text()));
    }
    Ok((bad.is_empty(), if bad.is_empty() { format!("path product: {}", got.text()) } else { bad.join("; ") }))
}

// 9. mutation
fn mutation() -> Outcome {
    let h2 = MutationState::named("H2").map_err(err)?;
    let da = MutationState::named("diamond_a").map_err(err)?;
    let t = run_sequence(&[&h2, &h2, &h2, &da, &h2], &matrix_value([[1, 1], [1, 1]]).map_err(err)?).map_err(err)?;
    let corner: Vec<Q> = t.values.iter().map(|v| value_rows(v).map(|r| r[0][0].clone())).collect::<Result<_, _>>().map_err(err)?;
    let want = [q(2), q(8), q(128), q(128 * 128), q(128i64.pow(4))];
    let mut bad = Vec::new();
    if corner != want {
        bad.push(format!("trajectory {corner:?}"));
    }
    let rows = value_rows(&t.values[3]).map_err(err)?;
    if rows[0][1] != q(0) || rows[1][0] != q(0) || rows[1][1] != q(0) {
        bad.push("◇_a step is not diagonal".into());
    }
    let proc = MutationProcess::standard(Q::new(1.into(), 5.into()), 9).map_err(err)?;
    let p3 = proc.first_time_distribution("triangle", 100_000, 3).map_err(err)?[2];
    if (p3 - 0.081).abs() > 0.005 {
        bad.push(format!("P(T=3) = {p3}"));
    }
    Ok((bad.is_empty(), if bad.is_empty() { format!("2, 8, 128, 128², 128⁴; P(T=3) = {p3:.4}") } else { bad.join("; ") }))
}

// 10. degree-2 triangle Hopf structures
fn degree2_hopf() -> Outcome {
    let required = [
        "right_multiplicative",
        "left_multiplicative",
        "right_antipode",
        "left_antipode",
        "antipode_anti_hom",
        "left_antipode_anti_hom",
        "antipode_inverse",
        "antipode_unique",
    ];
    let mut bad = Vec::new();
    for name in ["quaternions", "m2_pauli"] {
        let r = triangle_degree2_hopf(name).map_err(err)?;
        for req in required {
            match r.get(req) {
                Some(c) if c.passed => {}
                Some(c) => bad.push(format!("{name}/{req} ({})", c.witness.clone().unwrap_or_default())),
                None => bad.push(format!("{name}/{req} missing")),
            }
        }
    }
    Ok((bad.is_empty(), if bad.is_empty() { "ℍ and M₂(ℚ(i))".into() } else { bad.join("; ") }))
}

fn main() {
    let criteria: [(&str, u64, fn() -> Outcome); 10] = [
        ("axiom suite", 10, axiom_suite),
        ("reading map = Hochschild", 30, reading_map_check),
        ("four-class □* theorem", 5, carre_star),
        ("Ito ↔ hom bijection", 5, bijection),
        ("f_n complex", 120, f_complex),
        ("forms dialgebra", 60, forms),
        ("CP semigroup", 30, cp),
        ("polynomial products", 10, poly),
        ("mutation", 60, mutation),
        ("degree-2 Hopf", 10, degree2_hopf),
    ];
    let mut all = true;
    for (i, (name, budget, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = f();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*budget);
        let (ok, detail) = match res {
            Ok((ok, d)) => (ok && in_time, d),
            Err(e) => (false, format!("error: {e}")),
        };
        all &= ok;
        let time_note = if in_time { String::new() } else { format!(" over the {budget} s budget;") };
        println!(
            "criterion {:>2} {:<26} {} ({:.2} s;{} {})",
            i + 1,
            name,
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            time_note,
            detail
        );
    }
    if !all {
        std::process::exit(1);
    }
}
