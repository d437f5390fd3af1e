//! `catalog`, `axioms` and `walks`: coalgebras from the catalog or from graphs.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::Args;
use lcoalg::algebra_core::{algebra_catalog, flower_lcoalgebra, m2_pauli, triangle_degree2_hopf, StructAlgebra, ALGEBRA_NAMES};
use lcoalg::coassoc_constructions::{catalog, check_chiral_ito, convolution_product, ito_embedding, path_deconcatenation_coalgebra, PathSpace, CATALOG_NAMES};
use lcoalg::graph_model::{
    declared_transitions, empirical_transitions, sample_walk, to_markov_lcoalgebra, to_markov_lcoalgebra_without_counits, ProbabilityConvention,
    WeightedDigraph, FRESH_IDENTITY,
};
use lcoalg::lcoalgebra::{check_bialgebra_hopf, graph_of, tensor_product_lc, LCoalgebra};
use lcoalg::report::Check;
use lcoalg::{Error, Scalar, Vect, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::inputs::{convention, input_error, load_algebra, load_graph, q_text, require_seed, AnyAlgebra, CliResult};
use crate::report::{guarded, Report};

#[derive(Args, Debug, Clone, Default)]
pub struct CatalogArgs {
    /// Show one built-in coalgebra.
    #[arg(long, conflicts_with = "algebra")]
    pub catalog: Option<String>,
    /// Show one algebra (catalog name or JSON file).
    #[arg(long)]
    pub algebra: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct AxiomArgs {
    /// Built-in coalgebra.
    #[arg(long, group = "source")]
    pub catalog: Option<String>,
    /// Weighted digraph JSON file, turned into its Markov L-coalgebra.
    #[arg(long, group = "source")]
    pub graph: Option<PathBuf>,
    /// Algebra (catalog name or JSON file); checks the algebra and its flower L-coalgebra.
    #[arg(long, group = "source")]
    pub algebra: Option<String>,
    /// How graph weights become probabilities: given, equiprobable or unit.
    #[arg(long, default_value = "given")]
    pub convention: String,
    /// Adjoin an identity vertex that absorbs sinks and feeds sources.
    #[arg(long)]
    pub adjoin_identity: bool,
    /// Reverse every arrow of the graph first.
    #[arg(long)]
    pub reverse: bool,
    /// Also check the degree-n lift.
    #[arg(long)]
    pub degree: Option<usize>,
    /// Also check the tensor square.
    #[arg(long)]
    pub tensor: bool,
    /// Check Δ_k ⋆ Δ_l = Δ_{k+l} for k + l up to this bound.
    #[arg(long, default_value_t = 3)]
    pub steps: usize,
    /// With --algebra: the degree-2 triangle Hopf structure (quaternions, quaternion_group, m2_pauli).
    #[arg(long)]
    pub hopf: bool,
}

impl AxiomArgs {
    pub fn catalog(name: &str) -> Self {
        AxiomArgs {
            catalog: Some(name.into()),
            graph: None,
            algebra: None,
            convention: "given".into(),
            adjoin_identity: false,
            reverse: false,
            degree: None,
            tensor: false,
            steps: 3,
            hopf: false,
        }
    }

    pub fn algebra(name: &str, hopf: bool) -> Self {
        AxiomArgs { catalog: None, algebra: Some(name.into()), hopf, ..AxiomArgs::catalog("") }
    }
}

#[derive(Args, Debug, Clone)]
pub struct WalkArgs {
    /// Weighted digraph JSON file.
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, default_value = "given")]
    pub convention: String,
    #[arg(long)]
    pub adjoin_identity: bool,
    /// Start vertex of the sampled walk (default: the first vertex).
    #[arg(long)]
    pub start: Option<String>,
    /// Number of steps of the sampled walk.
    #[arg(long, default_value_t = 20)]
    pub length: usize,
    /// Depth k of the symbolic walk expansions Δ_k(v).
    #[arg(long, default_value_t = 2)]
    pub depth: usize,
    /// Length of the long walk used for empirical transition frequencies.
    #[arg(long, default_value_t = 20_000)]
    pub runs: usize,
    /// Maximal path length of the path coalgebra.
    #[arg(long, default_value_t = 2)]
    pub paths: usize,
}

fn describe_coalgebra<S: Scalar>(c: &LCoalgebra<S>) -> CliResult<Value> {
    let b = &c.basis;
    let words = c.words();
    let table = |f: &lcoalg::LinMap<S>| -> CliResult<Value> {
        let mut m = Map::new();
        for w in &words {
            m.insert(b.word_text(w), json!(f.apply_word(w)?.display(b).to_string()));
        }
        Ok(Value::Object(m))
    };
    let counit = |e: &Option<lcoalg::LinMap<S>>| -> CliResult<Value> {
        match e {
            None => Ok(Value::Null),
            Some(e) => {
                let mut m = Map::new();
                for w in &words {
                    m.insert(b.word_text(w), json!(e.apply_word(w)?.as_scalar()?.to_text()));
                }
                Ok(Value::Object(m))
            }
        }
    };
    Ok(json!({
        "name": c.name,
        "basis": b.names(),
        "unit": b.unit().map(|u| b.name(u).to_string()),
        "degree": c.degree,
        "degenerate": c.degenerate,
        "coproduct": table(&c.right)?,
        "left_coproduct": if c.degenerate { Value::Null } else { table(&c.left)? },
        "right_counit": counit(&c.right_counit)?,
        "left_counit": counit(&c.left_counit)?,
    }))
}

fn describe_algebra<S: Scalar>(a: &StructAlgebra<S>) -> Value {
    let b = &a.basis;
    let mut table = Map::new();
    for x in b.syms() {
        for y in b.syms() {
            table.insert(format!("{}·{}", b.name(x), b.name(y)), json!(a.mul_sym(x, y).display(b).to_string()));
        }
    }
    json!({"name": a.name, "basis": b.names(), "unit": a.unit_vect().display(b).to_string(), "table": table})
}

/// Text lines `label(key) = value` for one table of a description.
fn table_lines(rep: &mut Report, label: &str, v: &Value) {
    if let Some(m) = v.as_object() {
        for (k, x) in m {
            rep.line(format!("{label}({k}) = {}", x.as_str().unwrap_or_default()));
        }
    }
}

pub fn catalog_cmd(a: &CatalogArgs) -> CliResult<Report> {
    let mut rep = Report::new();
    if let Some(name) = &a.catalog {
        let e = catalog(name)?;
        rep.push(Check::pass(format!("catalog[{name}]"), "built-in example constructs"));
        let desc = describe_coalgebra(&e.coalgebra)?;
        for (key, label) in [("coproduct", "Δ"), ("left_coproduct", "Δ̃"), ("right_counit", "ε"), ("left_counit", "ε̃")] {
            table_lines(&mut rep, label, &desc[key]);
        }
        rep.set("coalgebra", desc);
        rep.set("metadata", json!(e.metadata));
        if let Some(alg) = &e.algebra {
            let desc = describe_algebra(alg);
            table_lines(&mut rep, "m", &desc["table"]);
            rep.set("algebra", desc);
        }
        if let Some(s) = &e.antipode {
            let b = &e.coalgebra.basis;
            let m: BTreeMap<String, String> =
                b.syms().map(|x| Ok((b.name(x).to_string(), s.apply_word(&[x])?.display(b).to_string()))).collect::<lcoalg::Result<_>>()?;
            for (x, y) in &m {
                rep.line(format!("S({x}) = {y}"));
            }
            rep.set("antipode", json!(m));
        }
        return Ok(rep);
    }
    if let Some(spec) = &a.algebra {
        let (desc, axioms) = match load_algebra(spec)? {
            AnyAlgebra::Rational(x) => (describe_algebra(&x), x.check_axioms()),
            AnyAlgebra::Gaussian(x) => (describe_algebra(&x), x.check_axioms()),
        };
        rep.push(Check::pass(format!("algebra_catalog[{spec}]"), "algebra loads"));
        rep.extend_prefixed("algebra", axioms);
        table_lines(&mut rep, "m", &desc["table"]);
        rep.set("algebra", desc);
        return Ok(rep);
    }
    for name in CATALOG_NAMES {
        rep.push(match catalog(name) {
            Ok(_) => Check::pass(format!("catalog[{name}]"), "built-in example constructs"),
            Err(e) => Check::fail(format!("catalog[{name}]"), "built-in example constructs", e.to_string()),
        });
    }
    for name in ["quaternions", "quaternion_group", "group_algebra:3", "pointer_space:2"] {
        let chk = Check::from_result(format!("algebra_catalog[{name}]"), "catalog algebra is unital and associative", match algebra_catalog(name) {
            Ok(x) => (!x.check_axioms().ok()).then(|| "axioms fail".to_string()),
            Err(e) => Some(e.to_string()),
        });
        rep.push(chk);
    }
    rep.push(Check::from_result(
        "algebra_catalog[m2_pauli]",
        "catalog algebra is unital and associative",
        (!m2_pauli().check_axioms().ok()).then(|| "axioms fail".to_string()),
    ));
    rep.set("coalgebras", json!(CATALOG_NAMES));
    rep.set("algebras", json!(ALGEBRA_NAMES));
    for n in CATALOG_NAMES {
        rep.line(format!("coalgebra  {n}"));
    }
    for n in ALGEBRA_NAMES {
        rep.line(format!("algebra    {n}"));
    }
    Ok(rep)
}

/// Laws of a coalgebra plus the optional lift, tensor square and Ito embedding.
fn coalgebra_suite(c: &LCoalgebra<Q>, a: &AxiomArgs, rep: &mut Report) -> CliResult<()> {
    rep.extend(c.check_axioms());
    if c.degree == 1 {
        for k in 1..a.steps {
            for l in 1..=a.steps - k {
                let name = format!("star_compose({k},{l})");
                rep.push(guarded(name, "Δ_k ⋆ Δ_l = Δ_{k+l}", c.star_compose(k, l)));
            }
        }
        rep.push(match graph_of(c, false) {
            Ok(g) => Check::pass("graph_of", "arrows read off Δ").with_note(format!("{} arrows", g.arrows.len())).informational(),
            Err(e) => Check::fail("graph_of", "arrows read off Δ", e.to_string()).informational(),
        });
    }
    rep.push(match c.cocommutator_kernel() {
        Ok(k) => {
            let b = &c.basis;
            let shown: Vec<String> = k.iter().map(|v| v.display(b).to_string()).collect();
            Check::pass("cocommutator_kernel", "ker(Δ − τΔ)").with_note(format!("dimension {}: [{}]", k.len(), shown.join("; "))).informational()
        }
        Err(e) => Check::fail("cocommutator_kernel", "ker(Δ − τΔ)", e.to_string()).informational(),
    });
    if let Some(n) = a.degree {
        let lifted = c.lift_degree_n(n, true)?;
        rep.extend_prefixed(&format!("lift({n})"), lifted.check_axioms());
    }
    if a.tensor {
        rep.extend_prefixed("tensor", tensor_product_lc(c, c)?.check_axioms());
    }
    if c.degenerate && c.basis.unit().is_some() {
        match ito_embedding(c) {
            Ok(i) => rep.extend_prefixed("ito_embedding", i.check_axioms()),
            Err(e) => rep.push(Check::fail("ito_embedding", "d→x = Δx − x⊗1", e.to_string()).informational()),
        }
    }
    rep.set("coalgebra", describe_coalgebra(c)?);
    Ok(())
}

fn algebra_suite<S: Scalar>(alg: &StructAlgebra<S>, spec: &str, hopf: bool, rep: &mut Report) -> CliResult<()> {
    rep.extend_prefixed("algebra", alg.check_axioms());
    let flower = flower_lcoalgebra(alg, None)?;
    rep.extend_prefixed("flower", flower.check_axioms());
    rep.extend_prefixed("flower_hopf", check_bialgebra_hopf(&flower, alg, None, None));
    if hopf {
        rep.extend_prefixed("hopf2", triangle_degree2_hopf(spec)?);
    }
    rep.set("algebra", describe_algebra(alg));
    Ok(())
}

pub fn axioms_cmd(a: &AxiomArgs) -> CliResult<Report> {
    let mut rep = Report::new();
    if let Some(name) = &a.catalog {
        let e = catalog(name)?;
        coalgebra_suite(&e.coalgebra, a, &mut rep)?;
        if let Some(alg) = &e.algebra {
            rep.extend_prefixed("hopf", check_bialgebra_hopf(&e.coalgebra, alg, e.antipode.as_ref(), e.antipode.as_ref()));
            match check_chiral_ito(&e.coalgebra, alg) {
                Ok(r) => rep.extend_prefixed("chiral", r),
                Err(err) => rep.push(Check::fail("chiral", "chiral Ito derivatives", err.to_string()).informational()),
            }
        }
        if !e.metadata.is_empty() {
            rep.set("metadata", json!(e.metadata));
        }
    } else if let Some(path) = &a.graph {
        let mut g = load_graph(path)?;
        let conv = convention(&a.convention)?;
        rep.push(Check::pass("graph_loaded", "graph document validates").with_note(format!("{} vertices, {} arrows", g.vertices.len(), g.arrows.len())));
        if a.reverse {
            let back = g.reverse().reverse();
            rep.push(Check::from_result(
                "reverse_involution",
                "reversing twice gives the graph back",
                (back.arrow_multiset() != g.arrow_multiset()).then(|| "arrow multisets differ".to_string()),
            ));
            g = g.reverse();
        }
        let c = to_markov_lcoalgebra(&g, conv, a.adjoin_identity)?;
        coalgebra_suite(&c, a, &mut rep)?;
        rep.push(graph_roundtrip(&c, conv));
        rep.set("graph", g.to_json());
    } else if let Some(spec) = &a.algebra {
        match load_algebra(spec)? {
            AnyAlgebra::Rational(x) => algebra_suite(&x, spec, a.hopf, &mut rep)?,
            AnyAlgebra::Gaussian(x) => algebra_suite(&x, spec, a.hopf, &mut rep)?,
        }
    } else {
        return input_error("axioms needs one of --catalog, --graph or --algebra");
    }
    Ok(rep)
}

/// Rebuilding the Markov coproduct from `graph_of(Δ)` gives `Δ` back.
fn graph_roundtrip(c: &LCoalgebra<Q>, conv: ProbabilityConvention) -> Check {
    let (name, anchor) = ("graph_of_roundtrip", "Markov(graph_of(Δ)) = Δ");
    let rebuilt_conv = if conv.is_probability() { ProbabilityConvention::GivenWeights } else { ProbabilityConvention::UnitWeights };
    let res = graph_of(c, false)
        .and_then(|g| to_markov_lcoalgebra_without_counits(&WeightedDigraph { identity: None, ..g }, rebuilt_conv, false))
        .and_then(|back| c.right.agrees_on(&back.right, &c.words()));
    match res {
        Ok(None) => Check::pass(name, anchor),
        Ok(Some((w, x, y))) => Check::fail(name, anchor, format!("on {}: {} vs {}", c.basis.word_text(&w), x.display(&c.basis), y.display(&c.basis))),
        Err(e) => Check::fail(name, anchor, format!("error: {e}")),
    }
}

/// Successors of a vertex with their probabilities, routing sinks to the identity when one is adjoined.
fn successors(g: &WeightedDigraph, conv: ProbabilityConvention, identity: Option<&str>, v: &str) -> Vec<(String, Q)> {
    let mut out: BTreeMap<String, Q> = BTreeMap::new();
    for a in g.out_arrows(v) {
        *out.entry(a.dst.clone()).or_default() += g.probability(a, conv);
    }
    if out.is_empty() {
        if let Some(i) = identity {
            out.insert(i.to_string(), Q::from_integer(1.into()));
        }
    }
    out.into_iter().collect()
}

pub fn walks_cmd(a: &WalkArgs, seed: Option<u64>) -> CliResult<Report> {
    walks_run(&load_graph(&a.graph)?, a, seed)
}

/// Sampled walks, walk expansions and the path coalgebra of `g`.
pub fn walks_run(g: &WeightedDigraph, a: &WalkArgs, seed: Option<u64>) -> CliResult<Report> {
    let seed = require_seed(seed, "walks")?;
    let mut rep = Report::new();
    rep.seed = Some(seed);
    let conv = convention(&a.convention)?;
    let start = match &a.start {
        Some(s) => s.clone(),
        None => match g.vertices.first() {
            Some(v) => v.clone(),
            None => return input_error("graph has no vertices"),
        },
    };
    let declared = declared_transitions(g, conv);

    match sample_walk(g, conv, &start, a.length, seed) {
        Ok(walk) => {
            let bad = walk.windows(2).find(|w| {
                !declared.contains_key(&(w[0].clone(), w[1].clone())) && !(g.out_arrows(&w[0]).is_empty() && g.identity.as_deref() == Some(w[1].as_str()))
            });
            rep.push(Check::from_result("sample_walk", "every step follows an arrow", bad.map(|w| format!("{} → {}", w[0], w[1]))));
            rep.line(format!("walk: {}", walk.join(" → ")));
            rep.set("walk", json!(walk));
        }
        Err(Error::StuckAtSink(v)) => rep.push(Check::fail("sample_walk", "every step follows an arrow", format!("walk stopped at sink '{v}'")).informational()),
        Err(e) => return Err(e.into()),
    }

    match empirical_transitions(g, conv, &start, a.runs, seed) {
        Ok(emp) => {
            let visited: std::collections::BTreeSet<&String> = emp.keys().map(|(s, _)| s).collect();
            let mut worst: f64 = 0.0;
            for ((s, t), p) in &declared {
                if visited.contains(s) {
                    let f = emp.get(&(s.clone(), t.clone())).copied().unwrap_or(0.0);
                    worst = worst.max((f - num_traits::ToPrimitive::to_f64(p).unwrap_or(0.0)).abs());
                }
            }
            rep.push(
                Check::pass("transition_frequencies", "empirical transitions approach the declared probabilities")
                    .with_note(format!("max deviation {worst:.4} over {} steps", a.runs))
                    .informational(),
            );
        }
        Err(Error::StuckAtSink(v)) => rep.push(
            Check::fail("transition_frequencies", "empirical transitions approach the declared probabilities", format!("walk stopped at sink '{v}'"))
                .informational(),
        ),
        Err(e) => return Err(e.into()),
    }

    let c = to_markov_lcoalgebra_without_counits(g, conv, a.adjoin_identity)?;
    let identity = a.adjoin_identity.then(|| g.identity.clone().unwrap_or_else(|| FRESH_IDENTITY.to_string()));
    let mut expansions = Map::new();
    let mut bad = None;
    for s in c.basis.syms() {
        let name = c.basis.name(s).to_string();
        let e = c.walk_expansion(&Vect::sym(s), a.depth)?;
        // independent oracle: multiply transition probabilities along every walk
        let mut want: BTreeMap<Vec<String>, Q> = BTreeMap::from([(vec![name.clone()], Q::from_integer(1.into()))]);
        for _ in 0..a.depth {
            let mut next = BTreeMap::new();
            for (w, p) in &want {
                for (t, pt) in successors(g, conv, identity.as_deref(), w.last().map(String::as_str).unwrap_or_default()) {
                    let mut w2 = w.clone();
                    w2.push(t);
                    *next.entry(w2).or_insert_with(Q::default) += p * pt;
                }
            }
            want = next;
        }
        let got: BTreeMap<Vec<String>, Q> = e.terms().map(|(w, x)| (w.iter().map(|&t| c.basis.name(t).to_string()).collect(), x.clone())).collect();
        if got != want && bad.is_none() {
            bad = Some(format!("at {name}: {} (expected {} walks)", e.display(&c.basis), want.len()));
        }
        expansions.insert(name, json!(e.display(&c.basis).to_string()));
    }
    rep.push(Check::from_result("walk_expansion", "Δ_k(v) sums walks v⊗v₁⊗…⊗v_k weighted by products of probabilities", bad));
    rep.set("expansions", Value::Object(expansions));

    let p = PathSpace::new(g, a.paths)?;
    let (_, r) = path_deconcatenation_coalgebra::<Q>(&p);
    rep.extend_prefixed("paths", r);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = || -> Vec<Q> { (0..p.len()).map(|_| Q::from_integer(rng.gen_range(-3i64..=3).into())).collect() };
    let (x, y, z) = (f(), f(), f());
    let lhs = convolution_product(&convolution_product(&x, &y, &p)?, &z, &p)?;
    let rhs = convolution_product(&x, &convolution_product(&y, &z, &p)?, &p)?;
    rep.push(Check::from_result("convolution_associative", "(a*b)*c = a*(b*c)", (lhs != rhs).then(|| "random path functions".to_string())));
    let unit: Vec<Q> = (0..p.len() as lcoalg::Sym).map(|s| Q::from_integer(i64::from(p.path_length(s) == 0).into())).collect();
    let unit_ok = convolution_product(&unit, &x, &p)? == x && convolution_product(&x, &unit, &p)? == x;
    rep.push(Check::from_result("convolution_unit", "vertex indicator is the convolution unit", (!unit_ok).then(|| "unit law fails".to_string())));
    rep.set("paths", json!({"count": p.len(), "max_length": a.paths, "sample_values": x.iter().map(q_text).collect::<Vec<_>>()}));
    Ok(rep)
}
