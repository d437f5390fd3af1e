//! `cp`, `poly` and `mutate`: graph-driven channels, pointer products and mutation runs.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::Args;
use lcoalg::coassoc_constructions::catalog;
use lcoalg::cp_semigroup::{diagnostics, is_hermitian, matrix_to_json, min_eigenvalue, polynomial_text, symbolic_kraus, KrausFamily, CMat, C64};
use lcoalg::graph_model::{to_markov_lcoalgebra_without_counits, ProbabilityConvention};
use lcoalg::lcoalgebra::LCoalgebra;
use lcoalg::poly_products::{
    assoc_coassoc_report, associativity_check, cross_product_check, matrix_iso_check, matrix_iso_check_on, matrix_value, path_convention_example,
    pointer_product, random_product_frequencies, run_sequence, sl2q_layout, value_rows, xg_walk_graph, MutationProcess, MutationState,
    PlacementConvention, PointerPoly, Trajectory,
};
use lcoalg::report::Check;
use lcoalg::scalar::{parse_q, q};
use lcoalg::{Basis, Q};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::inputs::{input_error, load_graph, q_text, read_json, require_seed, CliResult, InputError};
use crate::report::Report;

#[derive(Args, Debug, Clone)]
pub struct CpArgs {
    /// Kraus family JSON: {"operators": {vertex: [[[re, im], ...], ...]}, "graph"?, "convention"?, "adjoin_identity"?, "grouping"?}.
    #[arg(long)]
    pub kraus: PathBuf,
    /// Graph JSON file; replaces the "graph" entry of the Kraus file.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Number of walk steps k of Ψ^{∘_G k}.
    #[arg(long, default_value_t = 2)]
    pub steps: usize,
    /// Compare Ψ^{∘_G k} with the usual power Ψ^k (equal on complete graphs).
    #[arg(long)]
    pub compare_usual: bool,
    /// per_word or per_start_vertex.
    #[arg(long)]
    pub grouping: Option<String>,
    /// Comma-separated attractor vertices for the diagnostics.
    #[arg(long)]
    pub attractor: Option<String>,
    /// Print the Kraus operators as noncommutative polynomials in the vertex symbols.
    #[arg(long)]
    pub symbolic: bool,
}

#[derive(Args, Debug, Clone)]
pub struct PolyArgs {
    /// Coalgebra for an explicit pointer product of --p and --r.
    #[arg(long)]
    pub catalog: Option<String>,
    /// Left factor, e.g. "a:1, b:-2/3" (default: every pointer with coefficient 1).
    #[arg(long)]
    pub p: Option<String>,
    /// Right factor (default: pointer i with coefficient i + 1).
    #[arg(long)]
    pub r: Option<String>,
    /// static, path, or shift:a>b,b>c,c>a.
    #[arg(long, default_value = "static")]
    pub convention: String,
    /// Random operand pairs for the matrix and cross-product comparisons.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// Seeded runs of the random path-convention product.
    #[arg(long, default_value_t = 4000)]
    pub runs: usize,
}

#[derive(Args, Debug, Clone)]
pub struct MutateArgs {
    /// Mutation configuration JSON: a fixed {"sequence": [...]} or a random process
    /// {"states", "probs", "seed", "steps", "first_time"?}, with optional "initial" 2×2 value.
    #[arg(long)]
    pub config: PathBuf,
    /// Overrides the step count of a random process.
    #[arg(long)]
    pub steps: Option<usize>,
}

fn density_inputs(d: usize) -> Vec<(&'static str, CMat)> {
    let mixed = CMat::identity(d, d).map(|z| z * C64::new(1.0 / d as f64, 0.0));
    let mut pure = CMat::zeros(d, d);
    pure[(0, 0)] = C64::new(1.0, 0.0);
    vec![("maximally_mixed", mixed), ("e00", pure)]
}

pub fn cp_cmd(a: &CpArgs, tol: f64) -> CliResult<Report> {
    let mut doc = read_json(&a.kraus)?;
    let obj = doc.as_object_mut().ok_or_else(|| InputError("Kraus file must hold a JSON object".into()))?;
    if let Some(g) = &a.graph {
        obj.insert("graph".into(), load_graph(g)?.to_json());
    }
    if let Some(gr) = &a.grouping {
        obj.insert("grouping".into(), json!(gr));
    }
    let fam = KrausFamily::from_json(&doc)?;
    let attractor: Option<Vec<String>> = a.attractor.as_ref().map(|s| s.split(',').map(|x| x.trim().to_string()).collect());
    cp_run(&fam, a.steps, a.compare_usual, attractor.as_deref(), a.symbolic, tol)
}

/// The CP checks for a family: positivity, the semigroup law, the optional comparison with Ψ^k, and diagnostics.
pub fn cp_run(fam: &KrausFamily, steps: usize, compare_usual: bool, attractor: Option<&[String]>, symbolic: bool, tol: f64) -> CliResult<Report> {
    if steps == 0 {
        return input_error("--steps must be at least 1");
    }
    let mut rep = Report::new();
    let it = fam.iterate_circle_g(steps)?;
    let psi = fam.psi();
    let mut bad = None;
    let mut images = serde_json::Map::new();
    for (label, rho) in density_inputs(fam.dim) {
        for (which, m) in [("Ψ", &psi), ("Ψ^{∘_G k}", &it)] {
            let out = m.apply(&rho)?;
            let e = min_eigenvalue(&out);
            if (!is_hermitian(&out, tol) || e < -tol) && bad.is_none() {
                bad = Some(format!("{which}({label}) has min eigenvalue {e:e}"));
            }
        }
        images.insert(label.into(), matrix_to_json(&it.apply(&rho)?));
    }
    rep.push(Check::from_result("cp_apply", "Ψ(ρ) is positive for positive ρ", bad));
    for k in 1..steps {
        let (m, _) = fam.compose_circle_g(k, steps - k)?;
        let dist = m.distance(&it);
        rep.push(Check::from_result(
            format!("semigroup({k},{})", steps - k),
            "Ψ^{∘_G k} ∘_G Ψ^{∘_G l} = Ψ^{∘_G (k+l)}",
            (dist > tol).then(|| format!("superoperator distance {dist:e}")),
        ));
    }
    if compare_usual {
        let dist = it.distance(&psi.power(steps));
        rep.push(Check::from_result(
            format!("usual_power({steps})"),
            "Ψ^{∘_G k} = Ψ^k on complete graphs",
            (dist > tol).then(|| format!("superoperator distance {dist:e}")),
        ));
        rep.set("usual_power_gap", dist);
    }
    let names: Option<Vec<&str>> = attractor.map(|v| v.iter().map(String::as_str).collect());
    let d = diagnostics(fam, steps, names.as_deref())?;
    rep.extend(d.report());
    rep.set("diagnostics", d.to_json());
    rep.set("dim", fam.dim);
    rep.set("steps", steps);
    rep.set("kraus_count", it.kraus.len());
    rep.set("images", Value::Object(images));
    if symbolic {
        let b = &fam.coalgebra.basis;
        let unit = b.unit().map(|u| b.name(u).to_string()).unwrap_or_else(|| "1".into());
        let polys: Vec<String> = symbolic_kraus(&fam.coalgebra, steps, fam.grouping)?.iter().map(|p| polynomial_text(p, &unit)).collect();
        rep.line(format!("Kraus operators: {{{}}}", polys.join(", ")));
        rep.set("symbolic_kraus", json!(polys));
    }
    Ok(rep)
}

fn parse_pointer_poly(basis: &std::sync::Arc<Basis>, text: &str) -> CliResult<PointerPoly<Q>> {
    let mut pairs = Vec::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (n, c) = part.split_once(':').ok_or_else(|| InputError(format!("expected pointer:coefficient, got '{part}'")))?;
        pairs.push((n.trim().to_string(), parse_q(c)?));
    }
    Ok(PointerPoly::from_pairs(basis.clone(), pairs.iter().map(|(n, c)| (n.as_str(), c.clone())))?)
}

fn parse_placement(basis: &Basis, text: &str) -> CliResult<PlacementConvention> {
    match text {
        "static" => Ok(PlacementConvention::Static),
        "path" => Ok(PlacementConvention::Path),
        _ => match text.strip_prefix("shift:") {
            Some(moves) => {
                let pairs: Vec<(&str, &str)> = moves
                    .split(',')
                    .map(|m| m.split_once('>').map(|(x, y)| (x.trim(), y.trim())).ok_or_else(|| InputError(format!("bad move '{m}'"))))
                    .collect::<CliResult<_>>()?;
                Ok(PlacementConvention::shifted(basis, &pairs)?)
            }
            None => input_error(format!("unknown placement convention '{text}'")),
        },
    }
}

/// Exact probability of each chosen-term pattern of the random path product.
fn pattern_law(g: &LCoalgebra<Q>) -> CliResult<BTreeMap<String, Q>> {
    let mut law: BTreeMap<String, Q> = BTreeMap::from([(String::new(), q(1))]);
    for i in g.basis.syms() {
        let d = g.right.apply_word(&[i])?;
        if d.len() < 2 {
            continue;
        }
        let total: Q = d.terms().map(|(_, c)| c.clone()).sum();
        let mut next = BTreeMap::new();
        for (k, p) in &law {
            for (w, c) in d.terms() {
                let part = format!("{}:{}", g.basis.name(i), g.basis.word_text(w));
                let key = if k.is_empty() { part } else { format!("{k},{part}") };
                next.insert(key, p * c / &total);
            }
        }
        law = next;
    }
    Ok(law)
}

pub fn poly_cmd(a: &PolyArgs, seed: Option<u64>) -> CliResult<Report> {
    let seed = require_seed(seed, "poly")?;
    let mut rep = Report::new();
    rep.seed = Some(seed);
    rep.extend_prefixed("matrix_iso(M2)", matrix_iso_check(2, a.samples, seed)?);
    let sl2 = catalog("sl2q")?.coalgebra;
    rep.extend_prefixed("matrix_iso(sl2q)", matrix_iso_check_on(&sl2, &sl2q_layout(&sl2)?, a.samples, seed)?);
    rep.extend_prefixed("cross", cross_product_check(a.samples, seed)?);

    let (got, want) = path_convention_example()?;
    rep.push(Check::from_result(
        "path_convention_formula",
        "path placement on X → g, X → 1 gives (ab′+bb′)g + (ac′+cc′)1",
        (got != want).then(|| format!("{} vs {}", got.text(), want.text())),
    ));
    rep.set("path_product", got.text());

    let c = to_markov_lcoalgebra_without_counits(&xg_walk_graph(true)?, ProbabilityConvention::GivenWeights, false)?;
    let p = PointerPoly::from_pairs(c.basis.clone(), [("X", q(2)), ("g", q(3))])?;
    let r = PointerPoly::from_pairs(c.basis.clone(), [("X", q(5)), ("1", q(7))])?;
    let freq = random_product_frequencies(&p, &r, &c, a.runs, seed)?;
    let law = pattern_law(&c)?;
    let mut bad = None;
    for (k, exact) in &law {
        let pe = exact.to_f64().unwrap_or(0.0);
        let f = freq.get(k).copied().unwrap_or(0.0);
        let bound = 5.0 * (pe * (1.0 - pe) / a.runs as f64).sqrt() + 1e-12;
        if (f - pe).abs() > bound && bad.is_none() {
            bad = Some(format!("pattern {k}: frequency {f:.4}, probability {}", q_text(exact)));
        }
    }
    if freq.keys().any(|k| !law.contains_key(k)) {
        bad = bad.or(Some("a pattern outside the coproduct support was drawn".into()));
    }
    rep.push(Check::from_result("random_product_distribution", "chosen terms follow the coproduct weights (5σ)", bad));
    rep.set("random_product_frequencies", json!(freq));

    if let Some(name) = &a.catalog {
        let g = catalog(name)?.coalgebra;
        let b = g.basis.clone();
        let p = match &a.p {
            Some(t) => parse_pointer_poly(&b, t)?,
            None => PointerPoly::from_pairs(b.clone(), b.names().iter().map(|n| (n.as_str(), q(1))))?,
        };
        let r = match &a.r {
            Some(t) => parse_pointer_poly(&b, t)?,
            None => PointerPoly::from_pairs(b.clone(), b.names().iter().enumerate().map(|(i, n)| (n.as_str(), q(i as i64 + 1))))?,
        };
        let conv = parse_placement(&b, &a.convention)?;
        let z = pointer_product(&p, &r, &g, &conv)?;
        rep.line(format!("({}) [Δ] ({}) = {}", p.text(), r.text(), z.text()));
        rep.set("product", z.text());
        let mut chk = associativity_check(&g, &conv)?.informational();
        chk.name = format!("placement/{}", chk.name);
        rep.push(chk);
        rep.extend_prefixed("assoc", assoc_coassoc_report(&g)?);
    }
    Ok(rep)
}

fn parse_initial(v: &Value) -> CliResult<PointerPoly<Q>> {
    let rows = v.as_array().filter(|r| r.len() == 2).ok_or_else(|| InputError("'initial' must be a 2×2 array".into()))?;
    let mut vals = Vec::new();
    for row in rows {
        let row = row.as_array().filter(|r| r.len() == 2).ok_or_else(|| InputError("'initial' must be a 2×2 array".into()))?;
        for x in row {
            vals.push(match x {
                Value::String(s) => parse_q(s)?,
                Value::Number(n) if n.is_i64() => q(n.as_i64().unwrap_or_default()),
                other => return input_error(format!("entry {other} is not an integer or fraction string")),
            });
        }
    }
    let basis = matrix_value([[0, 0], [0, 0]])?.basis;
    Ok(PointerPoly::from_pairs(basis, ["a", "b", "c", "d"].into_iter().zip(vals))?)
}

fn mat_mul(x: &[[Q; 2]; 2], y: &[[Q; 2]; 2]) -> [[Q; 2]; 2] {
    let e = |i: usize, j: usize| &x[i][0] * &y[0][j] + &x[i][1] * &y[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn rows_text(r: &[[Q; 2]; 2]) -> String {
    format!("[[{}, {}], [{}, {}]]", r[0][0], r[0][1], r[1][0], r[1][1])
}

/// Per-step checks: H2 steps are matrix squaring, loop steps project on their pointer.
fn trajectory_checks(states: &[&MutationState], initial: &PointerPoly<Q>, t: &Trajectory, rep: &mut Report) -> CliResult<()> {
    let mut prev = initial.clone();
    for (i, (s, z)) in states.iter().zip(&t.values).enumerate() {
        if s.name == "H2" || s.name == "sl2q" {
            let want = value_rows(&prev)?;
            let want = mat_mul(&want, &want);
            let got = value_rows(z)?;
            rep.push(Check::from_result(
                format!("matrix_square@{}", i + 1),
                "H2 step squares the 2×2 matrix",
                (got != want).then(|| format!("{} vs {}", rows_text(&got), rows_text(&want))),
            ));
        }
        if s.name.starts_with("diamond_") {
            let mut c = lcoalg::poly_products::projection_check(s, &prev)?;
            c.name = format!("{}@{}", c.name, i + 1);
            rep.push(c);
        }
        prev = z.clone();
    }
    let mut seen = std::collections::BTreeSet::new();
    for s in states {
        if seen.insert(s.name.clone()) {
            rep.push(s.complex_check()?);
        }
    }
    Ok(())
}

pub fn mutate_cmd(a: &MutateArgs, seed: Option<u64>) -> CliResult<Report> {
    let v = read_json(&a.config)?;
    let initial = match v.get("initial") {
        Some(x) => parse_initial(x)?,
        None => matrix_value([[1, 1], [1, 1]])?,
    };
    mutate_run(&v, &initial, a.steps, seed)
}

pub fn mutate_run(v: &Value, initial: &PointerPoly<Q>, steps: Option<usize>, seed: Option<u64>) -> CliResult<Report> {
    let mut rep = Report::new();
    let (states, proc): (Vec<MutationState>, Option<MutationProcess>) = match v.get("sequence") {
        Some(seq) => {
            let names = seq.as_array().ok_or_else(|| InputError("'sequence' must be an array of state names".into()))?;
            let states = names
                .iter()
                .map(|n| n.as_str().ok_or_else(|| InputError("state names must be strings".into())).and_then(|n| Ok(MutationState::named(n)?)))
                .collect::<CliResult<Vec<_>>>()?;
            (states, None)
        }
        None => {
            let (mut proc, default_steps) = MutationProcess::from_json(v)?;
            proc.seed = match seed.or_else(|| v.get("seed").and_then(Value::as_u64)) {
                Some(s) => s,
                None => return input_error("a random mutation process needs a seed (config \"seed\" or --seed)"),
            };
            rep.seed = Some(proc.seed);
            let t = proc.simulate(initial, steps.unwrap_or(default_steps))?;
            let states = t.states.iter().map(|n| MutationState::named(n)).collect::<lcoalg::Result<Vec<_>>>()?;
            (states, Some(proc))
        }
    };
    let refs: Vec<&MutationState> = states.iter().collect();
    let t = run_sequence(&refs, initial)?;
    trajectory_checks(&refs, initial, &t, &mut rep)?;
    for (i, (s, z)) in t.states.iter().zip(&t.values).enumerate() {
        rep.line(format!("step {:>2}  {:<10} z = {}", i + 1, s, rows_text(&value_rows(z)?)));
    }
    let corner: Vec<String> = t.values.iter().map(|z| Ok(q_text(&value_rows(z)?[0][0]))).collect::<CliResult<_>>()?;
    rep.line(format!("corner: {}", corner.join(", ")));
    rep.set("trajectory", t.to_json()?);
    rep.set("corner", json!(corner));

    if let (Some(proc), Some(ft)) = (proc, v.get("first_time")) {
        let target = ft.get("target").and_then(Value::as_str).unwrap_or("triangle");
        let runs = ft.get("runs").and_then(Value::as_u64).unwrap_or(10_000) as usize;
        let max_t = ft.get("max_t").and_then(Value::as_u64).unwrap_or(5) as usize;
        let emp = proc.first_time_distribution(target, runs, max_t)?;
        let mut rows = Vec::new();
        for (i, f) in emp.iter().enumerate() {
            let t = i + 1;
            let exact = proc.first_time_law(target, t)?;
            let pe = exact.to_f64().unwrap_or(0.0);
            let bound = 5.0 * (pe * (1.0 - pe) / runs as f64).sqrt() + 1e-12;
            rep.push(Check::from_result(
                format!("first_time_law({t})"),
                "P(T = t) = (1 − p)^{t−1} p (5σ)",
                ((f - pe).abs() > bound).then(|| format!("empirical {f:.5}, exact {}", q_text(&exact))),
            ));
            rep.line(format!("P(T = {t}) ≈ {f:.5}  (exact {})", q_text(&exact)));
            rows.push(json!({"t": t, "empirical": f, "exact": q_text(&exact)}));
        }
        rep.set("first_time", json!({"target": target, "runs": runs, "law": rows}));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pattern_law_uses_coproduct_weights() {
        let c = to_markov_lcoalgebra_without_counits(&xg_walk_graph(true).unwrap(), ProbabilityConvention::GivenWeights, false).unwrap();
        let law = pattern_law(&c).unwrap();
        let total: Q = law.values().cloned().sum();
        assert_eq!(total, q(1));
        assert_eq!(law.len(), 2);
    }

    #[test]
    fn placement_parsing() {
        let b = catalog("triangle").unwrap().coalgebra.basis;
        assert!(matches!(parse_placement(&b, "static"), Ok(PlacementConvention::Static)));
        assert!(matches!(parse_placement(&b, "path"), Ok(PlacementConvention::Path)));
        assert!(parse_placement(&b, "shift:x0>x2,x1>x0,x2>x1").is_ok());
        assert!(parse_placement(&b, "shift:x0x2").is_err());
        assert!(parse_placement(&b, "sideways").is_err());
    }

    #[test]
    fn pointer_poly_parsing() {
        let b = catalog("sl2q").unwrap().coalgebra.basis;
        let p = parse_pointer_poly(&b, "a:1/2, d:-3").unwrap();
        assert_eq!(p.coeff("d").unwrap(), Some(&q(-3)));
        assert!(parse_pointer_poly(&b, "a=1").is_err());
        assert!(parse_pointer_poly(&b, "zz:1").is_err());
    }

    #[test]
    fn squaring_oracle() {
        let x = [[q(1), q(2)], [q(3), q(4)]];
        assert_eq!(mat_mul(&x, &x), [[q(7), q(10)], [q(15), q(22)]]);
    }

    #[test]
    fn initial_value_accepts_fraction_strings() {
        let z = parse_initial(&json!([["1/2", 0], [0, 1]])).unwrap();
        assert_eq!(value_rows(&z).unwrap()[0][0], Q::new(1.into(), 2.into()));
        assert!(parse_initial(&json!([[1, 2, 3]])).is_err());
    }
}
