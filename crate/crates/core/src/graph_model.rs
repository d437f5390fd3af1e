//! Weighted oriented graphs, their JSON form, random walks, and the Markov
//! L-coalgebra a graph induces.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{One, Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::lcoalgebra::LCoalgebra;
use crate::scalar::{parse_q, q, qr, Scalar, Q};
use crate::tensor_core::{Basis, LinMap, Sym, Vect, Word};

/// Name of the vertex added by [`to_markov_lcoalgebra`] when the graph declares no identity.
pub const FRESH_IDENTITY: &str = "I";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub src: String,
    pub dst: String,
    pub weight: Q,
}

/// A finite oriented graph with exact rational arrow weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedDigraph {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub identity: Option<String>,
}

/// How arrow weights become transition probabilities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProbabilityConvention {
    /// Use the declared weights; each non-sink's out-weights must sum to 1.
    GivenWeights,
    /// Each out-arrow of `v` gets `1/outdeg(v)`.
    Equiprobable,
    /// Every arrow has weight 1 and the left normalization is dropped.
    UnitWeights,
}

impl ProbabilityConvention {
    pub fn is_probability(self) -> bool {
        !matches!(self, ProbabilityConvention::UnitWeights)
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "given" | "given_weights" => Ok(Self::GivenWeights),
            "equiprobable" => Ok(Self::Equiprobable),
            "unit" | "unit_weights" => Ok(Self::UnitWeights),
            other => Err(Error::Parse(format!("unknown convention '{other}'"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RawArrow {
    id: String,
    src: String,
    dst: String,
    weight: Value,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    vertices: Vec<String>,
    arrows: Vec<RawArrow>,
    #[serde(default)]
    identity: Option<String>,
}

impl WeightedDigraph {
    /// Builds and validates a graph (vertex references, non-negative weights).
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>, identity: Option<String>) -> Result<Self> {
        let g = WeightedDigraph { vertices, arrows, identity };
        g.validate_structure()?;
        Ok(g)
    }

    /// Convenience constructor from `(src, dst, weight)` triples; arrow ids are `a0, a1, ...`.
    pub fn from_edges(vertices: &[&str], edges: &[(&str, &str, Q)]) -> Result<Self> {
        let arrows = edges
            .iter()
            .enumerate()
            .map(|(i, (s, t, w))| Arrow { id: format!("a{i}"), src: s.to_string(), dst: t.to_string(), weight: w.clone() })
            .collect();
        WeightedDigraph::new(vertices.iter().map(|s| s.to_string()).collect(), arrows, None)
    }

    pub fn with_identity(mut self, v: &str) -> Result<Self> {
        self.identity = Some(v.to_string());
        self.validate_structure()?;
        Ok(self)
    }

    /// The oriented cycle `x0 → x1 → ... → x(n-1) → x0` with unit weights.
    pub fn cycle(n: usize) -> Self {
        let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let arrows = (0..n)
            .map(|i| Arrow { id: format!("a{i}"), src: names[i].clone(), dst: names[(i + 1) % n].clone(), weight: q(1) })
            .collect();
        WeightedDigraph { vertices: names, arrows, identity: None }
    }

    /// The complete graph with loops on `n` vertices and equiprobable weights.
    pub fn complete(n: usize) -> Self {
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let mut arrows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                arrows.push(Arrow {
                    id: format!("a{i}_{j}"),
                    src: names[i].clone(),
                    dst: names[j].clone(),
                    weight: qr(1, n as i64),
                });
            }
        }
        WeightedDigraph { vertices: names, arrows, identity: None }
    }

    fn validate_structure(&self) -> Result<()> {
        let mut seen = HashMap::new();
        for v in &self.vertices {
            if v.is_empty() {
                return Err(Error::Validation("empty vertex name".into()));
            }
            if seen.insert(v.as_str(), ()).is_some() {
                return Err(Error::Validation(format!("duplicate vertex '{v}'")));
            }
        }
        let mut ids = HashMap::new();
        for a in &self.arrows {
            for end in [&a.src, &a.dst] {
                if !seen.contains_key(end.as_str()) {
                    return Err(Error::Validation(format!("arrow '{}' references unknown vertex '{end}'", a.id)));
                }
            }
            if a.weight.is_negative() {
                return Err(Error::Validation(format!("arrow '{}' has negative weight {}", a.id, a.weight.to_text())));
            }
            if ids.insert(a.id.as_str(), ()).is_some() {
                return Err(Error::Validation(format!("duplicate arrow id '{}'", a.id)));
            }
        }
        if let Some(i) = &self.identity {
            if !seen.contains_key(i.as_str()) {
                return Err(Error::Validation(format!("identity '{i}' is not a vertex")));
            }
        }
        Ok(())
    }

    /// Checks the constraints a convention imposes on the weights.
    pub fn validate(&self, conv: ProbabilityConvention) -> Result<()> {
        self.validate_structure()?;
        match conv {
            ProbabilityConvention::GivenWeights => {
                for v in &self.vertices {
                    let outs = self.out_arrows(v);
                    if outs.is_empty() {
                        continue;
                    }
                    let mut s = q(0);
                    for a in &outs {
                        if a.weight > q(1) {
                            return Err(Error::Validation(format!("vertex '{v}': weight of '{}' exceeds 1", a.id)));
                        }
                        s += &a.weight;
                    }
                    if !s.is_one() {
                        return Err(Error::Validation(format!(
                            "vertex '{v}': out-weights sum to {}, not 1",
                            s.to_text()
                        )));
                    }
                }
            }
            ProbabilityConvention::UnitWeights => {
                if let Some(a) = self.arrows.iter().find(|a| !a.weight.is_one()) {
                    return Err(Error::Validation(format!("arrow '{}' has weight {} under unit weights", a.id, a.weight.to_text())));
                }
            }
            ProbabilityConvention::Equiprobable => {}
        }
        Ok(())
    }

    pub fn out_arrows(&self, v: &str) -> Vec<&Arrow> {
        self.arrows.iter().filter(|a| a.src == v).collect()
    }

    pub fn in_arrows(&self, v: &str) -> Vec<&Arrow> {
        self.arrows.iter().filter(|a| a.dst == v).collect()
    }

    pub fn sinks(&self) -> Vec<&str> {
        self.vertices.iter().filter(|v| self.out_arrows(v).is_empty()).map(String::as_str).collect()
    }

    pub fn sources(&self) -> Vec<&str> {
        self.vertices.iter().filter(|v| self.in_arrows(v).is_empty()).map(String::as_str).collect()
    }

    /// Transition probability carried by an arrow under a convention.
    pub fn probability(&self, a: &Arrow, conv: ProbabilityConvention) -> Q {
        match conv {
            ProbabilityConvention::GivenWeights => a.weight.clone(),
            ProbabilityConvention::Equiprobable => qr(1, self.out_arrows(&a.src).len() as i64),
            ProbabilityConvention::UnitWeights => q(1),
        }
    }

    /// The graph with every arrow reversed.
    pub fn reverse(&self) -> WeightedDigraph {
        WeightedDigraph {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { id: a.id.clone(), src: a.dst.clone(), dst: a.src.clone(), weight: a.weight.clone() })
                .collect(),
            identity: self.identity.clone(),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let raw: RawGraph = serde_json::from_value(v.clone())?;
        let arrows = raw
            .arrows
            .into_iter()
            .map(|a| {
                let weight = match &a.weight {
                    Value::String(s) => parse_q(s)?,
                    Value::Number(n) if n.is_i64() => q(n.as_i64().unwrap_or_default()),
                    other => return Err(Error::Parse(format!("arrow '{}': weight {other} is not a fraction string", a.id))),
                };
                Ok(Arrow { id: a.id, src: a.src, dst: a.dst, weight })
            })
            .collect::<Result<Vec<_>>>()?;
        WeightedDigraph::new(raw.vertices, arrows, raw.identity)
    }

    pub fn to_json(&self) -> Value {
        let raw = RawGraph {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| RawArrow {
                    id: a.id.clone(),
                    src: a.src.clone(),
                    dst: a.dst.clone(),
                    weight: a.weight.to_json(),
                })
                .collect(),
            identity: self.identity.clone(),
        };
        serde_json::to_value(raw).expect("graph serializes")
    }

    pub fn load(text: &str) -> Result<Self> {
        WeightedDigraph::from_json(&serde_json::from_str(text)?)
    }

    pub fn save(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("graph serializes")
    }

    /// Multiset of `(src, dst, weight)` triples, for comparing graphs up to arrow ids.
    pub fn arrow_multiset(&self) -> BTreeMap<(String, String, Q), usize> {
        let mut m = BTreeMap::new();
        for a in &self.arrows {
            *m.entry((a.src.clone(), a.dst.clone(), a.weight.clone())).or_insert(0) += 1;
        }
        m
    }
}

/// Builds the Markov L-coalgebra of `g`.
///
/// `Δv = Σ P(a) v⊗t(a)` over out-arrows and `Δ̃v = c_v Σ s(a)⊗v` over in-arrows, where
/// `c_v = 1/indeg(v)` under probability conventions and `1` under unit weights.
/// With `adjoin_identity`, sinks get `Δs = s⊗I`, sources get `Δ̃v = I⊗v`, using the
/// declared identity vertex or a fresh `I` (for which `ΔI = Δ̃I = I⊗I`).
/// Counits `ε = ε̃ = 1` are attached under probability conventions; a sink or
/// source without an adjoined identity then makes them undefinable.
pub fn to_markov_lcoalgebra(g: &WeightedDigraph, conv: ProbabilityConvention, adjoin_identity: bool) -> Result<LCoalgebra<Q>> {
    build_markov(g, conv, adjoin_identity, conv.is_probability())
}

/// Same coproducts as [`to_markov_lcoalgebra`], never attaching counits.
pub fn to_markov_lcoalgebra_without_counits(
    g: &WeightedDigraph,
    conv: ProbabilityConvention,
    adjoin_identity: bool,
) -> Result<LCoalgebra<Q>> {
    build_markov(g, conv, adjoin_identity, false)
}

fn build_markov(g: &WeightedDigraph, conv: ProbabilityConvention, adjoin: bool, counits: bool) -> Result<LCoalgebra<Q>> {
    g.validate(conv)?;
    let mut names = g.vertices.clone();
    let identity = if adjoin {
        match &g.identity {
            Some(i) => Some(i.clone()),
            None => {
                if names.iter().any(|n| n == FRESH_IDENTITY) {
                    return Err(Error::Construction(format!("vertex '{FRESH_IDENTITY}' already exists; declare it as identity")));
                }
                names.push(FRESH_IDENTITY.to_string());
                Some(FRESH_IDENTITY.to_string())
            }
        }
    } else {
        None
    };
    let basis = match &identity {
        Some(i) => Basis::with_unit(names.clone(), i)?,
        None => Basis::new(names.clone())?,
    };
    let id_sym = identity.as_deref().map(|i| basis.sym(i)).transpose()?;

    let n = basis.len();
    let mut right: Vec<Vect<Q>> = vec![Vect::zero(2); n];
    let mut left: Vec<Vect<Q>> = vec![Vect::zero(2); n];
    for a in &g.arrows {
        let (s, t) = (basis.sym(&a.src)?, basis.sym(&a.dst)?);
        right[s as usize].add_term(Word::from_slice(&[s, t]), g.probability(a, conv));
        left[t as usize].add_term(Word::from_slice(&[s, t]), q(1));
    }
    for v in 0..n as Sym {
        let indeg = g.in_arrows(basis.name(v)).len();
        if conv.is_probability() && indeg > 0 {
            left[v as usize] = left[v as usize].scale(&qr(1, indeg as i64));
        }
    }
    let mut missing = Vec::new();
    for v in 0..n as Sym {
        let name = basis.name(v).to_string();
        let is_sink = g.vertices.contains(&name) && g.out_arrows(&name).is_empty() || Some(v) == id_sym && right[v as usize].is_zero();
        let is_source = g.vertices.contains(&name) && g.in_arrows(&name).is_empty() || Some(v) == id_sym && left[v as usize].is_zero();
        if is_sink {
            match id_sym {
                Some(i) => right[v as usize].add_term(Word::from_slice(&[v, i]), q(1)),
                None => missing.push(format!("sink '{name}'")),
            }
        }
        if is_source {
            match id_sym {
                Some(i) => left[v as usize].add_term(Word::from_slice(&[i, v]), q(1)),
                None => missing.push(format!("source '{name}'")),
            }
        }
    }
    if counits && !missing.is_empty() {
        return Err(Error::CounitUndefinable(format!("{} without an adjoined identity", missing.join(", "))));
    }
    let basis = Arc::new(basis);
    let name = format!("markov({conv:?}{})", if adjoin { ", identity" } else { "" });
    let mut c = LCoalgebra::new(name, basis, 1, table_map(right), table_map(left));
    if counits {
        c = c.with_counits(Some(constant_counit()), Some(constant_counit()));
    }
    Ok(c)
}

fn table_map(images: Vec<Vect<Q>>) -> LinMap<Q> {
    let images = Arc::new(images);
    LinMap::on_symbols(2, move |s| {
        images.get(s as usize).cloned().ok_or_else(|| Error::UndefinedOnWord(format!("symbol {s}")))
    })
}

fn constant_counit() -> LinMap<Q> {
    LinMap::on_symbols(0, |_| Ok(Vect::scalar(q(1))))
}

/// Samples a walk of `length` steps from `start`. At a sink the walk moves to the
/// declared identity vertex if there is one.
pub fn sample_walk(g: &WeightedDigraph, conv: ProbabilityConvention, start: &str, length: usize, seed: u64) -> Result<Vec<String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_walk_with(g, conv, start, length, &mut rng)
}

/// As [`sample_walk`], drawing from a caller-provided generator.
pub fn sample_walk_with<R: Rng>(
    g: &WeightedDigraph,
    conv: ProbabilityConvention,
    start: &str,
    length: usize,
    rng: &mut R,
) -> Result<Vec<String>> {
    if !conv.is_probability() {
        return Err(Error::Argument("walk sampling needs a probability convention".into()));
    }
    g.validate(conv)?;
    if !g.vertices.iter().any(|v| v == start) {
        return Err(Error::UnknownName(start.to_string()));
    }
    let mut walk = vec![start.to_string()];
    let mut cur = start.to_string();
    for _ in 0..length {
        let outs = g.out_arrows(&cur);
        cur = if outs.is_empty() {
            match &g.identity {
                Some(i) => i.clone(),
                None => return Err(Error::StuckAtSink(cur)),
            }
        } else {
            let u: f64 = rng.gen();
            let mut acc = 0.0;
            let mut pick = outs[outs.len() - 1];
            for a in &outs {
                acc += g.probability(a, conv).to_f64().unwrap_or(0.0);
                if u < acc {
                    pick = a;
                    break;
                }
            }
            pick.dst.clone()
        };
        walk.push(cur.clone());
    }
    Ok(walk)
}

/// A random graph on `n` vertices `x0..`: a Hamiltonian cycle plus up to `extra`
/// further arrows (no parallel arrows), with random rational probabilities.
pub fn random_stochastic_digraph(n: usize, extra: usize, seed: u64) -> WeightedDigraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let mut targets: Vec<Vec<usize>> = (0..n).map(|i| vec![(i + 1) % n]).collect();
    for _ in 0..extra {
        let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if !targets[s].contains(&t) {
            targets[s].push(t);
        }
    }
    let mut arrows = Vec::new();
    for (s, ts) in targets.iter().enumerate() {
        let raw: Vec<i64> = ts.iter().map(|_| rng.gen_range(1..=6)).collect();
        let total: i64 = raw.iter().sum();
        for (t, w) in ts.iter().zip(raw) {
            arrows.push(Arrow {
                id: format!("a{}", arrows.len()),
                src: names[s].clone(),
                dst: names[*t].clone(),
                weight: qr(w, total),
            });
        }
    }
    WeightedDigraph { vertices: names, arrows, identity: None }
}

/// Empirical transition frequencies from one long seeded walk, as `(src, dst) → freq`.
pub fn empirical_transitions(g: &WeightedDigraph, conv: ProbabilityConvention, start: &str, steps: usize, seed: u64) -> Result<BTreeMap<(String, String), f64>> {
    let walk = sample_walk(g, conv, start, steps, seed)?;
    let mut counts: BTreeMap<(String, String), usize> = BTreeMap::new();
    let mut from: BTreeMap<String, usize> = BTreeMap::new();
    for w in walk.windows(2) {
        *counts.entry((w[0].clone(), w[1].clone())).or_insert(0) += 1;
        *from.entry(w[0].clone()).or_insert(0) += 1;
    }
    Ok(counts
        .into_iter()
        .map(|((s, t), c)| {
            let f = c as f64 / from[&s] as f64;
            ((s, t), f)
        })
        .collect())
}

/// Sum of declared probabilities per `(src, dst)` pair.
pub fn declared_transitions(g: &WeightedDigraph, conv: ProbabilityConvention) -> BTreeMap<(String, String), Q> {
    let mut m: BTreeMap<(String, String), Q> = BTreeMap::new();
    for a in &g.arrows {
        let e = m.entry((a.src.clone(), a.dst.clone())).or_default();
        *e += g.probability(a, conv);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lcoalgebra::graph_of;
    use crate::tensor_core::word;
    use proptest::prelude::*;

    fn triangle() -> WeightedDigraph {
        WeightedDigraph::cycle(3)
    }

    #[test]
    fn triangle_loads_and_induces_shift() {
        let text = r#"{"vertices":["x0","x1","x2"],"arrows":[
            {"id":"e0","src":"x0","dst":"x1","weight":"1"},
            {"id":"e1","src":"x1","dst":"x2","weight":"1"},
            {"id":"e2","src":"x2","dst":"x0","weight":"1"}],"identity":null}"#;
        let g = WeightedDigraph::load(text).unwrap();
        assert_eq!(g.vertices.len(), 3);
        let c = to_markov_lcoalgebra(&g, ProbabilityConvention::GivenWeights, false).unwrap();
        for a in 0..3u32 {
            let r = c.right.apply_word(&[a]).unwrap();
            assert_eq!(r, Vect::basis_word(&[a, (a + 1) % 3]));
            let l = c.left.apply_word(&[a]).unwrap();
            assert_eq!(l, Vect::basis_word(&[(a + 2) % 3, a]));
        }
        assert!(c.check_axioms().ok());
    }

    #[test]
    fn single_loop_is_degenerate() {
        let g = WeightedDigraph::from_edges(&["v"], &[("v", "v", q(1))]).unwrap();
        let c = to_markov_lcoalgebra(&g, ProbabilityConvention::GivenWeights, false).unwrap();
        assert_eq!(c.right.apply_word(&[0]).unwrap(), Vect::basis_word(&[0, 0]));
        assert_eq!(c.left.apply_word(&[0]).unwrap(), Vect::basis_word(&[0, 0]));
        let r = c.check_axioms();
        assert!(r.passed("coassociativity"));
    }

    #[test]
    fn isolated_vertices_and_counits() {
        let g = WeightedDigraph::from_edges(&["u", "v"], &[]).unwrap();
        assert_eq!(g.sinks().len(), 2);
        let e = to_markov_lcoalgebra(&g, ProbabilityConvention::Equiprobable, false);
        assert!(matches!(e, Err(Error::CounitUndefinable(_))));
        let c = to_markov_lcoalgebra(&g, ProbabilityConvention::Equiprobable, true).unwrap();
        assert!(c.check_axioms().ok());
        let i = c.basis.sym(FRESH_IDENTITY).unwrap();
        assert_eq!(c.right.apply_word(&[i]).unwrap(), Vect::basis_word(&[i, i]));
    }

    #[test]
    fn validation_errors_name_the_problem() {
        let bad = r#"{"vertices":["u"],"arrows":[{"id":"e","src":"u","dst":"w","weight":"1"}]}"#;
        assert!(matches!(WeightedDigraph::load(bad), Err(Error::Validation(m)) if m.contains("'w'")));
        let neg = r#"{"vertices":["u"],"arrows":[{"id":"e","src":"u","dst":"u","weight":"-1/2"}]}"#;
        assert!(matches!(WeightedDigraph::load(neg), Err(Error::Validation(_))));
        let g = WeightedDigraph::from_edges(&["u", "v"], &[("u", "v", qr(1, 3)), ("u", "u", qr(1, 3))]).unwrap();
        let e = g.validate(ProbabilityConvention::GivenWeights).unwrap_err();
        assert!(e.to_string().contains("'u'"));
    }

    #[test]
    fn reversal_swaps_coproducts() {
        let g = random_stochastic_digraph(5, 6, 3);
        let conv = ProbabilityConvention::Equiprobable;
        assert_eq!(g.reverse().reverse(), g);
        let c = to_markov_lcoalgebra(&g, ProbabilityConvention::GivenWeights, false).unwrap();
        let r = to_markov_lcoalgebra(&g.reverse(), conv, false).unwrap();
        let ce = to_markov_lcoalgebra(&g, conv, false).unwrap();
        let tau = LinMap::<Q>::tau_cyclic(2).unwrap();
        for v in 0..5u32 {
            // the reversed right coproduct is the flipped left one when both use 1/degree
            let lhs = r.right.apply_word(&[v]).unwrap();
            let rhs = tau.apply(&ce.left.apply_word(&[v]).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
        assert!(r.check_axioms().ok());
        assert!(c.check_axioms().ok());
    }

    #[test]
    fn reversed_triangle() {
        let r = to_markov_lcoalgebra(&triangle().reverse(), ProbabilityConvention::GivenWeights, false).unwrap();
        for a in 0..3u32 {
            assert_eq!(r.right.apply_word(&[a]).unwrap(), Vect::basis_word(&[a, (a + 2) % 3]));
        }
    }

    #[test]
    fn deterministic_cycle_walk() {
        let w = sample_walk(&triangle(), ProbabilityConvention::GivenWeights, "x0", 3, 7).unwrap();
        assert_eq!(w, ["x0", "x1", "x2", "x0"]);
    }

    #[test]
    fn walk_stuck_or_routed() {
        let g = WeightedDigraph::from_edges(&["u", "s"], &[("u", "s", q(1))]).unwrap();
        let e = sample_walk(&g, ProbabilityConvention::GivenWeights, "u", 2, 0).unwrap_err();
        assert!(matches!(e, Error::StuckAtSink(s) if s == "s"));
        let g = WeightedDigraph::from_edges(&["u", "s", "1"], &[("u", "s", q(1)), ("1", "1", q(1))])
            .unwrap()
            .with_identity("1")
            .unwrap();
        let w = sample_walk(&g, ProbabilityConvention::GivenWeights, "u", 3, 0).unwrap();
        assert_eq!(w, ["u", "s", "1", "1"]);
    }

    #[test]
    fn half_half_first_step() {
        let g = WeightedDigraph::from_edges(
            &["X", "g", "1"],
            &[("X", "g", qr(1, 2)), ("X", "1", qr(1, 2)), ("g", "g", q(1)), ("1", "1", q(1))],
        )
        .unwrap();
        let n = 10_000;
        let hits = (0..n)
            .filter(|&s| sample_walk(&g, ProbabilityConvention::GivenWeights, "X", 1, s).unwrap()[1] == "g")
            .count();
        let f = hits as f64 / n as f64;
        assert!((f - 0.5).abs() < 0.02, "frequency {f}");
    }

    #[test]
    fn empirical_matches_declared() {
        let g = random_stochastic_digraph(4, 6, 11);
        let conv = ProbabilityConvention::GivenWeights;
        let emp = empirical_transitions(&g, conv, "x0", 100_000, 5).unwrap();
        for ((s, t), p) in declared_transitions(&g, conv) {
            let e = emp.get(&(s.clone(), t.clone())).copied().unwrap_or(0.0);
            assert!((e - p.to_f64().unwrap()).abs() < 0.02, "{s}->{t}: {e} vs {p}");
        }
    }

    #[test]
    fn unit_weights_break_right_counit() {
        let g = WeightedDigraph::from_edges(&["u", "v"], &[("u", "v", q(1)), ("u", "u", q(1)), ("v", "u", q(1))]).unwrap();
        let c = to_markov_lcoalgebra(&g, ProbabilityConvention::UnitWeights, false).unwrap();
        assert!(c.right_counit.is_none());
        let forced = c.clone().with_counits(Some(constant_counit()), Some(constant_counit()));
        let r = forced.check_axioms();
        assert!(!r.passed("right_counit"));
        assert!(r.passed("breaking_equation"));
    }

    /// Oracle: `(Δ̃⊗id)Δ(v)` enumerated directly from arrow pairs.
    fn breaking_oracle(g: &WeightedDigraph, v: &str) -> BTreeMap<(String, String, String), Q> {
        let conv = ProbabilityConvention::GivenWeights;
        let mut out = BTreeMap::new();
        let ins = g.in_arrows(v);
        for a in g.out_arrows(v) {
            for b in &ins {
                let c = a.weight.clone() * qr(1, ins.len() as i64);
                *out.entry((b.src.clone(), v.to_string(), a.dst.clone())).or_insert_with(Q::zero) += c;
            }
        }
        let _ = conv;
        out
    }

    #[test]
    fn three_vertex_breaking_by_enumeration() {
        let g = random_stochastic_digraph(3, 4, 21);
        let c = to_markov_lcoalgebra(&g, ProbabilityConvention::GivenWeights, false).unwrap();
        for v in 0..3u32 {
            let lhs = c.left.padded(0, 1).apply(&c.right.apply_word(&[v]).unwrap()).unwrap();
            let rhs = c.right.padded(1, 0).apply(&c.left.apply_word(&[v]).unwrap()).unwrap();
            let oracle = breaking_oracle(&g, c.basis.name(v));
            assert_eq!(lhs.len(), oracle.len());
            for ((a, b, d), x) in oracle {
                let w = word(&[c.basis.sym(&a).unwrap(), c.basis.sym(&b).unwrap(), c.basis.sym(&d).unwrap()]);
                assert_eq!(lhs.coeff(&w), x);
                assert_eq!(rhs.coeff(&w), x);
            }
        }
    }

    proptest! {
        #[test]
        fn random_graphs_satisfy_axioms(n in 2usize..7, extra in 0usize..10, seed in 0u64..1000) {
            let g = random_stochastic_digraph(n, extra, seed);
            let c = to_markov_lcoalgebra(&g, ProbabilityConvention::GivenWeights, false).unwrap();
            let r = c.check_axioms();
            prop_assert!(r.passed("breaking_equation"));
            prop_assert!(r.passed("right_counit"));
            prop_assert!(r.passed("left_counit"));
            let back = graph_of(&c, false).unwrap();
            prop_assert_eq!(back.arrow_multiset(), g.arrow_multiset());
        }

        #[test]
        fn json_round_trip(seed in 0u64..500) {
            let g = random_stochastic_digraph(5, 5, seed);
            let h = WeightedDigraph::load(&g.save()).unwrap();
            prop_assert_eq!(&h, &g);
            prop_assert_eq!(WeightedDigraph::load(&h.save()).unwrap(), g);
        }
    }
}
