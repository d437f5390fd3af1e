//! Completely positive maps `ρ ↦ Σ K ρ K†` built from operators attached to the
//! vertices of an L-coalgebra, their graph-driven iterates `Ψ^{∘_G k}`, the semigroup
//! law under ⋆ composition, and contractivity and attractor diagnostics.

use std::collections::BTreeMap;

use nalgebra::{Complex, DMatrix};
use num_traits::ToPrimitive;
use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph_model::{to_markov_lcoalgebra_without_counits, ProbabilityConvention, WeightedDigraph};
use crate::lcoalgebra::LCoalgebra;
use crate::report::{AxiomReport, Check};
use crate::scalar::Q;
use crate::tensor_core::{Sym, Vect, Word};

pub type C64 = Complex<f64>;
pub type CMat = DMatrix<C64>;

/// Comparison tolerance for floating superoperator checks.
pub const CP_TOL: f64 = 1e-10;

/// A map in Kraus form.
#[derive(Clone, Debug)]
pub struct CPMap {
    pub dim: usize,
    pub kraus: Vec<CMat>,
}

impl CPMap {
    pub fn new(dim: usize, kraus: Vec<CMat>) -> Result<Self> {
        for k in &kraus {
            if k.nrows() != dim || k.ncols() != dim {
                return Err(Error::Argument(format!("Kraus operator is {}x{}, expected {dim}x{dim}", k.nrows(), k.ncols())));
            }
        }
        Ok(CPMap { dim, kraus })
    }

    pub fn identity(dim: usize) -> Self {
        CPMap { dim, kraus: vec![CMat::identity(dim, dim)] }
    }

    pub fn apply(&self, rho: &CMat) -> Result<CMat> {
        if rho.nrows() != self.dim || rho.ncols() != self.dim {
            return Err(Error::Argument(format!("input is {}x{}, expected {}x{}", rho.nrows(), rho.ncols(), self.dim, self.dim)));
        }
        let mut out = CMat::zeros(self.dim, self.dim);
        for k in &self.kraus {
            out += k * rho * k.adjoint();
        }
        Ok(out)
    }

    /// The `d²×d²` matrix of the map on column-stacked matrices: `Σ conj(K) ⊗ K`.
    pub fn superoperator(&self) -> CMat {
        let n = self.dim * self.dim;
        let mut s = CMat::zeros(n, n);
        for k in &self.kraus {
            s += k.conjugate().kronecker(k);
        }
        s
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &CPMap) -> CPMap {
        let kraus = self.kraus.iter().flat_map(|a| other.kraus.iter().map(move |b| a * b)).collect();
        CPMap { dim: self.dim, kraus }
    }

    pub fn power(&self, k: usize) -> CPMap {
        let mut acc = CPMap::identity(self.dim);
        for _ in 0..k {
            acc = acc.compose(self);
        }
        acc
    }

    /// Frobenius norm of the difference of the superoperators.
    pub fn distance(&self, other: &CPMap) -> f64 {
        (self.superoperator() - other.superoperator()).norm()
    }

    /// `Σ K K†`.
    pub fn kraus_sum(&self) -> CMat {
        let mut s = CMat::zeros(self.dim, self.dim);
        for k in &self.kraus {
            s += k * k.adjoint();
        }
        s
    }

    /// `Σ K† K`.
    pub fn kraus_sum_adjoint(&self) -> CMat {
        let mut s = CMat::zeros(self.dim, self.dim);
        for k in &self.kraus {
            s += k.adjoint() * k;
        }
        s
    }
}

/// Smallest eigenvalue of the Hermitian part of `m`.
pub fn min_eigenvalue(m: &CMat) -> f64 {
    let h = (m + m.adjoint()).scale(0.5);
    h.symmetric_eigen().eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
}

pub fn is_hermitian(m: &CMat, tol: f64) -> bool {
    (m - m.adjoint()).norm() <= tol
}

/// A random density matrix `GG†/tr(GG†)`.
pub fn random_density<R: Rng>(rng: &mut R, dim: usize) -> CMat {
    let g = CMat::from_fn(dim, dim, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let p = &g * g.adjoint();
    let t = p.trace();
    p.unscale(t.re)
}

/// A random complex matrix with entries in the unit square.
pub fn random_matrix<R: Rng>(rng: &mut R, dim: usize, scale: f64) -> CMat {
    CMat::from_fn(dim, dim, |_, _| C64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale)))
}

/// How the terms of `mΔ_{(k)}(A_i)` become Kraus operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grouping {
    /// `R` applied term by term: one Kraus operator per word.
    PerWord,
    /// `R` applied to the whole sum: one Kraus operator per start vertex.
    PerStartVertex,
}

impl Grouping {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "per_word" | "word" => Ok(Grouping::PerWord),
            "per_start_vertex" | "vertex" => Ok(Grouping::PerStartVertex),
            other => Err(Error::Parse(format!("unknown grouping '{other}'"))),
        }
    }
}

/// Operators on the vertices of a degree-1 L-coalgebra.
#[derive(Clone, Debug)]
pub struct KrausFamily {
    pub dim: usize,
    pub coalgebra: LCoalgebra<Q>,
    pub grouping: Grouping,
    ops: Vec<CMat>,
}

impl KrausFamily {
    /// Every basis symbol needs an operator; the unit symbol defaults to the identity.
    pub fn new(coalgebra: LCoalgebra<Q>, operators: &BTreeMap<String, CMat>, grouping: Grouping) -> Result<Self> {
        if coalgebra.degree != 1 {
            return Err(Error::Argument("Kraus families live on degree-1 structures".into()));
        }
        let dim = operators
            .values()
            .next()
            .map(|m| m.nrows())
            .ok_or_else(|| Error::Argument("no operators given".into()))?;
        let unit = coalgebra.basis.unit();
        let mut ops = Vec::new();
        for (s, name) in coalgebra.basis.names().iter().enumerate() {
            let m = match operators.get(name) {
                Some(m) => m.clone(),
                None if unit == Some(s as Sym) => CMat::identity(dim, dim),
                None => return Err(Error::Argument(format!("no operator for vertex '{name}'"))),
            };
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::Argument(format!("operator '{name}' is {}x{}, expected {dim}x{dim}", m.nrows(), m.ncols())));
            }
            ops.push(m);
        }
        if let Some(extra) = operators.keys().find(|k| coalgebra.basis.sym(k).is_err()) {
            return Err(Error::Argument(format!("operator '{extra}' names no vertex")));
        }
        Ok(KrausFamily { dim, coalgebra, grouping, ops })
    }

    /// The Markov L-coalgebra of `g` with the given operators. Under `adjoin_identity`
    /// sinks route to the identity vertex, whose operator is the identity matrix.
    pub fn from_graph(
        g: &WeightedDigraph,
        conv: ProbabilityConvention,
        adjoin_identity: bool,
        operators: &BTreeMap<String, CMat>,
        grouping: Grouping,
    ) -> Result<Self> {
        let c = to_markov_lcoalgebra_without_counits(g, conv, adjoin_identity)?;
        KrausFamily::new(c, operators, grouping)
    }

    /// `{"graph": …, "operators": {"v": [[[re, im], …], …]}, "convention": "unit",
    /// "adjoin_identity": false, "grouping": "per_word"}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let g = WeightedDigraph::from_json(v.get("graph").ok_or_else(|| Error::Parse("missing 'graph'".into()))?)?;
        let conv = match v.get("convention").and_then(Value::as_str) {
            Some(s) => ProbabilityConvention::parse(s)?,
            None => ProbabilityConvention::UnitWeights,
        };
        let adjoin = v.get("adjoin_identity").and_then(Value::as_bool).unwrap_or(false);
        let grouping = match v.get("grouping").and_then(Value::as_str) {
            Some(s) => Grouping::parse(s)?,
            None => Grouping::PerWord,
        };
        let ops_v = v
            .get("operators")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("missing 'operators' object".into()))?;
        let mut ops = BTreeMap::new();
        for (name, m) in ops_v {
            ops.insert(name.clone(), parse_matrix(m)?);
        }
        KrausFamily::from_graph(&g, conv, adjoin, &ops, grouping)
    }

    pub fn operator(&self, s: Sym) -> &CMat {
        &self.ops[s as usize]
    }

    /// `c·A_{w₁}⋯A_{w_k}`.
    pub fn word_operator(&self, w: &[Sym], c: &Q) -> CMat {
        let mut m = CMat::identity(self.dim, self.dim);
        for &s in w {
            m *= self.operator(s);
        }
        m * C64::new(c.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn kraus_from(&self, expansions: Vec<Vect<Q>>) -> CPMap {
        let mut kraus = Vec::new();
        for e in expansions {
            match self.grouping {
                Grouping::PerWord => kraus.extend(e.terms().map(|(w, c)| self.word_operator(w, c))),
                Grouping::PerStartVertex => {
                    let mut k = CMat::zeros(self.dim, self.dim);
                    for (w, c) in e.terms() {
                        k += self.word_operator(w, c);
                    }
                    kraus.push(k);
                }
            }
        }
        CPMap { dim: self.dim, kraus }
    }

    /// `Δ_{(steps)}(A_i)` for every vertex: words of `steps` vertices.
    pub fn expansions(&self, steps: usize) -> Result<Vec<Vect<Q>>> {
        if steps == 0 {
            return Err(Error::Argument("steps must be at least 1".into()));
        }
        (0..self.coalgebra.basis.len() as Sym)
            .map(|s| self.coalgebra.extend_walk(&Vect::sym(s), steps - 1))
            .collect()
    }

    /// `Ψ(ρ) = Σ A_i ρ A_i†`.
    pub fn psi(&self) -> CPMap {
        CPMap { dim: self.dim, kraus: self.ops.clone() }
    }

    /// `Ψ^{∘_G k} = Σ_i R(mΔ_{(k),G}(A_i))`, with `steps = 1` giving `Ψ`.
    pub fn iterate_circle_g(&self, steps: usize) -> Result<CPMap> {
        Ok(self.kraus_from(self.expansions(steps)?))
    }

    /// `Ψ^{∘_G k} ∘_G Ψ^{∘_G l}` through `Δ_{(k)} ⋆ Δ_{(l)}`, and its comparison with `Ψ^{∘_G (k+l)}`.
    pub fn compose_circle_g(&self, k: usize, l: usize) -> Result<(CPMap, Check)> {
        if k == 0 || l == 0 {
            return Err(Error::Argument("both step counts must be at least 1".into()));
        }
        let composed = self
            .expansions(k)?
            .into_iter()
            .map(|e| self.coalgebra.extend_walk(&e, l))
            .collect::<Result<Vec<_>>>()?;
        let m = self.kraus_from(composed);
        let target = self.iterate_circle_g(k + l)?;
        let dist = m.distance(&target);
        let c = Check::from_result(
            format!("semigroup({k},{l})"),
            "Ψ^{∘_G k} ∘_G Ψ^{∘_G l} = Ψ^{∘_G (k+l)}",
            (dist > CP_TOL).then(|| format!("superoperator distance {dist:e}")),
        );
        Ok((m, c))
    }

    /// `Ψ^{∘_G k}` against the usual power `Ψ^k`.
    pub fn compare_usual(&self, steps: usize) -> Result<Check> {
        let dist = self.iterate_circle_g(steps)?.distance(&self.psi().power(steps));
        Ok(Check::from_result(
            format!("usual_power({steps})"),
            "Ψ^{∘_G k} = Ψ^k on complete graphs",
            (dist > CP_TOL).then(|| format!("superoperator distance {dist:e}")),
        ))
    }
}

/// A matrix from rows of `[re, im]` pairs (plain numbers are real).
pub fn parse_matrix(v: &Value) -> Result<CMat> {
    let rows = v.as_array().ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
    let n = rows.len();
    let mut m = CMat::zeros(n, n);
    for (i, r) in rows.iter().enumerate() {
        let r = r.as_array().ok_or_else(|| Error::Parse("row must be an array".into()))?;
        if r.len() != n {
            return Err(Error::Parse(format!("row {i} has {} entries, expected {n}", r.len())));
        }
        for (j, e) in r.iter().enumerate() {
            m[(i, j)] = match e {
                Value::Number(x) => C64::new(x.as_f64().unwrap_or(f64::NAN), 0.0),
                Value::Array(p) if p.len() == 2 => C64::new(
                    p[0].as_f64().ok_or_else(|| Error::Parse("bad real part".into()))?,
                    p[1].as_f64().ok_or_else(|| Error::Parse("bad imaginary part".into()))?,
                ),
                _ => return Err(Error::Parse(format!("bad entry at ({i}, {j})"))),
            };
        }
    }
    Ok(m)
}

pub fn matrix_to_json(m: &CMat) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array((0..m.ncols()).map(|j| json!([m[(i, j)].re, m[(i, j)].im])).collect()))
            .collect(),
    )
}

/// A noncommutative monomial in vertex names, with the unit removed.
pub type Monomial = Vec<String>;

/// The Kraus operators of `Ψ^{∘_G k}` as exact noncommutative polynomials in the vertex names.
pub fn symbolic_kraus(c: &LCoalgebra<Q>, steps: usize, grouping: Grouping) -> Result<Vec<BTreeMap<Monomial, Q>>> {
    if steps == 0 {
        return Err(Error::Argument("steps must be at least 1".into()));
    }
    let unit = c.basis.unit();
    let reduce = |w: &Word| -> Monomial { w.iter().filter(|&&s| Some(s) != unit).map(|&s| c.basis.name(s).to_string()).collect() };
    let mut out = Vec::new();
    for s in 0..c.basis.len() as Sym {
        let e = c.extend_walk(&Vect::sym(s), steps - 1)?;
        match grouping {
            Grouping::PerWord => {
                for (w, k) in e.terms() {
                    out.push(BTreeMap::from([(reduce(w), k.clone())]));
                }
            }
            Grouping::PerStartVertex => {
                let mut poly: BTreeMap<Monomial, Q> = BTreeMap::new();
                for (w, k) in e.terms() {
                    let e = poly.entry(reduce(w)).or_default();
                    *e += k;
                }
                poly.retain(|_, v| *v != Q::default());
                out.push(poly);
            }
        }
    }
    Ok(out)
}

/// Renders a polynomial like `X + g·X`.
pub fn polynomial_text(p: &BTreeMap<Monomial, Q>, unit_name: &str) -> String {
    let parts: Vec<String> = p
        .iter()
        .map(|(m, c)| {
            let mono = if m.is_empty() { unit_name.to_string() } else { m.join("·") };
            if *c == Q::from_integer(1.into()) {
                mono
            } else {
                format!("{c}·{mono}")
            }
        })
        .collect();
    parts.join(" + ")
}

/// Gap measurements for a family at a given step count.
#[derive(Clone, Debug)]
pub struct Diagnostics {
    pub steps: usize,
    /// Smallest eigenvalue of `I − Σ K K†`; nonnegative means contractive.
    pub contractivity_min_eig: f64,
    /// `‖I − Ψ^{∘_G k}(I)‖`.
    pub unitality_gap_norm: f64,
    /// Smallest eigenvalue of `I − Ψ^{∘_G k}(I)`.
    pub unitality_gap_min_eig: f64,
    /// `‖I − Σ K† K‖`.
    pub trace_gap_norm: f64,
    /// For each step count `1..=steps`, the share of walk weight on words ending in the attractor.
    pub attractor_fraction: Option<Vec<f64>>,
}

impl Diagnostics {
    pub fn report(&self) -> AxiomReport {
        let mut r = AxiomReport::new();
        r.push(
            Check::from_result(
                "contractive",
                "Σ K K† ≤ I",
                (self.contractivity_min_eig < -CP_TOL).then(|| format!("min eigenvalue of I − ΣKK† is {:e}", self.contractivity_min_eig)),
            )
            .informational(),
        );
        r.push(
            Check::from_result(
                "unital",
                "Ψ^{∘_G k}(I) = I",
                (self.unitality_gap_norm > CP_TOL).then(|| format!("‖I − Ψ(I)‖ = {:e}", self.unitality_gap_norm)),
            )
            .informational(),
        );
        r.push(
            Check::from_result(
                "trace_preserving",
                "Σ K† K = I",
                (self.trace_gap_norm > CP_TOL).then(|| format!("‖I − ΣK†K‖ = {:e}", self.trace_gap_norm)),
            )
            .informational(),
        );
        if let Some(f) = &self.attractor_fraction {
            let text: Vec<String> = f.iter().map(|x| format!("{x:.6}")).collect();
            r.push(Check::pass("attractor_fraction", "walk weight on attractor words").with_note(text.join(", ")).informational());
        }
        r
    }

    pub fn to_json(&self) -> Value {
        json!({
            "steps": self.steps,
            "contractivity_min_eig": self.contractivity_min_eig,
            "unitality_gap_norm": self.unitality_gap_norm,
            "unitality_gap_min_eig": self.unitality_gap_min_eig,
            "trace_gap_norm": self.trace_gap_norm,
            "attractor_fraction": self.attractor_fraction,
        })
    }
}

pub fn diagnostics(fam: &KrausFamily, steps: usize, attractor: Option<&[&str]>) -> Result<Diagnostics> {
    let m = fam.iterate_circle_g(steps)?;
    let id = CMat::identity(fam.dim, fam.dim);
    let gap = &id - m.apply(&id)?;
    let attractor_fraction = match attractor {
        None => None,
        Some(names) => {
            let syms = names.iter().map(|n| fam.coalgebra.basis.sym(n)).collect::<Result<Vec<Sym>>>()?;
            let mut fr = Vec::new();
            for k in 1..=steps {
                let (mut inside, mut total) = (0.0, 0.0);
                for e in fam.expansions(k)? {
                    for (w, c) in e.terms() {
                        let x = c.to_f64().unwrap_or(0.0).abs();
                        total += x;
                        if syms.contains(&w[w.len() - 1]) {
                            inside += x;
                        }
                    }
                }
                fr.push(if total > 0.0 { inside / total } else { 0.0 });
            }
            Some(fr)
        }
    };
    Ok(Diagnostics {
        steps,
        contractivity_min_eig: min_eigenvalue(&(&id - m.kraus_sum())),
        unitality_gap_norm: gap.norm(),
        unitality_gap_min_eig: min_eigenvalue(&gap),
        trace_gap_norm: (&id - m.kraus_sum_adjoint()).norm(),
        attractor_fraction,
    })
}

/// The `(1, X, g)` coalgebra `Δ1 = 1⊗1`, `ΔX = X⊗1 + g⊗X`, `Δg = g⊗g` from `T = [[1, 0], [X, g]]`.
pub fn xg_coalgebra() -> Result<LCoalgebra<Q>> {
    use crate::coassoc_constructions::{coproduct_from_matrices, SymbolMatrix};
    let basis = std::sync::Arc::new(crate::tensor_core::Basis::with_unit(["1", "X", "g"], "1")?);
    let t = SymbolMatrix::<Q>::parse(&basis, &[&["1", "0"], &["X", "g"]])?;
    Ok(coproduct_from_matrices("xg", basis, &t, &t)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qr};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn unit_complete(n: usize) -> WeightedDigraph {
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let edges: Vec<(&str, &str, Q)> = refs.iter().flat_map(|&a| refs.iter().map(move |&b| (a, b, q(1)))).collect();
        WeightedDigraph::from_edges(&refs, &edges).unwrap()
    }

    fn ops_for(names: &[String], dim: usize, rng: &mut ChaCha8Rng, scale: f64) -> BTreeMap<String, CMat> {
        names.iter().map(|n| (n.clone(), random_matrix(rng, dim, scale))).collect()
    }

    #[test]
    fn identity_and_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rho = random_density(&mut rng, 3);
        let id = CPMap::identity(3);
        assert!((id.apply(&rho).unwrap() - &rho).norm() < 1e-14);
        let (c, s) = (0.6f64, 0.8f64);
        let u = CMat::from_row_slice(2, 2, &[C64::new(c, 0.0), C64::new(0.0, -s), C64::new(0.0, -s), C64::new(c, 0.0)]);
        let m = CPMap::new(2, vec![u]).unwrap();
        let rho = random_density(&mut rng, 2);
        assert!((m.apply(&rho).unwrap().trace().re - 1.0).abs() < 1e-12);
        assert!(m.apply(&CMat::identity(3, 3)).is_err());
    }

    #[test]
    fn positivity_on_random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let m = CPMap::new(2, vec![random_matrix(&mut rng, 2, 1.0), random_matrix(&mut rng, 2, 1.0)]).unwrap();
        for _ in 0..100 {
            let out = m.apply(&random_density(&mut rng, 2)).unwrap();
            assert!(is_hermitian(&out, 1e-12));
            assert!(min_eigenvalue(&out) >= -1e-10);
        }
    }

    #[test]
    fn complete_graph_matches_usual_powers() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=3 {
            for d in 1..=3 {
                let g = unit_complete(n);
                assert_eq!(g.arrows.len(), n * n);
                let ops = ops_for(&g.vertices, d, &mut rng, 0.7);
                let fam = KrausFamily::from_graph(&g, ProbabilityConvention::UnitWeights, false, &ops, Grouping::PerWord).unwrap();
                for k in 1..=4 {
                    assert!(fam.compare_usual(k).unwrap().passed, "n={n} d={d} k={k}");
                }
            }
        }
    }

    #[test]
    fn xg_example_symbolic() {
        let c = xg_coalgebra().unwrap();
        let polys = symbolic_kraus(&c, 2, Grouping::PerStartVertex).unwrap();
        let text: Vec<String> = polys.iter().map(|p| polynomial_text(p, "1")).collect();
        assert_eq!(text, vec!["1", "X + g·X", "g·g"]);
        let one = symbolic_kraus(&c, 1, Grouping::PerStartVertex).unwrap();
        let text: Vec<String> = one.iter().map(|p| polynomial_text(p, "1")).collect();
        assert_eq!(text, vec!["1", "X", "g"]);
    }

    #[test]
    fn semigroup_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let tri = WeightedDigraph::cycle(3);
        let ops = ops_for(&tri.vertices, 2, &mut rng, 0.8);
        let k2 = unit_complete(2);
        let ops2 = ops_for(&k2.vertices, 2, &mut rng, 0.8);
        for grouping in [Grouping::PerWord, Grouping::PerStartVertex] {
            let fam = KrausFamily::from_graph(&tri, ProbabilityConvention::UnitWeights, false, &ops, grouping).unwrap();
            let fam2 = KrausFamily::from_graph(&k2, ProbabilityConvention::UnitWeights, false, &ops2, grouping).unwrap();
            for k in 1..=4 {
                for l in 1..=5 - k {
                    assert!(fam.compose_circle_g(k, l).unwrap().1.passed);
                    assert!(fam2.compose_circle_g(k, l).unwrap().1.passed);
                }
            }
        }
        let fam2 = KrausFamily::from_graph(&k2, ProbabilityConvention::UnitWeights, false, &ops2, Grouping::PerWord).unwrap();
        let (m, _) = fam2.compose_circle_g(1, 1).unwrap();
        assert!(m.distance(&fam2.psi().compose(&fam2.psi())) < CP_TOL);
    }

    #[test]
    fn steps_one_is_psi() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = WeightedDigraph::cycle(3);
        let ops = ops_for(&g.vertices, 2, &mut rng, 1.0);
        let fam = KrausFamily::from_graph(&g, ProbabilityConvention::UnitWeights, false, &ops, Grouping::PerWord).unwrap();
        assert!(fam.iterate_circle_g(1).unwrap().distance(&fam.psi()) < 1e-14);
    }

    #[test]
    fn unitality_lost_off_complete_graphs() {
        // a unital and trace-preserving pair: K₀ = I/√2, K₁ = σ_x/√2
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let k0 = CMat::from_row_slice(2, 2, &[C64::new(h, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(h, 0.0)]);
        let k1 = CMat::from_row_slice(2, 2, &[C64::new(0.0, 0.0), C64::new(h, 0.0), C64::new(h, 0.0), C64::new(0.0, 0.0)]);
        let ops = BTreeMap::from([("a".to_string(), k0), ("b".to_string(), k1)]);
        let complete = WeightedDigraph::from_edges(&["a", "b"], &[("a", "a", q(1)), ("a", "b", q(1)), ("b", "a", q(1)), ("b", "b", q(1))]).unwrap();
        let fam = KrausFamily::from_graph(&complete, ProbabilityConvention::UnitWeights, false, &ops, Grouping::PerWord).unwrap();
        let d = diagnostics(&fam, 2, None).unwrap();
        assert!(d.unitality_gap_norm < CP_TOL && d.trace_gap_norm < CP_TOL);
        let path = WeightedDigraph::from_edges(&["a", "b"], &[("a", "a", q(1)), ("a", "b", q(1)), ("b", "b", q(1))]).unwrap();
        let fam = KrausFamily::from_graph(&path, ProbabilityConvention::UnitWeights, false, &ops, Grouping::PerWord).unwrap();
        let d = diagnostics(&fam, 2, None).unwrap();
        assert!(d.unitality_gap_norm > 1e-3);
        assert!(d.unitality_gap_min_eig >= -CP_TOL);
    }

    #[test]
    fn unitary_loop_has_no_gaps() {
        let (c, s) = (0.6f64, 0.8f64);
        let u = CMat::from_row_slice(2, 2, &[C64::new(c, 0.0), C64::new(-s, 0.0), C64::new(s, 0.0), C64::new(c, 0.0)]);
        let g = WeightedDigraph::from_edges(&["u"], &[("u", "u", q(1))]).unwrap();
        let fam = KrausFamily::from_graph(&g, ProbabilityConvention::UnitWeights, false, &BTreeMap::from([("u".to_string(), u)]), Grouping::PerWord).unwrap();
        let d = diagnostics(&fam, 3, None).unwrap();
        assert!(d.unitality_gap_norm < CP_TOL && d.trace_gap_norm < CP_TOL && d.contractivity_min_eig > -CP_TOL);
    }

    #[test]
    fn attractor_fraction_grows() {
        let g = WeightedDigraph::from_edges(&["a", "b"], &[("a", "a", qr(1, 2)), ("a", "b", qr(1, 2)), ("b", "b", q(1))]).unwrap();
        let ops = BTreeMap::from([("a".to_string(), CMat::identity(2, 2)), ("b".to_string(), CMat::identity(2, 2))]);
        let fam = KrausFamily::from_graph(&g, ProbabilityConvention::GivenWeights, false, &ops, Grouping::PerWord).unwrap();
        let d = diagnostics(&fam, 6, Some(&["b"])).unwrap();
        let f = d.attractor_fraction.unwrap();
        assert!(f.windows(2).all(|w| w[1] >= w[0]));
        assert!(f[5] > 0.95, "{f:?}");
    }

    #[test]
    fn json_family() {
        let v = serde_json::json!({
            "graph": {"vertices": ["a"], "arrows": [{"id": "a0", "src": "a", "dst": "a", "weight": "1"}]},
            "operators": {"a": [[[0.0, 1.0], 0], [0, [0.0, -1.0]]]},
        });
        let fam = KrausFamily::from_json(&v).unwrap();
        assert_eq!(fam.dim, 2);
        let m = parse_matrix(&matrix_to_json(fam.operator(0))).unwrap();
        assert_eq!(&m, fam.operator(0));
        let bad = serde_json::json!({"graph": {"vertices": ["a"], "arrows": []}, "operators": {"z": [[1]]}});
        assert!(KrausFamily::from_json(&bad).is_err());
    }

    #[test]
    fn sinks_route_to_identity() {
        let g = WeightedDigraph::from_edges(&["a", "b"], &[("a", "b", q(1))]).unwrap();
        let ops = BTreeMap::from([("a".to_string(), CMat::identity(1, 1) * C64::new(2.0, 0.0)), ("b".to_string(), CMat::identity(1, 1) * C64::new(3.0, 0.0))]);
        let fam = KrausFamily::from_graph(&g, ProbabilityConvention::UnitWeights, true, &ops, Grouping::PerWord).unwrap();
        assert_eq!(fam.coalgebra.basis.len(), 3);
        assert!(fam.iterate_circle_g(3).unwrap().kraus.len() >= 3);
    }
}
