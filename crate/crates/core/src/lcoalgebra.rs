//! L-coalgebras: a right coproduct `Δ` and a left coproduct `Δ̃` tied by the
//! breaking equation `(Δ̃⊗id)Δ = (id⊗Δ)Δ̃`, with optional counits.
//!
//! Degree-`n` structures have coproducts `n → n+1` and counits `n → n−1`.

use std::sync::Arc;

use crate::algebra_core::StructAlgebra;
use crate::error::{Error, Result};
use crate::graph_model::{Arrow, WeightedDigraph};
use crate::report::{AxiomReport, Check};
use crate::scalar::{Scalar, Q};
use crate::tensor_core::{all_words, kernel_basis, solve, Basis, LinMap, Sym, Vect, Word};

/// A (possibly degenerate) L-coalgebra over an exact scalar field.
#[derive(Clone, Debug)]
pub struct LCoalgebra<S> {
    pub name: String,
    pub basis: Arc<Basis>,
    pub degree: usize,
    /// `Δ`, degree `n → n+1`.
    pub right: LinMap<S>,
    /// `Δ̃`, degree `n → n+1`.
    pub left: LinMap<S>,
    /// `ε`, degree `n → n−1`.
    pub right_counit: Option<LinMap<S>>,
    /// `ε̃`, degree `n → n−1`.
    pub left_counit: Option<LinMap<S>>,
    /// Set when the structure is an ordinary coalgebra with `Δ̃ = Δ`.
    pub degenerate: bool,
}

/// Which coproduct a counit belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

impl<S: Scalar> LCoalgebra<S> {
    pub fn new(name: impl Into<String>, basis: Arc<Basis>, degree: usize, right: LinMap<S>, left: LinMap<S>) -> Self {
        LCoalgebra {
            name: name.into(),
            basis,
            degree,
            right,
            left,
            right_counit: None,
            left_counit: None,
            degenerate: false,
        }
    }

    /// An ordinary coalgebra `(C, Δ)` viewed as an L-coalgebra with `Δ̃ = Δ`.
    pub fn degenerate(name: impl Into<String>, basis: Arc<Basis>, delta: LinMap<S>, counit: Option<LinMap<S>>) -> Self {
        let mut c = LCoalgebra::new(name, basis, 1, delta.clone(), delta);
        c.left_counit = counit.clone();
        c.right_counit = counit;
        c.degenerate = true;
        c
    }

    pub fn with_counits(mut self, right: Option<LinMap<S>>, left: Option<LinMap<S>>) -> Self {
        self.right_counit = right;
        self.left_counit = left;
        self
    }

    /// All basis words of the structure's degree.
    pub fn words(&self) -> Vec<Word> {
        all_words(self.basis.len(), self.degree)
    }

    pub fn sym(&self, name: &str) -> Result<Sym> {
        self.basis.sym(name)
    }

    /// Parses a word such as `"x0⊗x1"` in this basis.
    pub fn word(&self, text: &str) -> Result<Word> {
        self.basis.parse_word(text)
    }

    fn show(&self, v: &Vect<S>) -> String {
        v.display(&self.basis).to_string()
    }

    fn witness(&self, w: &[Sym], lhs: &Vect<S>, rhs: &Vect<S>) -> String {
        let res = lhs.sub(rhs).map(|r| self.show(&r)).unwrap_or_default();
        format!("on {}: residual {}", self.basis.word_text(w), res)
    }

    /// First word where `f` and `g` disagree, formatted as a witness.
    pub fn compare(&self, f: &LinMap<S>, g: &LinMap<S>, words: &[Word]) -> Result<Option<String>> {
        Ok(f.agrees_on(g, words)?.map(|(w, a, b)| self.witness(&w, &a, &b)))
    }

    /// `(Δ̃⊗id)Δ` and `(id⊗Δ)Δ̃`.
    pub fn breaking_sides(&self) -> Result<(LinMap<S>, LinMap<S>)> {
        let lhs = self.left.padded(0, 1).after(&self.right)?;
        let rhs = self.right.padded(1, 0).after(&self.left)?;
        Ok((lhs, rhs))
    }

    /// Checks every law of the structure; failures are data, never errors.
    pub fn check_axioms(&self) -> AxiomReport {
        let mut r = AxiomReport::new();
        let words = self.words();
        let run = |name: &str, anchor: &str, f: Result<Option<String>>| match f {
            Ok(w) => Check::from_result(name, anchor, w),
            Err(e) => Check::fail(name, anchor, format!("error: {e}")),
        };
        r.push(run(
            "breaking_equation",
            "(Δ̃⊗id)Δ = (id⊗Δ)Δ̃",
            self.breaking_sides().and_then(|(a, b)| self.compare(&a, &b, &words)),
        ));

        let coassoc = self.right.padded(0, 1).after(&self.right).and_then(|a| {
            let b = self.right.padded(1, 0).after(&self.right)?;
            self.compare(&a, &b, &words)
        });
        let mut c = run("coassociativity", "(Δ⊗id)Δ = (id⊗Δ)Δ", coassoc);
        if !self.degenerate {
            c = c.informational();
        }
        r.push(c);
        if self.degenerate {
            r.push(run("degenerate", "Δ̃ = Δ", self.compare(&self.left, &self.right, &words)));
        }

        if let Some(eps) = &self.right_counit {
            let f = eps.padded(1, 0).after(&self.right).and_then(|f| self.compare(&f, &LinMap::identity(self.degree), &words));
            r.push(run("right_counit", "(id⊗ε)Δ = id", f));
        }
        if let Some(eps) = &self.left_counit {
            let f = eps.padded(0, 1).after(&self.left).and_then(|f| self.compare(&f, &LinMap::identity(self.degree), &words));
            r.push(run("left_counit", "(ε̃⊗id)Δ̃ = id", f));
        }

        if let Ok(tau) = LinMap::<S>::tau_cyclic(self.degree + 1) {
            let f = tau.after(&self.right).and_then(|t| self.compare(&self.right, &t, &words));
            r.push(run("cocommutativity", "Δ = τΔ", f).informational());
            let f = tau.after(&self.left).and_then(|t| self.compare(&self.right, &t, &words));
            r.push(run("l_cocommutativity", "Δ = τΔ̃", f).informational());
        }

        if self.degree == 1 {
            if self.right_counit.is_none() {
                r.push(existence_check("right_counit_exists", "∃ε: (id⊗ε)Δ = id", self.solve_counit(Side::Right)));
            }
            if self.left_counit.is_none() {
                r.push(existence_check("left_counit_exists", "∃ε̃: (ε̃⊗id)Δ̃ = id", self.solve_counit(Side::Left)));
            }
        }
        r
    }

    /// Solves for a counit of the given side (degree 1 only). `None` when no counit exists.
    pub fn solve_counit(&self, side: Side) -> Result<Option<Vec<S>>> {
        if self.degree != 1 {
            return Err(Error::Argument("counit solving is implemented for degree 1".into()));
        }
        let n = self.basis.len();
        let map = match side {
            Side::Right => &self.right,
            Side::Left => &self.left,
        };
        // unknowns: ε(y) for each symbol y; equations: coefficient of each kept symbol
        let mut rows: Vec<Vec<S>> = Vec::new();
        let mut rhs: Vec<S> = Vec::new();
        for x in 0..n as Sym {
            let img = map.apply_word(&[x])?;
            let mut eqs: Vec<Vec<S>> = vec![vec![S::zero(); n]; n];
            for (w, c) in img.terms() {
                let (kept, gone) = match side {
                    Side::Right => (w[0], w[1]),
                    Side::Left => (w[1], w[0]),
                };
                let cell = &mut eqs[kept as usize][gone as usize];
                *cell = cell.clone() + c.clone();
            }
            for (kept, row) in eqs.into_iter().enumerate() {
                rows.push(row);
                rhs.push(if kept as Sym == x { S::one() } else { S::zero() });
            }
        }
        Ok(solve(&rows, n, &rhs))
    }

    /// Applies `Δ` then `id⊗Δ`, ..., `k` times in all: a degree-`k+1` vector.
    pub fn walk_expansion(&self, v: &Vect<S>, k: usize) -> Result<Vect<S>> {
        if self.degree != 1 {
            return Err(Error::Argument("walk expansion needs a degree-1 structure".into()));
        }
        if k == 0 {
            return Err(Error::Argument("walk expansion needs k >= 1".into()));
        }
        self.extend_walk(v, k)
    }

    /// Applies `id^{⊗(d−1)}⊗Δ` repeatedly, `l` times, to a degree-`d` vector.
    pub fn extend_walk(&self, v: &Vect<S>, l: usize) -> Result<Vect<S>> {
        let mut cur = v.clone();
        for _ in 0..l {
            let d = cur.degree();
            cur = self.right.padded(d - 1, 0).apply(&cur)?;
        }
        Ok(cur)
    }

    /// `Δ_k ⋆ Δ_l = Δ_{k+l}` on every basis vertex.
    pub fn star_compose(&self, k: usize, l: usize) -> Result<Check> {
        if k == 0 || l == 0 {
            return Err(Error::Argument("star composition needs k, l >= 1".into()));
        }
        for x in 0..self.basis.len() as Sym {
            let v = Vect::sym(x);
            let lhs = self.extend_walk(&self.walk_expansion(&v, k)?, l)?;
            let rhs = self.walk_expansion(&v, k + l)?;
            if lhs != rhs {
                return Ok(Check::fail("star_compose", "Δ_k ⋆ Δ_l = Δ_{k+l}", self.witness(&[x], &lhs, &rhs)));
            }
        }
        Ok(Check::pass(format!("star_compose({k},{l})"), "Δ_k ⋆ Δ_l = Δ_{k+l}"))
    }

    /// Basis of `ker(Δ − τΔ̃)`.
    pub fn cocommutator_kernel(&self) -> Result<Vec<Vect<S>>> {
        let tau = LinMap::tau_cyclic(self.degree + 1)?;
        let f = self.right.sub(&tau.after(&self.left)?)?;
        kernel_basis(&f, self.basis.len())
    }

    /// The degree-`n` lift `Δ_n = id^{⊗(n−1)}⊗Δ`, `Δ̃_n = Δ̃⊗id^{⊗(n−1)}`.
    pub fn lift_degree_n(&self, n: usize, with_counits: bool) -> Result<LCoalgebra<S>> {
        if self.degree != 1 {
            return Err(Error::Argument("only degree-1 structures can be lifted".into()));
        }
        if n == 0 {
            return Err(Error::Argument("degree must be at least 1".into()));
        }
        let mut c = LCoalgebra::new(
            format!("{}^({n})", self.name),
            self.basis.clone(),
            n,
            self.right.padded(n - 1, 0),
            self.left.padded(0, n - 1),
        );
        c.degenerate = self.degenerate && n == 1;
        if with_counits {
            let (Some(e), Some(et)) = (&self.right_counit, &self.left_counit) else {
                return Err(Error::Precondition(format!("'{}' has no counits to lift", self.name)));
            };
            c.right_counit = Some(e.padded(n - 1, 0));
            c.left_counit = Some(et.padded(0, n - 1));
        }
        Ok(c)
    }

    /// Lifts a rational structure to another exact field.
    pub fn map_scalars<T: Scalar>(&self, f: fn(Q) -> T) -> LCoalgebra<T>
    where
        S: Into<Q>,
    {
        let lift = |m: &LinMap<S>| {
            let m = m.clone();
            LinMap::new(m.dom(), m.cod(), move |w| Ok(m.apply_word(w)?.map_scalars(|c| f(c.clone().into()))))
        };
        LCoalgebra {
            name: self.name.clone(),
            basis: self.basis.clone(),
            degree: self.degree,
            right: lift(&self.right),
            left: lift(&self.left),
            right_counit: self.right_counit.as_ref().map(lift),
            left_counit: self.left_counit.as_ref().map(lift),
            degenerate: self.degenerate,
        }
    }
}

fn existence_check<S: Scalar>(name: &str, anchor: &str, sol: Result<Option<Vec<S>>>) -> Check {
    let c = match sol {
        Ok(Some(v)) => {
            Check::pass(name, anchor).with_note(format!("solution {}", v.iter().map(|x| x.to_text()).collect::<Vec<_>>().join(", ")))
        }
        Ok(None) => {
            let side = if name.starts_with("left") { "left" } else { "right" };
            Check::fail(name, anchor, format!("No {side} counit exists."))
        }
        Err(e) => Check::fail(name, anchor, e.to_string()),
    };
    c.informational()
}

/// The graph of a degree-1 coalgebra: an arrow `u → v` for each term `u⊗v` of some `Δx`
/// (and of `Δ̃x` when `include_left`), weighted by its coefficient.
pub fn graph_of<S: Scalar>(c: &LCoalgebra<S>, include_left: bool) -> Result<WeightedDigraph> {
    if c.degree != 1 {
        return Err(Error::Argument("graph extraction needs degree 1".into()));
    }
    let mut maps = vec![&c.right];
    if include_left && !c.degenerate {
        maps.push(&c.left);
    }
    let mut arrows = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (k, m) in maps.into_iter().enumerate() {
        for x in 0..c.basis.len() as Sym {
            for (w, coef) in m.apply_word(&[x])?.terms() {
                // the left coproduct of a Markov structure repeats arrows already seen
                if k == 1 && !seen.insert((w[0], w[1])) {
                    continue;
                }
                if k == 0 {
                    seen.insert((w[0], w[1]));
                }
                let weight = coef
                    .to_q()
                    .ok_or_else(|| Error::Argument(format!("coefficient {} is not rational", coef.to_text())))?;
                arrows.push(Arrow {
                    id: format!("a{}", arrows.len()),
                    src: c.basis.name(w[0]).to_string(),
                    dst: c.basis.name(w[1]).to_string(),
                    weight,
                });
            }
        }
    }
    let identity = c.basis.unit().map(|u| c.basis.name(u).to_string());
    WeightedDigraph::new(c.basis.names().to_vec(), arrows, identity)
}

/// The tensor product `C⊗D` on pair symbols `(x,y)`, with `Δ_{C⊗D} = (1⊗τ⊗1)(Δ_C⊗Δ_D)`.
pub fn tensor_product_lc<S: Scalar>(c: &LCoalgebra<S>, d: &LCoalgebra<S>) -> Result<LCoalgebra<S>> {
    if c.degree != 1 || d.degree != 1 {
        return Err(Error::Argument("tensor product needs degree-1 factors".into()));
    }
    let nd = d.basis.len() as Sym;
    let mut names = Vec::new();
    for x in c.basis.names() {
        for y in d.basis.names() {
            names.push(format!("({x},{y})"));
        }
    }
    let basis = match (c.basis.unit(), d.basis.unit()) {
        (Some(u), Some(v)) => Basis::with_unit(names, &format!("({},{})", c.basis.name(u), d.basis.name(v)))?,
        _ => Basis::new(names)?,
    };
    let pair = move |x: Sym, y: Sym| x * nd + y;
    let split = move |s: Sym| (s / nd, s % nd);
    let shuffle = move |w: &[Sym]| -> Word { Word::from_slice(&[pair(w[0], w[2]), pair(w[1], w[3])]) };
    let cop = |f: &LinMap<S>, g: &LinMap<S>| {
        let (f, g) = (f.clone(), g.clone());
        LinMap::on_symbols(2, move |s| {
            let (x, y) = split(s);
            Ok(f.apply_word(&[x])?.tensor(&g.apply_word(&[y])?).map_words(2, shuffle))
        })
    };
    let counit = |f: &Option<LinMap<S>>, g: &Option<LinMap<S>>| match (f, g) {
        (Some(f), Some(g)) => {
            let (f, g) = (f.clone(), g.clone());
            Some(LinMap::on_symbols(0, move |s| {
                let (x, y) = split(s);
                Ok(f.apply_word(&[x])?.tensor(&g.apply_word(&[y])?))
            }))
        }
        _ => None,
    };
    let mut out = LCoalgebra::new(
        format!("{}⊗{}", c.name, d.name),
        Arc::new(basis),
        1,
        cop(&c.right, &d.right),
        cop(&c.left, &d.left),
    );
    out.right_counit = counit(&c.right_counit, &d.right_counit);
    out.left_counit = counit(&c.left_counit, &d.left_counit);
    out.degenerate = c.degenerate && d.degenerate;
    Ok(out)
}

/// Checks the L-bialgebra and (when antipodes are given) L-Hopf axioms of a degree-`n`
/// structure over an algebra sharing its basis. Products on tensor powers are componentwise.
///
/// Right antipode: `(id^{⊗(n−1)}⊗m)(id^{⊗n}⊗S)Δ_n(X) = ε_n(X)⊗1`;
/// left antipode: `(m⊗id^{⊗(n−1)})(S̃⊗id^{⊗n})Δ̃_n(X) = 1⊗ε̃_n(X)`.
pub fn check_bialgebra_hopf<S: Scalar>(
    c: &LCoalgebra<S>,
    alg: &StructAlgebra<S>,
    antipode: Option<&LinMap<S>>,
    left_antipode: Option<&LinMap<S>>,
) -> AxiomReport {
    let mut r = AxiomReport::new();
    if c.basis.names() != alg.basis.names() {
        r.push(Check::fail("shared_basis", "basis(C) = basis(A)", "coalgebra and algebra bases differ"));
        return r;
    }
    let n = c.degree;
    let words = c.words();
    let mult = |name: &str, anchor: &str, f: &LinMap<S>| -> Check {
        let res = (|| -> Result<Option<String>> {
            for u in &words {
                for w in &words {
                    let prod = alg.mul_tensor(&Vect::basis_word(u), &Vect::basis_word(w))?;
                    let lhs = f.apply(&prod)?;
                    let rhs = alg.mul_tensor(&f.apply_word(u)?, &f.apply_word(w)?)?;
                    if lhs != rhs {
                        return Ok(Some(format!(
                            "on ({})·({}): {} vs {}",
                            c.basis.word_text(u),
                            c.basis.word_text(w),
                            lhs.display(&c.basis),
                            rhs.display(&c.basis)
                        )));
                    }
                }
            }
            Ok(None)
        })();
        match res {
            Ok(w) => Check::from_result(name, anchor, w),
            Err(e) => Check::fail(name, anchor, e.to_string()),
        }
    };
    r.push(mult("right_multiplicative", "Δ(xy) = Δ(x)Δ(y)", &c.right));
    r.push(mult("left_multiplicative", "Δ̃(xy) = Δ̃(x)Δ̃(y)", &c.left));

    let unit_is_symbol = alg.unit_symbol().is_some();
    let one_n = alg.unit_power(n);
    for (name, anchor, f) in [("right_unital", "Δ(1) = 1⊗1", &c.right), ("left_unital", "Δ̃(1) = 1⊗1", &c.left)] {
        let chk = match f.apply(&one_n) {
            Ok(v) if v == alg.unit_power(n + 1) => Check::pass(name, anchor),
            Ok(v) => Check::fail(name, anchor, format!("image of unit is {}", v.display(&c.basis))),
            Err(e) => Check::fail(name, anchor, e.to_string()),
        };
        r.push(if unit_is_symbol { chk } else { chk.informational() });
    }
    for (name, anchor, eps) in [
        ("right_counit_multiplicative", "ε(xy) = ε(x)ε(y)", &c.right_counit),
        ("left_counit_multiplicative", "ε̃(xy) = ε̃(x)ε̃(y)", &c.left_counit),
    ] {
        if let Some(e) = eps {
            let res = (|| -> Result<Option<String>> {
                for u in &words {
                    for w in &words {
                        let lhs = e.apply(&alg.mul_tensor(&Vect::basis_word(u), &Vect::basis_word(w))?)?;
                        let rhs = alg.mul_tensor(&e.apply_word(u)?, &e.apply_word(w)?)?;
                        if lhs != rhs {
                            return Ok(Some(format!("on ({})·({})", c.basis.word_text(u), c.basis.word_text(w))));
                        }
                    }
                }
                Ok(None)
            })();
            r.push(match res {
                Ok(w) => Check::from_result(name, anchor, w),
                Err(e) => Check::fail(name, anchor, e.to_string()),
            });
        }
    }

    if let Some(s) = antipode {
        let res = (|| -> Result<Option<String>> {
            let Some(eps) = &c.right_counit else {
                return Ok(Some("no right counit".into()));
            };
            let m = alg.mul_map();
            let lhs_map = m.padded(n - 1, 0).after(&s.padded(n, 0).after(&c.right)?)?;
            for w in &words {
                let lhs = lhs_map.apply_word(w)?;
                let rhs = eps.apply_word(w)?.tensor(&alg.unit_vect());
                if lhs != rhs {
                    return Ok(Some(c.witness(w, &lhs, &rhs)));
                }
            }
            Ok(None)
        })();
        r.push(match res {
            Ok(w) => Check::from_result("right_antipode", "(id⊗m)(id⊗S)Δ = ε⊗1", w),
            Err(e) => Check::fail("right_antipode", "(id⊗m)(id⊗S)Δ = ε⊗1", e.to_string()),
        });
    }
    if let Some(s) = left_antipode {
        let res = (|| -> Result<Option<String>> {
            let Some(eps) = &c.left_counit else {
                return Ok(Some("no left counit".into()));
            };
            let m = alg.mul_map();
            let lhs_map = m.padded(0, n - 1).after(&s.padded(0, n).after(&c.left)?)?;
            for w in &words {
                let lhs = lhs_map.apply_word(w)?;
                let rhs = alg.unit_vect().tensor(&eps.apply_word(w)?);
                if lhs != rhs {
                    return Ok(Some(c.witness(w, &lhs, &rhs)));
                }
            }
            Ok(None)
        })();
        r.push(match res {
            Ok(w) => Check::from_result("left_antipode", "(m⊗id)(S̃⊗id)Δ̃ = 1⊗ε̃", w),
            Err(e) => Check::fail("left_antipode", "(m⊗id)(S̃⊗id)Δ̃ = 1⊗ε̃", e.to_string()),
        });
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coassoc_constructions::catalog;
    use crate::graph_model::{random_stochastic_digraph, to_markov_lcoalgebra, ProbabilityConvention, WeightedDigraph};
    use crate::scalar::q;
    use crate::tensor_core::rank_on;
    use proptest::prelude::*;

    fn markov(g: &WeightedDigraph, conv: ProbabilityConvention) -> LCoalgebra<Q> {
        to_markov_lcoalgebra(g, conv, false).unwrap()
    }

    #[test]
    fn sl2q_report() {
        let c = catalog("sl2q").unwrap().coalgebra;
        let r = c.check_axioms();
        assert!(r.passed("coassociativity"));
        assert!(r.passed("right_counit") && r.passed("left_counit"));
        assert!(!r.passed("cocommutativity"));
        assert!(r.ok());
    }

    #[test]
    fn t4_has_no_left_counit() {
        let c = catalog("two_point_T4").unwrap().coalgebra;
        let r = c.check_axioms();
        assert!(r.passed("right_counit"));
        let left = r.get("left_counit_exists").unwrap();
        assert!(!left.passed);
        assert_eq!(left.witness.as_deref(), Some("No left counit exists."));
        let eps = c.solve_counit(Side::Right).unwrap().unwrap();
        assert_eq!(eps, vec![q(1), q(0)]);
    }

    #[test]
    fn graph_of_xg() {
        let c = catalog("xg_hopf_coalgebra").unwrap().coalgebra;
        let g = graph_of(&c, false).unwrap();
        let has = |s: &str, t: &str| g.arrows.iter().any(|a| a.src == s && a.dst == t);
        assert!(has("X", "1") && has("g", "X"));
        assert!(has("1", "1"));
    }

    #[test]
    fn cocommutative_graph_is_symmetric() {
        for name in ["two_point_T2", "two_point_T5", "group_Z3"] {
            let c = catalog(name).unwrap().coalgebra;
            if c.check_axioms().passed("cocommutativity") {
                let g = graph_of(&c, false).unwrap();
                for a in &g.arrows {
                    assert!(g.arrows.iter().any(|b| b.src == a.dst && b.dst == a.src), "{name}");
                }
            }
        }
    }

    #[test]
    fn triangle_walks() {
        let c = markov(&WeightedDigraph::cycle(3), ProbabilityConvention::GivenWeights);
        let v = c.walk_expansion(&Vect::sym(0), 2).unwrap();
        assert_eq!(v, Vect::basis_word(&[0, 1, 2]));
        assert_eq!(c.walk_expansion(&Vect::sym(0), 1).unwrap(), c.right.apply_word(&[0]).unwrap());
        assert!(c.star_compose(1, 1).unwrap().passed);
    }

    #[test]
    fn complete_graph_walk_count() {
        let g = WeightedDigraph::from_edges(
            &["a", "b", "c"],
            &[("a", "b", q(1)), ("a", "c", q(1)), ("b", "a", q(1)), ("b", "c", q(1)), ("c", "a", q(1)), ("c", "b", q(1)),
              ("a", "a", q(1)), ("b", "b", q(1)), ("c", "c", q(1))],
        )
        .unwrap();
        let c = markov(&g, ProbabilityConvention::UnitWeights);
        let v = c.walk_expansion(&Vect::sym(0), 3).unwrap();
        assert_eq!(v.len(), 27);
    }

    /// Walk probabilities enumerated directly from arrows.
    fn walk_oracle(g: &WeightedDigraph, start: &str, k: usize) -> Vec<(Vec<String>, Q)> {
        let mut paths = vec![(vec![start.to_string()], q(1))];
        for _ in 0..k {
            let mut next = Vec::new();
            for (p, w) in &paths {
                for a in g.out_arrows(p.last().unwrap()) {
                    let mut p2 = p.clone();
                    p2.push(a.dst.clone());
                    next.push((p2, w.clone() * a.weight.clone()));
                }
            }
            paths = next;
        }
        paths
    }

    #[test]
    fn walk_coefficients_are_probabilities() {
        for seed in 0..6 {
            let g = random_stochastic_digraph(2 + seed as usize % 4, 4, seed);
            let c = markov(&g, ProbabilityConvention::GivenWeights);
            for k in 1..=4 {
                let v = c.walk_expansion(&Vect::sym(0), k).unwrap();
                let oracle = walk_oracle(&g, "x0", k);
                assert_eq!(v.len(), oracle.len());
                for (p, w) in oracle {
                    let wd: Word = p.iter().map(|s| c.basis.sym(s).unwrap()).collect();
                    assert_eq!(v.coeff(&wd), w);
                }
            }
        }
    }

    #[test]
    fn star_composition_examples() {
        let sl2 = catalog("sl2q").unwrap().coalgebra;
        assert!(sl2.star_compose(2, 1).unwrap().passed);
        let c = markov(&random_stochastic_digraph(5, 5, 9), ProbabilityConvention::GivenWeights);
        assert!(c.star_compose(1, 2).unwrap().passed);
    }

    #[test]
    fn cocommutator_kernels() {
        let two = WeightedDigraph::from_edges(&["u", "v"], &[("u", "v", q(1)), ("v", "u", q(1))]).unwrap();
        let c = markov(&two, ProbabilityConvention::UnitWeights);
        assert_eq!(c.cocommutator_kernel().unwrap().len(), 2);
        let tri = markov(&WeightedDigraph::cycle(3), ProbabilityConvention::UnitWeights);
        let k = tri.cocommutator_kernel().unwrap();
        // dense oracle: columns of Δ − τΔ̃ on x0,x1,x2
        let tau = LinMap::<Q>::tau_cyclic(2).unwrap();
        let f = tri.right.sub(&tau.after(&tri.left).unwrap()).unwrap();
        let rank = rank_on(&f, &all_words(3, 1)).unwrap();
        assert_eq!(k.len(), 3 - rank);
        let lp = catalog("group_Z3").unwrap().coalgebra;
        assert_eq!(lp.cocommutator_kernel().unwrap().len(), 3);
    }

    #[test]
    fn tensor_products() {
        let lp = WeightedDigraph::from_edges(&["v"], &[("v", "v", q(1))]).unwrap();
        let l = markov(&lp, ProbabilityConvention::GivenWeights);
        let ll = tensor_product_lc(&l, &l).unwrap();
        assert_eq!(ll.right.apply_word(&[0]).unwrap(), Vect::basis_word(&[0, 0]));
        let t = markov(&WeightedDigraph::cycle(3), ProbabilityConvention::GivenWeights);
        let tt = tensor_product_lc(&t, &t).unwrap();
        assert_eq!(tt.basis.len(), 9);
        let r = tt.check_axioms();
        assert!(r.passed("breaking_equation"));
        assert!(r.passed("right_counit") && r.passed("left_counit"));
        let x = tt.sym("(x0,x2)").unwrap();
        let y = tt.sym("(x1,x0)").unwrap();
        assert_eq!(tt.right.apply_word(&[x]).unwrap(), Vect::basis_word(&[x, y]));
    }

    #[test]
    fn degree_two_triangle_lift() {
        let t = markov(&WeightedDigraph::cycle(3), ProbabilityConvention::GivenWeights);
        let t2 = t.lift_degree_n(2, true).unwrap();
        for a in 0..3u32 {
            for b in 0..3u32 {
                assert_eq!(t2.right.apply_word(&[a, b]).unwrap(), Vect::basis_word(&[a, b, (b + 1) % 3]));
            }
        }
        assert!(t2.check_axioms().ok());
        let t1 = t.lift_degree_n(1, true).unwrap();
        assert_eq!(t1.right.apply_word(&[1]).unwrap(), t.right.apply_word(&[1]).unwrap());
        let bare = to_markov_lcoalgebra(&WeightedDigraph::cycle(3), ProbabilityConvention::UnitWeights, false).unwrap();
        assert!(matches!(bare.lift_degree_n(2, true), Err(Error::Precondition(_))));
    }

    #[test]
    fn degree_three_on_random_graph() {
        let c = markov(&random_stochastic_digraph(4, 4, 2), ProbabilityConvention::GivenWeights);
        let c3 = c.lift_degree_n(3, true).unwrap();
        assert!(c3.check_axioms().ok());
    }

    #[test]
    fn counit_of_tensor_product() {
        let c = markov(&random_stochastic_digraph(3, 3, 4), ProbabilityConvention::GivenWeights);
        let d = markov(&WeightedDigraph::cycle(2), ProbabilityConvention::GivenWeights);
        let cd = tensor_product_lc(&c, &d).unwrap();
        let e = cd.right_counit.clone().unwrap();
        for x in 0..cd.basis.len() as Sym {
            let v = e.padded(1, 0).apply(&cd.right.apply_word(&[x]).unwrap()).unwrap();
            assert_eq!(v, Vect::sym(x));
        }
    }

    proptest! {
        #[test]
        fn lifts_stay_lcoalgebras(seed in 0u64..200, n in 1usize..4) {
            let c = markov(&random_stochastic_digraph(3, 3, seed), ProbabilityConvention::GivenWeights);
            prop_assert!(c.lift_degree_n(n, true).unwrap().check_axioms().ok());
        }
    }
}
