//! Products on pointer polynomials `Σ a_i ⊲ X_i` induced by a coproduct, under
//! static, shifted and path placement conventions; the matrix and wedge products
//! they produce; random products on weighted graphs; and the mutation process.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::coassoc_constructions::{catalog, coproduct_from_matrices, SymbolMatrix};
use crate::error::{Error, Result};
use crate::graph_model::{to_markov_lcoalgebra_without_counits, ProbabilityConvention, WeightedDigraph};
use crate::lcoalgebra::LCoalgebra;
use crate::report::{AxiomReport, Check};
use crate::scalar::{parse_q, q, Q};
use crate::tensor_core::{all_words, kernel_on, rank_on, Basis, LinMap, Sym, Vect, Word};

/// A coefficient algebra `A` with product `m`.
pub trait Coeff: Clone + PartialEq + Debug {
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn scaled(&self, c: &Q) -> Self;
    fn vanishes(&self) -> bool;
    fn text(&self) -> String;
}

impl Coeff for Q {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scaled(&self, c: &Q) -> Self {
        self * c
    }
    fn vanishes(&self) -> bool {
        *self == q(0)
    }
    fn text(&self) -> String {
        self.to_string()
    }
}

/// A square matrix over ℚ, used as a noncommutative coefficient algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMat {
    pub n: usize,
    pub entries: Vec<Q>,
}

impl QMat {
    pub fn zero(n: usize) -> Self {
        QMat { n, entries: vec![q(0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = q(1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Argument("matrix must be square".into()));
        }
        Ok(QMat { n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.entries[i * self.n + j]
    }

    pub fn random<R: Rng>(rng: &mut R, n: usize) -> Self {
        QMat { n, entries: (0..n * n).map(|_| random_q(rng)).collect() }
    }
}

impl Coeff for QMat {
    fn plus(&self, other: &Self) -> Self {
        QMat { n: self.n, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect() }
    }
    fn times(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = QMat::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if *a == q(0) {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * other.get(k, j);
                }
            }
        }
        out
    }
    fn scaled(&self, c: &Q) -> Self {
        QMat { n: self.n, entries: self.entries.iter().map(|a| a * c).collect() }
    }
    fn vanishes(&self) -> bool {
        self.entries.iter().all(|a| *a == q(0))
    }
    fn text(&self) -> String {
        let rows: Vec<String> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        format!("[{}]", rows.join("; "))
    }
}

/// Noncommutative polynomials in named letters, for symbolic products.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NcPoly(pub BTreeMap<Vec<String>, Q>);

impl NcPoly {
    pub fn letter(name: &str) -> Self {
        NcPoly(BTreeMap::from([(vec![name.to_string()], q(1))]))
    }

    /// Parses `"a*b' + b*b'"`; letters are separated by `*`, terms by `+`.
    pub fn parse(text: &str) -> Self {
        let mut p = NcPoly::default();
        for t in text.split('+').map(str::trim).filter(|t| !t.is_empty()) {
            let m: Vec<String> = t.split('*').map(|s| s.trim().to_string()).collect();
            p = p.plus(&NcPoly(BTreeMap::from([(m, q(1))])));
        }
        p
    }
}

impl Coeff for NcPoly {
    fn plus(&self, other: &Self) -> Self {
        let mut out = self.0.clone();
        for (m, c) in &other.0 {
            *out.entry(m.clone()).or_default() += c;
        }
        out.retain(|_, c| *c != q(0));
        NcPoly(out)
    }
    fn times(&self, other: &Self) -> Self {
        let mut out: BTreeMap<Vec<String>, Q> = BTreeMap::new();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &other.0 {
                let m: Vec<String> = m1.iter().chain(m2).cloned().collect();
                *out.entry(m).or_default() += c1 * c2;
            }
        }
        out.retain(|_, c| *c != q(0));
        NcPoly(out)
    }
    fn scaled(&self, c: &Q) -> Self {
        if *c == q(0) {
            return NcPoly::default();
        }
        NcPoly(self.0.iter().map(|(m, x)| (m.clone(), x * c)).collect())
    }
    fn vanishes(&self) -> bool {
        self.0.is_empty()
    }
    fn text(&self) -> String {
        if self.0.is_empty() {
            return "0".into();
        }
        self.0
            .iter()
            .map(|(m, c)| if *c == q(1) { m.join("") } else { format!("{c}{}", m.join("")) })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// A small random rational with numerator in `-6..=6` and denominator in `1..=3`.
pub fn random_q<R: Rng>(rng: &mut R) -> Q {
    Q::new(rng.gen_range(-6i64..=6).into(), rng.gen_range(1i64..=3).into())
}

/// `Σ a_i ⊲ X_i` with the pointers fixed by a basis; missing entries are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct PointerPoly<A> {
    pub basis: Arc<Basis>,
    coeffs: BTreeMap<Sym, A>,
}

impl<A: Coeff> PointerPoly<A> {
    pub fn zero(basis: Arc<Basis>) -> Self {
        PointerPoly { basis, coeffs: BTreeMap::new() }
    }

    pub fn from_pairs<'a>(basis: Arc<Basis>, pairs: impl IntoIterator<Item = (&'a str, A)>) -> Result<Self> {
        let mut p = PointerPoly::zero(basis);
        for (name, a) in pairs {
            let s = p.basis.sym(name)?;
            p.add_at(s, a);
        }
        Ok(p)
    }

    pub fn get(&self, s: Sym) -> Option<&A> {
        self.coeffs.get(&s)
    }

    pub fn coeff(&self, name: &str) -> Result<Option<&A>> {
        Ok(self.coeffs.get(&self.basis.sym(name)?))
    }

    pub fn entries(&self) -> impl Iterator<Item = (Sym, &A)> {
        self.coeffs.iter().map(|(s, a)| (*s, a))
    }

    pub fn add_at(&mut self, s: Sym, a: A) {
        let v = match self.coeffs.remove(&s) {
            Some(old) => old.plus(&a),
            None => a,
        };
        if !v.vanishes() {
            self.coeffs.insert(s, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, a) in &other.coeffs {
            out.add_at(*s, a.clone());
        }
        out
    }

    pub fn scaled(&self, c: &Q) -> Self {
        let mut out = PointerPoly::zero(self.basis.clone());
        for (s, a) in &self.coeffs {
            out.add_at(*s, a.scaled(c));
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scaled(&q(-1)))
    }

    pub fn text(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|(s, a)| format!("({}) ⊲ {}", a.text(), self.basis.name(*s)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Where the result of `Δ(X_i)` is placed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlacementConvention {
    /// At `X_i` itself.
    Static,
    /// At `X_{σ(i)}` for a permutation `σ` of the pointers.
    Shifted(Vec<Sym>),
    /// At the terminus of each term: `X_i ⊗ X_j` lands at `X_j`.
    Path,
}

impl PlacementConvention {
    /// A shifted convention from `(from, to)` name pairs; unlisted pointers stay fixed.
    pub fn shifted(basis: &Basis, moves: &[(&str, &str)]) -> Result<Self> {
        let mut perm: Vec<Sym> = basis.syms().collect();
        for (a, b) in moves {
            perm[basis.sym(a)? as usize] = basis.sym(b)?;
        }
        let conv = PlacementConvention::Shifted(perm);
        conv.validate(basis.len())?;
        Ok(conv)
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if let PlacementConvention::Shifted(perm) = self {
            let mut seen = vec![false; n];
            if perm.len() != n {
                return Err(Error::Argument(format!("shift has {} entries for {n} pointers", perm.len())));
            }
            for &t in perm {
                match seen.get_mut(t as usize) {
                    Some(x) if !*x => *x = true,
                    _ => return Err(Error::Argument("shift is not a permutation of the pointers".into())),
                }
            }
        }
        Ok(())
    }

    fn target(&self, i: Sym, w: &[Sym]) -> Sym {
        match self {
            PlacementConvention::Static => i,
            PlacementConvention::Shifted(perm) => perm[i as usize],
            PlacementConvention::Path => w[w.len() - 1],
        }
    }
}

fn check_operands<A: Coeff>(p: &PointerPoly<A>, r: &PointerPoly<A>, g: &LCoalgebra<Q>, conv: &PlacementConvention) -> Result<()> {
    if g.degree != 1 {
        return Err(Error::Argument("pointer products need a degree-1 coproduct".into()));
    }
    if p.basis.names() != g.basis.names() || r.basis.names() != g.basis.names() {
        return Err(Error::Basis("pointer polynomials and coproduct use different pointers".into()));
    }
    conv.validate(g.basis.len())
}

/// `(Σ a_i ⊲ X_i)[Δ](Σ b_i ⊲ X_i) = Σ c_i ⊲ Δ(X_i)`: each term `λ X_j ⊗ X_l` of `Δ(X_i)`
/// contributes `λ a_j b_l` at the placement target.
pub fn pointer_product<A: Coeff>(p: &PointerPoly<A>, r: &PointerPoly<A>, g: &LCoalgebra<Q>, conv: &PlacementConvention) -> Result<PointerPoly<A>> {
    check_operands(p, r, g, conv)?;
    let mut out = PointerPoly::zero(p.basis.clone());
    for i in g.basis.syms() {
        for (w, c) in g.right.apply_word(&[i])?.terms() {
            if let (Some(a), Some(b)) = (p.get(w[0]), r.get(w[1])) {
                out.add_at(conv.target(i, w), a.times(b).scaled(c));
            }
        }
    }
    Ok(out)
}

/// The path-convention product where each pointer with several outgoing terms uses
/// one of them, drawn with the coproduct's weights. Returns the chosen term per pointer.
pub fn random_pointer_product<A: Coeff>(
    p: &PointerPoly<A>,
    r: &PointerPoly<A>,
    g: &LCoalgebra<Q>,
    seed: u64,
) -> Result<(PointerPoly<A>, Vec<(Sym, Word)>)> {
    let conv = PlacementConvention::Path;
    check_operands(p, r, g, &conv)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = PointerPoly::zero(p.basis.clone());
    let mut chosen = Vec::new();
    for i in g.basis.syms() {
        let d = g.right.apply_word(&[i])?;
        let terms: Vec<(&Word, &Q)> = d.terms().collect();
        if terms.is_empty() {
            continue;
        }
        let total: Q = terms.iter().map(|(_, c)| (*c).clone()).sum();
        if total <= q(0) || terms.iter().any(|(_, c)| **c < q(0)) {
            return Err(Error::Precondition(format!("coproduct of '{}' has no probability weights", g.basis.name(i))));
        }
        let idx = if terms.len() == 1 {
            0
        } else {
            let u: f64 = rng.gen();
            let mut acc = 0.0;
            let tot = num_traits::ToPrimitive::to_f64(&total).unwrap_or(1.0);
            terms
                .iter()
                .position(|(_, c)| {
                    acc += num_traits::ToPrimitive::to_f64(*c).unwrap_or(0.0) / tot;
                    u < acc
                })
                .unwrap_or(terms.len() - 1)
        };
        let w = terms[idx].0.clone();
        if let (Some(a), Some(b)) = (p.get(w[0]), r.get(w[1])) {
            out.add_at(conv.target(i, &w), a.times(b));
        }
        chosen.push((i, w));
    }
    Ok((out, chosen))
}

/// Frequencies of the chosen-term patterns of [`random_pointer_product`] over seeds `seed..seed+runs`.
pub fn random_product_frequencies<A: Coeff>(
    p: &PointerPoly<A>,
    r: &PointerPoly<A>,
    g: &LCoalgebra<Q>,
    runs: usize,
    seed: u64,
) -> Result<BTreeMap<String, f64>> {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for k in 0..runs as u64 {
        let (_, chosen) = random_pointer_product(p, r, g, seed.wrapping_add(k))?;
        let key = chosen
            .iter()
            .filter(|(i, _)| g.right.apply_word(&[*i]).map(|d| d.len() > 1).unwrap_or(false))
            .map(|(i, w)| format!("{}:{}", g.basis.name(*i), g.basis.word_text(w)))
            .collect::<Vec<_>>()
            .join(",");
        *counts.entry(key).or_default() += 1;
    }
    Ok(counts.into_iter().map(|(k, c)| (k, c as f64 / runs as f64)).collect())
}

/// Associativity of `[Δ]` on every triple of basis pointers, which is exact by trilinearity.
pub fn associativity_check(g: &LCoalgebra<Q>, conv: &PlacementConvention) -> Result<Check> {
    let e = |s: Sym| PointerPoly::from_pairs(g.basis.clone(), [(g.basis.name(s), q(1))]);
    for w in all_words(g.basis.len(), 3) {
        let (x, y, z) = (e(w[0])?, e(w[1])?, e(w[2])?);
        let lhs = pointer_product(&pointer_product(&x, &y, g, conv)?, &z, g, conv)?;
        let rhs = pointer_product(&x, &pointer_product(&y, &z, g, conv)?, g, conv)?;
        if lhs != rhs {
            return Ok(Check::fail(
                "associativity",
                "(p[Δ]q)[Δ]r = p[Δ](q[Δ]r)",
                format!("on ({}): {} vs {}", g.basis.word_text(&w), lhs.text(), rhs.text()),
            ));
        }
    }
    Ok(Check::pass("associativity", "(p[Δ]q)[Δ]r = p[Δ](q[Δ]r)"))
}

/// Associativity of the static product against coassociativity of the coproduct.
pub fn assoc_coassoc_report(g: &LCoalgebra<Q>) -> Result<AxiomReport> {
    let mut r = AxiomReport::new();
    let assoc = associativity_check(g, &PlacementConvention::Static)?.informational();
    let words = g.words();
    let lhs = g.right.padded(0, 1).after(&g.right)?;
    let rhs = g.right.padded(1, 0).after(&g.right)?;
    let coassoc = Check::from_result("coassociativity", "(Δ⊗id)Δ = (id⊗Δ)Δ", g.compare(&lhs, &rhs, &words)?).informational();
    let agree = assoc.passed == coassoc.passed;
    r.push(Check::from_result(
        "assoc_iff_coassoc",
        "[Δ] associative ⇔ Δ coassociative",
        (!agree).then(|| format!("associative: {}, coassociative: {}", assoc.passed, coassoc.passed)),
    ));
    r.push(assoc);
    r.push(coassoc);
    Ok(r)
}

/// The pointer sitting at each matrix position (`None` for structural zeros).
pub type Layout = Vec<Vec<Option<Sym>>>;

/// The coalgebra `T⊗̄T` of a full `n×n` symbol matrix with pointers `x{i}{j}`.
pub fn full_matrix_coalgebra(n: usize) -> Result<(LCoalgebra<Q>, Layout)> {
    let blocks = [n];
    block_diagonal_coalgebra(&blocks)
}

/// `T⊗̄T` for a block-diagonal `T` with the given block sizes.
pub fn block_diagonal_coalgebra(sizes: &[usize]) -> Result<(LCoalgebra<Q>, Layout)> {
    let n: usize = sizes.iter().sum();
    let mut block_of = Vec::new();
    for (b, &s) in sizes.iter().enumerate() {
        block_of.extend(std::iter::repeat_n(b, s));
    }
    let mut names = Vec::new();
    let mut layout = vec![vec![None; n]; n];
    for i in 0..n {
        for j in 0..n {
            if block_of[i] == block_of[j] {
                layout[i][j] = Some(names.len() as Sym);
                names.push(format!("x{}{}", i + 1, j + 1));
            }
        }
    }
    let basis = Arc::new(Basis::new(names)?);
    let entries = layout
        .iter()
        .map(|row| row.iter().map(|e| e.map(Vect::sym).unwrap_or_else(|| Vect::zero(1))).collect())
        .collect();
    let t = SymbolMatrix::new(entries)?;
    let name = format!("block_matrix{sizes:?}");
    Ok((coproduct_from_matrices(&name, basis, &t, &t)?.0, layout))
}

/// The layout `[[a, b], [c, d]]` of the quantum-group coalgebra.
pub fn sl2q_layout(c: &LCoalgebra<Q>) -> Result<Layout> {
    Ok(vec![vec![Some(c.sym("a")?), Some(c.sym("b")?)], vec![Some(c.sym("c")?), Some(c.sym("d")?)]])
}

fn poly_from_matrix<A: Coeff>(basis: &Arc<Basis>, layout: &Layout, m: &[Vec<A>]) -> PointerPoly<A> {
    let mut p = PointerPoly::zero(basis.clone());
    for (i, row) in layout.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            if let Some(s) = e {
                p.add_at(*s, m[i][j].clone());
            }
        }
    }
    p
}

fn matrix_oracle<A: Coeff>(a: &[Vec<A>], b: &[Vec<A>], zero: &A) -> Vec<Vec<A>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).fold(zero.clone(), |acc, k| acc.plus(&a[i][k].times(&b[k][j])))).collect())
        .collect()
}

fn random_array<A: Coeff>(layout: &Layout, zero: &A, mut sample: impl FnMut() -> A) -> Vec<Vec<A>> {
    layout.iter().map(|row| row.iter().map(|e| if e.is_some() { sample() } else { zero.clone() }).collect()).collect()
}

fn iso_check_with<A: Coeff>(
    c: &LCoalgebra<Q>,
    layout: &Layout,
    samples: usize,
    zero: &A,
    mut sample: impl FnMut() -> A,
    name: &str,
) -> Result<Check> {
    for k in 0..samples {
        let a = random_array(layout, zero, &mut sample);
        let b = random_array(layout, zero, &mut sample);
        let prod = matrix_oracle(&a, &b, zero);
        if layout.iter().flatten().zip(prod.iter().flatten()).any(|(e, x)| e.is_none() && !x.vanishes()) {
            return Ok(Check::fail(name, "[Δ] = matrix product", format!("sample {k}: product leaves the block pattern")));
        }
        let got = pointer_product(&poly_from_matrix(&c.basis, layout, &a), &poly_from_matrix(&c.basis, layout, &b), c, &PlacementConvention::Static)?;
        let want = poly_from_matrix(&c.basis, layout, &prod);
        if got != want {
            return Ok(Check::fail(name, "[Δ] = matrix product", format!("sample {k}: {} vs {}", got.text(), want.text())));
        }
    }
    Ok(Check::pass(name, "[Δ] = matrix product").with_note(format!("{samples} random pairs")))
}

/// Compares the static product of `T⊗̄T` with the row-column matrix product, over ℚ and
/// over `M₂(ℚ)` coefficients, and checks the unit and associativity.
pub fn matrix_iso_check_on(c: &LCoalgebra<Q>, layout: &Layout, samples: usize, seed: u64) -> Result<AxiomReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = AxiomReport::new();
    r.push(iso_check_with(c, layout, samples, &q(0), || random_q(&mut rng), "matrix_product_scalar")?);
    let mut rng2 = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    r.push(iso_check_with(c, layout, samples.min(25), &QMat::zero(2), || QMat::random(&mut rng2, 2), "matrix_product_m2")?);

    let one = poly_from_matrix(
        &c.basis,
        layout,
        &(0..layout.len()).map(|i| (0..layout.len()).map(|j| if i == j { q(1) } else { q(0) }).collect()).collect::<Vec<Vec<Q>>>(),
    );
    let mut unit_witness = None;
    for s in c.basis.syms() {
        let e = PointerPoly::from_pairs(c.basis.clone(), [(c.basis.name(s), q(1))])?;
        let (l, rr) = (pointer_product(&one, &e, c, &PlacementConvention::Static)?, pointer_product(&e, &one, c, &PlacementConvention::Static)?);
        if l != e || rr != e {
            unit_witness = Some(format!("fails on {}", c.basis.name(s)));
            break;
        }
    }
    r.push(Check::from_result("unit", "identity matrix is the unit of [Δ]", unit_witness));
    r.extend(assoc_coassoc_report(c)?);
    Ok(r)
}

/// [`matrix_iso_check_on`] for the full `n×n` symbol matrix.
pub fn matrix_iso_check(n: usize, samples: usize, seed: u64) -> Result<AxiomReport> {
    let (c, layout) = full_matrix_coalgebra(n)?;
    matrix_iso_check_on(&c, &layout, samples, seed)
}

/// The oriented triangle `x0 → x1 → x2 → x0` with an adjoined unit `I` (`Δ(I) = I⊗I`).
pub fn triangle_with_unit() -> Result<LCoalgebra<Q>> {
    to_markov_lcoalgebra_without_counits(&WeightedDigraph::cycle(3), ProbabilityConvention::UnitWeights, true)
}

/// Places `Δ(x_i)` at `x_{i+2 mod 3}` and keeps `Δ(I)` at `I`.
pub fn triangle_shift(c: &LCoalgebra<Q>) -> Result<PlacementConvention> {
    PlacementConvention::shifted(&c.basis, &[("x0", "x2"), ("x1", "x0"), ("x2", "x1")])
}

fn commutator<A: Coeff>(p: &PointerPoly<A>, r: &PointerPoly<A>, g: &LCoalgebra<Q>, conv: &PlacementConvention) -> Result<PointerPoly<A>> {
    Ok(pointer_product(p, r, g, conv)?.minus(&pointer_product(r, p, g, conv)?))
}

/// The commutator of the shifted triangle product against the cross product on ℚ³.
pub fn cross_product_check(samples: usize, seed: u64) -> Result<AxiomReport> {
    let c = triangle_with_unit()?;
    let conv = triangle_shift(&c)?;
    let axes = ["x0", "x1", "x2"];
    let vec3 = |v: &[Q; 3], unit: Q| -> Result<PointerPoly<Q>> {
        PointerPoly::from_pairs(c.basis.clone(), axes.iter().zip(v.iter()).map(|(n, x)| (*n, x.clone())).chain([("I", unit)]))
    };
    let cross = |a: &[Q; 3], b: &[Q; 3]| -> [Q; 3] {
        [&a[1] * &b[2] - &a[2] * &b[1], &a[2] * &b[0] - &a[0] * &b[2], &a[0] * &b[1] - &a[1] * &b[0]]
    };
    let mut r = AxiomReport::new();

    let mut witness = None;
    for i in 0..3 {
        let (a, b) = (axes[i], axes[(i + 1) % 3]);
        let got = commutator(
            &PointerPoly::from_pairs(c.basis.clone(), [(a, q(1))])?,
            &PointerPoly::from_pairs(c.basis.clone(), [(b, q(1))])?,
            &c,
            &conv,
        )?;
        let want = PointerPoly::from_pairs(c.basis.clone(), [(axes[(i + 2) % 3], q(1))])?;
        if got != want {
            witness = Some(format!("[{a}, {b}] = {}", got.text()));
            break;
        }
    }
    r.push(Check::from_result("basis_pattern", "[e₀, e₁] = e₂ cyclically", witness));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rand3 = |rng: &mut ChaCha8Rng| [random_q(rng), random_q(rng), random_q(rng)];
    let (mut w_cross, mut w_alt, mut w_bil) = (None, None, None);
    for k in 0..samples {
        let (a, b, d) = (rand3(&mut rng), rand3(&mut rng), rand3(&mut rng));
        let (ua, ub) = (random_q(&mut rng), random_q(&mut rng));
        let (pa, pb, pd) = (vec3(&a, ua)?, vec3(&b, ub)?, vec3(&d, q(0))?);
        let got = commutator(&pa, &pb, &c, &conv)?;
        let want = vec3(&cross(&a, &b), q(0))?;
        if w_cross.is_none() && got != want {
            w_cross = Some(format!("sample {k}: {} vs {}", got.text(), want.text()));
        }
        if w_alt.is_none() && !commutator(&pa, &pa, &c, &conv)?.is_zero() {
            w_alt = Some(format!("sample {k}: [v, v] ≠ 0"));
        }
        let lam = random_q(&mut rng);
        let lhs = commutator(&pa.scaled(&lam).plus(&pd), &pb, &c, &conv)?;
        let rhs = commutator(&pa, &pb, &c, &conv)?.scaled(&lam).plus(&commutator(&pd, &pb, &c, &conv)?);
        if w_bil.is_none() && lhs != rhs {
            w_bil = Some(format!("sample {k}: linearity in the first slot fails"));
        }
    }
    r.push(Check::from_result("cross_product", "[p, q] = p × q", w_cross).with_note(format!("{samples} random pairs")));
    r.push(Check::from_result("alternating", "[v, v] = 0", w_alt));
    r.push(Check::from_result("bilinear", "[λp + s, q] = λ[p, q] + [s, q]", w_bil));
    Ok(r)
}

/// The graph with `X → 1`, `X → g` and loops at `1` and `g`; the arrows out of `X`
/// weigh ½ each when `weighted`, otherwise every arrow weighs 1.
pub fn xg_walk_graph(weighted: bool) -> Result<WeightedDigraph> {
    let w = if weighted { Q::new(1.into(), 2.into()) } else { q(1) };
    WeightedDigraph::from_edges(&["1", "X", "g"], &[("X", "g", w.clone()), ("X", "1", w), ("1", "1", q(1)), ("g", "g", q(1))])
}

/// `(aX + bg + c1)[Δ](a′X + b′g + c′1)` under the path convention, with symbolic coefficients.
pub fn path_convention_example() -> Result<(PointerPoly<NcPoly>, PointerPoly<NcPoly>)> {
    let c = to_markov_lcoalgebra_without_counits(&xg_walk_graph(false)?, ProbabilityConvention::UnitWeights, false)?;
    let l = NcPoly::letter;
    let p = PointerPoly::from_pairs(c.basis.clone(), [("X", l("a")), ("g", l("b")), ("1", l("c"))])?;
    let r = PointerPoly::from_pairs(c.basis.clone(), [("X", l("a'")), ("g", l("b'")), ("1", l("c'"))])?;
    let got = pointer_product(&p, &r, &c, &PlacementConvention::Path)?;
    let want = PointerPoly::from_pairs(c.basis.clone(), [("g", NcPoly::parse("a*b' + b*b'")), ("1", NcPoly::parse("a*c' + c*c'"))])?;
    Ok((got, want))
}

/// A named coproduct with its placement convention.
#[derive(Clone, Debug)]
pub struct MutationState {
    pub name: String,
    pub coalgebra: LCoalgebra<Q>,
    pub convention: PlacementConvention,
}

fn abcd() -> Result<Arc<Basis>> {
    Ok(Arc::new(Basis::new(["a", "b", "c", "d"])?))
}

fn table_state(name: &str, pairs: &[(&str, &str, &str)], convention: impl Fn(&Basis) -> Result<PlacementConvention>) -> Result<MutationState> {
    let basis = abcd()?;
    let mut images = vec![Vect::<Q>::zero(2); basis.len()];
    for (x, a, b) in pairs {
        images[basis.sym(x)? as usize].add_term(Word::from_slice(&[basis.sym(a)?, basis.sym(b)?]), q(1));
    }
    let images = Arc::new(images);
    let delta = LinMap::on_symbols(2, move |s| Ok(images[s as usize].clone()));
    let convention = convention(&basis)?;
    Ok(MutationState { name: name.to_string(), coalgebra: LCoalgebra::degenerate(name, basis, delta, None), convention })
}

impl MutationState {
    /// `H2` (the quantum-group matrix coalgebra), `diamond_<p>` (a loop at pointer `p`)
    /// or `triangle` (`a → b → c → a` with the wedge shift, `d` fixed).
    pub fn named(name: &str) -> Result<Self> {
        match name {
            "H2" | "sl2q" => {
                let c = catalog("sl2q")?.coalgebra;
                Ok(MutationState { name: "H2".into(), coalgebra: c, convention: PlacementConvention::Static })
            }
            "triangle" => table_state("triangle", &[("a", "a", "b"), ("b", "b", "c"), ("c", "c", "a")], |b| {
                PlacementConvention::shifted(b, &[("a", "c"), ("b", "a"), ("c", "b")])
            }),
            other => match other.strip_prefix("diamond_") {
                Some(p) if ["a", "b", "c", "d"].contains(&p) => table_state(other, &[(p, p, p)], |_| Ok(PlacementConvention::Static)),
                _ => Err(Error::UnknownName(other.to_string())),
            },
        }
    }

    pub fn square(&self, z: &PointerPoly<Q>) -> Result<PointerPoly<Q>> {
        pointer_product(z, z, &self.coalgebra, &self.convention)
    }

    /// Whether `G → G⊗² → G⊗³` is a complex, with the ranks that measure exactness.
    pub fn complex_check(&self) -> Result<Check> {
        let c = &self.coalgebra;
        let d1 = &c.right;
        let d2 = c.right.padded(0, 1).sub(&c.right.padded(1, 0))?;
        let comp = d2.after(d1)?;
        let zero = LinMap::zero(1, 3);
        let w = c.compare(&comp, &zero, &c.words())?;
        let rank1 = rank_on(d1, &c.words())?;
        let ker2 = kernel_on(&d2, &all_words(c.basis.len(), 2))?.len();
        let note = format!("rank Δ = {rank1}, dim ker(Δ⊗id − id⊗Δ) = {ker2}");
        Ok(Check::from_result(format!("complex[{}]", self.name), "(Δ⊗id − id⊗Δ)Δ = 0", w).with_note(note).informational())
    }
}

/// A matrix value `[[a, b], [c, d]]` as a pointer polynomial over `a, b, c, d`.
pub fn matrix_value(m: [[i64; 2]; 2]) -> Result<PointerPoly<Q>> {
    PointerPoly::from_pairs(abcd()?, [("a", q(m[0][0])), ("b", q(m[0][1])), ("c", q(m[1][0])), ("d", q(m[1][1]))])
}

pub fn value_rows(p: &PointerPoly<Q>) -> Result<[[Q; 2]; 2]> {
    let g = |n: &str| -> Result<Q> { Ok(p.coeff(n)?.cloned().unwrap_or_else(|| q(0))) };
    Ok([[g("a")?, g("b")?], [g("c")?, g("d")?]])
}

/// Steps of a mutation run: the state used and the value after squaring under it.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub states: Vec<String>,
    pub values: Vec<PointerPoly<Q>>,
}

impl Trajectory {
    pub fn to_json(&self) -> Result<Value> {
        let steps = self
            .states
            .iter()
            .zip(&self.values)
            .map(|(s, v)| {
                let rows = value_rows(v)?;
                Ok(json!({"state": s, "value": rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()}))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Value::Array(steps))
    }
}

/// States drawn i.i.d. with exact probabilities; each step squares the current value.
#[derive(Clone, Debug)]
pub struct MutationProcess {
    pub states: Vec<MutationState>,
    pub probs: Vec<Q>,
    pub seed: u64,
}

impl MutationProcess {
    pub fn new(states: Vec<MutationState>, probs: Vec<Q>, seed: u64) -> Result<Self> {
        if states.is_empty() || states.len() != probs.len() {
            return Err(Error::Argument("need one probability per state".into()));
        }
        if probs.iter().any(|p| *p < q(0)) || probs.iter().cloned().sum::<Q>() != q(1) {
            return Err(Error::Validation("state probabilities must be nonnegative and sum to 1".into()));
        }
        Ok(MutationProcess { states, probs, seed })
    }

    /// `P(triangle) = ε/2`, `P(diamond_a) = ε/2`, `P(H2) = 1 − ε`.
    pub fn standard(eps: Q, seed: u64) -> Result<Self> {
        let half = &eps / q(2);
        MutationProcess::new(
            vec![MutationState::named("H2")?, MutationState::named("diamond_a")?, MutationState::named("triangle")?],
            vec![q(1) - &eps, half.clone(), half],
            seed,
        )
    }

    /// `{"states": [...], "probs": ["1/10", ...], "seed": int, "steps": int}`; returns the process and step count.
    pub fn from_json(v: &Value) -> Result<(Self, usize)> {
        let states = v
            .get("states")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing 'states'".into()))?
            .iter()
            .map(|s| s.as_str().ok_or_else(|| Error::Parse("state names must be strings".into())).and_then(MutationState::named))
            .collect::<Result<Vec<_>>>()?;
        let probs = v
            .get("probs")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing 'probs'".into()))?
            .iter()
            .map(|p| match p {
                Value::String(s) => parse_q(s),
                Value::Number(n) if n.is_i64() => Ok(q(n.as_i64().unwrap_or_default())),
                other => Err(Error::Parse(format!("probability {other} is not a fraction string"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let seed = v.get("seed").and_then(Value::as_u64).unwrap_or(0);
        let steps = v.get("steps").and_then(Value::as_u64).unwrap_or(1) as usize;
        Ok((MutationProcess::new(states, probs, seed)?, steps))
    }

    fn draw<R: Rng>(&self, rng: &mut R) -> usize {
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        for (i, p) in self.probs.iter().enumerate() {
            acc += num_traits::ToPrimitive::to_f64(p).unwrap_or(0.0);
            if u < acc {
                return i;
            }
        }
        self.probs.len() - 1
    }

    /// Draws `steps` states and squares the value under each.
    pub fn simulate(&self, initial: &PointerPoly<Q>, steps: usize) -> Result<Trajectory> {
        if steps == 0 {
            return Err(Error::Argument("steps must be at least 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let seq: Vec<&MutationState> = (0..steps).map(|_| &self.states[self.draw(&mut rng)]).collect();
        run_sequence(&seq, initial)
    }

    /// Empirical `P(T = t)` for `t = 1..=max_t`, where `T` is the first step drawing `target`.
    pub fn first_time_distribution(&self, target: &str, runs: usize, max_t: usize) -> Result<Vec<f64>> {
        let idx = self
            .states
            .iter()
            .position(|s| s.name == target)
            .ok_or_else(|| Error::UnknownName(target.to_string()))?;
        if self.probs[idx] == q(0) {
            return Err(Error::Precondition(format!("state '{target}' has probability 0")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut hist = vec![0usize; max_t];
        for _ in 0..runs {
            let mut t = 1;
            while self.draw(&mut rng) != idx {
                t += 1;
            }
            if t <= max_t {
                hist[t - 1] += 1;
            }
        }
        Ok(hist.into_iter().map(|h| h as f64 / runs as f64).collect())
    }

    /// `P(T = t) = (1 − p)^{t−1} p` for the target's probability `p`.
    pub fn first_time_law(&self, target: &str, t: usize) -> Result<Q> {
        let idx = self
            .states
            .iter()
            .position(|s| s.name == target)
            .ok_or_else(|| Error::UnknownName(target.to_string()))?;
        let p = &self.probs[idx];
        let mut v = p.clone();
        for _ in 1..t {
            v *= q(1) - p;
        }
        Ok(v)
    }
}

/// Squares `initial` successively under the given states.
pub fn run_sequence(states: &[&MutationState], initial: &PointerPoly<Q>) -> Result<Trajectory> {
    let mut z = initial.clone();
    let mut out = Trajectory { states: Vec::new(), values: Vec::new() };
    for s in states {
        z = s.square(&z)?;
        out.states.push(s.name.clone());
        out.values.push(z.clone());
    }
    Ok(out)
}

/// The value of `z` projected on the pointer `p` and squared: `◇_p` acts as `z ↦ z_p² ⊲ p`.
pub fn projection_check(state: &MutationState, z: &PointerPoly<Q>) -> Result<Check> {
    let p = match state.name.strip_prefix("diamond_") {
        Some(p) => p,
        None => return Err(Error::Argument(format!("'{}' is not a loop state", state.name))),
    };
    let got = state.square(z)?;
    let zp = z.coeff(p)?.cloned().unwrap_or_else(|| q(0));
    let want = PointerPoly::from_pairs(z.basis.clone(), [(p, &zp * &zp)])?;
    Ok(Check::from_result(
        format!("projection[{p}]"),
        "◇ step = projection on the loop pointer",
        (got != want).then(|| format!("{} vs {}", got.text(), want.text())),
    ))
}
