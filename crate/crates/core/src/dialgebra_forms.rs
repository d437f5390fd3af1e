//! Noncommutative curvature forms `a₀ω(a₁,a₂)…ω(a_{2k−1},a_{2k})a_{2k+1}` with the ⋆
//! product and differential, the dialgebra `(⊣, ⊢)` they carry, conversions between
//! pre-dialgebras and dendriform algebras, the Leibnitz bracket and the trace `Tr`.
//!
//! A form word of degree `k` is stored flat as its `2k+2` symbols; the curvature slots
//! are the pairs at positions `(1,2), (3,4), …`. A word with a slot `ω(I,I)` is zero.
//! Degree-0 forms are stored as `(a, I)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::ito_calculus::{classify_map, curvature, Cochain, LinOp, MapClass};
use crate::algebra_core::StructAlgebra;
use crate::report::{AxiomReport, Check};
use crate::scalar::{sign, Scalar};
use crate::tensor_core::{Basis, LinMap, Sym, Vect, Word};

/// Degree of a flat form word.
pub fn word_degree(w: &[Sym]) -> usize {
    (w.len() - 2) / 2
}

/// A linear combination of form words, possibly of mixed degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form<S> {
    unit: Sym,
    terms: BTreeMap<Word, S>,
}

impl<S: Scalar> Form<S> {
    pub fn zero(unit: Sym) -> Self {
        Form { unit, terms: BTreeMap::new() }
    }

    /// The unit `I` as a degree-0 form.
    pub fn identity(unit: Sym) -> Self {
        Form::word(unit, &[unit, unit]).expect("valid word")
    }

    /// A single word; its length must be even and at least 2.
    pub fn word(unit: Sym, w: &[Sym]) -> Result<Self> {
        let mut f = Form::zero(unit);
        f.add_term(w, S::one())?;
        Ok(f)
    }

    /// The degree-0 form `a`.
    pub fn element(unit: Sym, a: Sym) -> Self {
        Form::word(unit, &[a, unit]).expect("valid word")
    }

    /// `a₀ ω(a₁,a₂) … a_{2k+1}` from its head, slots and tail.
    pub fn from_parts(unit: Sym, head: Sym, slots: &[(Sym, Sym)], tail: Sym) -> Self {
        let mut w = Word::new();
        w.push(head);
        for &(a, b) in slots {
            w.push(a);
            w.push(b);
        }
        w.push(tail);
        Form::word(unit, &w).expect("valid word")
    }

    pub fn unit(&self) -> Sym {
        self.unit
    }

    fn vanishes(&self, w: &[Sym]) -> bool {
        w[1..w.len() - 1].chunks(2).any(|p| p[0] == self.unit && p[1] == self.unit)
    }

    pub fn add_term(&mut self, w: &[Sym], c: S) -> Result<()> {
        if w.len() < 2 || !w.len().is_multiple_of(2) {
            return Err(Error::Argument(format!("form words have even length >= 2, got {}", w.len())));
        }
        if c.is_zero() || self.vanishes(w) {
            return Ok(());
        }
        let key = Word::from_slice(w);
        let entry = self.terms.entry(key.clone()).or_insert_with(S::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degrees present, in increasing order.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|w| word_degree(w)).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// The degree if the form is homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        match self.degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    pub fn add(&self, other: &Form<S>) -> Form<S> {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w, c.clone()).expect("valid word");
        }
        out
    }

    pub fn sub(&self, other: &Form<S>) -> Form<S> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &S) -> Form<S> {
        let mut out = Form::zero(self.unit);
        for (w, d) in self.terms() {
            out.add_term(w, d.clone() * c.clone()).expect("valid word");
        }
        out
    }

    pub fn neg(&self) -> Form<S> {
        self.scale(&-S::one())
    }

    /// Applies a word-level bilinear rule and extends it.
    fn bilinear(&self, other: &Form<S>, mut f: impl FnMut(&[Sym], &[Sym]) -> Result<Form<S>>) -> Result<Form<S>> {
        let mut out = Form::zero(self.unit);
        for (a, c) in self.terms() {
            for (b, d) in other.terms() {
                let p = f(a, b)?.scale(&(c.clone() * d.clone()));
                out = out.add(&p);
            }
        }
        Ok(out)
    }

    fn linear(&self, mut f: impl FnMut(&[Sym]) -> Form<S>) -> Form<S> {
        let mut out = Form::zero(self.unit);
        for (a, c) in self.terms() {
            out = out.add(&f(a).scale(c));
        }
        out
    }

    fn is_identity_word(&self, w: &[Sym]) -> bool {
        w.len() == 2 && w[0] == self.unit && w[1] == self.unit
    }

    /// Degree-0 operands other than `I` are only allowed against `I`.
    fn check_operands(&self, a: &[Sym], b: &[Sym]) -> Result<()> {
        let bad = |w: &[Sym]| w.len() == 2 && !self.is_identity_word(w);
        if (bad(a) && !self.is_identity_word(b)) || (bad(b) && !self.is_identity_word(a)) {
            return Err(Error::UndefinedProduct("⋆ with a degree-0 form other than I".into()));
        }
        Ok(())
    }

    /// `x ⋆ y`: the tail of `x` and the head of `y` become a new curvature slot.
    pub fn star(&self, other: &Form<S>) -> Result<Form<S>> {
        self.bilinear(other, |a, b| {
            self.check_operands(a, b)?;
            let mut w = Word::from_slice(a);
            w.extend_from_slice(b);
            Form::word(self.unit, &w)
        })
    }

    /// `d(x) = I ⋆ x + (−1)^k x ⋆ I` on words of degree `k`, i.e.
    /// `ω(I,a₀)…a_{2k+1} + (−1)^k a₀…ω(a_{2k+1},I)`.
    pub fn d(&self) -> Form<S> {
        let u = self.unit;
        self.linear(|a| {
            let mut left = Word::from_slice(&[u, u]);
            left.extend_from_slice(a);
            let mut right = Word::from_slice(a);
            right.extend_from_slice(&[u, u]);
            let mut f = Form::zero(u);
            f.add_term(&left, S::one()).expect("valid word");
            f.add_term(&right, sign(word_degree(a))).expect("valid word");
            f
        })
    }

    /// `x ⊣ y = −x ⋆ d(y)`.
    pub fn left_op(&self, other: &Form<S>) -> Result<Form<S>> {
        Ok(self.star(&other.d())?.neg())
    }

    /// `x ⊢ y = (−1)^{deg x + 1} d(x) ⋆ y`.
    pub fn right_op(&self, other: &Form<S>) -> Result<Form<S>> {
        let mut out = Form::zero(self.unit);
        for (a, c) in self.terms() {
            let x = Form::word(self.unit, a)?.scale(c);
            let s: S = sign(word_degree(a) + 1);
            out = out.add(&x.d().star(other)?.scale(&s));
        }
        Ok(out)
    }

    /// `[x, y]_L = x ⊣ y − y ⊢ x`.
    pub fn leibnitz_bracket(&self, other: &Form<S>) -> Result<Form<S>> {
        Ok(self.left_op(other)?.sub(&other.right_op(self)?))
    }

    pub fn display<'a>(&'a self, basis: &'a Basis) -> FormDisplay<'a, S> {
        FormDisplay { f: self, basis }
    }
}

pub struct FormDisplay<'a, S> {
    f: &'a Form<S>,
    basis: &'a Basis,
}

impl<S: Scalar> fmt::Display for FormDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.f.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.f.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({})·{}", c.to_text(), self.basis.name(w[0]))?;
            for p in w[1..w.len() - 1].chunks(2) {
                write!(f, "ω({},{})", self.basis.name(p[0]), self.basis.name(p[1]))?;
            }
            write!(f, "{}", self.basis.name(w[w.len() - 1]))?;
        }
        Ok(())
    }
}

/// All form words of degree exactly `k` over `dim` symbols (degree 0 gives `(a, I)`).
pub fn form_words<S: Scalar>(dim: usize, unit: Sym, k: usize) -> Vec<Form<S>> {
    if k == 0 {
        return (0..dim as Sym).map(|a| Form::element(unit, a)).collect();
    }
    crate::tensor_core::all_words(dim, 2 * k + 2)
        .into_iter()
        .map(|w| Form::word(unit, &w).expect("valid word"))
        .filter(|f| !f.is_zero())
        .collect()
}

/// A random homogeneous form with up to three terms and small integer coefficients.
pub fn random_form<S: Scalar, R: Rng>(rng: &mut R, dim: usize, unit: Sym, k: usize) -> Form<S> {
    let mut f = Form::zero(unit);
    let n_terms = rng.gen_range(1..=3);
    for _ in 0..n_terms {
        let w: Word = if k == 0 {
            Word::from_slice(&[unit, unit])
        } else {
            (0..2 * k + 2).map(|_| rng.gen_range(0..dim as Sym)).collect()
        };
        let c = S::from_i64(rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 });
        f.add_term(&w, c).expect("valid word");
    }
    f
}

/// Something that can stand in for an element of a space with two binary operations.
pub trait Linear: Clone + PartialEq + fmt::Debug {
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn vanishes(&self) -> bool;
}

impl<S: Scalar> Linear for Form<S> {
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
}

impl<S: Scalar> Linear for Vect<S> {
    fn plus(&self, other: &Self) -> Self {
        self.add(other).expect("same degree")
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other).expect("same degree")
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
}

type BinOp<E> = Arc<dyn Fn(&E, &E) -> Result<E> + Send + Sync>;

/// The kind of a pair of operations: `(⊣, ⊢)` or `(≺, ≻)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpLabels {
    Dialgebra,
    Dendriform,
}

impl OpLabels {
    pub fn symbols(self) -> (&'static str, &'static str) {
        match self {
            OpLabels::Dialgebra => ("⊣", "⊢"),
            OpLabels::Dendriform => ("≺", "≻"),
        }
    }
}

/// Two bilinear operations on an element type.
#[derive(Clone)]
pub struct OpPair<E> {
    pub labels: OpLabels,
    pub left: BinOp<E>,
    pub right: BinOp<E>,
}

impl<E: Linear + 'static> OpPair<E> {
    pub fn new(
        labels: OpLabels,
        left: impl Fn(&E, &E) -> Result<E> + Send + Sync + 'static,
        right: impl Fn(&E, &E) -> Result<E> + Send + Sync + 'static,
    ) -> Self {
        OpPair { labels, left: Arc::new(left), right: Arc::new(right) }
    }

    pub fn l(&self, a: &E, b: &E) -> Result<E> {
        (self.left)(a, b)
    }

    pub fn r(&self, a: &E, b: &E) -> Result<E> {
        (self.right)(a, b)
    }

    /// `a * b = a ≺ b + a ≻ b` (or `⊣ + ⊢`).
    pub fn sum(&self, a: &E, b: &E) -> Result<E> {
        Ok(self.l(a, b)?.plus(&self.r(a, b)?))
    }
}

/// The `(⊣, ⊢)` operations of the forms algebra.
pub fn forms_dialgebra<S: Scalar>() -> OpPair<Form<S>> {
    OpPair::new(OpLabels::Dialgebra, |a: &Form<S>, b: &Form<S>| a.left_op(b), |a: &Form<S>, b: &Form<S>| a.right_op(b))
}

fn describe<E: fmt::Debug>(t: &[&E]) -> String {
    let parts: Vec<String> = t.iter().map(|e| format!("{e:?}")).collect();
    format!("on ({})", parts.join(", "))
}

type TripleLaw<'a, E> = (&'static str, &'static str, Box<dyn Fn(&E, &E, &E) -> Result<(E, E)> + 'a>);

fn check_triples<E: Linear>(laws: Vec<TripleLaw<'_, E>>, triples: &[(E, E, E)], show: &dyn Fn(&E, &E, &E) -> String) -> Result<AxiomReport> {
    let mut r = AxiomReport::new();
    for (name, anchor, law) in laws {
        let mut bad = None;
        for (a, b, c) in triples {
            let (lhs, rhs) = law(a, b, c)?;
            if lhs != rhs {
                bad = Some(show(a, b, c));
                break;
            }
        }
        r.push(Check::from_result(name, anchor, bad));
    }
    Ok(r)
}

fn default_show<E: fmt::Debug>(a: &E, b: &E, c: &E) -> String {
    describe(&[a, b, c])
}

/// Associativity of both operations and the three dialgebra axioms.
pub fn dialgebra_laws<'a, E: Linear + 'static>(ops: &'a OpPair<E>) -> Vec<TripleLaw<'a, E>> {
    vec![
        ("left_associative", "x ⊣ (y ⊣ z) = (x ⊣ y) ⊣ z", Box::new(move |x: &E, y: &E, z: &E| Ok((ops.l(x, &ops.l(y, z)?)?, ops.l(&ops.l(x, y)?, z)?)))),
        ("right_associative", "x ⊢ (y ⊢ z) = (x ⊢ y) ⊢ z", Box::new(move |x: &E, y: &E, z: &E| Ok((ops.r(x, &ops.r(y, z)?)?, ops.r(&ops.r(x, y)?, z)?)))),
        ("dialgebra_axiom_1", "x ⊣ (y ⊣ z) = x ⊣ (y ⊢ z)", Box::new(move |x: &E, y: &E, z: &E| Ok((ops.l(x, &ops.l(y, z)?)?, ops.l(x, &ops.r(y, z)?)?)))),
        ("dialgebra_axiom_2", "(x ⊢ y) ⊣ z = x ⊢ (y ⊣ z)", Box::new(move |x: &E, y: &E, z: &E| Ok((ops.l(&ops.r(x, y)?, z)?, ops.r(x, &ops.l(y, z)?)?)))),
        ("dialgebra_axiom_3", "(x ⊣ y) ⊢ z = (x ⊢ y) ⊢ z", Box::new(move |x: &E, y: &E, z: &E| Ok((ops.r(&ops.l(x, y)?, z)?, ops.r(&ops.r(x, y)?, z)?)))),
    ]
}

/// The three dendriform axioms and associativity of `a * b = a ≺ b + a ≻ b`.
pub fn dendriform_laws<'a, E: Linear + 'static>(ops: &'a OpPair<E>) -> Vec<TripleLaw<'a, E>> {
    vec![
        (
            "dendriform_axiom_1",
            "(a ≺ b) ≺ c = a ≺ (b ≺ c) + a ≺ (b ≻ c)",
            Box::new(move |a: &E, b: &E, c: &E| Ok((ops.l(&ops.l(a, b)?, c)?, ops.l(a, &ops.l(b, c)?)?.plus(&ops.l(a, &ops.r(b, c)?)?)))),
        ),
        (
            "dendriform_axiom_2",
            "(a ≻ b) ≺ c = a ≻ (b ≺ c)",
            Box::new(move |a: &E, b: &E, c: &E| Ok((ops.l(&ops.r(a, b)?, c)?, ops.r(a, &ops.l(b, c)?)?))),
        ),
        (
            "dendriform_axiom_3",
            "(a ≺ b) ≻ c + (a ≻ b) ≻ c = a ≻ (b ≻ c)",
            Box::new(move |a: &E, b: &E, c: &E| Ok((ops.r(&ops.l(a, b)?, c)?.plus(&ops.r(&ops.r(a, b)?, c)?), ops.r(a, &ops.r(b, c)?)?))),
        ),
        (
            "sum_associative",
            "(a * b) * c = a * (b * c)",
            Box::new(move |a: &E, b: &E, c: &E| Ok((ops.sum(&ops.sum(a, b)?, c)?, ops.sum(a, &ops.sum(b, c)?)?))),
        ),
    ]
}

fn select<'a, E>(laws: Vec<TripleLaw<'a, E>>, names: &[&str]) -> Vec<TripleLaw<'a, E>> {
    laws.into_iter().filter(|(n, _, _)| names.contains(n)).collect()
}

/// Checks the dialgebra axioms on the given triples.
pub fn check_dialgebra<E: Linear + 'static>(ops: &OpPair<E>, triples: &[(E, E, E)]) -> Result<AxiomReport> {
    check_triples(dialgebra_laws(ops), triples, &default_show)
}

/// Checks the dendriform axioms on the given triples.
pub fn check_dendriform<E: Linear + 'static>(ops: &OpPair<E>, triples: &[(E, E, E)]) -> Result<AxiomReport> {
    check_triples(dendriform_laws(ops), triples, &default_show)
}

/// Conversions between pre-dialgebras and dendriform algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConversionKind {
    /// `≺ = ⊣`, `≻ = ⊢ − ⊣`.
    TypeI,
    /// `≻ = ⊢`, `≺ = ⊣ − ⊢`.
    TypeIII,
    /// From a dendriform algebra with `≺` associative: `⊣ = ≺`, `⊢ = ≺ + ≻`.
    FromDendriformAssocLeft,
    /// From a dendriform algebra with `≻` associative: `⊢ = ≻`, `⊣ = ≺ + ≻`.
    FromDendriformAssocRight,
}

fn input_laws<'a, E: Linear + 'static>(ops: &'a OpPair<E>, kind: ConversionKind) -> Vec<TripleLaw<'a, E>> {
    match kind {
        ConversionKind::TypeI => select(dialgebra_laws(ops), &["left_associative", "right_associative", "dialgebra_axiom_1", "dialgebra_axiom_2"]),
        ConversionKind::TypeIII => select(dialgebra_laws(ops), &["left_associative", "right_associative", "dialgebra_axiom_2", "dialgebra_axiom_3"]),
        ConversionKind::FromDendriformAssocLeft => {
            let mut l = select(dendriform_laws(ops), &["dendriform_axiom_1", "dendriform_axiom_2", "dendriform_axiom_3"]);
            l.push(("left_associative", "(a ≺ b) ≺ c = a ≺ (b ≺ c)", Box::new(move |a: &E, b: &E, c: &E| Ok((ops.l(&ops.l(a, b)?, c)?, ops.l(a, &ops.l(b, c)?)?)))));
            l
        }
        ConversionKind::FromDendriformAssocRight => {
            let mut l = select(dendriform_laws(ops), &["dendriform_axiom_1", "dendriform_axiom_2", "dendriform_axiom_3"]);
            l.push(("right_associative", "(a ≻ b) ≻ c = a ≻ (b ≻ c)", Box::new(move |a: &E, b: &E, c: &E| Ok((ops.r(&ops.r(a, b)?, c)?, ops.r(a, &ops.r(b, c)?)?)))));
            l
        }
    }
}

/// Applies a conversion without checking anything.
pub fn convert_ops<E: Linear + 'static>(ops: &OpPair<E>, kind: ConversionKind) -> OpPair<E> {
    let (l, r) = (ops.left.clone(), ops.right.clone());
    match kind {
        ConversionKind::TypeI => {
            let l2 = l.clone();
            OpPair::new(OpLabels::Dendriform, move |a, b| l(a, b), move |a, b| Ok(r(a, b)?.minus(&l2(a, b)?)))
        }
        ConversionKind::TypeIII => {
            let r2 = r.clone();
            OpPair::new(OpLabels::Dendriform, move |a, b| Ok(l(a, b)?.minus(&r2(a, b)?)), move |a, b| r(a, b))
        }
        ConversionKind::FromDendriformAssocLeft => {
            let l2 = l.clone();
            OpPair::new(OpLabels::Dialgebra, move |a, b| l(a, b), move |a, b| Ok(l2(a, b)?.plus(&r(a, b)?)))
        }
        ConversionKind::FromDendriformAssocRight => {
            let r2 = r.clone();
            OpPair::new(OpLabels::Dialgebra, move |a, b| Ok(l(a, b)?.plus(&r2(a, b)?)), move |a, b| r(a, b))
        }
    }
}

/// Verifies the input axioms for `kind` (an error names the first failing axiom and
/// triple), converts, and reports the output axioms on the same triples.
pub fn dendriform_convert<E: Linear + 'static>(ops: &OpPair<E>, kind: ConversionKind, triples: &[(E, E, E)]) -> Result<(OpPair<E>, AxiomReport)> {
    let pre = check_triples(input_laws(ops, kind), triples, &default_show)?;
    if let Some(c) = pre.failures().next() {
        return Err(Error::Precondition(format!("{} fails {}", c.name, c.witness.clone().unwrap_or_default())));
    }
    let out = convert_ops(ops, kind);
    let report = match kind {
        ConversionKind::TypeI | ConversionKind::TypeIII => check_dendriform(&out, triples)?,
        ConversionKind::FromDendriformAssocLeft => check_triples(input_laws(&out, ConversionKind::TypeI), triples, &default_show)?,
        ConversionKind::FromDendriformAssocRight => check_triples(input_laws(&out, ConversionKind::TypeIII), triples, &default_show)?,
    };
    Ok((out, report))
}

/// A pair of bilinear operations on a finite-dimensional space, as structure constants.
#[derive(Clone, Debug, PartialEq)]
pub struct BilinearOpTable<S> {
    pub dim: usize,
    pub labels: OpLabels,
    left: Vec<Vect<S>>,
    right: Vec<Vect<S>>,
}

impl<S: Scalar> BilinearOpTable<S> {
    pub fn from_fn(dim: usize, labels: OpLabels, mut left: impl FnMut(Sym, Sym) -> Vect<S>, mut right: impl FnMut(Sym, Sym) -> Vect<S>) -> Result<Self> {
        let mut l = Vec::with_capacity(dim * dim);
        let mut r = Vec::with_capacity(dim * dim);
        for a in 0..dim as Sym {
            for b in 0..dim as Sym {
                let (x, y) = (left(a, b), right(a, b));
                x.check_degree(1)?;
                y.check_degree(1)?;
                l.push(x);
                r.push(y);
            }
        }
        Ok(BilinearOpTable { dim, labels, left: l, right: r })
    }

    /// The trivial dialgebra `a ⊣ b = ab = a ⊢ b` of an associative algebra.
    pub fn trivial(alg: &StructAlgebra<S>) -> Result<Self> {
        BilinearOpTable::from_fn(alg.dim(), OpLabels::Dialgebra, |a, b| alg.mul_sym(a, b).clone(), |a, b| alg.mul_sym(a, b).clone())
    }

    fn apply(table: &[Vect<S>], dim: usize, x: &Vect<S>, y: &Vect<S>) -> Result<Vect<S>> {
        let mut out = Vect::zero(1);
        for (a, c) in x.terms() {
            for (b, d) in y.terms() {
                out.add_scaled(&table[a[0] as usize * dim + b[0] as usize], &(c.clone() * d.clone()))?;
            }
        }
        Ok(out)
    }

    pub fn ops(&self) -> OpPair<Vect<S>> {
        let (l, r, dim) = (self.left.clone(), self.right.clone(), self.dim);
        OpPair::new(self.labels, move |x, y| Self::apply(&l, dim, x, y), move |x, y| Self::apply(&r, dim, x, y))
    }

    /// Tabulates an operation pair on basis symbols.
    pub fn from_ops(dim: usize, ops: &OpPair<Vect<S>>) -> Result<Self> {
        let mut l = Vec::new();
        let mut r = Vec::new();
        for a in 0..dim as Sym {
            for b in 0..dim as Sym {
                l.push(ops.l(&Vect::sym(a), &Vect::sym(b))?);
                r.push(ops.r(&Vect::sym(a), &Vect::sym(b))?);
            }
        }
        Ok(BilinearOpTable { dim, labels: ops.labels, left: l, right: r })
    }

    /// All basis triples.
    pub fn basis_triples(&self) -> Vec<(Vect<S>, Vect<S>, Vect<S>)> {
        let n = self.dim as Sym;
        let mut t = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    t.push((Vect::sym(a), Vect::sym(b), Vect::sym(c)));
                }
            }
        }
        t
    }

    /// [`dendriform_convert`] on all basis triples, returning a table.
    pub fn convert(&self, kind: ConversionKind) -> Result<(BilinearOpTable<S>, AxiomReport)> {
        let (ops, r) = dendriform_convert(&self.ops(), kind, &self.basis_triples())?;
        Ok((BilinearOpTable::from_ops(self.dim, &ops)?, r))
    }
}

/// The inverse conversion of `kind`.
pub fn inverse_kind(kind: ConversionKind) -> ConversionKind {
    match kind {
        ConversionKind::TypeI => ConversionKind::FromDendriformAssocLeft,
        ConversionKind::TypeIII => ConversionKind::FromDendriformAssocRight,
        ConversionKind::FromDendriformAssocLeft => ConversionKind::TypeI,
        ConversionKind::FromDendriformAssocRight => ConversionKind::TypeIII,
    }
}

/// Leibnitz identity, the three bracket bullets and the closed form of `[x, y]_L`.
pub fn leibnitz_checks<S: Scalar>(triples: &[(Form<S>, Form<S>, Form<S>)]) -> Result<AxiomReport> {
    let br = |x: &Form<S>, y: &Form<S>| x.leibnitz_bracket(y);
    let laws: Vec<TripleLaw<'_, Form<S>>> = vec![
        (
            "leibnitz_identity",
            "[[x,y],z] = [[x,z],y] + [x,[y,z]]",
            Box::new(move |x, y, z| Ok((br(&br(x, y)?, z)?, br(&br(x, z)?, y)?.add(&br(x, &br(y, z)?)?)))),
        ),
        (
            "bracket_left_op",
            "[x, y ⊣ z]_L = y ⊢ [x,z]_L + [x,y]_L ⊣ z",
            Box::new(move |x, y, z| Ok((br(x, &y.left_op(z)?)?, y.right_op(&br(x, z)?)?.add(&br(x, y)?.left_op(z)?)))),
        ),
        (
            "bracket_left_right_op",
            "[x, y ⊣ z]_L = [x, y ⊢ z]_L",
            Box::new(move |x, y, z| Ok((br(x, &y.left_op(z)?)?, br(x, &y.right_op(z)?)?))),
        ),
        (
            "bracket_of_left_op",
            "[x ⊣ y, z]_L = x ⊣ [y,z]_L + [x,z]_L ⊣ y",
            Box::new(move |x, y, z| Ok((br(&x.left_op(y)?, z)?, x.left_op(&br(y, z)?)?.add(&br(x, z)?.left_op(y)?)))),
        ),
        (
            "bracket_of_right_op",
            "[x ⊢ y, z]_L = x ⊢ [y,z]_L + [x,z]_L ⊢ y",
            Box::new(move |x, y, z| Ok((br(&x.right_op(y)?, z)?, x.right_op(&br(y, z)?)?.add(&br(x, z)?.right_op(y)?)))),
        ),
        (
            "bracket_closed_form",
            "[x,y]_L = (−1)^y d(y) ⋆ x − x ⋆ d(y)",
            Box::new(move |x, y, _| {
                let mut rhs = x.star(&y.d())?.neg();
                for (w, c) in y.terms() {
                    let yw = Form::word(y.unit(), w)?.scale(c);
                    rhs = rhs.add(&yw.d().star(x)?.scale(&sign(word_degree(w))));
                }
                Ok((br(x, y)?, rhs))
            }),
        ),
    ];
    check_triples(laws, triples, &default_show)
}

/// ⋆ associativity, `d² = 0`, the graded rule for `d(x ⋆ y)`, the dialgebra axioms,
/// the nilpotency remark and the `d`-relations on the given triples.
pub fn forms_report<S: Scalar>(triples: &[(Form<S>, Form<S>, Form<S>)]) -> Result<AxiomReport> {
    let ops = forms_dialgebra::<S>();
    let mut r = AxiomReport::new();
    let graded_star = |x: &Form<S>, y: &Form<S>| -> Result<Form<S>> {
        let mut out = Form::zero(x.unit());
        for (w, c) in x.terms() {
            let xw = Form::word(x.unit(), w)?.scale(c);
            out = out.add(&xw.star(&y.d())?.scale(&sign(word_degree(w) + 1)));
        }
        Ok(out)
    };
    let laws: Vec<TripleLaw<'_, Form<S>>> = vec![
        ("star_associative", "(x ⋆ y) ⋆ z = x ⋆ (y ⋆ z)", Box::new(|x, y, z| Ok((x.star(y)?.star(z)?, x.star(&y.star(z)?)?)))),
        ("d_squared_zero", "d² = 0", Box::new(|x, _, _| Ok((x.d().d(), Form::zero(x.unit()))))),
        (
            "d_graded_rule",
            "d(x ⋆ y) = d(x) ⋆ y + (−1)^{x+1} x ⋆ d(y)",
            Box::new(move |x, y, _| Ok((x.star(y)?.d(), x.d().star(y)?.add(&graded_star(x, y)?)))),
        ),
        (
            "nilpotent_left",
            "b ⊣ (x ⊢ y − x ⊣ y) = 0",
            Box::new(|b, x, y| Ok((b.left_op(&x.right_op(y)?.sub(&x.left_op(y)?))?, Form::zero(b.unit())))),
        ),
        (
            "nilpotent_right",
            "(x ⊢ y − x ⊣ y) ⊢ a = 0",
            Box::new(|x, y, a| Ok((x.right_op(y)?.sub(&x.left_op(y)?).right_op(a)?, Form::zero(x.unit())))),
        ),
        ("d_left_op", "d(x ⊣ y) = −dx ⋆ dy", Box::new(|x, y, _| Ok((x.left_op(y)?.d(), x.d().star(&y.d())?.neg())))),
        ("d_right_op", "d(x ⊢ y) = −dx ⋆ dy", Box::new(|x, y, _| Ok((x.right_op(y)?.d(), x.d().star(&y.d())?.neg())))),
        (
            "d_bracket",
            "d[x,y]_L = dy ⋆ dx − dx ⋆ dy",
            Box::new(|x, y, _| Ok((x.leibnitz_bracket(y)?.d(), y.d().star(&x.d())?.sub(&x.d().star(&y.d())?)))),
        ),
    ];
    r.extend(check_triples(laws, triples, &default_show)?);
    r.extend(check_dialgebra(&ops, triples)?);
    let mut parity = None;
    'grading: for (x, y, _) in triples {
        for (a, _) in x.terms() {
            for (b, _) in y.terms() {
                let expected = (word_degree(a) + word_degree(b)) % 2;
                let part = Form::<S>::word(x.unit(), a)?.left_op(&Form::word(x.unit(), b)?)?;
                if part.degrees().iter().any(|&e| e % 2 != expected) {
                    parity = Some(describe(&[x, y]));
                    break 'grading;
                }
            }
        }
    }
    r.push(Check::from_result("z2_grading", "deg(x ⊣ y) ≡ deg x + deg y (mod 2)", parity));
    Ok(r)
}

/// Evaluation of forms in `A` through the curvature of an Ito map, and the trace `Tr`.
#[derive(Clone)]
pub struct FormTrace<S> {
    pub alg: StructAlgebra<S>,
    pub omega: Cochain<S>,
    pub sigma: LinMap<S>,
    unit: Sym,
}

impl<S: Scalar> FormTrace<S> {
    /// `σ: A → k` must vanish on commutators and `ρ` must be an Ito derivative.
    pub fn new(alg: &StructAlgebra<S>, rho: &LinOp<S>, sigma: LinMap<S>) -> Result<Self> {
        let unit = alg
            .unit_symbol()
            .ok_or_else(|| Error::Precondition("forms need a unit basis symbol".into()))?;
        let c = classify_map(rho, alg)?;
        if !c.holds.contains(&MapClass::ItoDerivative) {
            return Err(Error::Precondition("ρ is not an Ito derivative".into()));
        }
        let n = alg.dim() as Sym;
        for a in 0..n {
            for b in 0..n {
                let comm = alg.mul_sym(a, b).sub(alg.mul_sym(b, a))?;
                if !sigma.apply(&comm)?.is_zero() {
                    return Err(Error::Precondition(format!(
                        "σ is not a trace: σ([{}, {}]) ≠ 0",
                        alg.basis.name(a),
                        alg.basis.name(b)
                    )));
                }
            }
        }
        let omega = curvature(alg, rho)?;
        Ok(FormTrace { alg: alg.clone(), omega, sigma, unit })
    }

    pub fn unit(&self) -> Sym {
        self.unit
    }

    /// `a₀ ω(a₁,a₂) … a_{2k+1}` evaluated in `A`.
    pub fn eval_word(&self, w: &[Sym]) -> Result<Vect<S>> {
        let mut acc = Vect::sym(w[0]);
        for p in w[1..w.len() - 1].chunks(2) {
            acc = self.alg.mul(&acc, self.omega.eval(p))?;
        }
        self.alg.mul(&acc, &Vect::sym(w[w.len() - 1]))
    }

    pub fn eval(&self, f: &Form<S>) -> Result<Vect<S>> {
        let mut out = Vect::zero(1);
        for (w, c) in f.terms() {
            out.add_scaled(&self.eval_word(w)?, c)?;
        }
        Ok(out)
    }

    fn sigma_of(&self, v: &Vect<S>) -> Result<S> {
        let s = self.sigma.apply(v)?;
        s.as_scalar()
    }

    /// `σ^♮(ω(a₁,a₂)…ω(a_{2n−1},a_{2n})) = n·σ(ω(a₁,a₂)…ω(a_{2n−1},a_{2n}) − ω(a_{2n},a₁)…ω(a_{2n−2},a_{2n−1}))`,
    /// on words whose head and tail are kept in place.
    pub fn sigma_natural_word(&self, w: &[Sym]) -> Result<S> {
        let k = word_degree(w);
        if k == 0 {
            return self.sigma_of(&self.eval_word(w)?);
        }
        let inner = &w[1..w.len() - 1];
        let mut shifted = Word::new();
        shifted.push(w[0]);
        shifted.push(inner[inner.len() - 1]);
        shifted.extend_from_slice(&inner[..inner.len() - 1]);
        shifted.push(w[w.len() - 1]);
        let diff = self.eval_word(w)?.sub(&self.eval_word(&shifted)?)?;
        Ok(S::from_i64(k as i64) * self.sigma_of(&diff)?)
    }

    pub fn sigma_natural(&self, f: &Form<S>) -> Result<S> {
        let mut s = S::zero();
        for (w, c) in f.terms() {
            s = s + c.clone() * self.sigma_natural_word(w)?;
        }
        Ok(s)
    }

    /// `Tr(x) = σ^♮(d(x) ⋆ I)`.
    pub fn tr(&self, x: &Form<S>) -> Result<S> {
        self.sigma_natural(&x.d().star(&Form::identity(self.unit))?)
    }

    /// `Tr∘d = 0`, `Tr(x ⊣ y) = Tr(y ⊣ x)`, `Tr([x,y]_L) = 0` on the given pairs.
    pub fn check(&self, pairs: &[(Form<S>, Form<S>)]) -> Result<AxiomReport> {
        let mut r = AxiomReport::new();
        let mut closed = None;
        let mut sym = None;
        let mut brk = None;
        for (x, y) in pairs {
            if closed.is_none() && !self.tr(&x.d())?.is_zero() {
                closed = Some(format!("on {}", x.display(&self.alg.basis)));
            }
            if sym.is_none() && self.tr(&x.left_op(y)?)? != self.tr(&y.left_op(x)?)? {
                sym = Some(format!("on ({}, {})", x.display(&self.alg.basis), y.display(&self.alg.basis)));
            }
            if brk.is_none() && !self.tr(&x.leibnitz_bracket(y)?)?.is_zero() {
                brk = Some(format!("on ({}, {})", x.display(&self.alg.basis), y.display(&self.alg.basis)));
            }
        }
        r.push(Check::from_result("trace_closed", "Tr(dx) = 0", closed));
        r.push(Check::from_result("trace_symmetric", "Tr(x ⊣ y) = Tr(y ⊣ x)", sym));
        r.push(Check::from_result("trace_bracket", "Tr([x,y]_L) = 0", brk));
        Ok(r)
    }
}

/// `x([w]) = a₀ω(I,a₁)…ω(I,a_{n−2})a_{n−1}` for an orbit pattern on the flower graph.
pub fn orbit_form<S: Scalar>(unit: Sym, a: &[Sym]) -> Result<Form<S>> {
    if a.len() < 2 {
        return Err(Error::Argument("orbit forms need at least two letters".into()));
    }
    let slots: Vec<(Sym, Sym)> = a[1..a.len() - 1].iter().map(|&x| (unit, x)).collect();
    Ok(Form::from_parts(unit, a[0], &slots, a[a.len() - 1]))
}

/// Evaluated `d x([w]) = ρ(a₀)ρ(a₁)…ρ(a_{n−2})a_{n−1} + (−1)^n a₀ρ(a₁)…ρ(a_{n−1})` on all words of length `n`.
pub fn orbit_bridge<S: Scalar>(tr: &FormTrace<S>, rho: &LinOp<S>, n: usize) -> Result<Check> {
    let alg = &tr.alg;
    let mut bad = None;
    for w in crate::tensor_core::all_words(alg.dim(), n) {
        let lhs = tr.eval(&orbit_form(tr.unit(), &w)?.d())?;
        let r = |s: Sym| rho.apply_word(&[s]);
        let mut first = Vect::sym(w[n - 1]);
        for &s in w[..n - 1].iter().rev() {
            first = alg.mul(&r(s)?, &first)?;
        }
        let mut second = Vect::sym(w[0]);
        for &s in &w[1..] {
            second = alg.mul(&second, &r(s)?)?;
        }
        let rhs = first.add(&second.scale(&sign(n)))?;
        if lhs != rhs {
            bad = Some(alg.basis.word_text(&w));
            break;
        }
    }
    Ok(Check::from_result(format!("orbit_bridge({n})"), "d x([w]) = ρ(a₀)…ρ(a_{n−2})a_{n−1} + (−1)^n a₀ρ(a₁)…ρ(a_{n−1})", bad))
}

/// `ℚ[ℤ₂]` with `ρ(g) = −2g` (the automorphism `g ↦ −g` minus the identity) and `σ` the coefficient of `1`.
pub fn z2_example<S: Scalar>() -> Result<FormTrace<S>> {
    let alg = crate::algebra_core::group_algebra::<S>(2)?;
    let rho = LinMap::on_symbols(1, |s| Ok(if s == 0 { Vect::zero(1) } else { Vect::term(crate::tensor_core::word(&[1]), S::from_i64(-2)) }));
    let sigma = LinMap::on_symbols(0, |s| Ok(if s == 0 { Vect::scalar(S::one()) } else { Vect::zero(0) }));
    FormTrace::new(&alg, &rho, sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::{m2_pauli, quaternions};
    use crate::ito_calculus::conjugation_ito;
    use crate::scalar::{q, qi, Q, Qi};
    use crate::tensor_core::word;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const U: Sym = 0;

    fn deg_le1() -> Vec<Form<Q>> {
        let mut v = vec![Form::identity(U)];
        v.extend(form_words::<Q>(2, U, 1));
        v
    }

    #[test]
    fn star_examples() {
        let a = Form::<Q>::element(U, 1);
        let i = Form::<Q>::identity(U);
        assert_eq!(i.star(&a).unwrap(), a.d());
        assert_eq!(a.d(), Form::from_parts(U, U, &[(U, 1)], U));
        let x = Form::<Q>::from_parts(U, 1, &[(2, 3)], 1);
        let y = Form::<Q>::from_parts(U, 2, &[(3, 1)], 3);
        assert_eq!(x.star(&y).unwrap(), Form::from_parts(U, 1, &[(2, 3), (1, 2), (3, 1)], 3));
        assert_eq!(x.star(&y).unwrap().degree(), Some(3));
        assert!(matches!(a.star(&x), Err(Error::UndefinedProduct(_))));
    }

    #[test]
    fn d_of_unit_vanishes() {
        assert!(Form::<Q>::identity(U).d().is_zero());
        for a in 0..4 {
            assert!(Form::<Q>::element(U, a).d().d().is_zero());
        }
    }

    #[test]
    fn exhaustive_z2_degree_one() {
        let forms = deg_le1();
        let mut triples = Vec::new();
        for x in &forms {
            for y in &forms {
                for z in &forms {
                    triples.push((x.clone(), y.clone(), z.clone()));
                }
            }
        }
        let r = forms_report(&triples).unwrap();
        assert!(r.ok(), "{r}");
        let r = leibnitz_checks(&triples).unwrap();
        assert!(r.ok(), "{r}");
        for kind in [ConversionKind::TypeI, ConversionKind::TypeIII] {
            let (_, r) = dendriform_convert(&forms_dialgebra::<Q>(), kind, &triples).unwrap();
            assert!(r.ok(), "{r}");
        }
    }

    #[test]
    fn trivial_dialgebra_is_dendriform() {
        let h = quaternions::<Q>();
        let t = BilinearOpTable::trivial(&h).unwrap();
        let (d, r) = t.convert(ConversionKind::TypeI).unwrap();
        assert!(r.ok(), "{r}");
        let ops = d.ops();
        for (a, b, _) in t.basis_triples() {
            assert!(ops.r(&a, &b).unwrap().is_zero());
        }
        let (back, r) = d.convert(ConversionKind::FromDendriformAssocLeft).unwrap();
        assert!(r.ok());
        assert_eq!(back, t);
        let (d3, _) = t.convert(ConversionKind::TypeIII).unwrap();
        let (back3, _) = d3.convert(inverse_kind(ConversionKind::TypeIII)).unwrap();
        assert_eq!(back3, t);
    }

    #[test]
    fn conversion_rejects_bad_input() {
        // a ⊣ b = a, a ⊢ b = 2b is not a pre-dialgebra of type I
        let t = BilinearOpTable::<Q>::from_fn(2, OpLabels::Dialgebra, |a, _| Vect::sym(a), |_, b| Vect::term(word(&[b]), q(2))).unwrap();
        let e = t.convert(ConversionKind::TypeI).unwrap_err();
        assert!(e.to_string().contains("dialgebra_axiom") || e.to_string().contains("associative"), "{e}");
    }

    #[test]
    fn z2_trace() {
        let tr = z2_example::<Q>().unwrap();
        let forms = deg_le1();
        let mut pairs = Vec::new();
        for x in &forms {
            for y in &forms {
                pairs.push((x.clone(), y.clone()));
            }
        }
        let r = tr.check(&pairs).unwrap();
        assert!(r.ok(), "{r}");
        for n in 2..=5 {
            assert!(orbit_bridge(&tr, &LinMap::on_symbols(1, |s| Ok(if s == 0 { Vect::zero(1) } else { Vect::term(word(&[1]), q(-2)) })), n).unwrap().passed);
        }
    }

    #[test]
    fn pauli_sampled() {
        let a = m2_pauli();
        let u = a.elem(&[("1", qi(1, 0)), ("u0", qi(0, 1)), ("u2", qi(2, 0))]).unwrap();
        let rho = conjugation_ito(&a, &u).unwrap();
        let sigma = LinMap::on_symbols(0, |s| Ok(if s == 0 { Vect::scalar(qi(2, 0)) } else { Vect::zero(0) }));
        let tr = FormTrace::new(&a, &rho, sigma).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let triples: Vec<_> = (0..30)
            .map(|_| {
                let mut f = || {
                    let k = rng.gen_range(1..=2);
                    random_form::<Qi, _>(&mut rng, 4, U, k)
                };
                (f(), f(), f())
            })
            .collect();
        assert!(forms_report(&triples).unwrap().ok());
        assert!(leibnitz_checks(&triples).unwrap().ok());
        let pairs: Vec<_> = triples.iter().map(|(x, y, _)| (x.clone(), y.clone())).collect();
        let r = tr.check(&pairs).unwrap();
        assert!(r.ok(), "{r}");
        for n in 2..=4 {
            assert!(orbit_bridge(&tr, &rho, n).unwrap().passed);
        }
    }

    #[test]
    fn trace_rejects_non_trace() {
        let h = quaternions::<Q>();
        let rho = conjugation_ito(&h, &h.parse_elem("1 + i").unwrap()).unwrap();
        let bad = LinMap::on_symbols(0, |s| Ok(if s == 3 { Vect::scalar(q(1)) } else { Vect::zero(0) }));
        assert!(matches!(FormTrace::new(&h, &rho, bad), Err(Error::Precondition(_))));
        let id = LinMap::identity(1);
        let sigma = LinMap::on_symbols(0, |s| Ok(if s == 0 { Vect::scalar(q(1)) } else { Vect::zero(0) }));
        assert!(matches!(FormTrace::new(&h, &id, sigma), Err(Error::Precondition(_))));
    }

    proptest! {
        #[test]
        fn star_is_associative(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut f = || { let k = rng.gen_range(1..=2); random_form::<Q, _>(&mut rng, 3, U, k) };
            let (x, y, z) = (f(), f(), f());
            prop_assert_eq!(x.star(&y).unwrap().star(&z).unwrap(), x.star(&y.star(&z).unwrap()).unwrap());
            prop_assert!(x.d().d().is_zero());
        }
    }
}
