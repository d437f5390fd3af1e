//! Free vector spaces over symbolic bases, tensor words and linear maps between
//! tensor powers, with exact kernel computation.
//!
//! Symbols are indices into a [`Basis`]. A [`Vect`] never stores zero
//! coefficients and keeps its terms ordered by basis index, so structural equality
//! is equality of vectors.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Index of a symbol in its [`Basis`].
pub type Sym = u32;
/// An ordered tuple of symbols; the empty word is the scalar unit.
pub type Word = SmallVec<[Sym; 6]>;

pub fn word(syms: &[Sym]) -> Word {
    Word::from_slice(syms)
}

/// A finite list of distinct symbol names, optionally with a flagged unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    names: Vec<String>,
    index: HashMap<String, Sym>,
    unit: Option<Sym>,
}

impl Basis {
    pub fn new<I, T>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(Error::Basis("empty symbol name".into()));
            }
            if index.insert(n.clone(), i as Sym).is_some() {
                return Err(Error::Basis(format!("duplicate symbol '{n}'")));
            }
        }
        Ok(Basis { names, index, unit: None })
    }

    /// Same as [`Basis::new`] and flags `unit` as the distinguished unit symbol.
    pub fn with_unit<I, T>(names: I, unit: &str) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<String>,
    {
        let mut b = Basis::new(names)?;
        b.unit = Some(b.sym(unit)?);
        Ok(b)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn unit(&self) -> Option<Sym> {
        self.unit
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, s: Sym) -> &str {
        &self.names[s as usize]
    }

    pub fn sym(&self, name: &str) -> Result<Sym> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn syms(&self) -> impl Iterator<Item = Sym> {
        0..self.names.len() as Sym
    }

    /// Parses `"a⊗b"`, `"a*b"` or whitespace-separated names into a word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        text.split(|c: char| c == '⊗' || c == '*' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| self.sym(t))
            .collect()
    }

    pub fn word_text(&self, w: &[Sym]) -> String {
        if w.is_empty() {
            return "()".into();
        }
        w.iter().map(|&s| self.name(s)).collect::<Vec<_>>().join("⊗")
    }

    /// All words of length `n` in lexicographic index order.
    pub fn words(&self, n: usize) -> Vec<Word> {
        all_words(self.len(), n)
    }
}

/// All words of length `n` over `k` symbols, in lexicographic index order.
pub fn all_words(k: usize, n: usize) -> Vec<Word> {
    let mut out = vec![Word::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * k);
        for w in &out {
            for s in 0..k as Sym {
                let mut v = w.clone();
                v.push(s);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// A homogeneous formal linear combination of tensor words.
#[derive(Clone, Debug, PartialEq)]
pub struct Vect<S> {
    degree: usize,
    terms: BTreeMap<Word, S>,
}

impl<S: Scalar> Vect<S> {
    pub fn zero(degree: usize) -> Self {
        Vect { degree, terms: BTreeMap::new() }
    }

    /// The degree-0 vector `c·()`, the explicit embedding of a scalar.
    pub fn scalar(c: S) -> Self {
        Vect::term(Word::new(), c)
    }

    pub fn basis_word(w: &[Sym]) -> Self {
        Vect::term(word(w), S::one())
    }

    pub fn sym(s: Sym) -> Self {
        Vect::basis_word(&[s])
    }

    pub fn term(w: Word, c: S) -> Self {
        let mut v = Vect::zero(w.len());
        if !c.is_zero() {
            v.terms.insert(w, c);
        }
        v
    }

    /// Builds a vector from terms, summing repeated words.
    pub fn from_terms<I: IntoIterator<Item = (Word, S)>>(degree: usize, terms: I) -> Result<Self> {
        let mut v = Vect::zero(degree);
        for (w, c) in terms {
            if w.len() != degree {
                return Err(Error::Degree { expected: degree, found: w.len() });
            }
            v.add_term(w, c);
        }
        Ok(v)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[Sym]) -> S {
        self.terms.get(w).cloned().unwrap_or_else(S::zero)
    }

    /// Adds `c·w` in place. Panics on a degree mismatch, which is a programming error.
    pub fn add_term(&mut self, w: Word, c: S) {
        assert_eq!(w.len(), self.degree, "word degree differs from vector degree");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                let s = x.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Vect<S>, c: &S) -> Result<()> {
        self.check_degree(other.degree)?;
        if c.is_zero() {
            return Ok(());
        }
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x.clone() * c.clone());
        }
        Ok(())
    }

    pub fn add(&self, other: &Vect<S>) -> Result<Vect<S>> {
        let mut v = self.clone();
        v.add_scaled(other, &S::one())?;
        Ok(v)
    }

    pub fn sub(&self, other: &Vect<S>) -> Result<Vect<S>> {
        let mut v = self.clone();
        v.add_scaled(other, &-S::one())?;
        Ok(v)
    }

    pub fn scale(&self, c: &S) -> Vect<S> {
        if c.is_zero() {
            return Vect::zero(self.degree);
        }
        Vect {
            degree: self.degree,
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x.clone() * c.clone())).collect(),
        }
    }

    pub fn neg(&self) -> Vect<S> {
        self.scale(&-S::one())
    }

    /// Bilinear tensor product; degrees add.
    pub fn tensor(&self, other: &Vect<S>) -> Vect<S> {
        let mut v = Vect::zero(self.degree + other.degree);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                v.add_term(w, x.clone() * y.clone());
            }
        }
        v
    }

    /// Applies `f` to every word and keeps the coefficient.
    pub fn map_words(&self, degree: usize, mut f: impl FnMut(&[Sym]) -> Word) -> Vect<S> {
        let mut v = Vect::zero(degree);
        for (w, c) in &self.terms {
            v.add_term(f(w), c.clone());
        }
        v
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Vect<T> {
        let mut v = Vect::zero(self.degree);
        for (w, c) in &self.terms {
            v.add_term(w.clone(), f(c));
        }
        v
    }

    /// Extracts the scalar of a degree-0 vector.
    pub fn as_scalar(&self) -> Result<S> {
        self.check_degree(0)?;
        Ok(self.coeff(&[]))
    }

    pub fn check_degree(&self, d: usize) -> Result<()> {
        if self.degree != d {
            Err(Error::Degree { expected: d, found: self.degree })
        } else {
            Ok(())
        }
    }

    pub fn display<'a>(&'a self, basis: &'a Basis) -> VectDisplay<'a, S> {
        VectDisplay { v: self, basis }
    }
}

pub struct VectDisplay<'a, S> {
    v: &'a Vect<S>,
    basis: &'a Basis,
}

impl<S: Scalar> fmt::Display for VectDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in self.v.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let ws = self.basis.word_text(w);
            if *c == S::one() {
                write!(f, "{ws}")?;
            } else {
                write!(f, "({})·{ws}", c.to_text())?;
            }
        }
        Ok(())
    }
}

type Action<S> = dyn Fn(&[Sym]) -> Result<Vect<S>> + Send + Sync;

/// A linear map from degree `dom` to degree `cod`, given by its action on words.
#[derive(Clone)]
pub struct LinMap<S> {
    dom: usize,
    cod: usize,
    action: Arc<Action<S>>,
}

impl<S> fmt::Debug for LinMap<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinMap({} -> {})", self.dom, self.cod)
    }
}

impl<S: Scalar> LinMap<S> {
    pub fn new<F>(dom: usize, cod: usize, action: F) -> Self
    where
        F: Fn(&[Sym]) -> Result<Vect<S>> + Send + Sync + 'static,
    {
        LinMap { dom, cod, action: Arc::new(action) }
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn identity(n: usize) -> Self {
        LinMap::new(n, n, |w| Ok(Vect::basis_word(w)))
    }

    pub fn zero(dom: usize, cod: usize) -> Self {
        LinMap::new(dom, cod, move |_| Ok(Vect::zero(cod)))
    }

    /// A map defined by an explicit table; words outside it are an error.
    pub fn from_table(dom: usize, cod: usize, table: HashMap<Word, Vect<S>>) -> Result<Self> {
        for (w, v) in &table {
            if w.len() != dom {
                return Err(Error::Degree { expected: dom, found: w.len() });
            }
            v.check_degree(cod)?;
        }
        Ok(LinMap::new(dom, cod, move |w| {
            table
                .get(w)
                .cloned()
                .ok_or_else(|| Error::UndefinedOnWord(format!("{w:?}")))
        }))
    }

    /// A degree-1 map given on single symbols.
    pub fn on_symbols(cod: usize, f: impl Fn(Sym) -> Result<Vect<S>> + Send + Sync + 'static) -> Self {
        LinMap::new(1, cod, move |w| f(w[0]))
    }

    pub fn apply_word(&self, w: &[Sym]) -> Result<Vect<S>> {
        if w.len() != self.dom {
            return Err(Error::Degree { expected: self.dom, found: w.len() });
        }
        let v = (self.action)(w)?;
        v.check_degree(self.cod)?;
        Ok(v)
    }

    pub fn apply(&self, v: &Vect<S>) -> Result<Vect<S>> {
        v.check_degree(self.dom)?;
        let mut out = Vect::zero(self.cod);
        for (w, c) in v.terms() {
            out.add_scaled(&self.apply_word(w)?, c)?;
        }
        Ok(out)
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &LinMap<S>) -> Result<LinMap<S>> {
        if first.cod != self.dom {
            return Err(Error::Degree { expected: self.dom, found: first.cod });
        }
        let (f, g) = (first.clone(), self.clone());
        Ok(LinMap::new(first.dom, self.cod, move |w| g.apply(&f.apply_word(w)?)))
    }

    /// Tensor product of maps: `(f⊗g)(u⊗v) = f(u)⊗g(v)` with the split at `f.dom`.
    pub fn tensor(&self, other: &LinMap<S>) -> LinMap<S> {
        let (f, g) = (self.clone(), other.clone());
        let k = self.dom;
        LinMap::new(self.dom + other.dom, self.cod + other.cod, move |w| {
            Ok(f.apply_word(&w[..k])?.tensor(&g.apply_word(&w[k..])?))
        })
    }

    /// `id^{⊗left} ⊗ f ⊗ id^{⊗right}`.
    pub fn padded(&self, left: usize, right: usize) -> LinMap<S> {
        let f = self.clone();
        let d = self.dom;
        LinMap::new(left + d + right, left + self.cod + right, move |w| {
            let mid = f.apply_word(&w[left..left + d])?;
            Ok(Vect::basis_word(&w[..left])
                .tensor(&mid)
                .tensor(&Vect::basis_word(&w[left + d..])))
        })
    }

    pub fn add(&self, other: &LinMap<S>) -> Result<LinMap<S>> {
        self.combine(other, S::one())
    }

    pub fn sub(&self, other: &LinMap<S>) -> Result<LinMap<S>> {
        self.combine(other, -S::one())
    }

    fn combine(&self, other: &LinMap<S>, c: S) -> Result<LinMap<S>> {
        if self.dom != other.dom || self.cod != other.cod {
            return Err(Error::Degree { expected: self.cod, found: other.cod });
        }
        let (f, g) = (self.clone(), other.clone());
        Ok(LinMap::new(self.dom, self.cod, move |w| {
            let mut v = f.apply_word(w)?;
            v.add_scaled(&g.apply_word(w)?, &c)?;
            Ok(v)
        }))
    }

    pub fn scale(&self, c: S) -> LinMap<S> {
        let f = self.clone();
        LinMap::new(self.dom, self.cod, move |w| Ok(f.apply_word(w)?.scale(&c)))
    }

    /// Permutes tensor factors: output position `i` takes input position `perm[i]`.
    pub fn permutation(perm: Vec<usize>) -> Result<LinMap<S>> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::Argument(format!("not a permutation: {perm:?}")));
            }
            seen[p] = true;
        }
        Ok(LinMap::new(n, n, move |w| {
            Ok(Vect::basis_word(&perm.iter().map(|&p| w[p]).collect::<Word>()))
        }))
    }

    /// The cyclic transposition `x₁⊗…⊗xₙ ↦ xₙ⊗x₁⊗…⊗x_{n−1}`.
    pub fn tau_cyclic(n: usize) -> Result<LinMap<S>> {
        if n < 2 {
            return Err(Error::Argument(format!("tau_cyclic needs n >= 2, got {n}")));
        }
        LinMap::permutation((0..n).map(|i| (i + n - 1) % n).collect())
    }

    /// Images of the given words, in order.
    pub fn images(&self, words: &[Word]) -> Result<Vec<Vect<S>>> {
        words.iter().map(|w| self.apply_word(w)).collect()
    }

    /// Checks `self = other` on every listed word, returning the first disagreement.
    pub fn agrees_on(&self, other: &LinMap<S>, words: &[Word]) -> Result<Option<(Word, Vect<S>, Vect<S>)>> {
        for w in words {
            let (a, b) = (self.apply_word(w)?, other.apply_word(w)?);
            if a != b {
                return Ok(Some((w.clone(), a, b)));
            }
        }
        Ok(None)
    }
}

/// Basis of `ker f` restricted to the span of `domain` (exact elimination).
pub fn kernel_on<S: Scalar>(f: &LinMap<S>, domain: &[Word]) -> Result<Vec<Vect<S>>> {
    let images = f.images(domain)?;
    let (rows, _) = coordinate_matrix(&images);
    // columns = domain words; rows = output words
    let null = nullspace(&rows, domain.len());
    Ok(null
        .into_iter()
        .map(|coeffs| {
            let mut v = Vect::zero(f.dom());
            for (w, c) in domain.iter().zip(coeffs) {
                v.add_term(w.clone(), c);
            }
            v
        })
        .collect())
}

/// Basis of the kernel of `f` on all words of degree `f.dom()` over `n_symbols` symbols.
pub fn kernel_basis<S: Scalar>(f: &LinMap<S>, n_symbols: usize) -> Result<Vec<Vect<S>>> {
    kernel_on(f, &all_words(n_symbols, f.dom()))
}

/// Rank of `f` on the span of `domain`.
pub fn rank_on<S: Scalar>(f: &LinMap<S>, domain: &[Word]) -> Result<usize> {
    let (rows, _) = coordinate_matrix(&f.images(domain)?);
    Ok(rank(rows, domain.len()))
}

/// Writes vectors as columns of a dense matrix over the union of their words.
/// Returns rows (one per word) and the word list.
pub fn coordinate_matrix<S: Scalar>(cols: &[Vect<S>]) -> (Vec<Vec<S>>, Vec<Word>) {
    let mut words: Vec<Word> = Vec::new();
    let mut pos: BTreeMap<Word, usize> = BTreeMap::new();
    for v in cols {
        for (w, _) in v.terms() {
            if !pos.contains_key(w) {
                pos.insert(w.clone(), words.len());
                words.push(w.clone());
            }
        }
    }
    let mut rows = vec![vec![S::zero(); cols.len()]; words.len()];
    for (j, v) in cols.iter().enumerate() {
        for (w, c) in v.terms() {
            rows[pos[w]][j] = c.clone();
        }
    }
    (rows, words)
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<S: Scalar>(m: &mut [Vec<S>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let t = m[r][j].clone() * f.clone();
                    m[i][j] = m[i][j].clone() - t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<S: Scalar>(mut m: Vec<Vec<S>>, ncols: usize) -> usize {
    rref(&mut m, ncols).len()
}

/// Basis of `{x : m x = 0}`.
pub fn nullspace<S: Scalar>(m: &[Vec<S>], ncols: usize) -> Vec<Vec<S>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![S::zero(); ncols];
            x[f] = S::one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = -a[r][f].clone();
            }
            x
        })
        .collect()
}

/// One solution of `m x = b`, or `None` when inconsistent.
pub fn solve<S: Scalar>(m: &[Vec<S>], ncols: usize, b: &[S]) -> Option<Vec<S>> {
    let mut a: Vec<Vec<S>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut a, ncols + 1);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![S::zero(); ncols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = a[r][ncols].clone();
    }
    Some(x)
}
