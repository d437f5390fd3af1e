//! Curvature of 1-cochains, Ito and Leibnitz derivatives, the `□*` operators and
//! the `f_n` cochains, conjugation Ito maps, differentials and commutators of
//! L-bialgebras, and virtual petals on tensor powers of a Markov L-bialgebra.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra_core::{flower_maps, hochschild_bprime, StructAlgebra};
use crate::error::{Error, Result};
use crate::lcoalgebra::{check_bialgebra_hopf, tensor_product_lc, LCoalgebra};
use crate::report::{AxiomReport, Check};
use crate::scalar::{sign, Scalar};
use crate::tensor_core::{all_words, kernel_on, word, Basis, LinMap, Sym, Vect, Word};

/// A linear endomap of an algebra, given on basis symbols.
pub type LinOp<S> = LinMap<S>;

/// Words above this count are sampled rather than enumerated.
pub const ENUMERATION_LIMIT: usize = 5000;

/// Number of sampled tuples when enumeration is too large.
pub const SAMPLE_SIZE: usize = 500;

/// `x ↦ u x u⁻¹`.
pub fn conjugation<S: Scalar>(alg: &StructAlgebra<S>, u: &Vect<S>) -> Result<LinOp<S>> {
    let inv = alg.inverse(u)?;
    Ok(alg.sandwich(u, &inv))
}

/// `ρ_u = u(·)u⁻¹ − id`.
pub fn conjugation_ito<S: Scalar>(alg: &StructAlgebra<S>, u: &Vect<S>) -> Result<LinOp<S>> {
    conjugation(alg, u)?.sub(&LinMap::identity(1))
}

/// The inner derivation `x ↦ hx − xh`.
pub fn inner_derivation<S: Scalar>(alg: &StructAlgebra<S>, h: &Vect<S>) -> LinOp<S> {
    let (a, h) = (alg.clone(), h.clone());
    LinMap::new(1, 1, move |w| {
        let x = Vect::basis_word(w);
        a.mul(&h, &x)?.sub(&a.mul(&x, &h)?)
    })
}

/// A multilinear map `A^{⊗n} → A` stored as a dense table over basis tuples.
#[derive(Clone, Debug)]
pub struct Cochain<S> {
    pub arity: usize,
    dim: usize,
    values: Arc<Vec<Vect<S>>>,
}

impl<S: Scalar> Cochain<S> {
    pub fn from_fn(arity: usize, dim: usize, mut f: impl FnMut(&[Sym]) -> Result<Vect<S>>) -> Result<Self> {
        let values = all_words(dim, arity)
            .iter()
            .map(|w| {
                let v = f(w)?;
                v.check_degree(1)?;
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Cochain { arity, dim, values: Arc::new(values) })
    }

    /// A 1-cochain from a linear endomap.
    pub fn from_linop(op: &LinOp<S>, dim: usize) -> Result<Self> {
        Cochain::from_fn(1, dim, |w| op.apply_word(w))
    }

    pub fn zero(arity: usize, dim: usize) -> Self {
        Cochain { arity, dim, values: Arc::new(vec![Vect::zero(1); dim.pow(arity as u32)]) }
    }

    fn index(&self, w: &[Sym]) -> usize {
        w.iter().fold(0, |acc, &s| acc * self.dim + s as usize)
    }

    pub fn eval(&self, w: &[Sym]) -> &Vect<S> {
        &self.values[self.index(w)]
    }

    /// Linear extension to a degree-`arity` vector.
    pub fn eval_vect(&self, v: &Vect<S>) -> Result<Vect<S>> {
        v.check_degree(self.arity)?;
        let mut out = Vect::zero(1);
        for (w, c) in v.terms() {
            out.add_scaled(self.eval(w), c)?;
        }
        Ok(out)
    }

    fn combine(&self, other: &Cochain<S>, c: S) -> Result<Cochain<S>> {
        if self.arity != other.arity {
            return Err(Error::Degree { expected: self.arity, found: other.arity });
        }
        let values = self
            .values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| {
                let mut v = a.clone();
                v.add_scaled(b, &c)?;
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Cochain { arity: self.arity, dim: self.dim, values: Arc::new(values) })
    }

    pub fn add(&self, other: &Cochain<S>) -> Result<Cochain<S>> {
        self.combine(other, S::one())
    }

    pub fn sub(&self, other: &Cochain<S>) -> Result<Cochain<S>> {
        self.combine(other, -S::one())
    }

    pub fn neg(&self) -> Cochain<S> {
        let values = self.values.iter().map(Vect::neg).collect();
        Cochain { arity: self.arity, dim: self.dim, values: Arc::new(values) }
    }

    /// `(fg)(a₁,…,a_{p+q}) = (−1)^{pq} f(a₁,…,a_p) g(a_{p+1},…,a_{p+q})`.
    pub fn mul(&self, other: &Cochain<S>, alg: &StructAlgebra<S>) -> Result<Cochain<S>> {
        let (p, q) = (self.arity, other.arity);
        let s: S = sign(p * q);
        Cochain::from_fn(p + q, self.dim, |w| Ok(alg.mul(self.eval(&w[..p]), other.eval(&w[p..]))?.scale(&s)))
    }

    /// `f^k` for `k >= 1`.
    pub fn pow(&self, k: usize, alg: &StructAlgebra<S>) -> Result<Cochain<S>> {
        if k == 0 {
            return Err(Error::Argument("cochain powers start at 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.mul(self, alg)?;
        }
        Ok(acc)
    }

    /// `δ̂f = −(−1)^p f∘b′`.
    pub fn delta_hat(&self, alg: &StructAlgebra<S>) -> Result<Cochain<S>> {
        let p = self.arity;
        let bp = hochschild_bprime(alg, p + 1)?;
        let s: S = -sign::<S>(p);
        Cochain::from_fn(p + 1, self.dim, |w| Ok(self.eval_vect(&bp.apply_word(w)?)?.scale(&s)))
    }

    /// `f̃(a₀ ⊗ (u₁,…,uₙ) ⊗ a_{n+1}) = a₀ f(u) a_{n+1}`, degree `n+2 → 1`.
    pub fn tilde(&self, alg: &StructAlgebra<S>) -> LinMap<S> {
        let (f, a) = (self.clone(), alg.clone());
        let n = self.arity;
        LinMap::new(n + 2, 1, move |w| a.mul_all(&[&Vect::sym(w[0]), f.eval(&w[1..n + 1]), &Vect::sym(w[n + 1])]))
    }

    /// First basis tuple where two cochains differ.
    pub fn first_difference(&self, other: &Cochain<S>) -> Option<Word> {
        if self.arity != other.arity {
            return Some(Word::new());
        }
        let words = all_words(self.dim, self.arity);
        words.into_iter().zip(self.values.iter().zip(other.values.iter())).find(|(_, (a, b))| a != b).map(|(w, _)| w)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Vect::is_zero)
    }
}

/// `ω(a₁,a₂) = ρ(a₁a₂) − ρ(a₁)ρ(a₂)`, which equals `δ̂ρ + ρ²`.
pub fn curvature<S: Scalar>(alg: &StructAlgebra<S>, rho: &LinOp<S>) -> Result<Cochain<S>> {
    Cochain::from_fn(2, alg.dim(), |w| {
        let r = |s: Sym| rho.apply_word(&[s]);
        rho.apply(alg.mul_sym(w[0], w[1]))?.sub(&alg.mul(&r(w[0])?, &r(w[1])?)?)
    })
}

/// The classes a linear map or bilinear form may fall into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapClass {
    Homomorphism,
    ItoDerivative,
    LeibnitzDerivative,
    ProductM,
    NoneOfThese,
}

impl std::fmt::Display for MapClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MapClass::Homomorphism => "homomorphism",
            MapClass::ItoDerivative => "ito_derivative",
            MapClass::LeibnitzDerivative => "leibnitz_derivative",
            MapClass::ProductM => "product_m",
            MapClass::NoneOfThese => "none_of_these",
        })
    }
}

/// Result of [`classify_map`].
#[derive(Clone, Debug)]
pub struct Classification<S> {
    /// The strongest class, in the order unital homomorphism, Ito, Leibnitz.
    pub primary: MapClass,
    /// Every class that holds.
    pub holds: Vec<MapClass>,
    pub curvature: Cochain<S>,
    pub report: AxiomReport,
}

fn first_bad_pair<S: Scalar>(alg: &StructAlgebra<S>, mut ok: impl FnMut(Sym, Sym) -> Result<bool>) -> Result<Option<String>> {
    let n = alg.dim() as Sym;
    for x in 0..n {
        for y in 0..n {
            if !ok(x, y)? {
                return Ok(Some(format!("on ({}, {})", alg.basis.name(x), alg.basis.name(y))));
            }
        }
    }
    Ok(None)
}

/// `f` with its images on the given words computed once.
fn tabulate_words<S: Scalar>(f: &LinMap<S>, words: &[Word]) -> Result<LinMap<S>> {
    let table = words.iter().map(|w| Ok((w.clone(), f.apply_word(w)?))).collect::<Result<std::collections::HashMap<_, _>>>()?;
    LinMap::from_table(f.dom(), f.cod(), table)
}

/// `op` with its images on the basis symbols computed once.
pub fn tabulate<S: Scalar>(op: &LinOp<S>, dim: usize) -> Result<LinOp<S>> {
    let images: Vec<Vect<S>> = (0..dim as Sym).map(|s| op.apply_word(&[s])).collect::<Result<_>>()?;
    let images = Arc::new(images);
    Ok(LinMap::on_symbols(op.cod(), move |s| {
        images.get(s as usize).cloned().ok_or_else(|| Error::UndefinedOnWord(format!("symbol {s}")))
    }))
}

/// Classifies `ρ` by exact verification on all basis pairs.
pub fn classify_map<S: Scalar>(rho: &LinOp<S>, alg: &StructAlgebra<S>) -> Result<Classification<S>> {
    let rho = &tabulate(rho, alg.dim())?;
    let omega = curvature(alg, rho)?;
    let one = alg.unit_vect();
    let rho1 = rho.apply(&one)?;
    let r = |s: Sym| rho.apply_word(&[s]);
    let mut report = AxiomReport::new();

    let hom = first_bad_pair(alg, |x, y| Ok(omega.eval(&[x, y]).is_zero()))?;
    let unital = rho1 == one;
    report.push(Check::from_result("homomorphism", "ρ(xy) = ρ(x)ρ(y), ρ(1) = 1", hom.clone().or((!unital).then(|| "ρ(1) ≠ 1".into()))));

    let ito = first_bad_pair(alg, |x, y| {
        let (rx, ry) = (r(x)?, r(y)?);
        let rhs = alg
            .mul(&rx, &Vect::sym(y))?
            .add(&alg.mul(&Vect::sym(x), &ry)?)?
            .add(&alg.mul(&rx, &ry)?)?;
        Ok(rho.apply(alg.mul_sym(x, y))? == rhs)
    })?;
    let ito = ito.or((!rho1.is_zero()).then(|| "ρ(1) ≠ 0".into()));
    report.push(Check::from_result("ito_derivative", "d(xy) = d(x)y + xd(y) + d(x)d(y), d(1) = 0", ito.clone()));

    let leib = first_bad_pair(alg, |x, y| {
        let rhs = alg.mul(&r(x)?, &Vect::sym(y))?.add(&alg.mul(&Vect::sym(x), &r(y)?)?)?;
        Ok(rho.apply(alg.mul_sym(x, y))? == rhs)
    })?;
    report.push(Check::from_result("leibnitz_derivative", "D(xy) = xD(y) + D(x)y", leib.clone()));

    if ito.is_none() {
        let u = alg.unit_symbol();
        let lemma = match u {
            Some(u) => first_bad_pair(alg, |x, _| {
                let rx = r(x)?;
                Ok(*omega.eval(&[u, x]) == rx && *omega.eval(&[x, u]) == rx)
            })?,
            None => Some("no unit symbol".into()),
        };
        report.push(Check::from_result("ito_curvature_on_unit", "ω(1,x) = ω(x,1) = d(x)", lemma));
        let split = first_bad_pair(alg, |x, y| {
            let rhs = alg.mul(&Vect::sym(x), &r(y)?)?.add(&alg.mul(&r(x)?, &Vect::sym(y))?)?;
            Ok(*omega.eval(&[x, y]) == rhs)
        })?;
        report.push(Check::from_result("ito_curvature", "ω(a₀,a₁) = a₀ρ(a₁) + ρ(a₀)a₁", split));
    }

    let mut holds = Vec::new();
    if hom.is_none() && unital {
        holds.push(MapClass::Homomorphism);
    }
    if ito.is_none() {
        holds.push(MapClass::ItoDerivative);
    }
    if leib.is_none() {
        holds.push(MapClass::LeibnitzDerivative);
    }
    let primary = holds.first().copied().unwrap_or(MapClass::NoneOfThese);
    Ok(Classification { primary, holds, curvature: omega, report })
}

/// Direction of [`ito_hom_bijection`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    ToIto,
    ToHom,
}

/// `ρ ↦ ρ − id` on unital homomorphisms, `d ↦ d + id` on Ito derivatives.
pub fn ito_hom_bijection<S: Scalar>(f: &LinOp<S>, alg: &StructAlgebra<S>, direction: Direction) -> Result<LinOp<S>> {
    let f = &tabulate(f, alg.dim())?;
    let (need, out_class, out) = match direction {
        Direction::ToIto => (MapClass::Homomorphism, MapClass::ItoDerivative, f.sub(&LinMap::identity(1))?),
        Direction::ToHom => (MapClass::ItoDerivative, MapClass::Homomorphism, f.add(&LinMap::identity(1))?),
    };
    let c = classify_map(f, alg)?;
    if !c.holds.contains(&need) {
        let name = if need == MapClass::Homomorphism { "homomorphism" } else { "ito_derivative" };
        let w = c.report.get(name).and_then(|c| c.witness.clone()).unwrap_or_default();
        return Err(Error::Precondition(format!("map is not a {need}: {w}")));
    }
    let out = tabulate(&out, alg.dim())?;
    if !classify_map(&out, alg)?.holds.contains(&out_class) {
        return Err(Error::Validation(format!("image is not a {out_class}")));
    }
    Ok(out)
}

/// `F̃□*(x,y) = x·F(1,y)·1 − x·F(1,1)·y − 1·F(x,y)·1 + 1·F(x,1)·y`.
pub fn carre_star_value<S: Scalar>(f: &Cochain<S>, alg: &StructAlgebra<S>, x: Sym, y: Sym) -> Result<Vect<S>> {
    let u = alg
        .unit_symbol()
        .ok_or_else(|| Error::Precondition("□* needs a unit symbol".into()))?;
    let (xv, yv) = (Vect::sym(x), Vect::sym(y));
    let t1 = alg.mul(&xv, f.eval(&[u, y]))?;
    let t2 = alg.mul_all(&[&xv, f.eval(&[u, u]), &yv])?;
    let t3 = f.eval(&[x, y]).clone();
    let t4 = alg.mul(f.eval(&[x, u]), &yv)?;
    t1.sub(&t2)?.sub(&t3)?.add(&t4)
}

/// `F̃□* = 0` on all basis pairs.
pub fn carre_star_check<S: Scalar>(f: &Cochain<S>, alg: &StructAlgebra<S>) -> Result<Check> {
    let bad = first_bad_pair(alg, |x, y| Ok(carre_star_value(f, alg, x, y)?.is_zero()))?;
    Ok(Check::from_result("carre_star", "F̃□* = 0", bad))
}

/// `F = m` as a bilinear cochain.
pub fn product_cochain<S: Scalar>(alg: &StructAlgebra<S>) -> Result<Cochain<S>> {
    Cochain::from_fn(2, alg.dim(), |w| Ok(alg.mul_sym(w[0], w[1]).clone()))
}

/// `F = D∘m`.
pub fn derivation_cochain<S: Scalar>(alg: &StructAlgebra<S>, d: &LinOp<S>) -> Result<Cochain<S>> {
    Cochain::from_fn(2, alg.dim(), |w| d.apply(alg.mul_sym(w[0], w[1])))
}

/// The four classes `m`, `ω_hom`, `ω_Ito`, `D∘m` all satisfy `F̃□* = 0`.
pub fn carre_star_classes<S: Scalar>(alg: &StructAlgebra<S>, hom: &LinOp<S>, ito: &LinOp<S>, der: &LinOp<S>) -> Result<AxiomReport> {
    let mut r = AxiomReport::new();
    let forms = [
        ("product_m", product_cochain(alg)?),
        ("curvature_hom", curvature(alg, hom)?),
        ("curvature_ito", curvature(alg, ito)?),
        ("derivation_m", derivation_cochain(alg, der)?),
    ];
    for (name, f) in forms {
        let mut c = carre_star_check(&f, alg)?;
        c.name = format!("carre_star_{name}");
        r.push(c);
    }
    Ok(r)
}

/// `ω̃_ρ□* = ω̃_ζ□*` for `ρ = ζ + id`.
pub fn gauge_invariance<S: Scalar>(alg: &StructAlgebra<S>, zeta: &LinOp<S>) -> Result<Check> {
    let rho = zeta.add(&LinMap::identity(1))?;
    let (wr, wz) = (curvature(alg, &rho)?, curvature(alg, zeta)?);
    let bad = first_bad_pair(alg, |x, y| Ok(carre_star_value(&wr, alg, x, y)? == carre_star_value(&wz, alg, x, y)?))?;
    Ok(Check::from_result("gauge_invariance", "ω̃_ρ□* = ω̃_ζ□*", bad))
}

/// The converse: a map whose curvature satisfies `ω̃□* = 0` is a homomorphism when
/// `ρ(1) = 1` and an Ito derivative when `ρ(1) = 0`.
pub fn converse_class<S: Scalar>(alg: &StructAlgebra<S>, rho: &LinOp<S>) -> Result<MapClass> {
    let w = curvature(alg, rho)?;
    if !carre_star_check(&w, alg)?.passed {
        return Ok(MapClass::NoneOfThese);
    }
    let r1 = rho.apply(&alg.unit_vect())?;
    Ok(if r1 == alg.unit_vect() {
        MapClass::Homomorphism
    } else if r1.is_zero() {
        MapClass::ItoDerivative
    } else {
        MapClass::NoneOfThese
    })
}

/// `d = δ − δ̃`, `d(a) = a⊗1 − 1⊗a`.
pub fn flower_differential<S: Scalar>(alg: &StructAlgebra<S>) -> LinMap<S> {
    let (d, dt) = flower_maps(alg);
    d.sub(&dt).expect("same degrees")
}

/// `□′ = δ⊗δ − δ⊗δ̃ − δ̃⊗δ + δ̃⊗δ̃`, degree `2 → 4`.
pub fn carre_prime<S: Scalar>(alg: &StructAlgebra<S>) -> LinMap<S> {
    let (d, dt) = flower_maps(alg);
    d.tensor(&d)
        .sub(&d.tensor(&dt))
        .and_then(|m| m.sub(&dt.tensor(&d)))
        .and_then(|m| m.add(&dt.tensor(&dt)))
        .expect("same degrees")
}

/// `□_{*n} = Ξ_n∘(d⊗id^{⊗(n−2)}⊗d)`, degree `n → n+2` (`Ξ_n` regroups without changing words).
pub fn carre_star_n<S: Scalar>(alg: &StructAlgebra<S>, n: usize) -> Result<LinMap<S>> {
    if n < 2 {
        return Err(Error::Argument("□_{*n} needs n >= 2".into()));
    }
    let d = flower_differential(alg);
    Ok(d.tensor(&LinMap::identity(n - 2)).tensor(&d))
}

/// `Ξ_n∘(δ⊗id^{⊗(n−2)}⊗δ̃)`: `(a₀,…,a_{n−1}) ↦ a₀⊗(1,a₁,…,a_{n−2},1)⊗a_{n−1}`.
pub fn carre_star_selected<S: Scalar>(alg: &StructAlgebra<S>, n: usize) -> Result<LinMap<S>> {
    if n < 2 {
        return Err(Error::Argument("□_{*n} needs n >= 2".into()));
    }
    let (d, dt) = flower_maps(alg);
    Ok(d.tensor(&LinMap::identity(n - 2)).tensor(&dt))
}

/// The projection `J` on `A⊗A^{⊗n}⊗A` keeping words whose middle block starts and
/// ends with the unit, with the sign that turns `□_{*n}` into its selected term.
pub fn projection_j<S: Scalar>(alg: &StructAlgebra<S>, n: usize) -> Result<LinMap<S>> {
    let u = alg
        .unit_symbol()
        .ok_or_else(|| Error::Precondition("J needs a unit symbol".into()))?;
    Ok(LinMap::new(n + 2, n + 2, move |w| {
        Ok(if w[1] == u && w[n] == u { Vect::term(Word::from_slice(w), -S::one()) } else { Vect::zero(n + 2) })
    }))
}

/// `W_n = (m⊗id^{⊗(n−3)}⊗m)(id⊗b′_n⊗id)`, degree `n+2 → n−1`.
pub fn contraction_w<S: Scalar>(alg: &StructAlgebra<S>, n: usize) -> Result<LinMap<S>> {
    let bp = hochschild_bprime(alg, n)?.padded(1, 1);
    let a = alg.clone();
    let outer = if n == 2 {
        LinMap::new(3, 1, move |w| a.mul_all(&[&Vect::sym(w[0]), &Vect::sym(w[1]), &Vect::sym(w[2])]))
    } else {
        let m = a.mul_map();
        m.tensor(&LinMap::identity(n - 3)).tensor(&m)
    };
    outer.after(&bp)
}

/// `b′_{*n} = □_{*(n−1)}∘W_n∘J`, degree `n+2 → n+1`, for `n >= 3`.
pub fn bprime_star<S: Scalar>(alg: &StructAlgebra<S>, n: usize) -> Result<LinMap<S>> {
    if n < 3 {
        return Err(Error::Argument("b′_{*n} needs n >= 3".into()));
    }
    carre_star_n(alg, n - 1)?.after(&contraction_w(alg, n)?)?.after(&projection_j(alg, n)?)
}

/// `b′_{*n}∘□_{*n}` with `J` selecting the `(δ⊗…⊗δ̃)` term of the expansion of `□_{*n}`,
/// that is `□_{*(n−1)}∘W_n`, to be applied after `Ξ_n(δ⊗id⊗…⊗δ̃)`. Degree `n+2 → n+1`.
pub fn bprime_star_on_carre<S: Scalar>(alg: &StructAlgebra<S>, n: usize) -> Result<LinMap<S>> {
    if n < 3 {
        return Err(Error::Argument("b′_{*n} needs n >= 3".into()));
    }
    carre_star_n(alg, n - 1)?.after(&contraction_w(alg, n)?)
}

/// Words of length `n` to check: all of them, or a seeded sample past [`ENUMERATION_LIMIT`].
pub fn check_words(dim: usize, n: usize, seed: u64) -> (Vec<Word>, bool) {
    let total = (dim as f64).powi(n as i32);
    if total <= ENUMERATION_LIMIT as f64 {
        (all_words(dim, n), true)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let words = (0..SAMPLE_SIZE).map(|_| (0..n).map(|_| rng.gen_range(0..dim as Sym)).collect()).collect();
        (words, false)
    }
}

/// `f_2 = ω`, `f_3 = δ̂ω`, and for `N >= 4` the displayed sums of `ρ^{2k}δ̂ωρ^{…}`
/// (plus `ρ^{N−2}ω` for even `N`). Index `k` of the result holds `f_k`; entries 0 and 1 are empty.
pub fn f_family<S: Scalar>(alg: &StructAlgebra<S>, rho: &LinOp<S>, n_max: usize) -> Result<Vec<Option<Cochain<S>>>> {
    let r = Cochain::from_linop(rho, alg.dim())?;
    let omega = curvature(alg, rho)?;
    let dw = omega.delta_hat(alg)?;
    let mut powers: Vec<Option<Cochain<S>>> = vec![None];
    for k in 1..=n_max {
        powers.push(Some(r.pow(k, alg)?));
    }
    let p = |k: usize| powers[k].clone().expect("k >= 1");
    // ρ^a · X · ρ^b with a or b possibly zero
    let sandwich = |a: usize, x: &Cochain<S>, b: usize| -> Result<Cochain<S>> {
        let mut c = x.clone();
        if a > 0 {
            c = p(a).mul(&c, alg)?;
        }
        if b > 0 {
            c = c.mul(&p(b), alg)?;
        }
        Ok(c)
    };
    let mut out: Vec<Option<Cochain<S>>> = vec![None, None];
    for big_n in 2..=n_max {
        let f = match big_n {
            2 => omega.clone(),
            3 => dw.clone(),
            _ if big_n % 2 == 0 => {
                let n = big_n / 2;
                let mut acc = sandwich(2 * (n - 1), &omega, 0)?;
                for k in 0..=n - 2 {
                    acc = acc.add(&sandwich(2 * k, &dw, 2 * n - 3 - 2 * k)?)?;
                }
                acc
            }
            _ => {
                let n = (big_n - 1) / 2;
                let mut acc = Cochain::zero(big_n, alg.dim());
                for k in 0..=n - 1 {
                    acc = acc.add(&sandwich(2 * k, &dw, 2 * n - 2 - 2 * k)?)?;
                }
                acc
            }
        };
        out.push(Some(f));
    }
    Ok(out)
}

/// The sign correction `f′_N = −f_N` for `N ≡ 0, 1 (mod 4)`, `N >= 4`.
pub fn corrected_sign<S: Scalar>(n: usize) -> S {
    if n >= 4 && (n.is_multiple_of(4) || n % 4 == 1) {
        -S::one()
    } else {
        S::one()
    }
}

/// Verifies the `f_n` cochain complex for an Ito map `ρ` up to arity `n_max` (at most 6).
pub fn cochain_complex_fn<S: Scalar>(alg: &StructAlgebra<S>, rho: &LinOp<S>, n_max: usize, seed: u64) -> Result<AxiomReport> {
    if !(2..=6).contains(&n_max) {
        return Err(Error::Argument(format!("n_max must lie in 2..=6, got {n_max}")));
    }
    let mut r = AxiomReport::new();
    let class = classify_map(rho, alg)?;
    if !class.holds.contains(&MapClass::ItoDerivative) {
        let w = class.report.get("ito_derivative").and_then(|c| c.witness.clone()).unwrap_or_default();
        r.push(Check::fail("precondition", "ρ is an Ito derivative", w));
        return Ok(r);
    }
    let dim = alg.dim();
    let rc = Cochain::from_linop(rho, dim)?;
    let omega = class.curvature.clone();
    let dw = omega.delta_hat(alg)?;
    let show = |w: &[Sym]| alg.basis.word_text(w);

    // a₀ρ(a₁)ρ(a₂) = ω(a₀,a₁)ρ(a₂) − ρ(a₀)ω(a₁,a₂) + ρ(a₀)ρ(a₁)a₂
    let mut bad = None;
    for w in all_words(dim, 3) {
        let (a0, a2) = (Vect::<S>::sym(w[0]), Vect::<S>::sym(w[2]));
        let (r0, r1, r2) = (rc.eval(&w[..1]), rc.eval(&w[1..2]), rc.eval(&w[2..]));
        let lhs = alg.mul_all(&[&a0, r1, r2])?;
        let rhs = alg
            .mul(omega.eval(&w[..2]), r2)?
            .sub(&alg.mul(r0, omega.eval(&w[1..]))?)?
            .add(&alg.mul_all(&[r0, r1, &a2])?)?;
        if lhs != rhs {
            bad = Some(show(&w));
            break;
        }
    }
    r.push(Check::from_result("three_term_split", "a₀ρ(a₁)ρ(a₂) = ω(a₀,a₁)ρ(a₂) − ρ(a₀)ω(a₁,a₂) + ρ(a₀)ρ(a₁)a₂", bad));

    let bracket = rc.mul(&omega, alg)?.sub(&omega.mul(&rc, alg)?)?;
    r.push(Check::from_result(
        "bianchi",
        "δ̂ω = −[ρ, ω]",
        dw.add(&bracket)?.first_difference(&Cochain::zero(3, dim)).map(|w| show(&w)),
    ));
    let curv = rc.delta_hat(alg)?.add(&rc.pow(2, alg)?)?;
    r.push(Check::from_result("curvature_formula", "ω = δ̂ρ + ρ²", curv.first_difference(&omega).map(|w| show(&w))));

    let f = f_family(alg, rho, n_max)?;
    let get = |k: usize| f[k].clone().expect("k >= 2");
    let corrected = |k: usize| -> Cochain<S> {
        let c = get(k);
        if corrected_sign::<S>(k) == S::one() {
            c
        } else {
            c.neg()
        }
    };
    for n in 2..=n_max {
        let (words, exhaustive) = check_words(dim, n, seed.wrapping_add(n as u64));
        let map = get(n).tilde(alg).after(&carre_star_n(alg, n)?)?;
        let mut bad = None;
        for w in &words {
            if !map.apply_word(w)?.is_zero() {
                bad = Some(show(w));
                break;
            }
        }
        let mut c = Check::from_result(format!("f_tilde_carre_star({n})"), "f̃_n□_{*n} = 0", bad);
        if !exhaustive {
            c = c.with_note(format!("{} sampled tuples", words.len()));
        }
        r.push(c);
    }
    for k in 2..n_max {
        let next = corrected(k + 1);
        let d = corrected(k).delta_hat(alg)?;
        if k % 2 == 0 {
            r.push(Check::from_result(
                format!("delta_f_even({k})"),
                "δ̂f_{2n} = f_{2n+1}",
                d.first_difference(&next).map(|w| show(&w)),
            ));
            let raw = get(k).delta_hat(alg)?;
            let raw_ok = raw.first_difference(&get(k + 1)).is_none();
            r.push(
                Check::from_result(
                    format!("delta_f_even_uncorrected({k})"),
                    "δ̂f_{2n} = f_{2n+1} before the sign correction",
                    (!raw_ok).then(|| "differs by sign".to_string()),
                )
                .informational(),
            );
        } else {
            r.push(Check::from_result(
                format!("delta_f_odd({k})"),
                "δ̂f_{2n+1} = 0",
                (!d.is_zero()).then(|| "nonzero".to_string()),
            ));
        }
    }
    for k in (5..=n_max).step_by(2) {
        let target = rc.pow(k - 1, alg)?.delta_hat(alg)?;
        let plus = target.first_difference(&get(k)).is_none();
        let minus = target.first_difference(&get(k).neg()).is_none();
        let witness = match (plus, minus) {
            (true, _) => None,
            (false, true) => Some("holds up to sign".to_string()),
            (false, false) => target.first_difference(&get(k)).map(|w| show(&w)),
        };
        r.push(Check::from_result(format!("f_odd_exact({k})"), "f_{2n+1} = δ̂(ρ^{2n})", witness));
    }
    let lhs = rc.mul(&omega, alg)?.delta_hat(alg)?;
    let rhs = rc.delta_hat(alg)?.mul(&omega, alg)?.sub(&rc.mul(&dw, alg)?)?;
    r.push(Check::from_result(
        "graded_leibniz",
        "δ̂(fg) = δ̂f·g + (−1)^p f·δ̂g",
        lhs.first_difference(&rhs).map(|w| show(&w)),
    ));

    let unit = alg.unit_symbol();
    for n in 3..=n_max.min(5) {
        let (words, _) = check_words(dim, n, seed.wrapping_add(100 + n as u64));
        let lemma = contraction_w(alg, n)?.after(&carre_star_selected(alg, n)?)?;
        let bp = hochschild_bprime(alg, n)?;
        r.push(Check::from_result(
            format!("bprime_star_lemma({n})"),
            "W_n Ξ(δ⊗…⊗δ̃) = b′_n",
            lemma.agrees_on(&bp, &words)?.map(|(w, _, _)| show(&w)),
        ));
        let lhs = bprime_star(alg, n)?.after(&carre_star_n(alg, n)?)?;
        let rhs = carre_star_n(alg, n - 1)?.after(&bp)?;
        let generic: Vec<Word> = words.iter().filter(|w| unit.is_none_or(|u| w[0] != u && w[n - 1] != u)).cloned().collect();
        r.push(Check::from_result(
            format!("bprime_star_square({n})"),
            "b′_{*n}□_{*n} = □_{*(n−1)}b′_n on words without unit borders",
            lhs.agrees_on(&rhs, &generic)?.map(|(w, _, _)| show(&w)),
        ));
        r.push(
            Check::from_result(
                format!("bprime_star_square_all({n})"),
                "b′_{*n}□_{*n} = □_{*(n−1)}b′_n on all words",
                lhs.agrees_on(&rhs, &words)?.map(|(w, _, _)| show(&w)),
            )
            .informational(),
        );
        if n < n_max.min(5) {
            let (words1, _) = check_words(dim, n + 1, seed.wrapping_add(200 + n as u64));
            let formal = bprime_star_on_carre(alg, n)?
                .after(&carre_star_selected(alg, n)?)?
                .after(&contraction_w(alg, n + 1)?)?
                .after(&carre_star_selected(alg, n + 1)?)?;
            let projected = bprime_star(alg, n)?.after(&bprime_star(alg, n + 1)?)?.after(&carre_star_n(alg, n + 1)?)?;
            let first_nonzero = |m: &LinMap<S>| -> Result<Option<String>> {
                for w in &words1 {
                    if !m.apply_word(w)?.is_zero() {
                        return Ok(Some(show(w)));
                    }
                }
                Ok(None)
            };
            r.push(Check::from_result(
                format!("bprime_star_complex({n})"),
                "b′_{*n}b′_{*(n+1)} = 0 with J selecting the (δ⊗…⊗δ̃) term",
                first_nonzero(&formal)?,
            ));
            r.push(
                Check::from_result(
                    format!("bprime_star_complex_word_projection({n})"),
                    "b′_{*n}b′_{*(n+1)}□_{*(n+1)} = 0 with J as a word projection",
                    first_nonzero(&projected)?,
                )
                .informational(),
            );
        }
    }
    Ok(r)
}

/// `x⋆(y·z) − (x⋆y)·(x⋆z) = (x⋆y)·z + y·(x⋆z)` with `x⋆b = ρ_u(b)` on all basis pairs.
pub fn conjugation_ito_identity<S: Scalar>(alg: &StructAlgebra<S>, u: &Vect<S>) -> Result<AxiomReport> {
    let rho = conjugation_ito(alg, u)?;
    let mut r = AxiomReport::new();
    let bad = first_bad_pair(alg, |y, z| {
        let (ry, rz) = (rho.apply_word(&[y])?, rho.apply_word(&[z])?);
        let lhs = rho.apply(alg.mul_sym(y, z))?.sub(&alg.mul(&ry, &rz)?)?;
        let rhs = alg.mul(&ry, &Vect::sym(z))?.add(&alg.mul(&Vect::sym(y), &rz)?)?;
        Ok(lhs == rhs)
    })?;
    r.push(Check::from_result("conjugation_ito_identity", "x⋆(yz) − (x⋆y)(x⋆z) = (x⋆y)z + y(x⋆z)", bad));
    let rz = rho.apply(&alg.unit_vect())?;
    r.push(Check::from_result("conjugation_ito_unit", "ρ_u(1) = 0", (!rz.is_zero()).then(|| "ρ_u(1) ≠ 0".into())));
    Ok(r)
}

/// `[x, y]_G = Δ(x)Δ̃(y) − Δ(y)Δ̃(x)`.
pub fn commutator<S: Scalar>(c: &LCoalgebra<S>, alg: &StructAlgebra<S>, x: &Vect<S>, y: &Vect<S>) -> Result<Vect<S>> {
    let (dx, dy) = (c.right.apply(x)?, c.right.apply(y)?);
    let (tx, ty) = (c.left.apply(x)?, c.left.apply(y)?);
    alg.mul_tensor(&dx, &ty)?.sub(&alg.mul_tensor(&dy, &tx)?)
}

/// Differentials `Δ − Δ̃` and the commutator identities of a degree-1 L-bialgebra.
pub fn lbialgebra_differentials<S: Scalar>(c: &LCoalgebra<S>, alg: &StructAlgebra<S>) -> Result<AxiomReport> {
    let mut r = AxiomReport::new();
    let pre = check_bialgebra_hopf(c, alg, None, None);
    for name in ["right_multiplicative", "left_multiplicative"] {
        if !pre.passed(name) {
            let w = pre.get(name).and_then(|c| c.witness.clone()).unwrap_or_default();
            r.push(Check::fail("precondition", "Δ, Δ̃ multiplicative", format!("{name}: {w}")));
            return Ok(r);
        }
    }
    let d = c.right.sub(&c.left)?;
    let n = alg.dim() as Sym;
    let (dd, dt) = (&c.right, &c.left);
    let m2 = |a: &Vect<S>, b: &Vect<S>| alg.mul_tensor(a, b);
    let img = |f: &LinMap<S>, s: Sym| f.apply_word(&[s]);
    let pair = |x: Sym, y: Sym| format!("on ({}, {})", alg.basis.name(x), alg.basis.name(y));

    let mut leib = None;
    let mut ito = None;
    'outer: for a in 0..n {
        for b in 0..n {
            let dab = d.apply(alg.mul_sym(a, b))?;
            let lrhs = m2(&img(dd, a)?, &img(&d, b)?)?.add(&m2(&img(&d, a)?, &img(dt, b)?)?)?;
            if leib.is_none() && dab != lrhs {
                leib = Some(pair(a, b));
            }
            let irhs = m2(&img(&d, a)?, &img(&d, b)?)?
                .add(&m2(&img(&d, a)?, &img(dt, b)?)?)?
                .add(&m2(&img(dt, a)?, &img(&d, b)?)?)?;
            if ito.is_none() && dab != irhs {
                ito = Some(pair(a, b));
            }
            if leib.is_some() && ito.is_some() {
                break 'outer;
            }
        }
    }
    r.push(Check::from_result("leibnitz_differential", "d̄(ab) = a·d̄(b) + d̄(a)·b", leib));
    r.push(Check::from_result("ito_differential", "d̂(u)d̂(v) = d̂(uv) − d̂(u)·v − u·d̂(v)", ito));

    let br = |x: Sym, y: Sym| commutator(c, alg, &Vect::sym(x), &Vect::sym(y));
    let mut alt = None;
    for x in 0..n {
        if !br(x, x)?.is_zero() {
            alt = Some(alg.basis.name(x).to_string());
            break;
        }
    }
    r.push(Check::from_result("commutator_alternating", "[x, x]_G = 0", alt));

    let mut bil = None;
    'bil: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lam = S::from_ratio(3, 2);
                let mut v = Vect::sym(y);
                v.add_term(word(&[z]), lam.clone());
                let lhs = commutator(c, alg, &Vect::sym(x), &v)?;
                let mut rhs = br(x, y)?;
                rhs.add_scaled(&br(x, z)?, &lam)?;
                if lhs != rhs {
                    bil = Some(format!("on ({}, {}, {})", alg.basis.name(x), alg.basis.name(y), alg.basis.name(z)));
                    break 'bil;
                }
            }
        }
    }
    r.push(Check::from_result("commutator_bilinear", "[x, y + λz]_G = [x, y]_G + λ[x, z]_G", bil));

    // left action a·X = Δ(a)X, right action X·a = XΔ̃(a)
    let mut right_rule = None;
    let mut left_rule = None;
    'triples: for x in 0..n {
        for y in 0..n {
            for a in 0..n {
                let (xv, yv) = (Vect::<S>::sym(x), Vect::<S>::sym(y));
                let lhs = commutator(c, alg, &xv, alg.mul_sym(y, a))?;
                let rhs = m2(&br(x, y)?, &img(dt, a)?)?
                    .add(&m2(&img(dd, y)?, &br(x, a)?)?)?
                    .sub(&m2(&m2(&img(dd, y)?, &d.apply(&xv)?)?, &img(dt, a)?)?)?;
                if right_rule.is_none() && lhs != rhs {
                    right_rule = Some(format!("on ({}, {}, {})", alg.basis.name(x), alg.basis.name(y), alg.basis.name(a)));
                }
                // [xb, y]_G = [x, y]_G·b + x·[b, y]_G + x·(dy)·b with b = a
                let lhs = commutator(c, alg, alg.mul_sym(x, a), &yv)?;
                let rhs = m2(&br(x, y)?, &img(dt, a)?)?
                    .add(&m2(&img(dd, x)?, &br(a, y)?)?)?
                    .add(&m2(&m2(&img(dd, x)?, &d.apply(&yv)?)?, &img(dt, a)?)?)?;
                if left_rule.is_none() && lhs != rhs {
                    left_rule = Some(format!("on ({}, {}, {})", alg.basis.name(x), alg.basis.name(a), alg.basis.name(y)));
                }
                if right_rule.is_some() && left_rule.is_some() {
                    break 'triples;
                }
            }
        }
    }
    r.push(Check::from_result("commutator_right_rule", "[x, ya]_G = [x, y]_G·a + y·[x, a]_G − y·(dx)·a", right_rule));
    r.push(Check::from_result("commutator_left_rule", "[xb, y]_G = [x, y]_G·b + x·[b, y]_G + x·(dy)·b", left_rule));
    Ok(r)
}

/// `δ_{R,n}(a₁,…,aₙ) = (a₁,…,aₙ)⊗a₁`.
pub fn delta_r<S: Scalar>(n: usize) -> LinMap<S> {
    LinMap::new(n, n + 1, |w| {
        let mut v: Word = Word::from_slice(w);
        v.push(w[0]);
        Ok(Vect::basis_word(&v))
    })
}

/// `δ_{L,n}(a₁,…,aₙ) = aₙ⊗(a₁,…,aₙ)`.
pub fn delta_l<S: Scalar>(n: usize) -> LinMap<S> {
    LinMap::new(n, n + 1, |w| {
        let mut v: Word = word(&[w[w.len() - 1]]);
        v.extend_from_slice(w);
        Ok(Vect::basis_word(&v))
    })
}

/// Virtual petals on `G^{⊗n}` for a degree-1 Markov L-bialgebra.
pub fn virtual_petals<S: Scalar>(c: &LCoalgebra<S>, alg: &StructAlgebra<S>, n: usize) -> Result<AxiomReport> {
    if !(2..=4).contains(&n) {
        return Err(Error::Argument(format!("virtual petals need 2 <= n <= 4, got {n}")));
    }
    if c.degree != 1 {
        return Err(Error::Argument("virtual petals start from a degree-1 structure".into()));
    }
    let mut r = AxiomReport::new();
    let words = all_words(alg.dim(), n);
    let mut lifted = c.lift_degree_n(n, false)?;
    lifted.right = tabulate_words(&lifted.right, &words)?;
    lifted.left = tabulate_words(&lifted.left, &words)?;
    let pre = check_bialgebra_hopf(&lifted, alg, None, None);
    let mut precondition_ok = true;
    for name in ["right_multiplicative", "left_multiplicative"] {
        if !pre.passed(name) {
            precondition_ok = false;
            let w = pre.get(name).and_then(|c| c.witness.clone()).unwrap_or_default();
            r.push(Check::fail(format!("precondition_{name}"), "Δ_n, Δ̃_n multiplicative", w));
        }
    }
    let mark = |c: Check| if precondition_ok { c } else { c.informational() };
    let show = |w: &[Sym]| alg.basis.word_text(w);
    let (dr, dl) = (tabulate_words(&delta_r::<S>(n), &words)?, tabulate_words(&delta_l::<S>(n), &words)?);

    let sq_l = dl.padded(0, 1).after(&dr)?;
    let sq_r = dr.padded(1, 0).after(&dl)?;
    r.push(Check::from_result(
        "petal_square",
        "(δ_L⊗id)δ_R = (id⊗δ_R)δ_L",
        sq_l.agrees_on(&sq_r, &words)?.map(|(w, _, _)| show(&w)),
    ));
    let mut hom = None;
    'h: for x in &words {
        for y in &words {
            let xy = alg.mul_words(x, y);
            for f in [&dr, &dl] {
                if f.apply(&xy)? != alg.mul_tensor(&f.apply_word(x)?, &f.apply_word(y)?)? {
                    hom = Some(format!("on ({}, {})", show(x), show(y)));
                    break 'h;
                }
            }
        }
    }
    r.push(Check::from_result("petal_homomorphisms", "δ_R, δ_L multiplicative", hom));

    let d_right = tabulate_words(&lifted.right.sub(&dr)?, &words)?;
    let d_left = tabulate_words(&lifted.left.sub(&dl)?, &words)?;
    let b_l = d_left.padded(0, 1).after(&d_right)?;
    let b_r = d_right.padded(1, 0).after(&d_left)?;
    r.push(mark(Check::from_result(
        "petal_breaking_equation",
        "(d←⊗id)d→ = (id⊗d→)d←",
        b_l.agrees_on(&b_r, &words)?.map(|(w, _, _)| show(&w)),
    )));

    for (label, d, side) in [("right", &d_right, &dr), ("left", &d_left, &dl)] {
        let mut bad = None;
        'p: for x in &words {
            for y in &words {
                let lhs = d.apply(&alg.mul_words(x, y))?;
                let (dx, dy) = (d.apply_word(x)?, d.apply_word(y)?);
                let rhs = alg
                    .mul_tensor(&dx, &dy)?
                    .add(&alg.mul_tensor(&dx, &side.apply_word(y)?)?)?
                    .add(&alg.mul_tensor(&side.apply_word(x)?, &dy)?)?;
                if lhs != rhs {
                    bad = Some(format!("on ({}, {})", show(x), show(y)));
                    break 'p;
                }
            }
        }
        r.push(mark(Check::from_result(format!("petal_ito_{label}"), "d(xy) = d(x)d(y) + d(x)·y + x·d(y)", bad)));
    }

    let mut orbits = Vec::new();
    let mut iff = None;
    for w in &words {
        let is_orbit = lifted.right.apply_word(w)? == dr.apply_word(w)? && lifted.left.apply_word(w)? == dl.apply_word(w)?;
        let (a, b) = (d_right.apply_word(w)?, d_left.apply_word(w)?);
        if is_orbit {
            orbits.push(show(w));
            if !a.is_zero() || !b.is_zero() {
                iff = Some(format!("nonzero on orbit {}", show(w)));
            }
        } else if a == b && iff.is_none() {
            iff = Some(format!("d→ = d← on non-orbit {}", show(w)));
        }
    }
    r.push(
        Check::from_result("petal_orbit_vanishing", "d→[w] = d←[w] = 0 exactly on period-n orbits", iff)
            .with_note(format!("orbits: [{}]", orbits.join(", "))),
    );
    Ok(r)
}

/// The coproducts `Δ_ω ω(x,y) = ω(x,y)⊗ω(x₁,y₁)` and `Δ̃_ω ω(x,y) = ω(x₀,y₀)⊗ω(x,y)`
/// on formal symbols `ω(x,y)`, with a check of whether they descend to the image of `ω`.
pub fn curvature_coproducts<S: Scalar>(
    c: &LCoalgebra<S>,
    alg: &StructAlgebra<S>,
    omega: &Cochain<S>,
    with_counits: bool,
) -> Result<(LCoalgebra<S>, AxiomReport)> {
    if c.basis.names() != alg.basis.names() {
        return Err(Error::Argument("coalgebra and algebra must share a basis".into()));
    }
    let pairs = tensor_product_lc(c, c)?;
    let names: Vec<String> = pairs.basis.names().iter().map(|p| format!("ω{p}")).collect();
    let basis = Arc::new(Basis::new(names)?);
    let mut formal = LCoalgebra::new(format!("curvature({})", c.name), basis, 1, pairs.right.clone(), pairs.left.clone());
    if with_counits {
        let e = LinMap::on_symbols(0, |_| Ok(Vect::scalar(S::one())));
        formal = formal.with_counits(Some(e.clone()), Some(e));
    }
    let mut r = formal.check_axioms();
    let nd = c.basis.len() as Sym;
    let om = omega.clone();
    let push = LinMap::on_symbols(1, move |p| Ok(om.eval(&[p / nd, p % nd]).clone()));
    let domain = all_words(formal.basis.len(), 1);
    let kernel = kernel_on(&push, &domain)?;
    let pp = push.tensor(&push);
    let mut bad = None;
    for v in &kernel {
        for (label, f) in [("Δ_ω", &formal.right), ("Δ̃_ω", &formal.left)] {
            if !pp.apply(&f.apply(v)?)?.is_zero() {
                bad = Some(format!("{label} does not vanish on ker ω ({} kernel vectors)", kernel.len()));
            }
        }
    }
    r.push(Check::from_result("descends_to_image", "ker ω ⊂ ker (ω⊗ω)Δ_ω", bad).informational());
    Ok((formal, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::{group_algebra, m2_pauli, quaternions, TriangleHopf2};
    use crate::scalar::{q, qi, Q, Qi};
    use proptest::prelude::*;

    fn h() -> StructAlgebra<Q> {
        quaternions()
    }

    #[test]
    fn identity_is_a_homomorphism() {
        let a = h();
        let c = classify_map(&LinMap::identity(1), &a).unwrap();
        assert_eq!(c.primary, MapClass::Homomorphism);
        assert!(c.curvature.is_zero());
        let zero = ito_hom_bijection(&LinMap::identity(1), &a, Direction::ToIto).unwrap();
        assert!(zero.apply_word(&[1]).unwrap().is_zero());
    }

    #[test]
    fn inner_derivation_on_pauli_is_leibnitz() {
        let a = m2_pauli();
        let hh = a.elem(&[("u0", qi(1, 0)), ("u2", qi(0, 2))]).unwrap();
        let d = inner_derivation(&a, &hh);
        let c = classify_map(&d, &a).unwrap();
        assert_eq!(c.primary, MapClass::LeibnitzDerivative);
        assert!(carre_star_check(&derivation_cochain(&a, &d).unwrap(), &a).unwrap().passed);
    }

    #[test]
    fn conjugation_minus_id_is_ito() {
        let a = h();
        let u = a.parse_elem("1 + i").unwrap();
        let rho = conjugation_ito(&a, &u).unwrap();
        let c = classify_map(&rho, &a).unwrap();
        assert_eq!(c.primary, MapClass::ItoDerivative);
        for name in ["ito_derivative", "ito_curvature", "ito_curvature_on_unit"] {
            assert!(c.report.passed(name), "{}", c.report);
        }
        let back = ito_hom_bijection(&rho, &a, Direction::ToHom).unwrap();
        let conj = conjugation(&a, &u).unwrap();
        assert!(back.agrees_on(&conj, &all_words(4, 1)).unwrap().is_none());
        let again = ito_hom_bijection(&back, &a, Direction::ToIto).unwrap();
        assert!(again.agrees_on(&rho, &all_words(4, 1)).unwrap().is_none());
        assert!(matches!(ito_hom_bijection(&rho, &a, Direction::ToIto), Err(Error::Precondition(_))));
    }

    #[test]
    fn carre_star_examples() {
        let a = h();
        let u = a.parse_elem("1 + j").unwrap();
        let hom = conjugation(&a, &u).unwrap();
        let ito = conjugation_ito(&a, &u).unwrap();
        let der = inner_derivation(&a, &a.parse_elem("k").unwrap());
        let r = carre_star_classes(&a, &hom, &ito, &der).unwrap();
        assert!(r.ok(), "{r}");
        assert!(gauge_invariance(&a, &ito).unwrap().passed);
        assert_eq!(converse_class(&a, &hom).unwrap(), MapClass::Homomorphism);
        assert_eq!(converse_class(&a, &ito).unwrap(), MapClass::ItoDerivative);
        // a map that is neither
        let scale = LinMap::identity(1).scale(q(2));
        assert_eq!(converse_class(&a, &scale).unwrap(), MapClass::NoneOfThese);
    }

    #[test]
    fn carre_prime_is_d_tensor_d_and_kills_d() {
        let a = h();
        let d = flower_differential(&a);
        let cp = carre_prime(&a);
        assert!(cp.agrees_on(&d.tensor(&d), &all_words(4, 2)).unwrap().is_none());
        let comp = cp.after(&d).unwrap();
        for w in all_words(4, 1) {
            assert!(comp.apply_word(&w).unwrap().is_zero());
        }
    }

    #[test]
    fn cochain_sign_conventions() {
        let a = h();
        let u = a.parse_elem("1 + i + j").unwrap();
        let rho = conjugation_ito(&a, &u).unwrap();
        let r = Cochain::from_linop(&rho, 4).unwrap();
        let omega = curvature(&a, &rho).unwrap();
        let sum = r.delta_hat(&a).unwrap().add(&r.pow(2, &a).unwrap()).unwrap();
        assert!(sum.first_difference(&omega).is_none());
        let dd = omega.delta_hat(&a).unwrap().delta_hat(&a).unwrap();
        assert!(dd.is_zero());
    }

    #[test]
    fn f_complex_on_quaternions() {
        let a = h();
        let u = a.parse_elem("2*1 + i + -1*k").unwrap();
        let rho = conjugation_ito(&a, &u).unwrap();
        let r = cochain_complex_fn(&a, &rho, 6, 7).unwrap();
        assert!(r.ok(), "{r}");
    }

    #[test]
    fn f_complex_rejects_non_ito() {
        let a = h();
        let r = cochain_complex_fn(&a, &LinMap::identity(1), 3, 0).unwrap();
        assert!(!r.passed("precondition"));
    }

    #[test]
    fn conjugation_identity_cases() {
        let a = h();
        let r = conjugation_ito_identity(&a, &a.unit_vect()).unwrap();
        assert!(r.ok());
        let r = conjugation_ito_identity(&a, &a.parse_elem("i").unwrap()).unwrap();
        assert!(r.ok());
        let p = m2_pauli();
        let u = p.elem(&[("1", qi(1, 1)), ("u1", qi(2, 0)), ("u2", qi(0, -1))]).unwrap();
        assert!(conjugation_ito_identity(&p, &u).unwrap().ok());
        let m = crate::algebra_core::pointer_space::<Q>(2).unwrap();
        assert!(conjugation_ito_identity(&m, &Vect::sym(0)).is_err());
    }

    #[test]
    fn flower_differentials_and_commutator() {
        let a = h();
        let c = crate::algebra_core::flower_lcoalgebra(&a, None).unwrap();
        let r = lbialgebra_differentials(&c, &a).unwrap();
        assert!(r.ok(), "{r}");
        let br = commutator(&c, &a, &Vect::sym(1), &Vect::sym(2)).unwrap();
        let mut expect = Vect::basis_word(&[1, 2]);
        expect.add_term(word(&[2, 1]), q(-1));
        assert_eq!(br, expect);
    }

    #[test]
    fn petals_on_quaternion_group_triangle() {
        let t = TriangleHopf2::<Q>::quaternion_group().unwrap();
        let deg1 = t.degree_one();
        assert!(virtual_petals(&deg1, &t.alg, 2).unwrap().ok());
        let r = virtual_petals(&deg1, &t.alg, 3).unwrap();
        assert!(r.ok(), "{r}");
        let note = r.get("petal_orbit_vanishing").unwrap().witness.clone().unwrap();
        assert!(note.contains("i⊗j⊗k"), "{note}");
    }

    #[test]
    fn petal_maps() {
        let dr = delta_r::<Q>(2);
        let dl = delta_l::<Q>(2);
        assert_eq!(dr.apply_word(&[0, 1]).unwrap(), Vect::basis_word(&[0, 1, 0]));
        assert_eq!(dl.apply_word(&[0, 1]).unwrap(), Vect::basis_word(&[1, 0, 1]));
    }

    #[test]
    fn curvature_coproducts_break_correctly() {
        let a = h();
        let tri = TriangleHopf2::<Q>::quaternions().unwrap();
        let _ = tri;
        let next = [0u32, 2, 3, 1];
        let prev = [0u32, 3, 1, 2];
        let c = LCoalgebra::new(
            "tri",
            a.basis.clone(),
            1,
            LinMap::on_symbols(2, move |s| Ok(Vect::basis_word(&[s, next[s as usize]]))),
            LinMap::on_symbols(2, move |s| Ok(Vect::basis_word(&[prev[s as usize], s]))),
        );
        let rho = conjugation_ito(&a, &a.parse_elem("1 + i").unwrap()).unwrap();
        let w = curvature(&a, &rho).unwrap();
        let (_, r) = curvature_coproducts(&c, &a, &w, true).unwrap();
        assert!(r.passed("breaking_equation"));
        assert!(r.passed("right_counit") && r.passed("left_counit"));
    }

    #[test]
    fn group_algebra_ito_complex() {
        let a = group_algebra::<Q>(3).unwrap();
        // the automorphism g ↦ g² gives an Ito map
        let rho = LinMap::on_symbols(1, |s| Ok(Vect::sym((2 * s) % 3))).sub(&LinMap::identity(1)).unwrap();
        let r = cochain_complex_fn(&a, &rho, 4, 1).unwrap();
        assert!(r.ok(), "{r}");
    }

    #[test]
    fn pauli_complex_sampled() {
        let a = m2_pauli();
        let u = a.elem(&[("1", qi(1, 0)), ("u0", qi(0, 1)), ("u2", qi(1, 0))]).unwrap();
        let rho = conjugation_ito(&a, &u).unwrap();
        let r = cochain_complex_fn(&a, &rho, 4, 3).unwrap();
        assert!(r.ok(), "{r}");
        let _: Qi = qi(0, 0);
    }

    proptest! {
        #[test]
        fn bijection_roundtrip(c in prop::collection::vec(-3i64..4, 4)) {
            let a = h();
            let mut u = Vect::zero(1);
            for (s, &x) in c.iter().enumerate() {
                u.add_term(word(&[s as Sym]), q(x));
            }
            prop_assume!(!u.is_zero());
            let hom = conjugation(&a, &u).unwrap();
            let ito = ito_hom_bijection(&hom, &a, Direction::ToIto).unwrap();
            let back = ito_hom_bijection(&ito, &a, Direction::ToHom).unwrap();
            prop_assert!(back.agrees_on(&hom, &all_words(4, 1)).unwrap().is_none());
        }

        #[test]
        fn ito_curvature_formula(c in prop::collection::vec(-2i64..3, 4)) {
            let a = h();
            let mut u = Vect::zero(1);
            for (s, &x) in c.iter().enumerate() {
                u.add_term(word(&[s as Sym]), q(x));
            }
            prop_assume!(!u.is_zero());
            let rho = conjugation_ito(&a, &u).unwrap();
            let cl = classify_map(&rho, &a).unwrap();
            prop_assert!(cl.report.passed("ito_curvature"));
            prop_assert!(cl.report.passed("ito_curvature_on_unit"));
        }
    }
}
