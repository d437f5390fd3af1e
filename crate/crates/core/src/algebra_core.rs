//! Finite-dimensional unital algebras given by structure constants, the flower
//! graph of an algebra, Hochschild boundaries and the reading map of periodic
//! orbits, the `Δ − Δ_f` complex, and degree-2 triangle L-Hopf structures.

use std::sync::Arc;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph_model::WeightedDigraph;
use crate::lcoalgebra::{check_bialgebra_hopf, LCoalgebra};
use crate::report::{AxiomReport, Check};
use crate::scalar::{qi, sign, Qi, Scalar};
use crate::tensor_core::{all_words, coordinate_matrix, nullspace, solve, word, Basis, LinMap, Sym, Vect, Word};

/// A unital associative algebra on a symbolic basis, by structure constants.
#[derive(Clone, Debug)]
pub struct StructAlgebra<S> {
    pub name: String,
    pub basis: Arc<Basis>,
    unit: Vect<S>,
    /// `table[i*n + j] = e_i e_j`, a degree-1 vector.
    table: Vec<Vect<S>>,
}

impl<S: Scalar> StructAlgebra<S> {
    /// Builds an algebra and verifies associativity and the unit laws.
    pub fn new(name: impl Into<String>, basis: Basis, unit: Vect<S>, table: Vec<Vect<S>>) -> Result<Self> {
        let a = Self::new_unchecked(name, basis, unit, table)?;
        let r = a.check_axioms();
        if let Some(f) = r.failures().next() {
            return Err(Error::Validation(format!(
                "algebra '{}' fails {}: {}",
                a.name,
                f.name,
                f.witness.clone().unwrap_or_default()
            )));
        }
        Ok(a)
    }

    /// Builds without verifying the algebra laws (shape is still checked).
    pub fn new_unchecked(name: impl Into<String>, basis: Basis, unit: Vect<S>, table: Vec<Vect<S>>) -> Result<Self> {
        let n = basis.len();
        if table.len() != n * n {
            return Err(Error::Construction(format!("table has {} entries, expected {}", table.len(), n * n)));
        }
        for v in table.iter().chain(std::iter::once(&unit)) {
            v.check_degree(1)?;
        }
        Ok(StructAlgebra { name: name.into(), basis: Arc::new(basis), unit, table })
    }

    /// Structure constants from a product on symbols.
    pub fn from_fn(name: impl Into<String>, basis: Basis, unit: Vect<S>, f: impl Fn(Sym, Sym) -> Vect<S>) -> Result<Self> {
        let n = basis.len() as Sym;
        let table = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| f(i, j)).collect();
        StructAlgebra::new(name, basis, unit, table)
    }

    /// The algebra spanned by the given square matrices, which must be closed under
    /// products and contain the identity.
    pub fn from_matrices(name: impl Into<String>, names: &[&str], mats: &[Vec<Vec<S>>]) -> Result<Self> {
        let d = mats.first().map(|m| m.len()).unwrap_or(0);
        let flat = |m: &Vec<Vec<S>>| -> Vec<S> { m.iter().flatten().cloned().collect() };
        let cols: Vec<Vec<S>> = mats.iter().map(flat).collect();
        let rows: Vec<Vec<S>> = (0..d * d).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        let decompose = |m: &Vec<Vec<S>>| -> Result<Vect<S>> {
            let x = solve(&rows, mats.len(), &flat(m))
                .ok_or_else(|| Error::Construction("matrix products leave the span".into()))?;
            let mut v = Vect::zero(1);
            for (i, c) in x.into_iter().enumerate() {
                v.add_term(word(&[i as Sym]), c);
            }
            Ok(v)
        };
        let identity: Vec<Vec<S>> = (0..d).map(|i| (0..d).map(|j| if i == j { S::one() } else { S::zero() }).collect()).collect();
        let unit = decompose(&identity)?;
        let mut table = Vec::new();
        for a in mats {
            for b in mats {
                table.push(decompose(&mat_mul(a, b))?);
            }
        }
        let basis = match unit.terms().next() {
            Some((w, c)) if unit.len() == 1 && *c == S::one() => Basis::with_unit(names.iter().copied(), names[w[0] as usize])?,
            _ => Basis::new(names.iter().copied())?,
        };
        StructAlgebra::new(name, basis, unit, table)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn unit_vect(&self) -> Vect<S> {
        self.unit.clone()
    }

    /// The unit when it is a single basis symbol.
    pub fn unit_symbol(&self) -> Option<Sym> {
        match self.unit.terms().next() {
            Some((w, c)) if self.unit.len() == 1 && *c == S::one() => Some(w[0]),
            _ => None,
        }
    }

    /// `1^{⊗n}`; for `n = 0` the scalar 1.
    pub fn unit_power(&self, n: usize) -> Vect<S> {
        let mut v = Vect::scalar(S::one());
        for _ in 0..n {
            v = v.tensor(&self.unit);
        }
        v
    }

    pub fn sym(&self, name: &str) -> Result<Sym> {
        self.basis.sym(name)
    }

    /// `Σ c·name` as a degree-1 vector.
    pub fn elem(&self, terms: &[(&str, S)]) -> Result<Vect<S>> {
        let mut v = Vect::zero(1);
        for (n, c) in terms {
            v.add_term(word(&[self.sym(n)?]), c.clone());
        }
        Ok(v)
    }

    /// Parses `"2*i + -1/2*j + 1"` style combinations; `3i*u0` gives an imaginary coefficient.
    pub fn parse_elem(&self, text: &str) -> Result<Vect<S>> {
        let mut v = Vect::zero(1);
        for part in text.split('+').map(str::trim).filter(|p| !p.is_empty()) {
            let (c, n) = match part.rsplit_once('*') {
                Some((c, n)) => (parse_coeff::<S>(c)?, n.trim()),
                None => match part.strip_prefix('-') {
                    Some(n) => (-S::one(), n.trim()),
                    None => (S::one(), part),
                },
            };
            v.add_term(word(&[self.sym(n)?]), c);
        }
        Ok(v)
    }

    pub fn mul_sym(&self, a: Sym, b: Sym) -> &Vect<S> {
        &self.table[a as usize * self.dim() + b as usize]
    }

    pub fn mul(&self, x: &Vect<S>, y: &Vect<S>) -> Result<Vect<S>> {
        x.check_degree(1)?;
        y.check_degree(1)?;
        let mut out = Vect::zero(1);
        for (a, c) in x.terms() {
            for (b, d) in y.terms() {
                out.add_scaled(self.mul_sym(a[0], b[0]), &(c.clone() * d.clone()))?;
            }
        }
        Ok(out)
    }

    /// Product of several degree-1 elements, left to right.
    pub fn mul_all(&self, xs: &[&Vect<S>]) -> Result<Vect<S>> {
        let mut acc = self.unit.clone();
        for x in xs {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    /// Product of two basis words of equal length, factor by factor.
    pub fn mul_words(&self, u: &[Sym], w: &[Sym]) -> Vect<S> {
        let mut v = Vect::scalar(S::one());
        for (a, b) in u.iter().zip(w) {
            v = v.tensor(self.mul_sym(*a, *b));
        }
        v
    }

    /// Componentwise product on `A^{⊗n}`.
    pub fn mul_tensor(&self, x: &Vect<S>, y: &Vect<S>) -> Result<Vect<S>> {
        if x.degree() != y.degree() {
            return Err(Error::Degree { expected: x.degree(), found: y.degree() });
        }
        let mut out = Vect::zero(x.degree());
        for (u, c) in x.terms() {
            for (w, d) in y.terms() {
                out.add_scaled(&self.mul_words(u, w), &(c.clone() * d.clone()))?;
            }
        }
        Ok(out)
    }

    /// The product `m : A⊗A → A` as a linear map.
    pub fn mul_map(&self) -> LinMap<S> {
        let a = self.clone();
        LinMap::new(2, 1, move |w| Ok(a.mul_sym(w[0], w[1]).clone()))
    }

    /// `x ↦ u x v` as a linear map.
    pub fn sandwich(&self, u: &Vect<S>, v: &Vect<S>) -> LinMap<S> {
        let (a, u, v) = (self.clone(), u.clone(), v.clone());
        LinMap::new(1, 1, move |w| a.mul(&a.mul(&u, &Vect::basis_word(w))?, &v))
    }

    /// Inverse by exact solving of `x y = 1`; checks `y x = 1` too.
    pub fn inverse(&self, x: &Vect<S>) -> Result<Vect<S>> {
        let n = self.dim();
        let cols: Vec<Vect<S>> = (0..n as Sym).map(|j| self.mul(x, &Vect::sym(j))).collect::<Result<_>>()?;
        let rows: Vec<Vec<S>> = (0..n as Sym)
            .map(|i| cols.iter().map(|c| c.coeff(&[i])).collect())
            .collect();
        let rhs: Vec<S> = (0..n as Sym).map(|i| self.unit.coeff(&[i])).collect();
        let sol = solve(&rows, n, &rhs).ok_or_else(|| Error::NotInvertible(x.display(&self.basis).to_string()))?;
        let mut y = Vect::zero(1);
        for (i, c) in sol.into_iter().enumerate() {
            y.add_term(word(&[i as Sym]), c);
        }
        if self.mul(&y, x)? != self.unit {
            return Err(Error::NotInvertible(format!("{} has only a one-sided inverse", x.display(&self.basis))));
        }
        Ok(y)
    }

    /// Associativity and unit laws on all basis triples.
    pub fn check_axioms(&self) -> AxiomReport {
        let mut r = AxiomReport::new();
        let n = self.dim() as Sym;
        let mut assoc = None;
        'outer: for a in 0..n {
            for b in 0..n {
                let ab = self.mul_sym(a, b).clone();
                for c in 0..n {
                    let l = self.mul(&ab, &Vect::sym(c)).expect("degree 1");
                    let rr = self.mul(&Vect::sym(a), self.mul_sym(b, c)).expect("degree 1");
                    if l != rr {
                        assoc = Some(format!(
                            "({}{}){} ≠ {}({}{})",
                            self.basis.name(a),
                            self.basis.name(b),
                            self.basis.name(c),
                            self.basis.name(a),
                            self.basis.name(b),
                            self.basis.name(c)
                        ));
                        break 'outer;
                    }
                }
            }
        }
        r.push(Check::from_result("associativity", "m(m⊗id) = m(id⊗m)", assoc));
        let mut unit = None;
        for a in 0..n {
            let x = Vect::sym(a);
            if self.mul(&self.unit, &x).ok() != Some(x.clone()) || self.mul(&x, &self.unit).ok() != Some(x.clone()) {
                unit = Some(format!("1·{0} or {0}·1 differs from {0}", self.basis.name(a)));
                break;
            }
        }
        r.push(Check::from_result("unit", "1x = x1 = x", unit));
        r
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim() as Sym;
        (0..n).all(|a| (0..n).all(|b| self.mul_sym(a, b) == self.mul_sym(b, a)))
    }

    /// Loads `{ "basis": [...], "unit": "1", "table": [{"i","j","k","c"}] }`.
    pub fn from_json(name: &str, v: &Value) -> Result<Self> {
        let basis_names: Vec<String> = serde_json::from_value(
            v.get("basis").cloned().ok_or_else(|| Error::Parse("algebra: missing 'basis'".into()))?,
        )?;
        let unit_name = v
            .get("unit")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("algebra: missing 'unit'".into()))?;
        let basis = Basis::with_unit(basis_names, unit_name)?;
        let n = basis.len();
        let mut table = vec![Vect::zero(1); n * n];
        let entries = v
            .get("table")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("algebra: missing 'table'".into()))?;
        for e in entries {
            let get = |k: &str| -> Result<Sym> {
                let s = e.get(k).and_then(Value::as_str).ok_or_else(|| Error::Parse(format!("table entry missing '{k}'")))?;
                basis.sym(s)
            };
            let (i, j, k) = (get("i")?, get("j")?, get("k")?);
            let c = S::from_json(e.get("c").ok_or_else(|| Error::Parse("table entry missing 'c'".into()))?)?;
            table[i as usize * n + j as usize].add_term(word(&[k]), c);
        }
        let unit = Vect::sym(basis.sym(unit_name)?);
        StructAlgebra::new(name, basis, unit, table)
    }

    pub fn to_json(&self) -> Result<Value> {
        let u = self
            .unit_symbol()
            .ok_or_else(|| Error::Argument("only algebras with a unit symbol serialize".into()))?;
        let mut table = Vec::new();
        let n = self.dim() as Sym;
        for i in 0..n {
            for j in 0..n {
                for (k, c) in self.mul_sym(i, j).terms() {
                    table.push(serde_json::json!({
                        "i": self.basis.name(i), "j": self.basis.name(j), "k": self.basis.name(k[0]), "c": c.to_json()
                    }));
                }
            }
        }
        Ok(serde_json::json!({ "basis": self.basis.names(), "unit": self.basis.name(u), "table": table }))
    }

    /// A random element with small integer coefficients.
    pub fn random_elem<R: rand::Rng>(&self, rng: &mut R, range: i64) -> Vect<S> {
        let mut v = Vect::zero(1);
        for s in 0..self.dim() as Sym {
            v.add_term(word(&[s]), S::from_i64(rng.gen_range(-range..=range)));
        }
        v
    }
}

fn mat_mul<S: Scalar>(a: &[Vec<S>], b: &[Vec<S>]) -> Vec<Vec<S>> {
    let d = a.len();
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| (0..d).fold(S::zero(), |acc, k| acc + a[i][k].clone() * b[k][j].clone()))
                .collect()
        })
        .collect()
}

/// Quaternion units `1, i, j, k` as `(sign, index)` products.
fn quat_mul(a: usize, b: usize) -> (i64, usize) {
    const T: [[(i64, usize); 4]; 4] = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ];
    T[a][b]
}

/// The quaternions `ℍ = ⟨1, i, j, k⟩` with `ij = k, jk = i, ki = j, i² = j² = k² = −1`.
pub fn quaternions<S: Scalar>() -> StructAlgebra<S> {
    let basis = Basis::with_unit(["1", "i", "j", "k"], "1").expect("static basis");
    StructAlgebra::from_fn("quaternions", basis, Vect::sym(0), |a, b| {
        let (s, c) = quat_mul(a as usize, b as usize);
        Vect::term(word(&[c as Sym]), S::from_i64(s))
    })
    .expect("quaternions are associative")
}

/// The group algebra of the quaternion group `Q8 = {±1, ±i, ±j, ±k}`; `m` is `−1`.
pub fn quaternion_group<S: Scalar>() -> StructAlgebra<S> {
    const NAMES: [&str; 8] = ["e", "m", "i", "j", "k", "mi", "mj", "mk"];
    // element index ↔ (negated, unit index)
    let decode = |s: Sym| -> (bool, usize) {
        match s {
            0 => (false, 0),
            1 => (true, 0),
            2..=4 => (false, s as usize - 1),
            _ => (true, s as usize - 4),
        }
    };
    let encode = |neg: bool, u: usize| -> Sym {
        match (neg, u) {
            (false, 0) => 0,
            (true, 0) => 1,
            (false, u) => u as Sym + 1,
            (true, u) => u as Sym + 4,
        }
    };
    let basis = Basis::with_unit(NAMES, "e").expect("static basis");
    StructAlgebra::from_fn("quaternion_group", basis, Vect::sym(0), |a, b| {
        let ((na, ua), (nb, ub)) = (decode(a), decode(b));
        let (s, u) = quat_mul(ua, ub);
        Vect::sym(encode(na ^ nb ^ (s < 0), u))
    })
    .expect("group algebras are associative")
}

fn parse_coeff<S: Scalar>(c: &str) -> Result<S> {
    use crate::scalar::{parse_q, q};
    let c = c.trim();
    match c.strip_suffix('i') {
        Some(im) => {
            let im = match im.trim() {
                "" => q(1),
                "-" => q(-1),
                t => parse_q(t)?,
            };
            S::from_qi(&crate::scalar::Qi::new(q(0), im)).ok_or_else(|| Error::Parse(format!("coefficient '{c}' is not in the scalar field")))
        }
        None => Ok(S::from_q(parse_q(c)?)),
    }
}

/// `M₂(ℚ(i))` on `1, u0 = iγ1, u1 = iγ0, u2 = iγ2`, so that `u_α u_{α+1} = u_{α+2}`.
pub fn m2_pauli() -> StructAlgebra<Qi> {
    let m = |a: [[(i64, i64); 2]; 2]| -> Vec<Vec<Qi>> { a.iter().map(|r| r.iter().map(|&(x, y)| qi(x, y)).collect()).collect() };
    let one = m([[(1, 0), (0, 0)], [(0, 0), (1, 0)]]);
    // iγ1 = i·[[0,−i],[i,0]] = [[0,1],[−1,0]]
    let u0 = m([[(0, 0), (1, 0)], [(-1, 0), (0, 0)]]);
    // iγ0 = [[0,i],[i,0]]
    let u1 = m([[(0, 0), (0, 1)], [(0, 1), (0, 0)]]);
    // iγ2 = [[i,0],[0,−i]]
    let u2 = m([[(0, 1), (0, 0)], [(0, 0), (0, -1)]]);
    StructAlgebra::from_matrices("m2_pauli", &["1", "u0", "u1", "u2"], &[one, u0, u1, u2]).expect("Pauli basis spans M2")
}

/// The Pauli matrices `γ0, γ1, γ2` over `ℚ(i)`, for tests and traces.
pub fn pauli_gammas() -> [Vec<Vec<Qi>>; 3] {
    let m = |a: [[(i64, i64); 2]; 2]| -> Vec<Vec<Qi>> { a.iter().map(|r| r.iter().map(|&(x, y)| qi(x, y)).collect()).collect() };
    [
        m([[(0, 0), (1, 0)], [(1, 0), (0, 0)]]),
        m([[(0, 0), (0, -1)], [(0, 1), (0, 0)]]),
        m([[(1, 0), (0, 0)], [(0, 0), (-1, 0)]]),
    ]
}

/// The matrix of an element of [`m2_pauli`].
pub fn pauli_matrix(x: &Vect<Qi>) -> Vec<Vec<Qi>> {
    let [g0, g1, g2] = pauli_gammas();
    let i = qi(0, 1);
    let id: Vec<Vec<Qi>> = vec![vec![qi(1, 0), qi(0, 0)], vec![qi(0, 0), qi(1, 0)]];
    let mats = [id, g1, g0, g2];
    let mut out = vec![vec![qi(0, 0); 2]; 2];
    for (w, c) in x.terms() {
        let s = w[0] as usize;
        let f = if s == 0 { c.clone() } else { c.clone() * i.clone() };
        for r in 0..2 {
            for k in 0..2 {
                out[r][k] = out[r][k].clone() + f.clone() * mats[s][r][k].clone();
            }
        }
    }
    out
}

/// The group algebra of `ℤ_n` on `1, g, g2, ..., g(n−1)`.
pub fn group_algebra<S: Scalar>(n: usize) -> Result<StructAlgebra<S>> {
    if n == 0 {
        return Err(Error::Argument("group order must be positive".into()));
    }
    let names: Vec<String> = (0..n)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "g".to_string(),
            k => format!("g{k}"),
        })
        .collect();
    let basis = Basis::with_unit(names, "1")?;
    StructAlgebra::from_fn(format!("group_algebra:{n}"), basis, Vect::sym(0), move |a, b| {
        Vect::sym((a + b) % n as Sym)
    })
}

/// `M_n(k)` on matrix units `e11, e12, ...`; the unit `Σ e_ii` is not a basis symbol for `n > 1`.
pub fn pointer_space<S: Scalar>(n: usize) -> Result<StructAlgebra<S>> {
    if n == 0 {
        return Err(Error::Argument("matrix size must be positive".into()));
    }
    let names: Vec<String> = (0..n * n).map(|k| format!("e{}{}", k / n + 1, k % n + 1)).collect();
    let basis = if n == 1 { Basis::with_unit(names, "e11")? } else { Basis::new(names)? };
    let mut unit = Vect::zero(1);
    for i in 0..n {
        unit.add_term(word(&[(i * n + i) as Sym]), S::one());
    }
    StructAlgebra::from_fn(format!("pointer_space:{n}"), basis, unit, move |a, b| {
        let (i, j) = (a as usize / n, a as usize % n);
        let (k, l) = (b as usize / n, b as usize % n);
        if j == k {
            Vect::sym((i * n + l) as Sym)
        } else {
            Vect::zero(1)
        }
    })
}

/// The finite shadow of a Cuntz-Krieger family: orthogonal idempotents `P_v`, unit `Σ P_v`.
pub fn ck_shadow<S: Scalar>(g: &WeightedDigraph) -> Result<StructAlgebra<S>> {
    let names: Vec<String> = g.vertices.iter().map(|v| format!("P_{v}")).collect();
    let basis = Basis::new(names)?;
    let mut unit = Vect::zero(1);
    for s in basis.syms() {
        unit.add_term(word(&[s]), S::one());
    }
    StructAlgebra::from_fn("ck_shadow", basis, unit, |a, b| if a == b { Vect::sym(a) } else { Vect::zero(1) })
}

/// The Markov L-coalgebra `ΔP_v = Σ_{v₁} P_v⊗P_{v₁}` over distinct successors, no counits.
/// Requires a graph without sinks and loops.
pub fn ck_lcoalgebra<S: Scalar>(g: &WeightedDigraph) -> Result<(StructAlgebra<S>, LCoalgebra<S>)> {
    if let Some(s) = g.sinks().first() {
        return Err(Error::Precondition(format!("sink '{s}' in Cuntz-Krieger graph")));
    }
    if let Some(a) = g.arrows.iter().find(|a| a.src == a.dst) {
        return Err(Error::Precondition(format!("loop '{}' in Cuntz-Krieger graph", a.id)));
    }
    let alg = ck_shadow::<S>(g)?;
    let idx = |v: &str| g.vertices.iter().position(|x| x == v).expect("validated vertex") as Sym;
    let n = g.vertices.len();
    let mut right = vec![Vect::<S>::zero(2); n];
    let mut left = vec![Vect::<S>::zero(2); n];
    for a in &g.arrows {
        let (s, t) = (idx(&a.src), idx(&a.dst));
        if right[s as usize].coeff(&[s, t]).is_zero() {
            right[s as usize].add_term(word(&[s, t]), S::one());
        }
        if left[t as usize].coeff(&[s, t]).is_zero() {
            left[t as usize].add_term(word(&[s, t]), S::one());
        }
    }
    let (right, left) = (Arc::new(right), Arc::new(left));
    let c = LCoalgebra::new(
        "ck_shadow",
        alg.basis.clone(),
        1,
        LinMap::on_symbols(2, move |s| Ok(right[s as usize].clone())),
        LinMap::on_symbols(2, move |s| Ok(left[s as usize].clone())),
    );
    Ok((alg, c))
}

/// `δ(a) = a⊗1` and `δ̃(a) = 1⊗a`.
pub fn flower_maps<S: Scalar>(a: &StructAlgebra<S>) -> (LinMap<S>, LinMap<S>) {
    let (u, v) = (a.unit_vect(), a.unit_vect());
    (
        LinMap::on_symbols(2, move |s| Ok(Vect::sym(s).tensor(&u))),
        LinMap::on_symbols(2, move |s| Ok(v.tensor(&Vect::sym(s)))),
    )
}

/// The flower graph of `a`. Counits are attached only when a character
/// (values on basis symbols of a unital algebra map `A → k`) is supplied.
pub fn flower_lcoalgebra<S: Scalar>(a: &StructAlgebra<S>, character: Option<Vec<S>>) -> Result<LCoalgebra<S>> {
    let (d, dt) = flower_maps(a);
    let mut c = LCoalgebra::new(format!("flower({})", a.name), a.basis.clone(), 1, d, dt);
    if let Some(chi) = character {
        if chi.len() != a.dim() {
            return Err(Error::Argument("character needs one value per basis symbol".into()));
        }
        let eval = |v: &Vect<S>| v.terms().fold(S::zero(), |acc, (w, c)| acc + c.clone() * chi[w[0] as usize].clone());
        if eval(&a.unit_vect()) != S::one() {
            return Err(Error::Precondition("character is not unital".into()));
        }
        for x in 0..a.dim() as Sym {
            for y in 0..a.dim() as Sym {
                if eval(a.mul_sym(x, y)) != chi[x as usize].clone() * chi[y as usize].clone() {
                    return Err(Error::Precondition(format!(
                        "character is not multiplicative on ({}, {})",
                        a.basis.name(x),
                        a.basis.name(y)
                    )));
                }
            }
        }
        let chi = Arc::new(chi);
        let e = LinMap::on_symbols(0, move |s| Ok(Vect::scalar(chi[s as usize].clone())));
        c = c.with_counits(Some(e.clone()), Some(e));
    }
    Ok(c)
}

/// `b′(a₁,…,aₙ) = Σ_{i=1}^{n−1} (−1)^{i−1} (…, a_i a_{i+1}, …)`, degree `n → n−1`.
pub fn hochschild_bprime<S: Scalar>(a: &StructAlgebra<S>, n: usize) -> Result<LinMap<S>> {
    if n < 2 {
        return Err(Error::Argument(format!("b′ needs n >= 2, got {n}")));
    }
    let a = a.clone();
    Ok(LinMap::new(n, n - 1, move |w| {
        let mut out = Vect::zero(n - 1);
        for i in 0..n - 1 {
            let v = Vect::basis_word(&w[..i]).tensor(a.mul_sym(w[i], w[i + 1])).tensor(&Vect::basis_word(&w[i + 2..]));
            out.add_scaled(&v, &sign(i))?;
        }
        Ok(out)
    }))
}

/// `b = b′ + (−1)^{n−1}(aₙa₁, a₂, …, a_{n−1})`, degree `n → n−1`.
pub fn hochschild_b<S: Scalar>(a: &StructAlgebra<S>, n: usize) -> Result<LinMap<S>> {
    let bp = hochschild_bprime(a, n)?;
    let a = a.clone();
    Ok(LinMap::new(n, n - 1, move |w| {
        let mut out = bp.apply_word(w)?;
        let v = a.mul_sym(w[n - 1], w[0]).tensor(&Vect::basis_word(&w[1..n - 1]));
        out.add_scaled(&v, &sign(n - 1))?;
        Ok(out)
    }))
}

/// Both boundaries of a degree-`n` vector.
pub fn hochschild_boundaries<S: Scalar>(a: &StructAlgebra<S>, v: &Vect<S>) -> Result<(Vect<S>, Vect<S>)> {
    let n = v.degree();
    Ok((hochschild_bprime(a, n)?.apply(v)?, hochschild_b(a, n)?.apply(v)?))
}

/// The pattern `[I, a₁, I, a₂, …, I, aₙ]` of a periodic orbit on the flower graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPattern {
    entries: Vec<Sym>,
    unit: Sym,
}

impl OrbitPattern {
    /// The pattern of the orbit generated by `(a₁, …, aₙ)`.
    pub fn from_word<S: Scalar>(alg: &StructAlgebra<S>, w: &[Sym]) -> Result<Self> {
        let unit = alg
            .unit_symbol()
            .ok_or_else(|| Error::Precondition("reading needs a unit symbol".into()))?;
        Ok(OrbitPattern { entries: w.iter().flat_map(|&a| [unit, a]).collect(), unit })
    }

    /// Validates an explicit entry list alternating `I` and algebra symbols.
    pub fn from_entries(entries: Vec<Sym>, unit: Sym) -> Result<Self> {
        if !entries.len().is_multiple_of(2) || entries.iter().step_by(2).any(|&e| e != unit) {
            return Err(Error::Construction("a pattern alternates I and algebra symbols, starting with I".into()));
        }
        Ok(OrbitPattern { entries, unit })
    }

    pub fn period(&self) -> usize {
        self.entries.len() / 2
    }

    pub fn entries(&self) -> &[Sym] {
        &self.entries
    }

    /// Left border `aₙ`.
    pub fn left_border(&self) -> Sym {
        self.entries[self.entries.len() - 1]
    }

    /// Right border `I`.
    pub fn right_border(&self) -> Sym {
        self.unit
    }
}

/// Reads a sequence three symbols at a time: at each window `(x, I, y)` starting at
/// a position in `starts`, `ℒ = m(m⊗id)` contracts it; the rest is kept with stop
/// codons (positions flagged in `stop`) dropped, and each shift flips the sign.
fn read_windows<S: Scalar>(alg: &StructAlgebra<S>, seq: &[Sym], stop: &[bool], starts: &[usize], first_sign: usize) -> Result<Vect<S>> {
    let keep = |r: std::ops::Range<usize>| -> Word { r.filter(|&i| !stop[i]).map(|i| seq[i]).collect() };
    let out_deg = stop.iter().filter(|&&b| !b).count() - 1;
    let mut out = Vect::zero(out_deg);
    for (shift, &p) in starts.iter().enumerate() {
        let l = alg.mul_all(&[&Vect::sym(seq[p]), &Vect::sym(seq[p + 1]), &Vect::sym(seq[p + 2])])?;
        let v = Vect::basis_word(&keep(0..p)).tensor(&l).tensor(&Vect::basis_word(&keep(p + 3..seq.len())));
        out.add_scaled(&v, &sign(first_sign + shift))?;
    }
    Ok(out)
}

/// Reads a pattern (and optionally its border) into `A^{⊗(n−1)}`.
pub fn reading_map<S: Scalar>(alg: &StructAlgebra<S>, p: &OrbitPattern, with_border: bool) -> Result<Vect<S>> {
    let n = p.period();
    if n < 2 {
        return Err(Error::NotEnoughInformation(format!("a period-{n} orbit cannot be read three by three")));
    }
    let stop: Vec<bool> = (0..2 * n).map(|i| i % 2 == 0).collect();
    // windows (a_i, I, a_{i+1}) start at the positions of a_1 … a_{n−1}
    let starts: Vec<usize> = (0..n - 1).map(|i| 2 * i + 1).collect();
    let mut out = read_windows(alg, &p.entries, &stop, &starts, 0)?;
    if with_border {
        // shift the pattern behind the left border: (aₙ, I, a₁, I, a₂, …, I, a_{n−1})
        let mut shifted = vec![p.left_border()];
        shifted.extend_from_slice(&p.entries[..p.entries.len() - 1]);
        let stop: Vec<bool> = (0..2 * n).map(|i| i % 2 == 1).collect();
        let border = read_windows(alg, &shifted, &stop, &[0], n - 1)?;
        out.add_scaled(&border, &S::one())?;
    }
    Ok(out)
}

/// Linear extension of [`reading_map`] to a degree-`n` vector.
pub fn read_vect<S: Scalar>(alg: &StructAlgebra<S>, v: &Vect<S>, with_border: bool) -> Result<Vect<S>> {
    let n = v.degree();
    if n < 2 {
        return Err(Error::NotEnoughInformation(format!("a period-{n} orbit cannot be read three by three")));
    }
    let mut out = Vect::zero(n - 1);
    for (w, c) in v.terms() {
        out.add_scaled(&reading_map(alg, &OrbitPattern::from_word(alg, w)?, with_border)?, c)?;
    }
    Ok(out)
}

/// The maps of the `Δ − Δ_f` complex over a bialgebra.
pub struct NonlocalComplex<S> {
    pub alg: StructAlgebra<S>,
    pub delta: LinMap<S>,
    pub counit: LinMap<S>,
    /// `d← = Δ − δ̃`.
    pub d_left: LinMap<S>,
    /// `d→ = Δ − δ`.
    pub d_right: LinMap<S>,
}

impl<S: Scalar> NonlocalComplex<S> {
    pub fn new(alg: &StructAlgebra<S>, delta: LinMap<S>, counit: LinMap<S>) -> Result<Self> {
        let (d, dt) = flower_maps(alg);
        Ok(NonlocalComplex {
            d_left: delta.sub(&dt)?,
            d_right: delta.sub(&d)?,
            alg: alg.clone(),
            delta,
            counit,
        })
    }

    /// `∂_n : A^{⊗(n+1)} → A^{⊗(n+2)}`, `Σ_{i=1}^{n+1} (−1)^{i+1} D_i` with `D_1 = d←`,
    /// `D_{n+1} = d→` and `Δ` in the interior positions.
    pub fn boundary(&self, n: usize) -> Result<LinMap<S>> {
        if n == 0 {
            return Err(Error::Argument("∂_n needs n >= 1".into()));
        }
        let k = n + 1;
        let mut total = LinMap::zero(k, k + 1);
        for i in 0..k {
            let d = if i == 0 {
                &self.d_left
            } else if i == k - 1 {
                &self.d_right
            } else {
                &self.delta
            };
            total = total.add(&d.padded(i, k - 1 - i).scale(sign(i)))?;
        }
        Ok(total)
    }

    /// `Σ_{i=1}^{n+1} (−1)^{i+1} id⊗…⊗(Δ − F)⊗…⊗id` for a given `F`.
    pub fn alternating_form(&self, n: usize, flower: &LinMap<S>) -> Result<LinMap<S>> {
        let k = n + 1;
        let diff = self.delta.sub(flower)?;
        let mut total = LinMap::zero(k, k + 1);
        for i in 0..k {
            total = total.add(&diff.padded(i, k - 1 - i).scale(sign(i)))?;
        }
        Ok(total)
    }

    /// `Δ_f` as displayed: `a⊗1 + 1⊗a` for `a ≠ 1` and `Δ_f(1) = 1⊗1`.
    pub fn flower_coproduct(&self) -> LinMap<S> {
        let (d, dt) = flower_maps(&self.alg);
        let unit = self.alg.unit_symbol();
        let sum = d.add(&dt).expect("same degrees");
        LinMap::on_symbols(2, move |s| {
            if Some(s) == unit {
                Ok(Vect::basis_word(&[s, s]))
            } else {
                sum.apply_word(&[s])
            }
        })
    }

    /// `δ + δ̃` on every symbol, including the unit.
    pub fn flower_sum(&self) -> LinMap<S> {
        let (d, dt) = flower_maps(&self.alg);
        d.add(&dt).expect("same degrees")
    }

    /// Non-unit symbols `x` with `Δ(x) = Δ_f(x)`.
    pub fn primitive_elements(&self) -> Result<Vec<Sym>> {
        let f = self.flower_coproduct();
        let mut out = Vec::new();
        for s in self.alg.basis.syms().filter(|&s| Some(s) != self.alg.unit_symbol()) {
            if self.delta.apply_word(&[s])? == f.apply_word(&[s])? {
                out.push(s);
            }
        }
        Ok(out)
    }
}

/// Verifies the `Δ − Δ_f` complex up to `∂_{n_max}` on all basis words.
pub fn nonlocal_complex<S: Scalar>(alg: &StructAlgebra<S>, delta: LinMap<S>, counit: LinMap<S>, n_max: usize) -> Result<AxiomReport> {
    let mut r = AxiomReport::new();
    let coalg = LCoalgebra::degenerate("fiber", alg.basis.clone(), delta.clone(), Some(counit.clone()));
    let pre = check_bialgebra_hopf(&coalg, alg, None, None);
    if !pre.passed("right_multiplicative") {
        let w = pre.get("right_multiplicative").and_then(|c| c.witness.clone()).unwrap_or_default();
        r.push(Check::fail("precondition", "Δ multiplicative", w));
        return Ok(r);
    }
    let cx = NonlocalComplex::new(alg, delta, counit)?;
    let dim = alg.dim();
    let show = |w: &[Sym], v: &Vect<S>| format!("on {}: {}", alg.basis.word_text(w), v.display(&alg.basis));

    for n in 1..n_max {
        let comp = cx.boundary(n + 1)?.after(&cx.boundary(n)?)?;
        let mut bad = None;
        for w in all_words(dim, n + 1) {
            let v = comp.apply_word(&w)?;
            if !v.is_zero() {
                bad = Some(show(&w, &v));
                break;
            }
        }
        r.push(Check::from_result(format!("boundary_squared_zero({n})"), "∂_{n+1}∂_n = 0", bad));
    }
    let f = cx.delta.sub(&cx.flower_coproduct())?;
    let comp = cx.boundary(1)?.after(&f)?;
    let mut bad = None;
    for w in all_words(dim, 1) {
        let v = comp.apply_word(&w)?;
        if !v.is_zero() {
            bad = Some(show(&w, &v));
        }
    }
    r.push(Check::from_result("boundary_on_image", "∂₁(Δ − Δ_f) = 0", bad));

    let unit = alg.unit_symbol();
    for n in 1..=n_max {
        let d = cx.boundary(n)?;
        let displayed = cx.alternating_form(n, &cx.flower_coproduct())?;
        let summed = cx.alternating_form(n, &cx.flower_sum())?;
        let words = all_words(dim, n + 1);
        let unit_free: Vec<Word> = words.iter().filter(|w| unit.is_none_or(|u| !w.contains(&u))).cloned().collect();
        let fmt = |x: Option<(Word, Vect<S>, Vect<S>)>| x.map(|(w, a, b)| show(&w, &a.sub(&b).unwrap_or(a)));
        r.push(Check::from_result(
            format!("alternating_form_unit_free({n})"),
            "∂_n = Σ ±(Δ − Δ_f)_i on unit-free words",
            fmt(d.agrees_on(&displayed, &unit_free)?),
        ));
        r.push(Check::from_result(
            format!("alternating_form_flower_sum({n})"),
            "∂_n = Σ ±(Δ − δ − δ̃)_i",
            fmt(d.agrees_on(&summed, &words)?),
        ));
        r.push(
            Check::from_result(
                format!("alternating_form_all_words({n})"),
                "∂_n = Σ ±(Δ − Δ_f)_i with Δ_f(1) = 1⊗1",
                fmt(d.agrees_on(&displayed, &words)?),
            )
            .informational(),
        );
    }
    let sec = cx.counit.padded(1, 0).after(&cx.delta)?;
    r.push(Check::from_result(
        "bundle_section",
        "π∘σ = (id⊗ε)Δ = id",
        sec.agrees_on(&LinMap::identity(1), &all_words(dim, 1))?.map(|(w, a, _)| show(&w, &a)),
    ));
    let prims = cx.primitive_elements()?;
    r.push(
        Check::pass("primitive_elements", "Δ(x) = x⊗1 + 1⊗x").with_note(format!(
            "[{}]",
            prims.iter().map(|&s| alg.basis.name(s)).collect::<Vec<_>>().join(", ")
        )),
    );
    Ok(r)
}

/// Group-like coproduct `Δg = g⊗g` with counit 1 on each basis symbol.
pub fn grouplike_coproduct<S: Scalar>() -> (LinMap<S>, LinMap<S>) {
    (
        LinMap::on_symbols(2, |s| Ok(Vect::basis_word(&[s, s]))),
        LinMap::on_symbols(0, |_| Ok(Vect::scalar(S::one()))),
    )
}

/// The degree-2 triangle structure on an algebra with generators `x0, x1, x2`.
///
/// `next` is a rotation of basis symbols with `next(x_α) = x_{α+1}` fixing the unit.
/// `Δ₂(u⊗v) = u⊗v⊗next(v)`, `Δ̃₂(u⊗v) = prev(u)⊗u⊗v`, `ε₂(u⊗v) = u`, `ε̃₂(u⊗v) = v`,
/// `S(y) = next⁻¹(y)⁻¹`, `S̃(y) = next(y)⁻¹`: on generators `S(x_i) = −x_{i−1}` and
/// `S̃(x_{i−1}) = −x_i`.
pub struct TriangleHopf2<S> {
    pub alg: StructAlgebra<S>,
    pub gens: [Sym; 3],
    pub coalgebra: LCoalgebra<S>,
    pub antipode: LinMap<S>,
    pub left_antipode: LinMap<S>,
}

impl<S: Scalar> TriangleHopf2<S> {
    pub fn new(alg: &StructAlgebra<S>, gens: [&str; 3], next: Vec<Sym>) -> Result<Self> {
        let n = alg.dim();
        if next.len() != n {
            return Err(Error::Argument("rotation must be given on every symbol".into()));
        }
        let gens = [alg.sym(gens[0])?, alg.sym(gens[1])?, alg.sym(gens[2])?];
        let unit = alg.unit_symbol().ok_or_else(|| Error::Precondition("unit must be a basis symbol".into()))?;
        for a in 0..3 {
            let prod = alg.mul_sym(gens[a], gens[(a + 1) % 3]);
            if *prod != Vect::sym(gens[(a + 2) % 3]) {
                return Err(Error::Precondition(format!(
                    "x{}x{} ≠ x{}",
                    a,
                    (a + 1) % 3,
                    (a + 2) % 3
                )));
            }
            if next[gens[a] as usize] != gens[(a + 1) % 3] {
                return Err(Error::Precondition("rotation must send x_α to x_{α+1}".into()));
            }
        }
        if next[unit as usize] != unit {
            return Err(Error::Precondition("rotation must fix the unit".into()));
        }
        let mut prev = vec![0 as Sym; n];
        for (s, &t) in next.iter().enumerate() {
            prev[t as usize] = s as Sym;
        }
        let next = Arc::new(next);
        let prev = Arc::new(prev);
        let (nx, pv) = (next.clone(), prev.clone());
        let right = LinMap::on_symbols(2, move |s| Ok(Vect::basis_word(&[s, nx[s as usize]])));
        let left = LinMap::on_symbols(2, move |s| Ok(Vect::basis_word(&[pv[s as usize], s])));
        let e = LinMap::on_symbols(0, |_| Ok(Vect::scalar(S::one())));
        let base = LCoalgebra::new(format!("triangle({})", alg.name), alg.basis.clone(), 1, right, left)
            .with_counits(Some(e.clone()), Some(e));
        let mut coalgebra = base.lift_degree_n(2, false)?;
        // ε₂(u⊗v) = u and ε̃₂(u⊗v) = v
        coalgebra.right_counit = Some(LinMap::new(2, 1, |w| Ok(Vect::sym(w[0]))));
        coalgebra.left_counit = Some(LinMap::new(2, 1, |w| Ok(Vect::sym(w[1]))));
        coalgebra.name = format!("triangle2({})", alg.name);

        let inv = |s: Sym| alg.inverse(&Vect::sym(s));
        let s_img: Vec<Vect<S>> = (0..n as Sym).map(|s| inv(prev[s as usize])).collect::<Result<_>>()?;
        let st_img: Vec<Vect<S>> = (0..n as Sym).map(|s| inv(next[s as usize])).collect::<Result<_>>()?;
        let (s_img, st_img) = (Arc::new(s_img), Arc::new(st_img));
        Ok(TriangleHopf2 {
            alg: alg.clone(),
            gens,
            coalgebra,
            antipode: LinMap::on_symbols(1, move |s| Ok(s_img[s as usize].clone())),
            left_antipode: LinMap::on_symbols(1, move |s| Ok(st_img[s as usize].clone())),
        })
    }

    /// The degree-1 rotation coalgebra `Δx = x⊗next(x)`, `Δ̃x = prev(x)⊗x`, read back from the lift.
    pub fn degree_one(&self) -> LCoalgebra<S> {
        let (r, l) = (self.coalgebra.right.clone(), self.coalgebra.left.clone());
        LCoalgebra::new(
            format!("triangle({})", self.alg.name),
            self.coalgebra.basis.clone(),
            1,
            LinMap::new(1, 2, move |w| Ok(r.apply_word(&[w[0], w[0]])?.map_words(2, |x| word(&[x[1], x[2]])))),
            LinMap::new(1, 2, move |w| Ok(l.apply_word(&[w[0], w[0]])?.map_words(2, |x| word(&[x[0], x[1]])))),
        )
    }

    /// The quaternion structure `x0 = i, x1 = j, x2 = k`.
    pub fn quaternions() -> Result<Self>
    where
        S: Scalar,
    {
        TriangleHopf2::new(&quaternions::<S>(), ["i", "j", "k"], vec![0, 2, 3, 1])
    }

    /// The same data on `ℚ[Q8]`, where `−1` is the group element `m`.
    pub fn quaternion_group() -> Result<Self> {
        // e m i j k mi mj mk ↦ e m j k i mj mk mi
        TriangleHopf2::new(&quaternion_group::<S>(), ["i", "j", "k"], vec![0, 1, 3, 4, 2, 6, 7, 5])
    }

    /// All laws of a degree-2 L-Hopf algebra, plus the antipode properties.
    pub fn check(&self) -> AxiomReport {
        let mut r = self.coalgebra.check_axioms();
        r.extend(check_bialgebra_hopf(&self.coalgebra, &self.alg, Some(&self.antipode), Some(&self.left_antipode)));
        let a = &self.alg;
        let n = a.dim() as Sym;
        let name = |s: Sym| a.basis.name(s).to_string();
        for (label, map) in [("antipode", &self.antipode), ("left_antipode", &self.left_antipode)] {
            let mut bad = None;
            'pairs: for x in 0..n {
                for y in 0..n {
                    let lhs = map.apply(a.mul_sym(x, y)).expect("degree 1");
                    let rhs = a.mul(&map.apply_word(&[y]).expect("1"), &map.apply_word(&[x]).expect("1")).expect("1");
                    if lhs != rhs {
                        bad = Some(format!("on ({}, {})", name(x), name(y)));
                        break 'pairs;
                    }
                }
            }
            r.push(Check::from_result(format!("{label}_anti_hom"), "S(xy) = S(y)S(x)", bad));
            let unital = map.apply(&a.unit_vect()).ok() == Some(a.unit_vect());
            r.push(Check::from_result(format!("{label}_unital"), "S(1) = 1", (!unital).then(|| "S(1) ≠ 1".to_string())));
        }
        let words = all_words(a.dim(), 1);
        let id = LinMap::identity(1);
        let ss = self.antipode.after(&self.left_antipode).and_then(|m| m.agrees_on(&id, &words));
        let ts = self.left_antipode.after(&self.antipode).and_then(|m| m.agrees_on(&id, &words));
        let ok = matches!((&ss, &ts), (Ok(None), Ok(None)));
        r.push(Check::from_result("antipode_inverse", "SS̃ = id = S̃S", (!ok).then(|| "composition differs from id".to_string())));
        r.push(Check::from_result("antipode_unique", "x_i S(x_{i+1}) = 1 has one solution", self.uniqueness()));
        r
    }

    /// Solves `x_i·y = 1` and `y'·x_i = 1` for each generator and compares with `S(x_{i+1})`, `S̃(x_{i−1})`.
    fn uniqueness(&self) -> Option<String> {
        let a = &self.alg;
        let n = a.dim();
        for i in 0..3 {
            let x = Vect::sym(self.gens[i]);
            for left in [true, false] {
                let cols: Vec<Vect<S>> = (0..n as Sym)
                    .map(|j| if left { a.mul(&x, &Vect::sym(j)) } else { a.mul(&Vect::sym(j), &x) }.expect("1"))
                    .collect();
                let (rows, words) = coordinate_matrix(&cols);
                let rows = pad_rows(rows, &words, n);
                let rhs: Vec<S> = (0..n as Sym).map(|k| a.unit_vect().coeff(&[k])).collect();
                if !nullspace(&rows, n).is_empty() {
                    return Some(format!("solution for generator {} is not unique", a.basis.name(self.gens[i])));
                }
                let Some(sol) = solve(&rows, n, &rhs) else {
                    return Some(format!("no solution for generator {}", a.basis.name(self.gens[i])));
                };
                let mut y = Vect::zero(1);
                for (k, c) in sol.into_iter().enumerate() {
                    y.add_term(word(&[k as Sym]), c);
                }
                let expected = if left {
                    self.antipode.apply_word(&[self.gens[(i + 1) % 3]])
                } else {
                    self.left_antipode.apply_word(&[self.gens[(i + 2) % 3]])
                };
                if expected.ok() != Some(y) {
                    return Some(format!("antipode differs from the unique solution at {}", a.basis.name(self.gens[i])));
                }
            }
        }
        None
    }
}

impl TriangleHopf2<Qi> {
    /// The Pauli structure on `u0, u1, u2`.
    pub fn pauli() -> Result<Self> {
        TriangleHopf2::new(&m2_pauli(), ["u0", "u1", "u2"], vec![0, 2, 3, 1])
    }
}

/// Reorders coordinate rows to follow symbol order `0..n`, filling absent rows with zeros.
fn pad_rows<S: Scalar>(rows: Vec<Vec<S>>, words: &[Word], n: usize) -> Vec<Vec<S>> {
    let ncols = rows.first().map(Vec::len).unwrap_or(n);
    let mut out = vec![vec![S::zero(); ncols]; n];
    for (r, w) in rows.into_iter().zip(words) {
        out[w[0] as usize] = r;
    }
    out
}

/// Triangle degree-2 check for a named algebra.
pub fn triangle_degree2_hopf(name: &str) -> Result<AxiomReport> {
    match name {
        "quaternions" => Ok(TriangleHopf2::<crate::scalar::Q>::quaternions()?.check()),
        "m2_pauli" => Ok(TriangleHopf2::pauli()?.check()),
        "quaternion_group" => Ok(TriangleHopf2::<crate::scalar::Q>::quaternion_group()?.check()),
        other => Err(Error::UnknownName(other.to_string())),
    }
}

/// Rational catalog algebras by name.
pub fn algebra_catalog(name: &str) -> Result<StructAlgebra<crate::scalar::Q>> {
    use crate::scalar::Q;
    if let Some(n) = name.strip_prefix("group_algebra:") {
        return group_algebra::<Q>(n.parse().map_err(|_| Error::Parse(format!("bad order in '{name}'")))?);
    }
    if let Some(n) = name.strip_prefix("pointer_space:") {
        return pointer_space::<Q>(n.parse().map_err(|_| Error::Parse(format!("bad size in '{name}'")))?);
    }
    match name {
        "quaternions" => Ok(quaternions()),
        "quaternion_group" => Ok(quaternion_group()),
        "m2_pauli" => Err(Error::Construction("m2_pauli is defined over the Gaussian rationals".into())),
        other => Err(Error::UnknownName(other.to_string())),
    }
}

pub const ALGEBRA_NAMES: &[&str] = &["quaternions", "quaternion_group", "m2_pauli", "group_algebra:N", "pointer_space:N", "ck_shadow(graph)"];
