//! `ito` and `forms`: derivations, cochain complexes and the forms dialgebra of an algebra.

use clap::Args;
use lcoalg::algebra_core::{
    flower_lcoalgebra, grouplike_coproduct, hochschild_boundaries, nonlocal_complex, reading_map, OrbitPattern, StructAlgebra, TriangleHopf2,
};
use lcoalg::dialgebra_forms::{
    dendriform_convert, form_words, forms_dialgebra, forms_report, inverse_kind, leibnitz_checks, random_form, z2_example, BilinearOpTable,
    ConversionKind, Form, FormTrace,
};
use lcoalg::ito_calculus::{
    carre_star_classes, check_words, classify_map, cochain_complex_fn, conjugation, conjugation_ito, conjugation_ito_identity, converse_class,
    inner_derivation, ito_hom_bijection, lbialgebra_differentials, virtual_petals, Direction, MapClass, ENUMERATION_LIMIT,
};
use lcoalg::report::{AxiomReport, Check};
use lcoalg::tensor_core::all_words;
use lcoalg::{LinMap, Scalar, Vect, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map};

use crate::inputs::{input_error, load_algebra, require_seed, AnyAlgebra, CliResult, InputError};
use crate::report::Report;

#[derive(Args, Debug, Clone)]
pub struct ItoArgs {
    /// Algebra (catalog name or JSON file).
    #[arg(long)]
    pub algebra: String,
    /// Invertible element u for the conjugation x ↦ uxu⁻¹, e.g. "1 + j" or "1 + 1i*u0".
    #[arg(long)]
    pub element: Option<String>,
    /// Element h of the inner derivation [h, ·] (default: the last basis element).
    #[arg(long)]
    pub derivation: Option<String>,
    /// Largest index of the f_n cochains.
    #[arg(long, default_value_t = 3)]
    pub n_max: usize,
    /// Largest word length for the reading-map comparison with b′ and b.
    #[arg(long, default_value_t = 3)]
    pub hochschild: usize,
    /// Virtual petals of the triangle structure at this degree (2 to 4).
    #[arg(long)]
    pub petals: Option<usize>,
}

impl ItoArgs {
    pub fn new(algebra: &str) -> Self {
        ItoArgs { algebra: algebra.into(), element: None, derivation: None, n_max: 3, hochschild: 3, petals: None }
    }
}

#[derive(Args, Debug, Clone, Default)]
pub struct FormArgs {
    /// Algebra (catalog name or JSON file); without it the ℚ[ℤ₂] example with ρ(g) = −2g is used.
    #[arg(long)]
    pub algebra: Option<String>,
    /// Invertible element u; forms use the curvature of ρ = u·u⁻¹ − id.
    #[arg(long)]
    pub element: Option<String>,
    /// Random triples of forms instead of all triples of degree ≤ 1.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Largest degree of the random forms.
    #[arg(long, default_value_t = 2)]
    pub degree: usize,
}

fn failure_text(r: &AxiomReport) -> Option<String> {
    let f: Vec<String> = r.failures().map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_default())).collect();
    (!f.is_empty()).then(|| f.join("; "))
}

/// The first of `1 + b`, `2·1 + b` over non-unit basis elements `b` that is invertible.
fn default_element<S: Scalar>(alg: &StructAlgebra<S>) -> CliResult<Vect<S>> {
    let unit = alg.unit_vect();
    for b in alg.basis.syms().filter(|&s| Some(s) != alg.unit_symbol()) {
        for k in [1, 2] {
            let u = unit.scale(&S::from_i64(k)).add(&Vect::sym(b))?;
            if alg.inverse(&u).is_ok() {
                return Ok(u);
            }
        }
    }
    Ok(unit)
}

fn element<S: Scalar>(alg: &StructAlgebra<S>, text: &Option<String>) -> CliResult<Vect<S>> {
    let u = match text {
        Some(t) => alg.parse_elem(t)?,
        None => default_element(alg)?,
    };
    if alg.inverse(&u).is_err() {
        return input_error(format!("element {} is not invertible", u.display(&alg.basis)));
    }
    Ok(u)
}

pub fn ito_cmd(a: &ItoArgs, seed: Option<u64>) -> CliResult<Report> {
    let mut rep = match load_algebra(&a.algebra)? {
        AnyAlgebra::Rational(x) => ito_suite(&x, a, seed)?,
        AnyAlgebra::Gaussian(x) => ito_suite(&x, a, seed)?,
    };
    if let Some(n) = a.petals {
        let r = match a.algebra.as_str() {
            "quaternions" => petals(&TriangleHopf2::<Q>::quaternions()?, n)?,
            "quaternion_group" => petals(&TriangleHopf2::<Q>::quaternion_group()?, n)?,
            "m2_pauli" => petals(&TriangleHopf2::pauli()?, n)?,
            other => return input_error(format!("no triangle structure on '{other}'")),
        };
        rep.extend_prefixed("petals", r);
    }
    Ok(rep)
}

fn petals<S: Scalar>(t: &TriangleHopf2<S>, n: usize) -> CliResult<AxiomReport> {
    Ok(virtual_petals(&t.degree_one(), &t.alg, n)?)
}

fn ito_suite<S: Scalar>(alg: &StructAlgebra<S>, a: &ItoArgs, seed: Option<u64>) -> CliResult<Report> {
    let mut rep = Report::new();
    if alg.unit_symbol().is_none() {
        return input_error("the algebra needs a unit basis symbol");
    }
    let dim = alg.dim();
    let exhaustive = |n: usize| (dim as f64).powi(n as i32) <= ENUMERATION_LIMIT as f64;
    let sampled = !exhaustive(a.n_max + 2) || !exhaustive(a.hochschild);
    let seed = if sampled { require_seed(seed, "ito on sampled words")? } else { seed.unwrap_or(0) };
    if sampled {
        rep.seed = Some(seed);
    }
    let u = element(alg, &a.element)?;
    let h = match &a.derivation {
        Some(t) => alg.parse_elem(t)?,
        None => Vect::sym((dim - 1) as lcoalg::Sym),
    };
    let show = |v: &Vect<S>| v.display(&alg.basis).to_string();
    rep.set("element", show(&u));
    rep.set("derivation", show(&h));

    for n in 2..=a.hochschild {
        let words = check_words(dim, n, seed).0;
        let mut bad = None;
        for w in &words {
            let p = OrbitPattern::from_word(alg, w)?;
            let (bp, b) = hochschild_boundaries(alg, &Vect::basis_word(w))?;
            if reading_map(alg, &p, false)? != bp || reading_map(alg, &p, true)? != b {
                bad = Some(format!("on {}", alg.basis.word_text(w)));
                break;
            }
        }
        rep.push(Check::from_result(format!("reading_map({n})"), "reading map = b′ without border, b with border", bad).with_note(format!("{} words", words.len())));
    }

    let hom = conjugation(alg, &u)?;
    let ito = conjugation_ito(alg, &u)?;
    let der = inner_derivation(alg, &h);
    let mut classes = Map::new();
    for (label, op, want) in [
        ("conjugation", &hom, MapClass::Homomorphism),
        ("conjugation_ito", &ito, MapClass::ItoDerivative),
        ("inner_derivation", &der, MapClass::LeibnitzDerivative),
    ] {
        let c = classify_map(op, alg)?;
        let holds: Vec<String> = c.holds.iter().map(ToString::to_string).collect();
        rep.push(Check::from_result(
            format!("classify[{label}]"),
            format!("class includes {want}"),
            (!c.holds.contains(&want)).then(|| format!("classes: [{}]", holds.join(", "))),
        ));
        classes.insert(label.into(), json!({"primary": c.primary.to_string(), "holds": holds}));
    }
    rep.set("classes", classes);
    rep.extend(carre_star_classes(alg, &hom, &ito, &der)?);
    for (label, op, want) in [("conjugation", &hom, MapClass::Homomorphism), ("conjugation_ito", &ito, MapClass::ItoDerivative)] {
        let got = converse_class(alg, op)?;
        rep.push(Check::from_result(
            format!("converse[{label}]"),
            "ω̃□* = 0 and ρ(1) recover the class",
            (got != want).then(|| format!("recovered {got}, expected {want}")),
        ));
    }

    let words1 = all_words(dim, 1);
    let to_ito = ito_hom_bijection(&hom, alg, Direction::ToIto)?;
    let back = ito_hom_bijection(&to_ito, alg, Direction::ToHom)?;
    let mismatch = to_ito.agrees_on(&ito, &words1)?.or(back.agrees_on(&hom, &words1)?);
    rep.push(Check::from_result(
        "ito_hom_bijection",
        "ρ ↦ ρ − id and d ↦ d + id are inverse",
        mismatch.map(|(w, _, _)| format!("on {}", alg.basis.word_text(&w))),
    ));
    rep.extend_prefixed("conj_ito", conjugation_ito_identity(alg, &u)?);
    rep.extend_prefixed("fn", cochain_complex_fn(alg, &ito, a.n_max, seed)?);

    let (d, e) = grouplike_coproduct();
    let r = nonlocal_complex(alg, d, e, a.n_max.min(3))?;
    match r.get("precondition") {
        Some(c) if !c.passed => rep.push(
            Check::fail("nonlocal/precondition", "group-like Δ is a homomorphism", c.witness.clone().unwrap_or_default())
                .with_note("group-like coproduct is not multiplicative here; nonlocal complex skipped")
                .informational(),
        ),
        _ => rep.extend_prefixed("nonlocal", r),
    }
    let flower = flower_lcoalgebra(alg, None)?;
    rep.extend_prefixed("lbialg", lbialgebra_differentials(&flower, alg)?);
    Ok(rep)
}

pub fn forms_cmd(a: &FormArgs, seed: Option<u64>) -> CliResult<Report> {
    match &a.algebra {
        None => {
            let tr = z2_example::<Q>()?;
            forms_suite(&tr, a, seed)
        }
        Some(spec) => match load_algebra(spec)? {
            AnyAlgebra::Rational(x) => forms_suite(&trace_for(&x, &a.element)?, a, seed),
            AnyAlgebra::Gaussian(x) => forms_suite(&trace_for(&x, &a.element)?, a, seed),
        },
    }
}

/// The trace σ = coefficient of the unit, with ρ the conjugation Ito derivative of u.
fn trace_for<S: Scalar>(alg: &StructAlgebra<S>, text: &Option<String>) -> CliResult<FormTrace<S>> {
    let u = element(alg, text)?;
    let rho = conjugation_ito(alg, &u)?;
    let unit = alg.unit_symbol().ok_or_else(|| InputError("forms need a unit basis symbol".into()))?;
    let sigma = LinMap::on_symbols(0, move |s| Ok(if s == unit { Vect::scalar(S::one()) } else { Vect::zero(0) }));
    Ok(FormTrace::new(alg, &rho, sigma)?)
}

type Triple<S> = (Form<S>, Form<S>, Form<S>);

fn forms_suite<S: Scalar>(tr: &FormTrace<S>, a: &FormArgs, seed: Option<u64>) -> CliResult<Report> {
    let mut rep = Report::new();
    let (dim, unit) = (tr.alg.dim(), tr.unit());
    let triples: Vec<Triple<S>> = match a.samples {
        Some(n) => {
            let seed = require_seed(seed, "forms with --samples")?;
            rep.seed = Some(seed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut f = || {
                let k = rng.gen_range(1..=a.degree.max(1));
                random_form::<S, _>(&mut rng, dim, unit, k)
            };
            (0..n).map(|_| (f(), f(), f())).collect()
        }
        None => {
            let mut small = vec![Form::<S>::identity(unit)];
            small.extend(form_words::<S>(dim, unit, 1));
            let mut t = Vec::new();
            for x in &small {
                for y in &small {
                    for z in &small {
                        t.push((x.clone(), y.clone(), z.clone()));
                    }
                }
            }
            t
        }
    };
    rep.extend(forms_report(&triples)?);
    rep.extend(leibnitz_checks(&triples)?);
    let ops = forms_dialgebra::<S>();
    for kind in [ConversionKind::TypeI, ConversionKind::TypeIII] {
        let (dend, r) = dendriform_convert(&ops, kind, &triples)?;
        rep.extend_prefixed(&format!("convert[{kind:?}]"), r);
        let (back, r) = dendriform_convert(&dend, inverse_kind(kind), &triples)?;
        rep.extend_prefixed(&format!("convert[{kind:?}]/inverse"), r);
        let mut changed = None;
        for (x, y, _) in &triples {
            if back.l(x, y)? != ops.l(x, y)? || back.r(x, y)? != ops.r(x, y)? {
                changed = Some(format!("on x = {}", x.display(&tr.alg.basis)));
                break;
            }
        }
        rep.push(Check::from_result(format!("convert[{kind:?}]/roundtrip"), "converting back recovers ⊣ and ⊢", changed));
    }
    let table = BilinearOpTable::trivial(&tr.alg)?;
    for kind in [ConversionKind::TypeI, ConversionKind::TypeIII] {
        let (_, r) = table.convert(kind)?;
        rep.push(Check::from_result(format!("table[{kind:?}]"), "trivial dialgebra of A converts to a dendriform algebra", failure_text(&r)));
    }
    let pairs: Vec<_> = triples.iter().map(|(x, y, _)| (x.clone(), y.clone())).collect();
    rep.extend_prefixed("trace", tr.check(&pairs)?);

    // one worked example
    let b = &tr.alg.basis;
    let (x, y, _) = &triples[triples.len() / 2];
    let txt = |f: &Form<S>| f.display(b).to_string();
    let lr = ops.l(x, y)?;
    rep.set(
        "example",
        json!({
            "x": txt(x),
            "y": txt(y),
            "x⋆y": txt(&x.star(y)?),
            "dx": txt(&x.d()),
            "x⊣y": txt(&lr),
            "x⊢y": txt(&ops.r(x, y)?),
            "[x,y]_L": txt(&x.leibnitz_bracket(y)?),
            "Tr(x⊣y)": tr.tr(&lr)?.to_text(),
        }),
    );
    rep.set("triples", triples.len());
    Ok(rep)
}
