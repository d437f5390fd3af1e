//! Loading graphs, algebras and JSON documents from the command line.

use std::fmt;
use std::path::Path;

use lcoalg::algebra_core::{algebra_catalog, m2_pauli, StructAlgebra};
use lcoalg::graph_model::{ProbabilityConvention, WeightedDigraph};
use lcoalg::scalar::{Q, Qi};
use serde_json::Value;

/// Malformed or invalid input; the process exits with status 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<lcoalg::Error> for InputError {
    fn from(e: lcoalg::Error) -> Self {
        InputError(e.to_string())
    }
}

impl From<std::io::Error> for InputError {
    fn from(e: std::io::Error) -> Self {
        InputError(e.to_string())
    }
}

impl From<serde_json::Error> for InputError {
    fn from(e: serde_json::Error) -> Self {
        InputError(format!("invalid JSON: {e}"))
    }
}

pub type CliResult<T> = Result<T, InputError>;

pub fn input_error<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(InputError(msg.into()))
}

pub fn read_json(path: &Path) -> CliResult<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

pub fn load_graph(path: &Path) -> CliResult<WeightedDigraph> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    Ok(WeightedDigraph::load(&text)?)
}

pub fn convention(s: &str) -> CliResult<ProbabilityConvention> {
    Ok(ProbabilityConvention::parse(s)?)
}

pub fn require_seed(seed: Option<u64>, what: &str) -> CliResult<u64> {
    seed.ok_or_else(|| InputError(format!("{what} is stochastic and needs --seed")))
}

/// An algebra over the rationals or the Gaussian rationals.
pub enum AnyAlgebra {
    Rational(StructAlgebra<Q>),
    Gaussian(StructAlgebra<Qi>),
}

/// A catalog name (`quaternions`, `group_algebra:3`, `m2_pauli`, ...) or a JSON file
/// `{"basis", "unit", "table", "field"?}` with `"field": "gaussian"` for complex coefficients.
pub fn load_algebra(spec: &str) -> CliResult<AnyAlgebra> {
    let path = Path::new(spec);
    if path.is_file() {
        let v = read_json(path)?;
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("algebra");
        return match v.get("field").and_then(Value::as_str) {
            Some("gaussian") => Ok(AnyAlgebra::Gaussian(StructAlgebra::from_json(name, &v)?)),
            Some("rational") | None => Ok(AnyAlgebra::Rational(StructAlgebra::from_json(name, &v)?)),
            Some(other) => input_error(format!("unknown field '{other}'")),
        };
    }
    match spec {
        "m2_pauli" => Ok(AnyAlgebra::Gaussian(m2_pauli())),
        _ => Ok(AnyAlgebra::Rational(algebra_catalog(spec)?)),
    }
}

/// Exact scalars in reports: `p/q` strings.
pub fn q_text(x: &Q) -> String {
    x.to_string()
}
