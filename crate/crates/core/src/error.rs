use thiserror::Error;

/// Errors raised by constructors, loaders and operations with violated preconditions.
///
/// Failed algebraic laws are never errors: they are reported as data in an
/// [`AxiomReport`](crate::report::AxiomReport).
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    Degree { expected: usize, found: usize },
    #[error("undefined on word {0}")]
    UndefinedOnWord(String),
    #[error("unknown symbol '{0}'")]
    UnknownSymbol(String),
    #[error("invalid basis: {0}")]
    Basis(String),
    #[error("argument error: {0}")]
    Argument(String),
    #[error("construction error: {0}")]
    Construction(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("counit undefinable: {0}")]
    CounitUndefinable(String),
    #[error("walk stuck at sink '{0}'")]
    StuckAtSink(String),
    #[error("unknown name '{0}'")]
    UnknownName(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("undefined product: {0}")]
    UndefinedProduct(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("not enough information: {0}")]
    NotEnoughInformation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
