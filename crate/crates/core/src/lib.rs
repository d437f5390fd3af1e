//! Exact computer algebra for L-coalgebras: weighted graphs and their Markov
//! coproducts, coassociativity-breaking axioms, Ito and Leibniz derivatives,
//! Hochschild boundaries, curvature forms, completely positive semigroups driven
//! by graphs, and coproduct-induced polynomial products.

pub mod algebra_core;
pub mod coassoc_constructions;
pub mod cp_semigroup;
pub mod dialgebra_forms;
pub mod error;
pub mod graph_model;
pub mod ito_calculus;
pub mod lcoalgebra;
pub mod poly_products;
pub mod report;
pub mod scalar;
pub mod tensor_core;

pub use error::{Error, Result};
pub use scalar::{Q, Qi, Scalar};
pub use tensor_core::{Basis, LinMap, Sym, Vect, Word};
