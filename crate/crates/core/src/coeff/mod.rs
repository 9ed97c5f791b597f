//! Exact coefficient field: rational functions in declared symbols.

pub mod poly;
mod scalar;
mod symbols;

pub use poly::{Monomial, Poly};
pub use scalar::Scalar;
pub use symbols::{CoeffOneForm, Symbol, SymbolKind, SymbolTable};
