//! Exact computations with invariant forms on nilmanifold models: symplectic
//! and almost-Kähler operators, harmonic spaces and J-cohomology.

pub mod coeff;
pub mod cohomology;
pub mod error;
pub mod forms;
pub mod linalg;
pub mod manifest;
pub mod model;
pub mod operators;

pub use error::{Error, Result};
pub use model::{builtin, ManifoldModel, ModelVerdict};
pub use operators::{Geometry, OperatorKind};
