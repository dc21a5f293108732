//! Exact invariants of compatible pairs of associative algebras over small
//! dimensions: derivations and their relatives, operator identities such as
//! Rota-Baxter and Nijenhuis, second cohomology, and isomorphism witnesses.

pub mod algebra;
pub mod catalog;
pub mod cohomology;
pub mod document;
pub mod error;
pub mod invariant;
pub mod linalg;
pub mod linear;
pub mod matrix;
pub mod nonlinear;
pub mod report;
pub mod scalar;
pub mod search;

pub use algebra::{Algebra, AlgebraPair, DefectReport, StructureTensor};
pub use error::{Error, Result};
pub use invariant::Invariant;
pub use matrix::Matrix;
pub use scalar::{parse_scalar, Poly, Rational};
