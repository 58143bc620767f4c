//! Cohen-Macaulay tests for generically complete intersection monomial ideals `I_Δ(α)`
//! attached to simplicial complexes, with a brute-force homological oracle to check them.

pub mod cli;
pub mod complex;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod generate;
pub mod graphs;
pub mod homology;
pub mod ideals;
pub mod problem;
pub mod satisfying;
pub mod structure;

pub use complex::{AlphaVector, Face, SimplicialComplex};
pub use error::{Error, Result};
pub use field::FieldSpec;
