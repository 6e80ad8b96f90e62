//! Exhaustive and closed-form verification of the generalized Kasami
//! exponential sums, cyclic codes and sequence family over GF(2^n).

pub mod cli;
pub mod codes;
pub mod distribution;
pub mod error;
pub mod exec;
pub mod expsum;
pub mod field;
pub mod formula;
pub mod linearized;
pub mod packed;
pub mod sequences;
pub mod verify;

pub use distribution::ValueDistribution;
pub use error::{Error, Result};
pub use exec::Exec;
pub use field::{derive_params, Case, FieldContext, FieldElement, Params};
