//! Affine quantum Schur algebras of type C with three parameters `q`, `q0`, `q1`.
//!
//! The crate builds everything on top of a brute-force Hecke algebra model:
//! the affine Weyl group acts on windows of signed periodic permutations,
//! the Hecke algebra is stored in its `T_w` basis, and Schur algebra
//! products computed there serve as the reference for the closed
//! multiplication formulas, the stabilization algebra and the
//! iquantum group relations.

pub mod error;
pub mod ring;
pub mod weyl;
pub mod hecke;
pub mod entry;
pub mod matrices;
pub mod algebra;
pub mod schur;
pub mod canonical;
pub mod stab;
pub mod iqg;
pub mod report;
pub mod corpus;

pub use error::{Error, Result};
