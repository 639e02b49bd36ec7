//! Numerical models of quantum logics with unique conditional probabilities.
//!
//! Events are projections in the Hermitian matrix Jordan algebras `H_n(ℝ)`,
//! `H_n(ℂ)`, `H_n(ℍ)` and the exceptional `H_3(𝕆)`; states are densities; the
//! conditionalization map is `U_e x = 2e∘(e∘x) − e∘x`. On top of that the
//! crate builds Sorkin's interference terms, the maps `S_e` and `T_e`, and
//! randomized verification suites for the identities relating them.

pub mod error;
pub mod interference;
pub mod jordan;
pub mod operator;
pub mod random;
pub mod scalar;
pub mod spectral;
pub mod suites;
pub mod ucp;

pub use error::{Error, Result};
pub use jordan::{AlgebraElement, Descriptor, Event};
pub use scalar::{Level, Scalar};
pub use ucp::State;
