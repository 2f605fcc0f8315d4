//! Pseudospectral engine for the convex-integration construction of
//! stationary weak solutions of the SQG equation on `T² = [-π, π]²`.
//!
//! Fourier convention: `f(x) = Σ_k f̂(k) e^{ik·x}`, so `⟨f, g⟩ = (2π)² Σ f̂ conj ĝ`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod io;
pub mod iteration;
pub mod multiplier;
pub mod norms;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use spectral::{TorusField, VectorField, WaveVector};
