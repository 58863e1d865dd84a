//! Complex continued fractions over the Euclidean imaginary quadratic rings
//! and explicit `SL₂(O_K)` approximations of points in `ℂ²`.
//!
//! - [`field`]: exact ring arithmetic, certified ball arithmetic, input expressions.
//! - [`cf`]: nearest-integer continued fraction expansion and its constants.
//! - [`matrix`]: convergent matrices and the composite approximating matrices.
//! - [`exponent`]: exponent estimators, brute-force oracles, predicted bounds.
//! - [`embed`]: the `SL₂(ℤ[i]) → SL₄(ℤ)` embedding.
//! - [`cli`]: configuration, experiment commands and output formats.

pub mod error;
pub mod cf;
pub mod field;
pub mod matrix;
pub mod exponent;
pub mod embed;
pub mod cli;

pub use error::{Error, Result};
