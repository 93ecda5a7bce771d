//! Exact Fourier expansion of the quaternionic Heisenberg Eisenstein series
//! `E_ℓ(g, s = ℓ+1)` on `U(2, n)`.
//!
//! Local Siegel-series polynomials are computed in exact arithmetic and can be
//! checked against a brute-force p-adic enumeration oracle.

pub mod archimedean;
pub mod arith;
pub mod error;
pub mod fourier;
pub mod hermitian;
pub mod lift;
pub mod report;
pub mod siegel;
pub mod verify;

pub use error::{Error, Result};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Integer polynomial, e.g. the local polynomials `P` and `R`.
pub type IntPoly = arith::Poly<BigInt>;
/// Truncated series in `t = p^{-s}` with rational coefficients.
pub type SeriesPoly = arith::Poly<BigRational>;
/// Floating-point scalar used by the archimedean routines.
pub type Real = f64;
