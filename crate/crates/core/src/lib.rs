//! Closed-form symbols of minimum-support interpolatory subdivision schemes
//! that reproduce exponential polynomials, together with the Chebyshev and
//! big q-Jacobi identities that make the closed form possible.
//!
//! The crate is organized bottom-up:
//!
//! - [`scalar`]: the field contract with exact rational and `f64` realizations.
//! - [`laurent`]: Laurent-polynomial arithmetic, the carrier of all symbols.
//! - [`qseries`]: (q-)Pochhammer symbols and terminating (basic) hypergeometric series.
//! - [`chebyshev`]: `T_n`, the coupling coefficients `C_{l,i}` and the identities.
//! - [`symbols`]: B-spline, closed-form and Dubuc–Deslauriers symbols.
//! - [`oracle`]: the independent Hurwitz-matrix construction.
//! - [`subdivision`] and [`curves`]: the refinement engine and figure presets.

pub mod chebyshev;
pub mod cli;
pub mod curves;
pub mod error;
pub mod export;
pub mod laurent;
pub mod oracle;
pub mod qseries;
pub mod scalar;
pub mod subdivision;
pub mod symbols;

pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use scalar::{Rational, Scalar};
pub use symbols::{SubdivisionMask, ThetaSpec};
