//! Exact q-difference ladder operators for the Stieltjes-Wigert and q-Laguerre
//! orthogonal polynomials, with an independent moment-based oracle and a
//! high-precision quadrature layer for the integral definitions.

pub mod closed_form;
pub mod error;
pub mod float;
pub mod oracle;
pub mod poly;
pub mod quadrature;
pub mod ratfun;
pub mod recurrence;
pub mod scalar;
pub mod verify;
pub mod weight;

pub use error::{Error, Result};
pub use float::{FloatCtx, HighPrecFloat};
pub use poly::Polynomial;
pub use ratfun::{identity_equal, RationalFunction};
pub use scalar::{ExactScalar, QContext};
