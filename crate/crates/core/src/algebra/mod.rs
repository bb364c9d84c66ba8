//! Exact scalar and matrix arithmetic.
//!
//! Everything downstream is built on [`Matrix`], which is generic over a
//! [`Scalar`]: arbitrary-precision integers for incidence matrices, rationals
//! for parameter formulas and [`Surd`]s for eigenvalues in a real quadratic
//! field. No floating point is used anywhere.

mod gf;
mod group;
mod matrix;
pub mod number;
mod scalar;
mod surd;

pub use gf::{GfContext, GfElement};
pub use group::FiniteGroup;
pub use matrix::Matrix;
pub use scalar::Scalar;
pub use surd::Surd;

/// Exact rational number with arbitrary-precision numerator and denominator.
pub type Rational = num_rational::BigRational;
