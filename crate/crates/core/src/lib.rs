//! Exact construction and certification of symmetric group divisible designs
//! (SGDDs), linked systems of SGDDs of type II, and the 5-class association
//! schemes they generate.
//!
//! All arithmetic is exact: integer matrices use arbitrary-precision entries,
//! parameter formulas are evaluated over the rationals, and eigenvalues live
//! in a real quadratic field `Q(√D)`.

pub mod algebra;
pub mod designs;
pub mod error;
pub mod hadamard;
pub mod io;
pub mod latin;
pub mod linked;
pub mod report;
pub mod resolvable;
pub mod scanner;
pub mod schemes;

pub use algebra::{FiniteGroup, GfContext, GfElement, Matrix, Rational, Scalar, Surd};
pub use error::{Error, Result};
pub use report::Certificate;

/// Integer matrix with arbitrary-precision entries.
pub type IntMatrix = Matrix<num_bigint::BigInt>;
/// Matrix over the rationals.
pub type RatMatrix = Matrix<Rational>;
/// Matrix over a real quadratic field; all irrational entries share one radicand.
pub type SurdMatrix = Matrix<Surd>;
