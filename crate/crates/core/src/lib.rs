//! Exact symbolic toolkit for sprays of Riemannian metrics and the Lie
//! algebras of their symmetries.
//!
//! The crate is organised as a pipeline:
//!
//! * [`symexpr`]: the scalar ring `Q[x, y] ⊗ exp(Q-linear forms in x)` with a
//!   decidable zero test, a parser for the textual grammar, differentiation and
//!   floating-point evaluation.
//! * [`geom`]: metric → Christoffel data → canonical spray → connection →
//!   curvature, plus vector 1-forms and the Frölicher–Nijenhuis bracket.
//! * [`fields`]: vector fields on `M` and `TM`, complete lifts, membership
//!   predicates and the finite-dictionary symmetry solver.
//! * [`liealg`]: exact analysis of finite-dimensional Lie algebras given by
//!   structure constants.
//!
//! The linear algebra in [`linalg`] is generic over [`Scalar`]; exact
//! computations use [`Rational`], numeric rank estimates use `f64`.

pub mod fields;
pub mod geom;
pub mod liealg;
pub mod linalg;
pub mod scalar;
pub mod symexpr;

pub use scalar::Scalar;

/// Arbitrary-precision rational number; the coefficient field of every exact
/// computation in the crate.
pub type Rational = num_rational::BigRational;

/// Arbitrary-precision integer backing [`Rational`].
pub type Integer = num_bigint::BigInt;

/// Dense matrix over the exact rationals.
pub type RationalMatrix = linalg::Matrix<Rational>;

/// Dense matrix over `f64`, used for numeric rank estimates.
pub type FloatMatrix = linalg::Matrix<f64>;

/// Coordinate vector of a Lie algebra element with respect to its basis.
pub type Coords = Vec<Rational>;

pub use symexpr::{CanonicalExpr, Var};

/// Shorthand for building a rational from a numerator and denominator.
///
/// Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(Integer::from(num), Integer::from(den))
}

/// Rational from an integer.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(Integer::from(n))
}
