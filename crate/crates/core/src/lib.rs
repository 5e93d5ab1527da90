//! Summability matrix operators on weighted and Lorentz sequence spaces.
//!
//! The crate builds the classical summability matrices — the Hausdorff
//! family (Cesàro, Euler, Hölder, Gamma), Nörlund means, the Copson
//! (transposed Cesàro) matrix and the Hilbert matrix — as operators on
//! the weighted spaces `l_p(w)`, the Lorentz spaces `d(w,p)` and the
//! space `e(w,∞)`, and evaluates their operator norms: closed forms
//! where they exist, certified two-sided bounds and extremal witness
//! sequences everywhere else.
//!
//! Modules mirror the layers of the computation:
//!
//! - [`specfun`] — gamma/beta/zeta, binomial coefficients and a
//!   tanh-sinh quadrature that tolerates endpoint singularities.
//! - [`spaces`] — weight sequences, finitely supported sequences,
//!   decreasing rearrangement and the three norms.
//! - [`measures`] — probability measures on `[0,1]` generating the
//!   Hausdorff family; moments and the `∫ θ^{-1/p} dμ` norm integral.
//! - [`matrices`] — entry rules, truncations, operator application and
//!   the structural conditions used to pass from `l_p(w)` to `d(w,p)`.
//! - [`norms`] — closed-form norms, sup-ratio norms with honest tail
//!   brackets, witness sequences and brute-force oracles.
//!
//! All numeric kernels are generic over [`Scalar`] (any `num_traits`
//! float); the [`Real`] alias fixes the concrete type the command-line
//! harness and the test suites use.

// domain guards use `!(x > 0)` so NaN parameters are rejected too;
// frozen reference constants keep their full published digits
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::excessive_precision)]

pub mod error;
pub mod matrices;
pub mod measures;
pub mod norms;
pub mod scalar;
pub mod spaces;
pub mod specfun;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Concrete scalar type used by the CLI and the verification suites.
pub type Real = f64;

/// Weight sequence over the default scalar.
pub type WeightSequence = spaces::WeightSequence<Real>;
/// Finitely supported sequence over the default scalar.
pub type FiniteSequence = spaces::FiniteSequence<Real>;
/// Measure specification over the default scalar.
pub type MeasureSpec = measures::MeasureSpec<Real>;
/// Operator specification over the default scalar.
pub type OperatorSpec = matrices::OperatorSpec<Real>;
