//! Special functions and singularity-tolerant quadrature.
//!
//! Everything downstream leans on this module: gamma/beta for the
//! closed-form Hausdorff entries and norms, zeta for the Cesàro tail
//! sums, exact binomials for the difference form of the Hausdorff
//! matrix, and a tanh-sinh integrator for the `∫ θ^{-1/p} dμ` norm
//! integrals whose integrands blow up at the interval endpoints.

mod binomial;
pub(crate) mod dd;
mod gamma;
mod quad;
mod zeta;

pub use binomial::binomial;
pub use gamma::{beta_fn, gamma_fn, ln_beta, ln_gamma};
pub use quad::{integrate01, QuadEstimate, QuadratureSettings, SplitPoint};
pub use zeta::{power_sum_tail, zeta_fn};
