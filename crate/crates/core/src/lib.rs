//! Fractional and generalized fractional Laguerre functions on the half-line.
//!
//! The fractional family composes the generalized Laguerre polynomial
//! `L_m^(theta)` with the map `y = (beta + 1) x^gamma`; the generalized family
//! additionally carries the algebraic prefactor `x^eta`, `eta = gamma (theta - sigma) / 2`.
//! Both families come with mapped Gauss quadrature, weighted projection and
//! interpolation operators, mapped-derivative Sobolev seminorms and evaluators
//! for the associated error bounds.
//!
//! Layout:
//!
//! * [`special`]: gamma function, Mittag-Leffler function, Taylor jets and the
//!   test-function library used by the experiments.
//! * [`tridiag`]: implicit-shift QL eigensolver for symmetric tridiagonal matrices.
//! * [`laguerre`]: classical generalized Laguerre polynomials and Gauss rules.
//! * [`fractional`]: the scaled fractional family.
//! * [`generalized`]: the generalized fractional family.
//! * [`approximation`]: projection, interpolation, seminorms and error bounds.
//! * [`experiments`]: CSV experiment harness behind the `fraclag` binary.
//!
//! Runnable walkthroughs of each capability live in the crate's `examples/`
//! directory (`cargo run --example <name>`).

pub mod approximation;
pub mod error;
pub mod experiments;
pub mod fractional;
pub mod generalized;
pub mod laguerre;
pub mod special;
pub mod tridiag;

pub use approximation::{BoundKind, BoundReport, Expansion, Family, SobolevReport};
pub use error::{Error, Result};
pub use fractional::{FracParams, FracQuadrature};
pub use generalized::{GenParams, GenQuadrature};
pub use laguerre::QuadratureRule;
