//! Jost functions of short-range radial potentials on the complex momentum
//! plane, their zeros (bound, virtual and resonant states), and the complex
//! pseudonorm of each state.
//!
//! Conventions are fixed crate-wide: `hbar^2/2m = 1`, so `E = k^2`; the
//! irregular solution behaves as `i^l e^{-ikr}` at large `r`, which puts
//! bound states on the negative imaginary `k` axis.

// `!(x > 0.0)` is used on purpose so that NaN fails validation
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod jost;
pub mod model;
pub mod ode;
pub mod potential;
pub mod poles;
pub mod pseudonorm;
pub mod quad;
pub mod radial;
pub mod specfun;
pub mod square_well;

pub use error::{JostError, Result};
pub use model::{classify, Momentum, PoleClass, UNITS_LINE};
