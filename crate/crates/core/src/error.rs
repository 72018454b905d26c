use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum JostError {
    #[error("domain error in {what}: {detail}")]
    Domain { what: &'static str, detail: String },

    #[error("range error in {what}: |Im z| = {im_abs:.3e} overflows double precision")]
    Range { what: &'static str, im_abs: f64 },

    #[error("invalid parameter {name}: {detail}")]
    InvalidParameter { name: &'static str, detail: String },

    #[error("precondition failed: |f(k0)| = {residual:.3e} exceeds {tolerance:.3e} at k0 = {k0}")]
    NotAZero { k0: Complex64, residual: f64, tolerance: f64 },

    #[error("integrator failure at r = {r:.6e}: {detail}")]
    Integrator { r: f64, detail: String },

    #[error("k0 = {k0} with Re k0 != 0 and Im k0 <= 0 lies outside the bound/virtual/resonant taxonomy")]
    Unclassifiable { k0: Complex64 },

    #[error("contour passes too close to a zero near k = {near}")]
    ContourTooClose { near: Complex64 },

    #[error("suspected multiple zero at k0 = {k0}: |f'(k0)| = {deriv_abs:.3e}")]
    MultipleZero { k0: Complex64, deriv_abs: f64 },

    #[error("degenerate state at k0 = {k0}: |f(-k0)| = {value_abs:.3e}")]
    Degenerate { k0: Complex64, value_abs: f64 },

    #[error("Newton iteration failed from {start}: {detail}")]
    NewtonFailed { start: Complex64, detail: String },

    #[error("{what} did not converge: {detail}")]
    NonConvergent { what: &'static str, detail: String },
}

pub type Result<T> = std::result::Result<T, JostError>;
