//! Closed-form solutions for the attractive square well
//! `V(r) = -V0` for `r <= a`, `0` beyond.
//!
//! These serve as the golden reference for the numeric engine. The interior
//! momentum is the principal root `q = sqrt(k^2 + V0)`; every quantity here is
//! even in `q`, so the branch choice never matters.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{JostError, Result};
use crate::model::{ensure_finite, I};
use crate::specfun::{
    outgoing_solution, scaled_j, spherical_h_minus, spherical_h_minus_deriv, spherical_j,
    spherical_j_deriv, spherical_n, spherical_n_deriv,
};

/// Tolerance on `|f_0(k0)| / (1 + |k0|)` for the forms that assume `k0` is a zero.
pub const ZERO_CONDITION_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SquareWellParams {
    pub depth: f64,
    pub radius: f64,
}

impl SquareWellParams {
    pub fn new(depth: f64, radius: f64) -> Result<Self> {
        if !(depth >= 0.0) || !depth.is_finite() {
            return Err(JostError::InvalidParameter {
                name: "depth",
                detail: format!("V0 must be non-negative and finite, got {depth}"),
            });
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(JostError::InvalidParameter {
                name: "radius",
                detail: format!("a must be positive and finite, got {radius}"),
            });
        }
        Ok(Self { depth, radius })
    }

    /// `q = sqrt(k^2 + V0)`, principal branch.
    pub fn interior_momentum(&self, k: Complex64) -> Complex64 {
        (k * k + self.depth).sqrt()
    }
}

fn require_radius(r: f64) -> Result<()> {
    if r >= 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(JostError::Domain {
            what: "square well solution",
            detail: format!("r must be non-negative and finite, got {r}"),
        })
    }
}

/// Regular solution `φ_l(k, r)` and `dφ_l/dr`.
pub fn regular_solution_sw(
    l: usize,
    k: Complex64,
    params: &SquareWellParams,
    r: f64,
) -> Result<(Complex64, Complex64)> {
    ensure_finite("regular_solution_sw", k)?;
    require_radius(r)?;
    let q = params.interior_momentum(k);
    let a = params.radius;
    if r <= a {
        let (js, djs) = scaled_j(l, q, r)?;
        return Ok((r * js, js + r * djs));
    }
    if k == Complex64::new(0.0, 0.0) {
        if l != 0 {
            return Err(JostError::Domain {
                what: "regular_solution_sw",
                detail: format!("exterior at k = 0 is undefined for l = {l}"),
            });
        }
        let (js, djs) = scaled_j(0, q, a)?;
        let (u, du) = (a * js, js + a * djs);
        return Ok((u + du * (r - a), du));
    }
    let (ja, dja) = scaled_j(l, q, a)?;
    let ka = k * a;
    let pref = k * a * a;
    let big_a = pref * (k * ja * spherical_n_deriv(l, ka)? - dja * spherical_n(l, ka)?);
    let big_b = pref * (dja * spherical_j(l, ka)? - k * spherical_j_deriv(l, ka)? * ja);
    let kr = k * r;
    let radial = big_a * spherical_j(l, kr)? + big_b * spherical_n(l, kr)?;
    let dradial = k * (big_a * spherical_j_deriv(l, kr)? + big_b * spherical_n_deriv(l, kr)?);
    Ok((r * radial, radial + r * dradial))
}

/// Irregular solution `f_l(k, r)` and `df_l/dr`; `-ikr h⁻_l(kr)` outside the well.
pub fn irregular_solution_sw(
    l: usize,
    k: Complex64,
    params: &SquareWellParams,
    r: f64,
) -> Result<(Complex64, Complex64)> {
    ensure_finite("irregular_solution_sw", k)?;
    if !(r > 0.0) {
        return Err(JostError::Domain {
            what: "irregular_solution_sw",
            detail: format!("r must be positive, got {r}"),
        });
    }
    if r > params.radius {
        return outgoing_solution(l, k, r);
    }
    if k == Complex64::new(0.0, 0.0) && l > 0 {
        return Err(JostError::Domain {
            what: "irregular_solution_sw",
            detail: format!("k = 0 is singular for l = {l}"),
        });
    }
    let q = params.interior_momentum(k);
    if q == Complex64::new(0.0, 0.0) {
        return Err(JostError::Domain {
            what: "irregular_solution_sw",
            detail: "q = 0 makes n_l(qr) singular".into(),
        });
    }
    let a = params.radius;
    let (qa, qr) = (q * a, q * r);
    // exterior radial function -ik h⁻(kr) and its r-derivative, at r = a
    let (f_a, df_a) = outgoing_solution(l, k, a)?;
    let h = f_a / a;
    let dh = (df_a - h) / a;
    let pref = q * a * a;
    let big_c = pref * (h * q * spherical_n_deriv(l, qa)? - dh * spherical_n(l, qa)?);
    let big_d = pref * (dh * spherical_j(l, qa)? - h * q * spherical_j_deriv(l, qa)?);
    let radial = big_c * spherical_j(l, qr)? + big_d * spherical_n(l, qr)?;
    let dradial = q * (big_c * spherical_j_deriv(l, qr)? + big_d * spherical_n_deriv(l, qr)?);
    Ok((r * radial, radial + r * dradial))
}

/// `f_l(k) = (k/q)^l i k a^2 [k j_l(qa) h⁻'_l(ka) - q j'_l(qa) h⁻_l(ka)]`.
pub fn jost_sw(l: usize, k: Complex64, params: &SquareWellParams) -> Result<Complex64> {
    ensure_finite("jost_sw", k)?;
    if k == Complex64::new(0.0, 0.0) {
        if l == 0 {
            return jost_sw_l0(k, params);
        }
        return Err(JostError::Domain {
            what: "jost_sw",
            detail: format!("k = 0 is excluded for l = {l}"),
        });
    }
    let q = params.interior_momentum(k);
    let a = params.radius;
    let (js, djs) = scaled_j(l, q, a)?;
    let ka = k * a;
    let h = spherical_h_minus(l, ka)?;
    let dh = spherical_h_minus_deriv(l, ka)?;
    Ok(k.powu(l as u32) * I * k * a * a * (k * js * dh - djs * h))
}

/// `f_0(k) = e^{-ika} (ik sin(qa)/q + cos(qa))`.
pub fn jost_sw_l0(k: Complex64, params: &SquareWellParams) -> Result<Complex64> {
    ensure_finite("jost_sw_l0", k)?;
    let q = params.interior_momentum(k);
    let a = params.radius;
    let sinc = sin_over(q, a);
    Ok((-I * k * a).exp() * (I * k * sinc + (q * a).cos()))
}

/// `sin(q a) / q`, finite at `q = 0`.
fn sin_over(q: Complex64, a: f64) -> Complex64 {
    let (js, _) = scaled_j(0, q, a).expect("j_0 is entire");
    a * js
}

fn check_zero(k0: Complex64, params: &SquareWellParams) -> Result<()> {
    ensure_finite("square well zero", k0)?;
    let residual = jost_sw_l0(k0, params)?.norm();
    let tolerance = ZERO_CONDITION_TOL * (1.0 + k0.norm());
    if residual > tolerance {
        return Err(JostError::NotAZero { k0, residual, tolerance });
    }
    Ok(())
}

/// `f_0(-k0) = -(2 i k0 / q0) e^{i k0 a} sin(q0 a)`, valid at a zero `k0` of `f_0`.
pub fn jost_sw_l0_minus(k0: Complex64, params: &SquareWellParams) -> Result<Complex64> {
    check_zero(k0, params)?;
    let q0 = params.interior_momentum(k0);
    let a = params.radius;
    Ok(-2.0 * I * k0 * sin_over(q0, a) * (I * k0 * a).exp())
}

/// `ḟ_0(k0) = i ((q0^2 - k0^2)/q0^3) (1 + i k0 a) e^{-i k0 a} sin(q0 a)`, valid at a zero.
pub fn jost_sw_l0_deriv_at_zero(k0: Complex64, params: &SquareWellParams) -> Result<Complex64> {
    check_zero(k0, params)?;
    let q0 = params.interior_momentum(k0);
    let a = params.radius;
    let q2 = q0 * q0;
    Ok(I * (q2 - k0 * k0) / q2 * sin_over(q0, a) * (1.0 + I * k0 * a) * (-I * k0 * a).exp())
}

/// `∫_0^∞ φ_0^2(k0, r) dr = ((1 + i k0 a)/(2 i k0)) ((q0^2 - k0^2)/q0^4) sin^2(q0 a)`.
///
/// Real and positive at a bound state, real at a virtual state.
pub fn pseudonorm_sw_l0(k0: Complex64, params: &SquareWellParams) -> Result<Complex64> {
    check_zero(k0, params)?;
    if k0 == Complex64::new(0.0, 0.0) {
        return Err(JostError::Domain {
            what: "pseudonorm_sw_l0",
            detail: "threshold zero k0 = 0 is excluded".into(),
        });
    }
    let q0 = params.interior_momentum(k0);
    let a = params.radius;
    let sinc = sin_over(q0, a);
    let q2 = q0 * q0;
    Ok((1.0 + I * k0 * a) / (2.0 * I * k0) * (q2 - k0 * k0) / q2 * sinc * sinc)
}
