//! Complex pseudonorm `∫_0^∞ φ_l^2(k0, r) dr` of a Jost-zero state.
//!
//! [`pseudonorm_formula`] evaluates the closed expression
//! `ḟ_l(k0) f_l(-k0) / (4 i k0^{2l+2})`. [`pseudonorm_regularized`] is an
//! independent check: it damps the integrand with `e^{-ε r^2}`, integrates,
//! and extrapolates `ε → 0`.
//!
//! For `Im k0 > 0` the exterior integrand grows like `e^{2 Im k0 r}` and the
//! damped real-axis integral is dominated by a saddle contribution of order
//! `exp(-k0^2/ε)`, which is exponentially large whenever
//! `|Im k0| > |Re k0|`. The exterior part is therefore taken along
//! `R → R + ic → -∞ + ic` with `c = -sign(Re k0)·R` (`c = R` on the axis):
//! this equals the damped real-axis integral minus the full-line Gaussian
//! term, which carries no information about the `ε → 0` continuation.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{JostError, Result};
use crate::jost::JostEvaluator;
use crate::model::{ensure_finite, I};
use crate::potential::PotentialSpec;
use crate::quad::{extrapolate_to_zero, integrate_segment};
use crate::radial::{self, RadialGrid};
use crate::specfun::outgoing_solution_at;

/// Default relative tolerance on `|f_l(k0)|` for accepting `k0` as a zero.
pub const ZERO_TOL: f64 = 1e-8;
/// `|ḟ_l(k0)|` below this is treated as a multiple zero.
pub const MULTIPLE_ZERO_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
/// `-ln` of the relative size at which an exterior tail is truncated.
const TAIL_DECADES: f64 = 46.0;

/// Geometric sequence of Gaussian regulators `ε_j = eps0 · ratio^j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegulatorSchedule {
    pub eps0: f64,
    pub ratio: f64,
    pub count: usize,
}

impl RegulatorSchedule {
    pub fn new(eps0: f64, ratio: f64, count: usize) -> Result<Self> {
        let s = Self { eps0, ratio, count };
        s.validate()?;
        Ok(s)
    }

    /// `eps0 = 0.5 / R^2`, `ratio = 0.5`, twelve points.
    pub fn for_cutoff(cutoff: f64) -> Self {
        Self {
            eps0: 0.5 / (cutoff * cutoff),
            ratio: 0.5,
            count: 12,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps0 > 0.0 && self.eps0.is_finite()) {
            return Err(JostError::InvalidParameter {
                name: "eps0",
                detail: format!("must be positive, got {}", self.eps0),
            });
        }
        if !(self.ratio > 0.0 && self.ratio < 1.0) {
            return Err(JostError::InvalidParameter {
                name: "ratio",
                detail: format!("must lie in (0, 1), got {}", self.ratio),
            });
        }
        if self.count < 3 {
            return Err(JostError::InvalidParameter {
                name: "count",
                detail: format!("need at least 3 regulators, got {}", self.count),
            });
        }
        Ok(())
    }

    pub fn epsilons(&self) -> Vec<f64> {
        (0..self.count).map(|j| self.eps0 * self.ratio.powi(j as i32)).collect()
    }
}

fn check_zero(jost: &dyn JostEvaluator, k0: Complex64, zero_tol: f64) -> Result<()> {
    ensure_finite("pseudonorm", k0)?;
    if k0 == ZERO {
        return Err(JostError::Domain {
            what: "pseudonorm",
            detail: "k0 = 0 is excluded".into(),
        });
    }
    let residual = jost.jost(k0)?.norm();
    let tolerance = zero_tol * (1.0 + k0.norm());
    if residual > tolerance {
        return Err(JostError::NotAZero { k0, residual, tolerance });
    }
    Ok(())
}

/// `ḟ_l(k0) f_l(-k0) / (4 i k0^{2l+2})` at a zero `k0` of `f_l`.
pub fn pseudonorm_formula(jost: &dyn JostEvaluator, k0: Complex64, zero_tol: f64) -> Result<Complex64> {
    check_zero(jost, k0, zero_tol)?;
    let l = jost.l();
    let deriv = jost.jost_derivative(k0)?;
    if deriv.norm() < MULTIPLE_ZERO_TOL {
        return Err(JostError::MultipleZero {
            k0,
            deriv_abs: deriv.norm(),
        });
    }
    let reflected = jost.jost(-k0)?;
    Ok(deriv * reflected / (4.0 * I * k0.powu(2 * l as u32 + 2)))
}

/// `C(k0) = -2 i k0^{l+1} / f_l(-k0)`, so that `f_l(k0, r) = C(k0) φ_l(k0, r)`.
pub fn proportionality_constant(jost: &dyn JostEvaluator, k0: Complex64, zero_tol: f64) -> Result<Complex64> {
    check_zero(jost, k0, zero_tol)?;
    let reflected = jost.jost(-k0)?;
    if reflected.norm() < MULTIPLE_ZERO_TOL {
        return Err(JostError::Degenerate {
            k0,
            value_abs: reflected.norm(),
        });
    }
    Ok(-2.0 * I * k0.powu(jost.l() as u32 + 1) / reflected)
}

/// `N^{-1/2}` on the principal branch.
pub fn norm_constant(pseudonorm: Complex64, k0: Complex64) -> Result<Complex64> {
    if pseudonorm.norm() == 0.0 || !pseudonorm.norm().is_finite() {
        return Err(JostError::Degenerate {
            k0,
            value_abs: pseudonorm.norm(),
        });
    }
    Ok(pseudonorm.inv().sqrt())
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedState {
    /// `[4 i k0^{2l+2} / (ḟ_l(k0) f_l(-k0))]^{1/2}`, principal branch.
    pub factor: Complex64,
    /// `arg(factor)`; the overall phase of the state is not fixed otherwise.
    pub phase: f64,
    pub nodes: Vec<f64>,
    pub values: Vec<Complex64>,
}

/// `ψ_l(k0, r) = factor · φ_l(k0, r)` at each of `nodes`.
pub fn normalized_state(
    jost: &dyn JostEvaluator,
    potential: &PotentialSpec,
    k0: Complex64,
    nodes: &[f64],
    tol: f64,
) -> Result<NormalizedState> {
    let n = pseudonorm_formula(jost, k0, ZERO_TOL)?;
    let factor = norm_constant(n, k0)?;
    let grid = RadialGrid::new(potential, nodes.to_vec())?;
    let sol = radial::integrate_regular(potential, jost.l(), k0, &grid, tol)?;
    Ok(NormalizedState {
        factor,
        phase: factor.arg(),
        nodes: sol.nodes,
        values: sol.values.iter().map(|v| v * factor).collect(),
    })
}

/// Regularized estimate with its ε-table.
#[derive(Debug, Clone, PartialEq)]
pub struct Regularized {
    pub value: Complex64,
    /// Size of the last extrapolation increment.
    pub error: f64,
    /// `(ε, N_ε)` in schedule order.
    pub table: Vec<(f64, Complex64)>,
    /// Successive extrapolated values, one per added regulator.
    pub extrapolants: Vec<Complex64>,
}

/// Exterior amplitude `A` with `φ_l(k0, r) = A f_l(k0, r)` for `r >= R`.
fn exterior_amplitude(l: usize, k0: Complex64, cutoff: f64, u: Complex64, du: Complex64) -> Result<Complex64> {
    let (f, df) = outgoing_solution_at(l, k0, Complex64::new(cutoff, 0.0))?;
    // match on whichever of value or slope is better conditioned
    if f.norm() * cutoff >= df.norm() {
        Ok(u / f)
    } else {
        Ok(du / df)
    }
}

fn tail_length(decay: f64, eps: f64, start: f64) -> f64 {
    let by_decay = if decay > 0.0 { TAIL_DECADES / decay } else { f64::INFINITY };
    let by_gauss = if eps > 0.0 {
        (start * start + TAIL_DECADES / eps).sqrt() - start
    } else {
        f64::INFINITY
    };
    by_decay.min(by_gauss)
}

/// `∫ f_l(k0, r)^2 e^{-ε r^2} dr` from the cutoff to infinity, continued
/// in `k0` as described in the module docs.
fn exterior_integral(l: usize, k0: Complex64, cutoff: f64, eps: f64, tol: f64) -> Result<Complex64> {
    let mut failure = None;
    let mut g = |r: Complex64| match outgoing_solution_at(l, k0, r) {
        Ok((f, _)) => f * f * (-eps * r * r).exp(),
        Err(e) => {
            failure.get_or_insert(e);
            ZERO
        }
    };
    let rel = tol.max(1e-14);
    let start = Complex64::new(cutoff, 0.0);
    let value = if k0.im <= 0.0 {
        let len = tail_length(-2.0 * k0.im, eps, cutoff);
        if !len.is_finite() {
            return Err(JostError::Domain {
                what: "pseudonorm_regularized",
                detail: "real-axis tail does not converge for real k0 without a regulator".into(),
            });
        }
        integrate_segment(&mut g, start, start + len, 0.0, rel)?
    } else {
        let c = if k0.re > 0.0 { -cutoff } else { cutoff };
        let corner = Complex64::new(cutoff, c);
        let len = tail_length(2.0 * k0.im, eps, cutoff);
        let up = integrate_segment(&mut g, start, corner, 0.0, rel)?;
        let across = integrate_segment(&mut g, corner, corner - len, 0.0, rel)?;
        up + across
    };
    match failure {
        Some(e) => Err(e),
        None => Ok(value),
    }
}

fn regulated_values(
    potential: &PotentialSpec,
    l: usize,
    k0: Complex64,
    eps: &[f64],
    tol: f64,
) -> Result<Vec<Complex64>> {
    let cutoff = potential.cutoff();
    let (u, du, interior) = radial::regular_with_moments(potential, l, k0, eps, tol)?;
    let amp = exterior_amplitude(l, k0, cutoff, u, du)?;
    eps.iter()
        .zip(interior)
        .map(|(&e, inner)| Ok(inner + amp * amp * exterior_integral(l, k0, cutoff, e, tol)?))
        .collect()
}

/// Gaussian-regularized pseudonorm extrapolated to `ε = 0`.
///
/// `k0` must be a zero of the Jost function of `potential`; this is checked
/// with the numeric engine at [`ZERO_TOL`].
pub fn pseudonorm_regularized(
    potential: &PotentialSpec,
    l: usize,
    k0: Complex64,
    schedule: &RegulatorSchedule,
    tol: f64,
) -> Result<Regularized> {
    schedule.validate()?;
    let residual = radial::jost_function(potential, l, k0, tol)?.norm();
    let tolerance = ZERO_TOL * (1.0 + k0.norm());
    if residual > tolerance {
        return Err(JostError::NotAZero { k0, residual, tolerance });
    }
    if k0 == ZERO {
        return Err(JostError::Domain {
            what: "pseudonorm_regularized",
            detail: "k0 = 0 is excluded".into(),
        });
    }
    let eps = schedule.epsilons();
    let values = regulated_values(potential, l, k0, &eps, tol)?;
    let extrapolants = extrapolate_to_zero(&eps, &values);
    let n = extrapolants.len();
    let value = extrapolants[n - 1];
    let error = (extrapolants[n - 1] - extrapolants[n - 2]).norm();
    let first = (extrapolants[1] - extrapolants[0]).norm();
    let table: Vec<(f64, Complex64)> = eps.into_iter().zip(values).collect();
    if error > first {
        let rows: Vec<String> = table.iter().map(|(e, v)| format!("{e:.3e}: {v}")).collect();
        return Err(JostError::NonConvergent {
            what: "pseudonorm_regularized",
            detail: format!("extrapolation increments grew; N_eps table [{}]", rows.join(", ")),
        });
    }
    Ok(Regularized {
        value,
        error,
        table,
        extrapolants,
    })
}

/// Plain `∫_0^∞ φ_l^2 dr`, convergent only for bound states (`Im k0 < 0`).
pub fn pseudonorm_direct(potential: &PotentialSpec, l: usize, k0: Complex64, tol: f64) -> Result<Complex64> {
    ensure_finite("pseudonorm_direct", k0)?;
    if !(k0.im < 0.0) {
        return Err(JostError::Domain {
            what: "pseudonorm_direct",
            detail: format!("the unregularized integral diverges for Im k0 = {} >= 0", k0.im),
        });
    }
    Ok(regulated_values(potential, l, k0, &[0.0], tol)?[0])
}
