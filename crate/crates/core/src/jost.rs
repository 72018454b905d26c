//! Jost-function evaluators: the closed-form square well and the numeric
//! radial engine behind one interface.

use num_complex::Complex64;

use crate::error::Result;
use crate::potential::PotentialSpec;
use crate::radial::{self, cauchy_derivative, cauchy_radius, CAUCHY_NODES};
use crate::square_well::{jost_sw, SquareWellParams};

/// Something that can evaluate `f_l(k)` and `df_l/dk` anywhere `k != 0`
/// (and at `k = 0` for `l = 0`).
pub trait JostEvaluator: Sync {
    fn l(&self) -> usize;
    fn jost(&self, k: Complex64) -> Result<Complex64>;
    fn jost_derivative(&self, k: Complex64) -> Result<Complex64>;
}

#[derive(Debug, Clone, Copy)]
pub struct AnalyticSquareWell {
    pub params: SquareWellParams,
    pub l: usize,
}

impl AnalyticSquareWell {
    pub fn new(params: SquareWellParams, l: usize) -> Self {
        Self { params, l }
    }
}

impl JostEvaluator for AnalyticSquareWell {
    fn l(&self) -> usize {
        self.l
    }

    fn jost(&self, k: Complex64) -> Result<Complex64> {
        jost_sw(self.l, k, &self.params)
    }

    fn jost_derivative(&self, k: Complex64) -> Result<Complex64> {
        let h = cauchy_radius(self.l, k)?;
        cauchy_derivative(|z| jost_sw(self.l, z, &self.params), k, h, CAUCHY_NODES)
    }
}

#[derive(Debug, Clone)]
pub struct NumericJost {
    pub potential: PotentialSpec,
    pub l: usize,
    pub tol: f64,
}

impl NumericJost {
    pub fn new(potential: PotentialSpec, l: usize) -> Self {
        Self {
            potential,
            l,
            tol: radial::DEFAULT_TOL,
        }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }
}

impl JostEvaluator for NumericJost {
    fn l(&self) -> usize {
        self.l
    }

    fn jost(&self, k: Complex64) -> Result<Complex64> {
        radial::jost_function(&self.potential, self.l, k, self.tol)
    }

    fn jost_derivative(&self, k: Complex64) -> Result<Complex64> {
        Ok(radial::jost_derivative(&self.potential, self.l, k, self.tol)?.value)
    }
}

/// Which evaluator to build for a potential.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Numeric,
    /// Closed form; only square wells support it.
    Analytic,
}

/// Builds an evaluator; the analytic engine falls back to an error for
/// potentials that are not square wells.
pub fn evaluator(potential: &PotentialSpec, l: usize, engine: Engine) -> Result<Box<dyn JostEvaluator + Send>> {
    potential.validate()?;
    match engine {
        Engine::Numeric => Ok(Box::new(NumericJost::new(potential.clone(), l))),
        Engine::Analytic => match potential.as_square_well() {
            Some(p) => Ok(Box::new(AnalyticSquareWell::new(p, l))),
            None => Err(crate::JostError::InvalidParameter {
                name: "engine",
                detail: "the analytic engine only supports square wells".into(),
            }),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::square_well::jost_sw_l0_deriv_at_zero;

    #[test]
    fn engines_agree() {
        let p = PotentialSpec::square_well(4.0, 1.0).unwrap();
        let a = evaluator(&p, 1, Engine::Analytic).unwrap();
        let n = evaluator(&p, 1, Engine::Numeric).unwrap();
        let k = Complex64::new(2.5, 0.8);
        assert!((a.jost(k).unwrap() - n.jost(k).unwrap()).norm() < 1e-9 * a.jost(k).unwrap().norm());
        let (da, dn) = (a.jost_derivative(k).unwrap(), n.jost_derivative(k).unwrap());
        assert!((da - dn).norm() < 1e-8 * da.norm());
    }

    #[test]
    fn analytic_derivative_at_bound_state() {
        let params = SquareWellParams::new(4.0, 1.0).unwrap();
        let k0 = Complex64::new(0.0, -0.638045048285238);
        let d = AnalyticSquareWell::new(params, 0).jost_derivative(k0).unwrap();
        let exact = jost_sw_l0_deriv_at_zero(k0, &params).unwrap();
        assert!((d - exact).norm() < 1e-10 * exact.norm());
    }

    #[test]
    fn analytic_engine_rejects_other_shapes() {
        let p = PotentialSpec::piecewise_constant(vec![0.5], vec![-1.0, -2.0], 1.0).unwrap();
        assert!(evaluator(&p, 0, Engine::Analytic).is_err());
    }
}
