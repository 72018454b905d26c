//! Short-range radial potentials with a hard cutoff.

use serde::{Deserialize, Serialize};

use crate::error::{JostError, Result};
use crate::square_well::SquareWellParams;

/// A radial potential (an energy, in the `hbar^2/2m = 1` units) that vanishes
/// identically for `r >= cutoff`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum PotentialSpec {
    /// `-depth` for `r <= radius`, zero beyond.
    SquareWell { depth: f64, radius: f64 },
    /// `values[i]` on `(b[i-1], b[i]]` with `b[-1] = 0` and `b[n] = cutoff`;
    /// `breakpoints` holds the interior boundaries only.
    PiecewiseConstant {
        breakpoints: Vec<f64>,
        values: Vec<f64>,
        cutoff: f64,
    },
    /// Tabulated values interpolated by a monotone (Fritsch–Carlson) cubic.
    /// The table must start at `r = 0` and end at `cutoff`.
    Sampled {
        grid: Vec<f64>,
        values: Vec<f64>,
        cutoff: f64,
    },
}

fn invalid(name: &'static str, detail: impl Into<String>) -> JostError {
    JostError::InvalidParameter {
        name,
        detail: detail.into(),
    }
}

fn strictly_increasing(xs: &[f64]) -> bool {
    xs.windows(2).all(|w| w[0] < w[1])
}

impl PotentialSpec {
    pub fn square_well(depth: f64, radius: f64) -> Result<Self> {
        SquareWellParams::new(depth, radius)?;
        Ok(PotentialSpec::SquareWell { depth, radius })
    }

    /// The zero potential, represented with a unit cutoff.
    pub fn free() -> Self {
        PotentialSpec::SquareWell { depth: 0.0, radius: 1.0 }
    }

    pub fn piecewise_constant(breakpoints: Vec<f64>, values: Vec<f64>, cutoff: f64) -> Result<Self> {
        let p = PotentialSpec::PiecewiseConstant { breakpoints, values, cutoff };
        p.validate()?;
        Ok(p)
    }

    pub fn sampled(grid: Vec<f64>, values: Vec<f64>, cutoff: f64) -> Result<Self> {
        let p = PotentialSpec::Sampled { grid, values, cutoff };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            PotentialSpec::SquareWell { depth, radius } => {
                SquareWellParams::new(*depth, *radius)?;
            }
            PotentialSpec::PiecewiseConstant { breakpoints, values, cutoff } => {
                if !(*cutoff > 0.0 && cutoff.is_finite()) {
                    return Err(invalid("cutoff", format!("must be positive, got {cutoff}")));
                }
                if values.len() != breakpoints.len() + 1 {
                    return Err(invalid(
                        "values",
                        format!("expected {} values for {} breakpoints", breakpoints.len() + 1, breakpoints.len()),
                    ));
                }
                let mut all = vec![0.0];
                all.extend_from_slice(breakpoints);
                all.push(*cutoff);
                if !strictly_increasing(&all) {
                    return Err(invalid("breakpoints", "must increase strictly inside (0, cutoff)"));
                }
                if values.iter().any(|v| !v.is_finite()) {
                    return Err(invalid("values", "must be finite"));
                }
            }
            PotentialSpec::Sampled { grid, values, cutoff } => {
                if grid.len() < 2 || grid.len() != values.len() {
                    return Err(invalid("grid", "need at least two samples and one value per node"));
                }
                if grid[0] != 0.0 || grid[grid.len() - 1] != *cutoff {
                    return Err(invalid("grid", "must start at 0 and end at the cutoff"));
                }
                if !strictly_increasing(grid) {
                    return Err(invalid("grid", "must increase strictly"));
                }
                if values.iter().any(|v| !v.is_finite()) {
                    return Err(invalid("values", "must be finite"));
                }
            }
        }
        Ok(())
    }

    pub fn cutoff(&self) -> f64 {
        match self {
            PotentialSpec::SquareWell { radius, .. } => *radius,
            PotentialSpec::PiecewiseConstant { cutoff, .. } | PotentialSpec::Sampled { cutoff, .. } => *cutoff,
        }
    }

    pub fn as_square_well(&self) -> Option<SquareWellParams> {
        match self {
            PotentialSpec::SquareWell { depth, radius } => SquareWellParams::new(*depth, *radius).ok(),
            _ => None,
        }
    }

    /// Whether `V` vanishes everywhere.
    pub fn is_free(&self) -> bool {
        match self {
            PotentialSpec::SquareWell { depth, .. } => *depth == 0.0,
            PotentialSpec::PiecewiseConstant { values, .. } | PotentialSpec::Sampled { values, .. } => {
                values.iter().all(|v| *v == 0.0)
            }
        }
    }

    /// Splits `[0, cutoff]` into pieces on which `V` is smooth.
    pub fn pieces(&self) -> Vec<Piece> {
        match self {
            PotentialSpec::SquareWell { depth, radius } => vec![Piece {
                start: 0.0,
                end: *radius,
                shape: PieceShape::Constant(-depth),
            }],
            PotentialSpec::PiecewiseConstant { breakpoints, values, cutoff } => {
                let mut edges = vec![0.0];
                edges.extend_from_slice(breakpoints);
                edges.push(*cutoff);
                edges
                    .windows(2)
                    .zip(values)
                    .map(|(w, v)| Piece {
                        start: w[0],
                        end: w[1],
                        shape: PieceShape::Constant(*v),
                    })
                    .collect()
            }
            PotentialSpec::Sampled { grid, values, .. } => {
                let slopes = monotone_slopes(grid, values);
                grid.windows(2)
                    .enumerate()
                    .map(|(i, w)| Piece {
                        start: w[0],
                        end: w[1],
                        shape: PieceShape::Cubic {
                            v0: values[i],
                            v1: values[i + 1],
                            d0: slopes[i],
                            d1: slopes[i + 1],
                        },
                    })
                    .collect()
            }
        }
    }

    /// `V(r)`, taking the left-continuous value at internal breakpoints.
    pub fn value(&self, r: f64) -> f64 {
        if r > self.cutoff() {
            return 0.0;
        }
        let pieces = self.pieces();
        pieces
            .iter()
            .find(|p| r <= p.end)
            .unwrap_or(&pieces[pieces.len() - 1])
            .eval(r)
    }

    /// Breakpoints the integrator must land on, including the cutoff.
    pub fn breakpoints(&self) -> Vec<f64> {
        self.pieces().iter().map(|p| p.end).collect()
    }
}

/// A closed sub-interval of `[0, cutoff]` with a smooth potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Piece {
    pub start: f64,
    pub end: f64,
    pub shape: PieceShape,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PieceShape {
    Constant(f64),
    /// Cubic Hermite through `(start, v0)`, `(end, v1)` with end slopes `d0`, `d1`.
    Cubic { v0: f64, v1: f64, d0: f64, d1: f64 },
}

impl Piece {
    pub fn eval(&self, r: f64) -> f64 {
        match self.shape {
            PieceShape::Constant(v) => v,
            PieceShape::Cubic { v0, v1, d0, d1 } => {
                let h = self.end - self.start;
                let t = (r - self.start) / h;
                let t2 = t * t;
                let t3 = t2 * t;
                (2.0 * t3 - 3.0 * t2 + 1.0) * v0
                    + (t3 - 2.0 * t2 + t) * h * d0
                    + (-2.0 * t3 + 3.0 * t2) * v1
                    + (t3 - t2) * h * d1
            }
        }
    }
}

/// Fritsch–Carlson slopes: harmonic-mean interior slopes, zero at local
/// extrema, and shape-preserving one-sided three-point end slopes.
fn monotone_slopes(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
    let delta: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / h[i]).collect();
    if n == 2 {
        return vec![delta[0], delta[0]];
    }
    let mut d = vec![0.0; n];
    for i in 1..n - 1 {
        if delta[i - 1] * delta[i] > 0.0 {
            let w1 = 2.0 * h[i] + h[i - 1];
            let w2 = h[i] + 2.0 * h[i - 1];
            d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    let end = |h0: f64, h1: f64, m0: f64, m1: f64| {
        let d = ((2.0 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
        if d.signum() != m0.signum() {
            0.0
        } else if m0.signum() != m1.signum() && d.abs() > 3.0 * m0.abs() {
            3.0 * m0
        } else {
            d
        }
    };
    d[0] = end(h[0], h[1], delta[0], delta[1]);
    d[n - 1] = end(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_well_values() {
        let p = PotentialSpec::square_well(4.0, 1.0).unwrap();
        assert_eq!(p.value(0.5), -4.0);
        assert_eq!(p.value(1.0), -4.0);
        assert_eq!(p.value(1.0 + 1e-12), 0.0);
        assert_eq!(p.breakpoints(), vec![1.0]);
        assert!(PotentialSpec::square_well(-1.0, 1.0).is_err());
        assert!(PotentialSpec::free().is_free());
    }

    #[test]
    fn piecewise_constant_layout() {
        let p = PotentialSpec::piecewise_constant(vec![0.5], vec![-3.0, 1.0], 2.0).unwrap();
        assert_eq!(p.value(0.2), -3.0);
        assert_eq!(p.value(1.5), 1.0);
        assert_eq!(p.value(2.5), 0.0);
        assert_eq!(p.breakpoints(), vec![0.5, 2.0]);
        assert!(PotentialSpec::piecewise_constant(vec![2.5], vec![1.0, 2.0], 2.0).is_err());
        assert!(PotentialSpec::piecewise_constant(vec![0.5], vec![1.0], 2.0).is_err());
    }

    #[test]
    fn sampled_interpolates_nodes_and_stays_monotone() {
        let grid: Vec<f64> = (0..=10).map(|i| i as f64 * 0.2).collect();
        let values: Vec<f64> = grid.iter().map(|r| -5.0 * (-r * r).exp()).collect();
        let p = PotentialSpec::sampled(grid.clone(), values.clone(), 2.0).unwrap();
        for (r, v) in grid.iter().zip(&values) {
            assert!((p.value(*r) - v).abs() < 1e-14);
        }
        // monotone data: the interpolant never leaves the bracket of its neighbours
        let mut prev = p.value(0.0);
        for i in 1..=2000 {
            let v = p.value(i as f64 * 1e-3);
            assert!(v >= prev - 1e-14);
            prev = v;
        }
        assert!(PotentialSpec::sampled(vec![0.1, 1.0], vec![0.0, 0.0], 1.0).is_err());
    }
}
