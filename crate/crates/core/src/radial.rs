//! Numeric regular and irregular radial solutions for cutoff potentials, and
//! the Jost function built from their Wronskian.
//!
//! The radial equation for `u = r R` is
//! `u'' = [l(l+1)/r^2 + V(r) - k^2] u`. The regular solution starts from its
//! two-term Frobenius series at `r_min = 1e-6 R`; the irregular solution is
//! seeded at the cutoff `R` with the exact exterior form `-ikr h⁻_l(kr)` and
//! integrated inwards. Potential discontinuities are never stepped across.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{JostError, Result};
use crate::model::ensure_finite;
use crate::ode::{integrate_adaptive, integrate_on_mesh, Mesh, StepControl};
use crate::potential::{Piece, PieceShape, PotentialSpec};
use crate::specfun::{double_factorial_odd_f64, outgoing_solution, outgoing_solution_at, wronskian};

pub const DEFAULT_TOL: f64 = 1e-12;
/// `r_min / R` for the regular solution's series start.
pub const START_FRACTION: f64 = 1e-6;
/// Nodes on the Cauchy circle for `k`-derivatives.
pub const CAUCHY_NODES: usize = 16;
/// Cauchy radius relative to `max(1, |k|)`.
pub const CAUCHY_RADIUS: f64 = 1e-3;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolutionKind {
    Regular,
    Irregular,
}

/// Output nodes plus the breakpoints the integrator must honour.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    pub nodes: Vec<f64>,
    pub breakpoints: Vec<f64>,
}

impl RadialGrid {
    /// `nodes` must increase strictly and be non-negative; the potential's own
    /// breakpoints (including the cutoff) are always added.
    pub fn new(potential: &PotentialSpec, nodes: Vec<f64>) -> Result<Self> {
        if nodes.is_empty() || nodes[0] < 0.0 || !nodes.windows(2).all(|w| w[0] < w[1]) {
            return Err(JostError::InvalidParameter {
                name: "nodes",
                detail: "grid nodes must be non-negative and strictly increasing".into(),
            });
        }
        Ok(Self {
            nodes,
            breakpoints: potential.breakpoints(),
        })
    }

    /// `n + 1` equally spaced nodes on `[r_min, r_max]`.
    pub fn uniform(potential: &PotentialSpec, r_min: f64, r_max: f64, n: usize) -> Result<Self> {
        if !(r_max > r_min) || n == 0 {
            return Err(JostError::InvalidParameter {
                name: "grid",
                detail: format!("need r_max > r_min and n > 0, got [{r_min}, {r_max}], n = {n}"),
            });
        }
        let nodes = (0..=n).map(|i| r_min + (r_max - r_min) * i as f64 / n as f64).collect();
        Self::new(potential, nodes)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialSolution {
    pub kind: SolutionKind,
    pub k: Complex64,
    pub l: usize,
    pub nodes: Vec<f64>,
    pub values: Vec<Complex64>,
    pub derivatives: Vec<Complex64>,
}

/// A value of `dF/dk` with the difference between two Cauchy radii as its
/// error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeEstimate {
    pub value: Complex64,
    pub error: f64,
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(JostError::InvalidParameter {
            name: "tol",
            detail: format!("must be positive, got {tol}"),
        })
    }
}

/// One smooth stretch of the integration path.
#[derive(Debug, Clone, Copy)]
struct Segment {
    from: f64,
    to: f64,
    piece: Piece,
}

enum Steps<'a> {
    Adaptive(&'a mut Vec<Mesh>),
    Replay(&'a [Mesh]),
}

/// Integrates `(u, u', moments...)` across the segments, returning the state
/// at each stop (stops in order of travel).
#[allow(clippy::too_many_arguments)]
fn propagate(
    segments: &[Segment],
    l: usize,
    k: Complex64,
    weights: &[f64],
    y0: Vec<Complex64>,
    stops: &[f64],
    tol: f64,
    mut steps: Steps<'_>,
) -> Result<Vec<Vec<Complex64>>> {
    let centrifugal = (l * (l + 1)) as f64;
    let k2 = k * k;
    let mut groups = vec![2];
    groups.extend(std::iter::repeat_n(1, weights.len()));
    let ctl = StepControl::new(tol, groups);
    let mut y = y0;
    let mut out = Vec::with_capacity(stops.len());
    let mut next_stop = 0;
    for (si, seg) in segments.iter().enumerate() {
        let dir = (seg.to - seg.from).signum();
        let first = next_stop;
        while next_stop < stops.len() && (seg.to - stops[next_stop]) * dir >= 0.0 {
            next_stop += 1;
        }
        // the final state is always needed to continue
        let mut seg_stops: Vec<f64> = stops[first..next_stop].to_vec();
        seg_stops.push(seg.to);
        let piece = seg.piece;
        let rhs = |r: f64, y: &[Complex64], dy: &mut [Complex64]| {
            let w = centrifugal / (r * r) + piece.eval(r) - k2;
            dy[0] = y[1];
            dy[1] = y[0] * w;
            let sq = y[0] * y[0];
            for (j, eps) in weights.iter().enumerate() {
                dy[2 + j] = sq * (-eps * r * r).exp();
            }
        };
        let states = match &mut steps {
            Steps::Adaptive(meshes) => {
                let h0 = (seg.to - seg.from).abs().min(seg.from.abs().max(1e-300) * 0.1).max(1e-12);
                let (states, mesh) = integrate_adaptive(rhs, seg.from, &y, seg.to, &seg_stops, h0, &ctl)?;
                meshes.push(mesh);
                states
            }
            Steps::Replay(meshes) => integrate_on_mesh(rhs, &meshes[si], &y, &seg_stops),
        };
        let (last, recorded) = states.split_last().expect("segment end is always recorded");
        out.extend(recorded.iter().cloned());
        y = last.clone();
    }
    while out.len() < stops.len() {
        out.push(y.clone());
    }
    Ok(out)
}

/// Smooth segments from `from` up to `to` (outward).
fn outward_segments(potential: &PotentialSpec, from: f64, to: f64) -> Vec<Segment> {
    let mut segs: Vec<Segment> = potential
        .pieces()
        .into_iter()
        .filter(|p| p.end > from && p.start < to)
        .map(|p| Segment {
            from: p.start.max(from),
            to: p.end.min(to),
            piece: p,
        })
        .collect();
    let cutoff = potential.cutoff();
    if to > cutoff {
        segs.push(Segment {
            from: cutoff.max(from),
            to,
            piece: Piece {
                start: cutoff,
                end: to,
                shape: PieceShape::Constant(0.0),
            },
        });
    }
    segs
}

/// Smooth segments from the cutoff down to `to` (inward).
fn inward_segments(potential: &PotentialSpec, to: f64) -> Vec<Segment> {
    potential
        .pieces()
        .into_iter()
        .rev()
        .filter(|p| p.end > to)
        .map(|p| Segment {
            from: p.end,
            to: p.start.max(to),
            piece: p,
        })
        .collect()
}

/// Two-term Frobenius start `u = r^{l+1}/(2l+1)!! (1 + c r^2)` with
/// `c = (V(0) - k^2) / (2(2l+3))`.
fn frobenius(potential: &PotentialSpec, l: usize, k: Complex64, r: f64) -> (Complex64, Complex64) {
    let v0 = potential.pieces()[0].eval(0.0);
    let c = (v0 - k * k) / (2.0 * (2 * l + 3) as f64);
    let df = double_factorial_odd_f64(l);
    let lf = l as f64;
    let rl = r.powi(l as i32);
    let u = rl * r / df * (1.0 + c * r * r);
    let du = rl / df * ((lf + 1.0) + c * (lf + 3.0) * r * r);
    (u, du)
}

fn start_radius(potential: &PotentialSpec) -> f64 {
    START_FRACTION * potential.cutoff()
}

#[allow(clippy::too_many_arguments)]
fn regular_run(
    potential: &PotentialSpec,
    l: usize,
    k: Complex64,
    weights: &[f64],
    stops: &[f64],
    end: f64,
    tol: f64,
    steps: Steps<'_>,
) -> Result<Vec<Vec<Complex64>>> {
    let r0 = start_radius(potential);
    let (u, du) = frobenius(potential, l, k, r0);
    let mut y0 = vec![u, du];
    // ∫_0^{r0} u^2 dr of the leading term
    let df = double_factorial_odd_f64(l);
    let head = r0.powi(2 * l as i32 + 3) / ((2 * l + 3) as f64 * df * df);
    y0.extend(std::iter::repeat_n(Complex64::new(head, 0.0), weights.len()));
    let segments = outward_segments(potential, r0, end);
    propagate(&segments, l, k, weights, y0, stops, tol, steps)
}

pub fn integrate_regular(
    potential: &PotentialSpec,
    l: usize,
    k: Complex64,
    grid: &RadialGrid,
    tol: f64,
) -> Result<RadialSolution> {
    check_tol(tol)?;
    ensure_finite("integrate_regular", k)?;
    let r0 = start_radius(potential);
    let (near, far): (Vec<f64>, Vec<f64>) = grid.nodes.iter().partition(|&&r| r <= r0);
    let mut values = Vec::with_capacity(grid.nodes.len());
    let mut derivatives = Vec::with_capacity(grid.nodes.len());
    for r in near {
        let (u, du) = frobenius(potential, l, k, r);
        values.push(u);
        derivatives.push(du);
    }
    if let Some(&end) = far.last() {
        let mut meshes = Vec::new();
        let states = regular_run(potential, l, k, &[], &far, end, tol, Steps::Adaptive(&mut meshes))?;
        for s in states {
            values.push(s[0]);
            derivatives.push(s[1]);
        }
    }
    Ok(RadialSolution {
        kind: SolutionKind::Regular,
        k,
        l,
        nodes: grid.nodes.clone(),
        values,
        derivatives,
    })
}

fn irregular_run(
    potential: &PotentialSpec,
    l: usize,
    k: Complex64,
    stops_desc: &[f64],
    tol: f64,
    steps: Steps<'_>,
) -> Result<Vec<Vec<Complex64>>> {
    let cutoff = potential.cutoff();
    let (f, df) = outgoing_solution(l, k, cutoff)?;
    let end = stops_desc.last().copied().unwrap_or(cutoff);
    let segments = inward_segments(potential, end);
    propagate(&segments, l, k, &[], vec![f, df], stops_desc, tol, steps)
}

pub fn integrate_irregular(
    potential: &PotentialSpec,
    l: usize,
    k: Complex64,
    grid: &RadialGrid,
    tol: f64,
) -> Result<RadialSolution> {
    check_tol(tol)?;
    ensure_finite("integrate_irregular", k)?;
    if k == ZERO && l > 0 {
        return Err(JostError::Domain {
            what: "integrate_irregular",
            detail: format!("k = 0 is singular for l = {l}"),
        });
    }
    if grid.nodes[0] <= 0.0 {
        return Err(JostError::Domain {
            what: "integrate_irregular",
            detail: "the irregular solution needs r_min > 0".into(),
        });
    }
    let cutoff = potential.cutoff();
    let mut values = vec![ZERO; grid.nodes.len()];
    let mut derivatives = vec![ZERO; grid.nodes.len()];
    let mut inner = Vec::new();
    for (i, &r) in grid.nodes.iter().enumerate() {
        if r >= cutoff {
            let (f, df) = outgoing_solution(l, k, r)?;
            values[i] = f;
            derivatives[i] = df;
        } else {
            inner.push(i);
        }
    }
    let stops: Vec<f64> = inner.iter().rev().map(|&i| grid.nodes[i]).collect();
    if !stops.is_empty() {
        let mut meshes = Vec::new();
        let states = irregular_run(potential, l, k, &stops, tol, Steps::Adaptive(&mut meshes))?;
        for (&i, s) in inner.iter().rev().zip(states) {
            values[i] = s[0];
            derivatives[i] = s[1];
        }
    }
    Ok(RadialSolution {
        kind: SolutionKind::Irregular,
        k,
        l,
        nodes: grid.nodes.clone(),
        values,
        derivatives,
    })
}

fn jost_from_state(l: usize, k: Complex64, cutoff: f64, u: Complex64, du: Complex64) -> Result<Complex64> {
    let (f, df) = outgoing_solution(l, k, cutoff)?;
    Ok(k.powu(l as u32) * wronskian(f, df, u, du))
}

fn check_jost_k(l: usize, k: Complex64) -> Result<()> {
    ensure_finite("jost_function", k)?;
    if k == ZERO && l > 0 {
        return Err(JostError::Domain {
            what: "jost_function",
            detail: format!("k = 0 is excluded for l = {l}"),
        });
    }
    Ok(())
}

/// `f_l(k) = k^l W[f_l(k, ·), φ_l(k, ·)]`, evaluated at the cutoff.
pub fn jost_function(potential: &PotentialSpec, l: usize, k: Complex64, tol: f64) -> Result<Complex64> {
    check_tol(tol)?;
    check_jost_k(l, k)?;
    let cutoff = potential.cutoff();
    let mut meshes = Vec::new();
    let s = regular_run(potential, l, k, &[], &[cutoff], cutoff, tol, Steps::Adaptive(&mut meshes))?;
    jost_from_state(l, k, cutoff, s[0][0], s[0][1])
}

/// Trapezoidal Cauchy rule for `F'(z)` on a circle of radius `radius`.
pub fn cauchy_derivative<F>(mut f: F, z: Complex64, radius: f64, nodes: usize) -> Result<Complex64>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    let mut acc = ZERO;
    for j in 0..nodes {
        let w = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / nodes as f64);
        acc += f(z + radius * w)? / w;
    }
    Ok(acc / (nodes as f64 * radius))
}

/// Cauchy radius for a derivative at `k`, shrunk so the circle avoids `k = 0`
/// when the function is singular there.
pub fn cauchy_radius(l: usize, k: Complex64) -> Result<f64> {
    let h = CAUCHY_RADIUS * k.norm().max(1.0);
    if l > 0 && k.norm() < 2.0 * h {
        if k == ZERO {
            return Err(JostError::Domain {
                what: "jost_derivative",
                detail: format!("k = 0 is excluded for l = {l}"),
            });
        }
        return Ok(k.norm() / 4.0);
    }
    Ok(h)
}

/// `df_l/dk` by Cauchy quadrature; every node reuses the step sequence chosen
/// at the centre so the discrete Jost function is analytic on the circle.
pub fn jost_derivative(potential: &PotentialSpec, l: usize, k: Complex64, tol: f64) -> Result<DerivativeEstimate> {
    check_tol(tol)?;
    check_jost_k(l, k)?;
    let h = cauchy_radius(l, k)?;
    let cutoff = potential.cutoff();
    let mut meshes = Vec::new();
    regular_run(potential, l, k, &[], &[cutoff], cutoff, tol, Steps::Adaptive(&mut meshes))?;
    let eval = |kk: Complex64| -> Result<Complex64> {
        let s = regular_run(potential, l, kk, &[], &[cutoff], cutoff, tol, Steps::Replay(&meshes))?;
        jost_from_state(l, kk, cutoff, s[0][0], s[0][1])
    };
    let coarse = cauchy_derivative(eval, k, h, CAUCHY_NODES)?;
    let fine = cauchy_derivative(eval, k, h / 2.0, CAUCHY_NODES)?;
    Ok(DerivativeEstimate {
        value: fine,
        error: (coarse - fine).norm(),
    })
}

/// `φ_l(k, R)`, `φ_l'(k, R)` at the cutoff together with
/// `∫_0^R φ_l^2 e^{-ε r^2} dr` for each `ε` in `weights`.
pub fn regular_with_moments(
    potential: &PotentialSpec,
    l: usize,
    k: Complex64,
    weights: &[f64],
    tol: f64,
) -> Result<(Complex64, Complex64, Vec<Complex64>)> {
    check_tol(tol)?;
    ensure_finite("regular_with_moments", k)?;
    let cutoff = potential.cutoff();
    let mut meshes = Vec::new();
    let s = regular_run(potential, l, k, weights, &[cutoff], cutoff, tol, Steps::Adaptive(&mut meshes))?;
    let state = &s[0];
    Ok((state[0], state[1], state[2..].to_vec()))
}

/// `φ_l(k, r)` at arbitrary `r >= 0` (integrated past the cutoff if needed).
pub fn regular_value(potential: &PotentialSpec, l: usize, k: Complex64, r: f64, tol: f64) -> Result<(Complex64, Complex64)> {
    let grid = RadialGrid::new(potential, vec![r])?;
    let sol = integrate_regular(potential, l, k, &grid, tol)?;
    Ok((sol.values[0], sol.derivatives[0]))
}

/// Irregular solution and its `r`-derivative at each `r` in `radii`
/// (any order), closed form beyond the cutoff.
fn irregular_at(
    potential: &PotentialSpec,
    l: usize,
    k: Complex64,
    radii: &[f64],
    tol: f64,
    steps: Steps<'_>,
) -> Result<Vec<(Complex64, Complex64)>> {
    let cutoff = potential.cutoff();
    let mut out = vec![(ZERO, ZERO); radii.len()];
    let mut inner: Vec<usize> = Vec::new();
    for (i, &r) in radii.iter().enumerate() {
        if r >= cutoff {
            out[i] = outgoing_solution_at(l, k, Complex64::new(r, 0.0))?;
        } else {
            inner.push(i);
        }
    }
    inner.sort_by(|&a, &b| radii[b].total_cmp(&radii[a]));
    let stops: Vec<f64> = inner.iter().map(|&i| radii[i]).collect();
    if !stops.is_empty() {
        let states = irregular_run(potential, l, k, &stops, tol, steps)?;
        for (&i, s) in inner.iter().zip(states) {
            out[i] = (s[0], s[1]);
        }
    }
    Ok(out)
}

/// Largest `|d/dr W[ḟ_l(k,·), f_l(k,·)] - 2k f_l(k,r)^2|` over `r_samples`.
///
/// `ḟ_l(k, r)` comes from Cauchy quadrature in `k` on a replayed mesh and the
/// `r`-derivative of the Wronskian from a Richardson-improved central
/// difference with step `0.01 / max(1, |k|)`. Samples should sit at least
/// `0.02` from any breakpoint.
pub fn wronskian_identity_residual(
    potential: &PotentialSpec,
    l: usize,
    k: Complex64,
    r_samples: &[f64],
    tol: f64,
) -> Result<f64> {
    check_tol(tol)?;
    check_jost_k(l, k)?;
    // a fixed fraction of the local wavelength
    let delta = 1e-2 / k.norm().max(1.0);
    let offsets = [-delta, -delta / 2.0, 0.0, delta / 2.0, delta];
    let mut radii = Vec::new();
    for &r in r_samples {
        if !(r - delta > 0.0) {
            return Err(JostError::Domain {
                what: "wronskian_identity_residual",
                detail: format!("sample r = {r} too close to the origin"),
            });
        }
        radii.extend(offsets.iter().map(|o| r + o));
    }
    let h = cauchy_radius(l, k)?;
    let mut meshes = Vec::new();
    let centre = irregular_at(potential, l, k, &radii, tol, Steps::Adaptive(&mut meshes))?;
    // k-derivative of (f, f') at every radius
    let mut dots = vec![(ZERO, ZERO); radii.len()];
    for j in 0..CAUCHY_NODES {
        let w = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / CAUCHY_NODES as f64);
        let vals = irregular_at(potential, l, k + h * w, &radii, tol, Steps::Replay(&meshes))?;
        for (d, v) in dots.iter_mut().zip(vals) {
            d.0 += v.0 / w;
            d.1 += v.1 / w;
        }
    }
    let scale = 1.0 / (CAUCHY_NODES as f64 * h);
    let w_at = |i: usize| {
        let (fd, dfd) = (dots[i].0 * scale, dots[i].1 * scale);
        wronskian(fd, dfd, centre[i].0, centre[i].1)
    };
    let mut worst: f64 = 0.0;
    for (s, _) in r_samples.iter().enumerate() {
        let b = 5 * s;
        let wide = (w_at(b + 4) - w_at(b)) / (2.0 * delta);
        let narrow = (w_at(b + 3) - w_at(b + 1)) / delta;
        let dw = (4.0 * narrow - wide) / 3.0;
        let f = centre[b + 2].0;
        worst = worst.max((dw - 2.0 * k * f * f).norm());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::square_well::{irregular_solution_sw, jost_sw, regular_solution_sw, SquareWellParams};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sw() -> (PotentialSpec, SquareWellParams) {
        (PotentialSpec::square_well(4.0, 1.0).unwrap(), SquareWellParams::new(4.0, 1.0).unwrap())
    }

    #[test]
    fn free_regular_solution_is_sine() {
        let p = PotentialSpec::free();
        let k = c(1.3, 0.4);
        let grid = RadialGrid::uniform(&p, 0.0, 3.0, 30).unwrap();
        let sol = integrate_regular(&p, 0, k, &grid, DEFAULT_TOL).unwrap();
        for (r, v) in sol.nodes.iter().zip(&sol.values) {
            assert!((v - (k * r).sin() / k).norm() < 1e-10, "r={r}");
        }
    }

    #[test]
    fn regular_matches_square_well() {
        let (p, params) = sw();
        for l in 0..3 {
            let k = c(1.0, 0.3);
            let grid = RadialGrid::uniform(&p, 0.05, 2.5, 49).unwrap();
            let sol = integrate_regular(&p, l, k, &grid, DEFAULT_TOL).unwrap();
            for (i, &r) in sol.nodes.iter().enumerate() {
                let (u, du) = regular_solution_sw(l, k, &params, r).unwrap();
                assert!((sol.values[i] - u).norm() < 1e-9 * u.norm().max(1e-3), "l={l} r={r}");
                assert!((sol.derivatives[i] - du).norm() < 1e-9 * du.norm().max(1e-3));
            }
        }
    }

    #[test]
    fn regular_small_r_normalisation() {
        let (p, _) = sw();
        for l in 0..4 {
            let r = START_FRACTION * 2.0;
            let grid = RadialGrid::new(&p, vec![r]).unwrap();
            let sol = integrate_regular(&p, l, c(2.0, -1.0), &grid, DEFAULT_TOL).unwrap();
            let ratio = sol.values[0] * double_factorial_odd_f64(l) / r.powi(l as i32 + 1);
            assert!((ratio - 1.0).norm() < 1e-8);
        }
    }

    #[test]
    fn irregular_matches_square_well() {
        let (p, params) = sw();
        for l in 0..3 {
            let k = c(-0.8, 0.6);
            let grid = RadialGrid::uniform(&p, 0.1, 2.0, 19).unwrap();
            let sol = integrate_irregular(&p, l, k, &grid, DEFAULT_TOL).unwrap();
            for (i, &r) in sol.nodes.iter().enumerate() {
                let (f, df) = irregular_solution_sw(l, k, &params, r).unwrap();
                assert!((sol.values[i] - f).norm() < 1e-9 * f.norm(), "l={l} r={r}");
                assert!((sol.derivatives[i] - df).norm() < 1e-9 * df.norm());
            }
        }
    }

    #[test]
    fn irregular_errors() {
        let (p, _) = sw();
        let grid = RadialGrid::uniform(&p, 0.1, 2.0, 4).unwrap();
        assert!(integrate_irregular(&p, 1, ZERO, &grid, DEFAULT_TOL).is_err());
        let grid0 = RadialGrid::uniform(&p, 0.0, 2.0, 4).unwrap();
        assert!(integrate_irregular(&p, 0, c(1.0, 0.0), &grid0, DEFAULT_TOL).is_err());
        assert!(integrate_irregular(&p, 0, c(1.0, 0.0), &grid, 0.0).is_err());
    }

    #[test]
    fn jost_matches_square_well() {
        let (p, params) = sw();
        for l in 0..3 {
            for k in [c(1.0, 0.0), c(-3.0, 2.0), c(5.5, -2.5), c(0.2, 0.1)] {
                let num = jost_function(&p, l, k, DEFAULT_TOL).unwrap();
                let exact = jost_sw(l, k, &params).unwrap();
                assert!((num - exact).norm() < 1e-8 * exact.norm(), "l={l} k={k} {num} {exact}");
            }
        }
    }

    #[test]
    fn jost_at_zero_momentum() {
        let (p, _) = sw();
        let f = jost_function(&p, 0, ZERO, DEFAULT_TOL).unwrap();
        assert!((f.re - 2.0_f64.cos()).abs() < 1e-10);
        assert!(jost_function(&p, 1, ZERO, DEFAULT_TOL).is_err());
    }

    #[test]
    fn wronskian_is_r_independent() {
        let (p, _) = sw();
        let k = c(1.5, -0.5);
        let grid = RadialGrid::new(&p, vec![0.5, 1.0]).unwrap();
        let reg = integrate_regular(&p, 1, k, &grid, DEFAULT_TOL).unwrap();
        let irr = integrate_irregular(&p, 1, k, &grid, DEFAULT_TOL).unwrap();
        let w: Vec<Complex64> = (0..2)
            .map(|i| wronskian(irr.values[i], irr.derivatives[i], reg.values[i], reg.derivatives[i]))
            .collect();
        assert!((w[0] - w[1]).norm() < 1e-9 * w[1].norm());
    }

    #[test]
    fn derivative_of_free_jost_vanishes() {
        let p = PotentialSpec::free();
        let d = jost_derivative(&p, 1, c(1.0, 0.5), DEFAULT_TOL).unwrap();
        assert!(d.value.norm() < 1e-9);
    }

    #[test]
    fn derivative_halving_consistency() {
        let (p, params) = sw();
        let k = c(2.0, 0.7);
        let d = jost_derivative(&p, 0, k, DEFAULT_TOL).unwrap();
        let exact = cauchy_derivative(|z| jost_sw(0, z, &params), k, 1e-2, 32).unwrap();
        assert!((d.value - exact).norm() <= 1e-8 * exact.norm());
        assert!(d.error < 1e-8 * exact.norm());
    }

    #[test]
    fn wronskian_identity_free_particle() {
        let p = PotentialSpec::free();
        let res = wronskian_identity_residual(&p, 0, c(1.0, 0.5), &[0.5, 2.0], DEFAULT_TOL).unwrap();
        assert!(res < 1e-8, "{res}");
    }

    #[test]
    fn wronskian_identity_square_well() {
        let (p, _) = sw();
        let res = wronskian_identity_residual(&p, 0, c(1.0, 0.5), &[0.3, 0.6, 1.5], DEFAULT_TOL).unwrap();
        assert!(res < 1e-6, "{res}");
    }

    #[test]
    fn moments_of_free_solution() {
        let p = PotentialSpec::free();
        let k = c(1.0, 0.0);
        let (u, du, m) = regular_with_moments(&p, 0, k, &[0.0], DEFAULT_TOL).unwrap();
        assert!((u.re - 1.0_f64.sin()).abs() < 1e-10 && (du.re - 1.0_f64.cos()).abs() < 1e-10);
        // ∫_0^1 sin^2 r dr
        let exact = 0.5 - 2.0_f64.sin() / 4.0;
        assert!((m[0].re - exact).abs() < 1e-10);
    }
}
