//! Locating Jost-function zeros in a rectangle of the complex `k` plane.
//!
//! The number of zeros inside a rectangle is the winding number of `f_l`
//! along its boundary. Cells holding zeros are split until each holds one,
//! then Newton's method refines a zero from the cell centre. Each refined
//! zero is classified and given its pseudonorm.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{JostError, Result};
use crate::jost::JostEvaluator;
use crate::model::{classify, ensure_finite, PoleClass};
use crate::pseudonorm::{norm_constant, pseudonorm_formula};

/// Relative tolerance for deciding that a zero sits on the imaginary axis.
pub const CLASSIFY_TOL: f64 = 1e-7;
/// `|f|` below this on a contour means a zero is (nearly) on it.
const CONTOUR_FLOOR: f64 = 1e-9;
/// Bisection limit when refining a contour edge.
const MAX_EDGE_DEPTH: usize = 30;
const NEWTON_MAX_ITER: usize = 60;
/// Newton runs longer than this count as degraded convergence.
const NEWTON_SLOW: usize = 25;
const CELL_DILATION: f64 = 0.1;
const MERGE_TOL: f64 = 1e-8;
/// Split positions tried in turn when a split line passes too close to a zero.
const SPLITS: [(f64, f64); 4] = [(0.4817, 0.5233), (0.5391, 0.4612), (0.4402, 0.5618), (0.5873, 0.4129)];
const TOP_RETRIES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanRegion {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub max_depth: usize,
    pub newton_tol: f64,
    pub boundary_margin: f64,
}

impl ScanRegion {
    /// Rectangle with default depth 10, Newton tolerance `1e-12` and a
    /// boundary margin of 1% of the larger side.
    pub fn new(re: (f64, f64), im: (f64, f64)) -> Result<Self> {
        let r = Self {
            re_min: re.0,
            re_max: re.1,
            im_min: im.0,
            im_max: im.1,
            max_depth: 10,
            newton_tol: 1e-12,
            boundary_margin: 0.01 * (re.1 - re.0).abs().max((im.1 - im.0).abs()),
        };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.re_min, self.re_max, self.im_min, self.im_max].iter().all(|x| x.is_finite());
        if !finite || !(self.re_min < self.re_max) || !(self.im_min < self.im_max) {
            return Err(JostError::InvalidParameter {
                name: "region",
                detail: format!(
                    "need re_min < re_max and im_min < im_max, got [{}, {}] x [{}, {}]",
                    self.re_min, self.re_max, self.im_min, self.im_max
                ),
            });
        }
        if !(self.newton_tol > 0.0) {
            return Err(JostError::InvalidParameter {
                name: "newton_tol",
                detail: format!("must be positive, got {}", self.newton_tol),
            });
        }
        if !(self.boundary_margin >= 0.0) {
            return Err(JostError::InvalidParameter {
                name: "boundary_margin",
                detail: format!("must be non-negative, got {}", self.boundary_margin),
            });
        }
        Ok(())
    }

    fn cell(&self) -> Cell {
        Cell {
            re: (self.re_min, self.re_max),
            im: (self.im_min, self.im_max),
        }
    }

    pub fn contains(&self, k: Complex64) -> bool {
        self.cell().contains(k, 0.0)
    }

    /// Distance from `k` to the rectangle boundary.
    pub fn boundary_distance(&self, k: Complex64) -> f64 {
        let c = self.cell();
        if c.contains(k, 0.0) {
            (k.re - c.re.0).min(c.re.1 - k.re).min(k.im - c.im.0).min(c.im.1 - k.im)
        } else {
            let dx = (c.re.0 - k.re).max(k.re - c.re.1).max(0.0);
            let dy = (c.im.0 - k.im).max(k.im - c.im.1).max(0.0);
            dx.hypot(dy)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Cell {
    re: (f64, f64),
    im: (f64, f64),
}

impl Cell {
    fn centre(&self) -> Complex64 {
        Complex64::new(0.5 * (self.re.0 + self.re.1), 0.5 * (self.im.0 + self.im.1))
    }

    fn dilated(&self, frac: f64) -> Cell {
        let dx = frac * (self.re.1 - self.re.0);
        let dy = frac * (self.im.1 - self.im.0);
        Cell {
            re: (self.re.0 - dx, self.re.1 + dx),
            im: (self.im.0 - dy, self.im.1 + dy),
        }
    }

    fn grown(&self, by: f64) -> Cell {
        Cell {
            re: (self.re.0 - by, self.re.1 + by),
            im: (self.im.0 - by, self.im.1 + by),
        }
    }

    fn contains(&self, k: Complex64, slack: f64) -> bool {
        k.re >= self.re.0 - slack && k.re <= self.re.1 + slack && k.im >= self.im.0 - slack && k.im <= self.im.1 + slack
    }

    fn quadrants(&self, fx: f64, fy: f64) -> [Cell; 4] {
        let xm = self.re.0 + fx * (self.re.1 - self.re.0);
        let ym = self.im.0 + fy * (self.im.1 - self.im.0);
        [
            Cell { re: (self.re.0, xm), im: (self.im.0, ym) },
            Cell { re: (xm, self.re.1), im: (self.im.0, ym) },
            Cell { re: (self.re.0, xm), im: (ym, self.im.1) },
            Cell { re: (xm, self.re.1), im: (ym, self.im.1) },
        ]
    }

    fn size(&self) -> f64 {
        (self.re.1 - self.re.0).max(self.im.1 - self.im.0)
    }
}

fn too_close(near: Complex64) -> JostError {
    JostError::ContourTooClose { near }
}

fn contour_value(jost: &dyn JostEvaluator, k: Complex64) -> Result<Complex64> {
    match jost.jost(k) {
        Ok(f) if f.norm() > CONTOUR_FLOOR && f.norm().is_finite() => Ok(f),
        Ok(_) | Err(JostError::Domain { .. }) => Err(too_close(k)),
        Err(e) => Err(e),
    }
}

/// Phase change of `f` along the segment `a → b`, refined so that no
/// step between neighbouring samples exceeds `π/2`.
fn edge_phase(jost: &dyn JostEvaluator, a: Complex64, b: Complex64, fa: Complex64, fb: Complex64) -> Result<f64> {
    let n = ((b - a).norm() * 8.0).ceil().max(16.0) as usize;
    let mut total = 0.0;
    let mut prev = (a, fa);
    for i in 1..=n {
        let z = a + (b - a) * (i as f64 / n as f64);
        let fz = if i == n { fb } else { contour_value(jost, z)? };
        total += refine_step(jost, prev, (z, fz), 0)?;
        prev = (z, fz);
    }
    Ok(total)
}

fn refine_step(
    jost: &dyn JostEvaluator,
    (za, fa): (Complex64, Complex64),
    (zb, fb): (Complex64, Complex64),
    depth: usize,
) -> Result<f64> {
    let step = (fb / fa).arg();
    if step.abs() < 0.5 * PI {
        return Ok(step);
    }
    if depth >= MAX_EDGE_DEPTH {
        return Err(too_close(0.5 * (za + zb)));
    }
    let zm = 0.5 * (za + zb);
    let fm = contour_value(jost, zm)?;
    Ok(refine_step(jost, (za, fa), (zm, fm), depth + 1)? + refine_step(jost, (zm, fm), (zb, fb), depth + 1)?)
}

fn winding(jost: &dyn JostEvaluator, cell: &Cell) -> Result<usize> {
    let corners = [
        Complex64::new(cell.re.0, cell.im.0),
        Complex64::new(cell.re.1, cell.im.0),
        Complex64::new(cell.re.1, cell.im.1),
        Complex64::new(cell.re.0, cell.im.1),
    ];
    let values = corners.iter().map(|&z| contour_value(jost, z)).collect::<Result<Vec<_>>>()?;
    let mut total = 0.0;
    for i in 0..4 {
        let j = (i + 1) % 4;
        total += edge_phase(jost, corners[i], corners[j], values[i], values[j])?;
    }
    let turns = total / (2.0 * PI);
    let n = turns.round();
    if (turns - n).abs() > 0.1 || n < 0.0 {
        // f_l is entire, so a negative or fractional count means undersampling
        return Err(too_close(cell.centre()));
    }
    Ok(n as usize)
}

/// Number of zeros of `f_l` inside `region`, by the argument principle.
pub fn count_zeros(jost: &dyn JostEvaluator, region: &ScanRegion) -> Result<usize> {
    region.validate()?;
    winding(jost, &region.cell())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PoleFlag {
    /// Several zeros share a cell at the depth limit, or Newton converged slowly.
    SuspectedMultiple,
    /// Within the boundary margin of the requested region.
    BoundaryUncertain,
    /// Off the imaginary axis in the lower half plane.
    Unclassified,
    /// The pseudonorm or its normalization constant could not be formed.
    PseudonormUnavailable,
}

impl PoleFlag {
    pub fn as_str(self) -> &'static str {
        match self {
            PoleFlag::SuspectedMultiple => "suspected_multiple",
            PoleFlag::BoundaryUncertain => "boundary_uncertain",
            PoleFlag::Unclassified => "unclassified",
            PoleFlag::PseudonormUnavailable => "pseudonorm_unavailable",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoleRecord {
    pub k0: Complex64,
    pub classification: Option<PoleClass>,
    /// `|f_l(k0)|`.
    pub residual: f64,
    pub jost_deriv: Complex64,
    pub pseudonorm: Option<Complex64>,
    pub norm_constant: Option<Complex64>,
    pub flags: Vec<PoleFlag>,
}

impl PoleRecord {
    pub fn is_flagged(&self) -> bool {
        !self.flags.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PoleScan {
    /// Sorted by `(Re k0, Im k0)`.
    pub records: Vec<PoleRecord>,
    /// Winding count of the rectangle actually used.
    pub winding: usize,
    /// The requested region, grown by multiples of the boundary margin if
    /// its contour passed too close to a zero.
    pub scanned: ScanRegion,
}

impl PoleScan {
    /// Whether every counted zero was refined.
    pub fn is_complete(&self) -> bool {
        self.records.len() == self.winding
    }
}

struct NewtonOutcome {
    k: Complex64,
    residual: f64,
    iterations: usize,
}

/// `k ← k - f/ḟ` until `|f| < tol·(1+|k|)` or the step drops below
/// `1e-14·(1+|k|)`. One extra step is taken after the residual test passes,
/// so the result does not depend on how the tolerance was first met.
fn newton(jost: &dyn JostEvaluator, start: Complex64, tol: f64, limit: f64) -> Result<NewtonOutcome> {
    let mut k = start;
    for it in 0..NEWTON_MAX_ITER {
        let f = jost.jost(k)?;
        if f.norm() < tol * (1.0 + k.norm()) {
            let polished = k - f / jost.jost_derivative(k)?;
            let fp = match jost.jost(polished) {
                Ok(v) if v.norm() <= f.norm() => v,
                _ => {
                    return Ok(NewtonOutcome {
                        k,
                        residual: f.norm(),
                        iterations: it,
                    })
                }
            };
            return Ok(NewtonOutcome {
                k: polished,
                residual: fp.norm(),
                iterations: it + 1,
            });
        }
        let d = jost.jost_derivative(k)?;
        let step = f / d;
        ensure_finite("newton", step).map_err(|_| JostError::NewtonFailed {
            start,
            detail: format!("vanishing derivative at {k}"),
        })?;
        k -= step;
        if (k - start).norm() > limit {
            return Err(JostError::NewtonFailed {
                start,
                detail: format!("left the search neighbourhood at {k}"),
            });
        }
        if step.norm() < 1e-14 * (1.0 + k.norm()) {
            let residual = jost.jost(k)?.norm();
            return Ok(NewtonOutcome {
                k,
                residual,
                iterations: it + 1,
            });
        }
    }
    Err(JostError::NewtonFailed {
        start,
        detail: format!("no convergence in {NEWTON_MAX_ITER} iterations"),
    })
}

/// Refines a zero near `guess`, as the trajectory tracker does.
pub fn refine_zero(jost: &dyn JostEvaluator, guess: Complex64, newton_tol: f64) -> Result<PoleRecord> {
    ensure_finite("refine_zero", guess)?;
    let out = newton(jost, guess, newton_tol, 10.0 * (1.0 + guess.norm()))?;
    let mut flags = Vec::new();
    if out.iterations > NEWTON_SLOW {
        flags.push(PoleFlag::SuspectedMultiple);
    }
    characterize(jost, out.k, out.residual, flags)
}

fn characterize(jost: &dyn JostEvaluator, k0: Complex64, residual: f64, mut flags: Vec<PoleFlag>) -> Result<PoleRecord> {
    let classification = classify(k0, CLASSIFY_TOL).ok();
    if classification.is_none() {
        flags.push(PoleFlag::Unclassified);
    }
    // f_l is real on the imaginary axis, so axis zeros sit exactly on it;
    // dropping the rounding noise in Re k0 keeps the sort order stable
    let (k0, residual) = match classification {
        Some(PoleClass::Bound | PoleClass::Virtual) if k0.re != 0.0 => {
            let k = Complex64::new(0.0, k0.im);
            (k, jost.jost(k)?.norm())
        }
        _ => (k0, residual),
    };
    let jost_deriv = jost.jost_derivative(k0)?;
    let tol = (residual / (1.0 + k0.norm())).max(crate::pseudonorm::ZERO_TOL);
    let (pseudonorm, norm) = match pseudonorm_formula(jost, k0, tol) {
        Ok(n) => (Some(n), norm_constant(n, k0).ok()),
        Err(_) => (None, None),
    };
    if norm.is_none() {
        flags.push(PoleFlag::PseudonormUnavailable);
    }
    flags.sort();
    flags.dedup();
    Ok(PoleRecord {
        k0,
        classification,
        residual,
        jost_deriv,
        pseudonorm,
        norm_constant: norm,
        flags,
    })
}

struct Candidate {
    k: Complex64,
    residual: f64,
    flags: Vec<PoleFlag>,
}

#[cfg(feature = "parallel")]
fn map_cells<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_cells<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

/// Splits `cell` into quadrants whose counts add up to `count`.
fn split(jost: &dyn JostEvaluator, cell: &Cell, count: usize) -> Option<Vec<(Cell, usize)>> {
    for (fx, fy) in SPLITS {
        let quads = cell.quadrants(fx, fy);
        let counts: Vec<Result<usize>> = map_cells(&quads, |q| winding(jost, q));
        if let Ok(counts) = counts.into_iter().collect::<Result<Vec<usize>>>() {
            if counts.iter().sum::<usize>() == count {
                return Some(quads.into_iter().zip(counts).filter(|(_, n)| *n > 0).collect());
            }
        }
    }
    None
}

fn try_newton(jost: &dyn JostEvaluator, cell: &Cell, start: Complex64, tol: f64) -> Option<NewtonOutcome> {
    let zone = cell.dilated(CELL_DILATION);
    match newton(jost, start, tol, 4.0 * cell.size()) {
        Ok(out) if zone.contains(out.k, 0.0) => Some(out),
        _ => None,
    }
}

fn starts(cell: &Cell) -> Vec<Complex64> {
    let mut pts = vec![cell.centre()];
    for (fx, fy) in [(0.25, 0.25), (0.75, 0.25), (0.25, 0.75), (0.75, 0.75)] {
        pts.push(Complex64::new(
            cell.re.0 + fx * (cell.re.1 - cell.re.0),
            cell.im.0 + fy * (cell.im.1 - cell.im.0),
        ));
    }
    pts
}

fn solve_cell(jost: &dyn JostEvaluator, cell: Cell, count: usize, depth: usize, region: &ScanRegion) -> Vec<Candidate> {
    let tol = region.newton_tol;
    if count == 1 {
        if let Some(out) = try_newton(jost, &cell, cell.centre(), tol) {
            let flags = if out.iterations > NEWTON_SLOW { vec![PoleFlag::SuspectedMultiple] } else { Vec::new() };
            return vec![Candidate {
                k: out.k,
                residual: out.residual,
                flags,
            }];
        }
    }
    if depth < region.max_depth {
        if let Some(children) = split(jost, &cell, count) {
            let found: Vec<Vec<Candidate>> =
                map_cells(&children, |(c, n)| solve_cell(jost, *c, *n, depth + 1, region));
            return found.into_iter().flatten().collect();
        }
    }
    // depth limit, or no clean split: fall back to several starting points
    let mut out: Vec<Candidate> = Vec::new();
    for s in starts(&cell) {
        if let Some(r) = try_newton(jost, &cell, s, tol) {
            if out.iter().any(|c| (c.k - r.k).norm() < MERGE_TOL * (1.0 + r.k.norm())) {
                continue;
            }
            let mut flags = Vec::new();
            if count > 1 || r.iterations > NEWTON_SLOW {
                flags.push(PoleFlag::SuspectedMultiple);
            }
            out.push(Candidate {
                k: r.k,
                residual: r.residual,
                flags,
            });
            if out.len() == count {
                break;
            }
        }
    }
    out
}

fn sort_key(a: &Complex64, b: &Complex64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Finds every zero of `f_l` inside `region`.
///
/// If the boundary passes too close to a zero the rectangle is grown by the
/// boundary margin (up to three times) and the grown rectangle is scanned.
pub fn find_poles(jost: &dyn JostEvaluator, region: &ScanRegion) -> Result<PoleScan> {
    region.validate()?;
    let mut scanned = *region;
    let mut attempt = 0;
    let total = loop {
        match winding(jost, &scanned.cell()) {
            Ok(n) => break n,
            Err(JostError::ContourTooClose { near }) => {
                attempt += 1;
                if attempt > TOP_RETRIES || region.boundary_margin == 0.0 {
                    return Err(JostError::ContourTooClose { near });
                }
                let grown = region.cell().grown(attempt as f64 * region.boundary_margin);
                scanned = ScanRegion {
                    re_min: grown.re.0,
                    re_max: grown.re.1,
                    im_min: grown.im.0,
                    im_max: grown.im.1,
                    ..*region
                };
            }
            Err(e) => return Err(e),
        }
    };
    let mut candidates = if total == 0 {
        Vec::new()
    } else {
        solve_cell(jost, scanned.cell(), total, 0, &scanned)
    };
    candidates.retain(|c| scanned.contains(c.k));
    candidates.sort_by(|a, b| sort_key(&a.k, &b.k));
    let mut merged: Vec<Candidate> = Vec::new();
    for c in candidates {
        match merged.iter_mut().find(|m| (m.k - c.k).norm() < MERGE_TOL * (1.0 + c.k.norm())) {
            Some(m) => m.flags.extend(c.flags),
            None => merged.push(c),
        }
    }
    let records = map_cells(&merged, |c| {
        let mut flags = c.flags.clone();
        if region.boundary_distance(c.k) < region.boundary_margin || !region.contains(c.k) {
            flags.push(PoleFlag::BoundaryUncertain);
        }
        characterize(jost, c.k, c.residual, flags)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let mut records = records;
    records.sort_by(|a, b| sort_key(&a.k0, &b.k0));
    Ok(PoleScan {
        records,
        winding: total,
        scanned,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryPoint {
    pub parameter: f64,
    pub record: PoleRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TrajectoryEnd {
    Completed,
    /// Newton failed at `parameter`.
    Lost { parameter: f64, reason: String },
    /// The pole jumped further than the continuation bound at `parameter`;
    /// tracking resumes in a new trajectory from the post-jump point.
    Split { parameter: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub points: Vec<TrajectoryPoint>,
    pub end: TrajectoryEnd,
}

/// A step larger than this multiple of the previous step (and of the floor
/// below) is treated as a jump to a different zero.
const JUMP_FACTOR: f64 = 8.0;
const JUMP_FLOOR: f64 = 0.25;

/// Follows every zero found in `region` at `parameters[0]` through the
/// remaining parameters, using the previous position as the Newton start.
pub fn trajectory<F>(family: F, parameters: &[f64], region: &ScanRegion) -> Result<Vec<Trajectory>>
where
    F: Fn(f64) -> Result<Box<dyn JostEvaluator + Send>>,
{
    if parameters.is_empty() || parameters.iter().any(|p| !p.is_finite()) {
        return Err(JostError::InvalidParameter {
            name: "parameters",
            detail: "sweep needs at least one finite parameter".into(),
        });
    }
    let evaluators = parameters.iter().map(|&p| family(p)).collect::<Result<Vec<_>>>()?;
    let seeds = find_poles(evaluators[0].as_ref(), region)?;
    let mut done = Vec::new();
    let mut active: Vec<Vec<TrajectoryPoint>> = seeds
        .records
        .into_iter()
        .map(|record| {
            vec![TrajectoryPoint {
                parameter: parameters[0],
                record,
            }]
        })
        .collect();
    for (i, &p) in parameters.iter().enumerate().skip(1) {
        let jost = evaluators[i].as_ref();
        let mut next = Vec::new();
        for mut track in active {
            let last = &track[track.len() - 1].record;
            let prev_step = if track.len() >= 2 {
                (last.k0 - track[track.len() - 2].record.k0).norm()
            } else {
                0.0
            };
            match refine_zero(jost, last.k0, region.newton_tol) {
                Ok(record) => {
                    let jump = (record.k0 - last.k0).norm();
                    let bound = (JUMP_FACTOR * prev_step).max(JUMP_FLOOR * (1.0 + last.k0.norm()));
                    let point = TrajectoryPoint { parameter: p, record };
                    if jump > bound {
                        done.push(Trajectory {
                            points: track,
                            end: TrajectoryEnd::Split { parameter: p },
                        });
                        next.push(vec![point]);
                    } else {
                        track.push(point);
                        next.push(track);
                    }
                }
                Err(e) => done.push(Trajectory {
                    points: track,
                    end: TrajectoryEnd::Lost {
                        parameter: p,
                        reason: e.to_string(),
                    },
                }),
            }
        }
        active = next;
    }
    done.extend(active.into_iter().map(|points| Trajectory {
        points,
        end: TrajectoryEnd::Completed,
    }));
    done.sort_by(|a, b| {
        let (pa, pb) = (&a.points[0], &b.points[0]);
        pa.parameter
            .total_cmp(&pb.parameter)
            .then(sort_key(&pa.record.k0, &pb.record.k0))
    });
    Ok(done)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jost::AnalyticSquareWell;
    use crate::square_well::SquareWellParams;

    fn sw(depth: f64, l: usize) -> AnalyticSquareWell {
        AnalyticSquareWell::new(SquareWellParams::new(depth, 1.0).unwrap(), l)
    }

    #[test]
    fn region_validation() {
        assert!(ScanRegion::new((1.0, -1.0), (0.0, 1.0)).is_err());
        let mut r = ScanRegion::new((-1.0, 1.0), (0.0, 1.0)).unwrap();
        r.newton_tol = 0.0;
        assert!(r.validate().is_err());
    }

    #[test]
    fn count_bound_state_box() {
        let r = ScanRegion::new((-0.1, 0.1), (-1.0, -0.3)).unwrap();
        assert_eq!(count_zeros(&sw(4.0, 0), &r).unwrap(), 1);
        let empty = ScanRegion::new((1.0, 2.0), (-1.0, -0.3)).unwrap();
        assert_eq!(count_zeros(&sw(4.0, 0), &empty).unwrap(), 0);
    }

    #[test]
    fn count_is_additive() {
        let j = sw(4.0, 0);
        let whole = ScanRegion::new((-6.0, 6.0), (-2.0, 3.0)).unwrap();
        let n = count_zeros(&j, &whole).unwrap();
        assert_eq!(n, 3);
        let parts: usize = whole
            .cell()
            .quadrants(0.47, 0.53)
            .iter()
            .map(|c| winding(&j, c).unwrap())
            .sum();
        assert_eq!(parts, n);
    }

    #[test]
    fn finds_bound_and_resonances() {
        let j = sw(4.0, 0);
        let scan = find_poles(&j, &ScanRegion::new((-6.0, 6.0), (-2.0, 3.0)).unwrap()).unwrap();
        assert!(scan.is_complete());
        let ks: Vec<Complex64> = scan.records.iter().map(|r| r.k0).collect();
        assert!((ks[0] - Complex64::new(-3.92777923995503, 1.64752347030344)).norm() < 1e-10);
        assert!((ks[1] - Complex64::new(0.0, -0.638045048285238)).norm() < 1e-10);
        assert!((ks[2] - Complex64::new(3.92777923995503, 1.64752347030344)).norm() < 1e-10);
        assert_eq!(scan.records[1].classification, Some(PoleClass::Bound));
        assert_eq!(scan.records[2].classification, Some(PoleClass::Resonant));
        for r in &scan.records {
            assert!(r.residual <= 1e-12 * (1.0 + r.k0.norm()));
            assert!(r.flags.is_empty());
        }
    }

    #[test]
    fn virtual_state() {
        let scan = find_poles(&sw(2.0, 0), &ScanRegion::new((-0.1, 0.1), (0.05, 1.0)).unwrap()).unwrap();
        assert_eq!(scan.records.len(), 1);
        let r = &scan.records[0];
        assert_eq!(r.classification, Some(PoleClass::Virtual));
        assert!((r.k0.im - 0.252127077153136).abs() < 1e-10);
    }

    #[test]
    fn boundary_contour_is_grown() {
        // the bound state lies on the left edge
        let r = ScanRegion::new((0.0, 1.0), (-1.0, -0.3)).unwrap();
        let scan = find_poles(&sw(4.0, 0), &r).unwrap();
        assert_eq!(scan.records.len(), 1);
        assert!(scan.records[0].flags.contains(&PoleFlag::BoundaryUncertain));
        assert!(scan.scanned.re_min < 0.0);
    }

    #[test]
    fn free_particle_has_no_poles() {
        let scan = find_poles(&sw(0.0, 1), &ScanRegion::new((-6.0, 6.0), (-2.0, 3.0)).unwrap()).unwrap();
        assert!(scan.records.is_empty());
        assert_eq!(scan.winding, 0);
    }

    #[test]
    fn higher_partial_wave() {
        let j = sw(10.0, 1);
        let scan = find_poles(&j, &ScanRegion::new((-6.0, 6.0), (-3.0, 3.0)).unwrap()).unwrap();
        assert!(scan.is_complete());
        assert!(scan.records.iter().any(|r| r.classification == Some(PoleClass::Bound)));
        for r in &scan.records {
            assert!(j.jost(r.k0).unwrap().norm() <= 1e-12 * (1.0 + r.k0.norm()));
        }
    }

    #[test]
    fn threshold_crossing() {
        let params: Vec<f64> = (0..=20).map(|i| 2.0 + 0.1 * i as f64).collect();
        let region = ScanRegion::new((-0.1, 0.1), (-1.0, 1.0)).unwrap();
        let tracks = trajectory(
            |v| Ok(Box::new(sw(v, 0)) as Box<dyn JostEvaluator + Send>),
            &params,
            &region,
        )
        .unwrap();
        assert_eq!(tracks.len(), 1);
        let pts = &tracks[0].points;
        assert_eq!(pts.len(), params.len());
        let vc = PI * PI / 4.0;
        for w in pts.windows(2) {
            let (a, b) = (w[0].record.classification, w[1].record.classification);
            if a != b {
                assert_eq!((a, b), (Some(PoleClass::Virtual), Some(PoleClass::Bound)));
                assert!(w[0].parameter < vc && vc <= w[1].parameter);
            }
        }
    }
}
