//! Dormand–Prince 5(4) for complex-valued first-order systems on a real
//! interval, with a fixed-mesh replay mode.
//!
//! Replaying the accepted steps of an adaptive run makes the discrete
//! solution an analytic function of any parameter inside the right-hand side,
//! which is what the Cauchy-circle derivatives in `k` rely on.

use num_complex::Complex64;

use crate::error::{JostError, Result};

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// difference between 5th- and 4th-order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

#[derive(Debug, Clone)]
pub struct StepControl {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    /// Sizes of consecutive component groups sharing one error scale.
    pub groups: Vec<usize>,
}

impl StepControl {
    pub fn new(rtol: f64, groups: Vec<usize>) -> Self {
        Self {
            rtol,
            atol: 1e-300,
            max_steps: 200_000,
            groups,
        }
    }
}

/// The accepted step endpoints of one adaptive run over a segment.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub points: Vec<f64>,
}

struct Stages {
    k: [Vec<Complex64>; 7],
    tmp: Vec<Complex64>,
    y5: Vec<Complex64>,
}

impl Stages {
    fn new(n: usize) -> Self {
        let z = vec![Complex64::new(0.0, 0.0); n];
        Self {
            k: std::array::from_fn(|_| z.clone()),
            tmp: z.clone(),
            y5: z,
        }
    }
}

/// One Dormand–Prince step from `(x, y)` with `k[0] = f(x, y)` already filled.
/// Leaves the 5th-order result in `st.y5` and `f(x+h, y5)` in `st.k[6]`.
fn dp_step<F>(f: &mut F, x: f64, y: &[Complex64], h: f64, st: &mut Stages)
where
    F: FnMut(f64, &[Complex64], &mut [Complex64]),
{
    let n = y.len();
    macro_rules! stage {
        ($dst:expr, $c:expr, $($a:expr => $src:expr),+) => {{
            for i in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                $( acc += st.k[$src][i] * $a; )+
                st.tmp[i] = y[i] + acc * h;
            }
            let (head, tail) = st.k.split_at_mut($dst);
            let _ = head;
            f(x + $c * h, &st.tmp, &mut tail[0]);
        }};
    }
    stage!(1, C2, A21 => 0);
    stage!(2, C3, A31 => 0, A32 => 1);
    stage!(3, C4, A41 => 0, A42 => 1, A43 => 2);
    stage!(4, C5, A51 => 0, A52 => 1, A53 => 2, A54 => 3);
    stage!(5, 1.0, A61 => 0, A62 => 1, A63 => 2, A64 => 3, A65 => 4);
    #[allow(clippy::needless_range_loop)]
    for i in 0..n {
        st.y5[i] = y[i]
            + (st.k[0][i] * B1 + st.k[2][i] * B3 + st.k[3][i] * B4 + st.k[4][i] * B5 + st.k[5][i] * B6)
                * h;
    }
    let (head, tail) = st.k.split_at_mut(6);
    let _ = head;
    f(x + h, &st.y5, &mut tail[0]);
}

fn error_ratio(y: &[Complex64], st: &Stages, h: f64, ctl: &StepControl) -> f64 {
    let mut worst: f64 = 0.0;
    let mut start = 0;
    for &size in &ctl.groups {
        let range = start..start + size;
        start += size;
        let mut scale: f64 = 0.0;
        let mut err: f64 = 0.0;
        for i in range {
            scale = scale.max(y[i].norm()).max(st.y5[i].norm());
            let e = (st.k[0][i] * E1
                + st.k[2][i] * E3
                + st.k[3][i] * E4
                + st.k[4][i] * E5
                + st.k[5][i] * E6
                + st.k[6][i] * E7)
                * h;
            err = err.max(e.norm());
        }
        worst = worst.max(err / (ctl.atol + ctl.rtol * scale));
    }
    worst
}

/// Integrates from `x0` to `x1` (either direction) and returns the state at
/// each of `stops`, which must lie between `x0` and `x1` in order of travel.
/// The step sequence actually taken is returned for later replay.
pub fn integrate_adaptive<F>(
    mut f: F,
    x0: f64,
    y0: &[Complex64],
    x1: f64,
    stops: &[f64],
    h_init: f64,
    ctl: &StepControl,
) -> Result<(Vec<Vec<Complex64>>, Mesh)>
where
    F: FnMut(f64, &[Complex64], &mut [Complex64]),
{
    let dir = if x1 >= x0 { 1.0 } else { -1.0 };
    let span = (x1 - x0).abs();
    let mut st = Stages::new(y0.len());
    let mut y = y0.to_vec();
    let mut x = x0;
    let mut out = Vec::with_capacity(stops.len());
    let mut mesh = vec![x0];
    let mut stop_iter = stops.iter().copied().peekable();
    while let Some(&s) = stop_iter.peek() {
        if (s - x0) * dir <= 0.0 {
            out.push(y.clone());
            stop_iter.next();
        } else {
            break;
        }
    }
    if span == 0.0 {
        for _ in stop_iter {
            out.push(y.clone());
        }
        return Ok((out, Mesh { points: mesh }));
    }
    let mut h = h_init.abs().min(span).max(span * 1e-14);
    f(x, &y, &mut st.k[0]);
    let mut steps = 0usize;
    let mut rejected_last = false;
    while (x1 - x) * dir > 0.0 {
        steps += 1;
        if steps > ctl.max_steps {
            return Err(JostError::Integrator {
                r: x,
                detail: format!("exceeded {} steps", ctl.max_steps),
            });
        }
        let target = stop_iter.peek().copied().unwrap_or(x1);
        let remaining = (target - x).abs();
        let mut landing = false;
        let mut step = h;
        if step >= remaining * (1.0 - 1e-12) {
            step = remaining;
            landing = true;
        }
        dp_step(&mut f, x, &y, dir * step, &mut st);
        let ratio = error_ratio(&y, &st, dir * step, ctl);
        if !ratio.is_finite() {
            return Err(JostError::Integrator {
                r: x,
                detail: "non-finite solution (overflow in a classically forbidden region?)".into(),
            });
        }
        if ratio <= 1.0 {
            x = if landing { target } else { x + dir * step };
            std::mem::swap(&mut y, &mut st.y5);
            st.k.swap(0, 6);
            mesh.push(x);
            if landing {
                if stop_iter.peek().is_some() {
                    out.push(y.clone());
                    stop_iter.next();
                }
                // several stops may coincide
                while let Some(&s) = stop_iter.peek() {
                    if (s - x) * dir <= 0.0 {
                        out.push(y.clone());
                        stop_iter.next();
                    } else {
                        break;
                    }
                }
            }
            let grow = if ratio == 0.0 { 5.0 } else { (0.9 * ratio.powf(-0.2)).clamp(0.2, 5.0) };
            let grow = if rejected_last { grow.min(1.0) } else { grow };
            // do not let a short landing step shrink the next one
            h = if landing { h.max(step * grow) } else { step * grow };
            rejected_last = false;
        } else {
            h = step * (0.9 * ratio.powf(-0.2)).clamp(0.1, 0.9);
            rejected_last = true;
            if h < span * 1e-15 {
                return Err(JostError::Integrator {
                    r: x,
                    detail: format!("step size underflow (h = {h:.3e})"),
                });
            }
        }
    }
    for _ in stop_iter {
        out.push(y.clone());
    }
    Ok((out, Mesh { points: mesh }))
}

/// Replays a mesh with fixed steps (5th-order solution, no error control),
/// recording the state at every mesh point listed in `stops`.
pub fn integrate_on_mesh<F>(
    mut f: F,
    mesh: &Mesh,
    y0: &[Complex64],
    stops: &[f64],
) -> Vec<Vec<Complex64>>
where
    F: FnMut(f64, &[Complex64], &mut [Complex64]),
{
    let mut st = Stages::new(y0.len());
    let mut y = y0.to_vec();
    let mut out = Vec::with_capacity(stops.len());
    let mut stop_iter = stops.iter().copied().peekable();
    let pts = &mesh.points;
    let record = |x: f64, y: &[Complex64], out: &mut Vec<Vec<Complex64>>, it: &mut std::iter::Peekable<std::iter::Copied<std::slice::Iter<'_, f64>>>| {
        while let Some(&s) = it.peek() {
            if s == x {
                out.push(y.to_vec());
                it.next();
            } else {
                break;
            }
        }
    };
    record(pts[0], &y, &mut out, &mut stop_iter);
    for w in pts.windows(2) {
        f(w[0], &y, &mut st.k[0]);
        dp_step(&mut f, w[0], &y, w[1] - w[0], &mut st);
        std::mem::swap(&mut y, &mut st.y5);
        record(w[1], &y, &mut out, &mut stop_iter);
    }
    for _ in stop_iter {
        out.push(y.clone());
    }
    out
}
