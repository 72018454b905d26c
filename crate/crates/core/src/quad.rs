//! Adaptive Gauss–Kronrod quadrature along straight complex segments, and
//! polynomial extrapolation to zero.

use num_complex::Complex64;

use crate::error::{JostError, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Kronrod estimate and error, the latter floored at the roundoff level of
/// `∫|f|` over the piece.
fn kronrod<F>(f: &mut F, a: Complex64, b: Complex64) -> (Complex64, f64)
where
    F: FnMut(Complex64) -> Complex64,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    let mut abs = fc.norm() * WGK[7];
    for j in 0..7 {
        let (fp, fm) = (f(c + h * XGK[j]), f(c - h * XGK[j]));
        let s = fp + fm;
        k += s * WGK[j];
        abs += (fp.norm() + fm.norm()) * WGK[j];
        if j % 2 == 1 {
            g += s * WG[j / 2];
        }
    }
    let err = ((k - g) * h).norm();
    let floor = 50.0 * f64::EPSILON * abs * h.norm();
    (k * h, if err < floor { 0.0 } else { err })
}

/// `∫_a^b f(z) dz` along the straight segment, bisecting until each piece
/// meets `max(abs_tol, rel_tol·|I|)` in proportion to its length.
pub fn integrate_segment<F>(mut f: F, a: Complex64, b: Complex64, abs_tol: f64, rel_tol: f64) -> Result<Complex64>
where
    F: FnMut(Complex64) -> Complex64,
{
    const MAX_PIECES: usize = 20_000;
    let total_len = (b - a).norm();
    if total_len == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let (first, err) = kronrod(&mut f, a, b);
    let mut pending = vec![(a, b, first, err)];
    let mut done = Complex64::new(0.0, 0.0);
    let mut estimate = first;
    let mut pieces = 1;
    while let Some((lo, hi, val, err)) = pending.pop() {
        let allowed = abs_tol.max(rel_tol * estimate.norm()) * (hi - lo).norm() / total_len;
        if err <= allowed || !val.re.is_finite() || !val.im.is_finite() {
            if !val.re.is_finite() || !val.im.is_finite() {
                return Err(JostError::NonConvergent {
                    what: "integrate_segment",
                    detail: format!("non-finite integrand on [{lo}, {hi}]"),
                });
            }
            done += val;
            continue;
        }
        pieces += 1;
        if pieces > MAX_PIECES {
            return Err(JostError::NonConvergent {
                what: "integrate_segment",
                detail: format!("more than {MAX_PIECES} subintervals on [{a}, {b}]"),
            });
        }
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = kronrod(&mut f, lo, mid);
        let (v2, e2) = kronrod(&mut f, mid, hi);
        estimate += v1 + v2 - val;
        pending.push((mid, hi, v2, e2));
        pending.push((lo, mid, v1, e1));
    }
    Ok(done)
}

/// Neville extrapolation of `(x_i, y_i)` to `x = 0`. Entry `j` of the result
/// is the estimate from the polynomial through the first `j + 1` points.
pub fn extrapolate_to_zero(xs: &[f64], ys: &[Complex64]) -> Vec<Complex64> {
    let n = xs.len().min(ys.len());
    let mut p: Vec<Complex64> = ys[..n].to_vec();
    let mut diag = Vec::with_capacity(n);
    if n == 0 {
        return diag;
    }
    diag.push(p[0]);
    // after pass m, p[i] interpolates points i-m..=i
    for m in 1..n {
        for i in (m..n).rev() {
            let (xa, xb) = (xs[i - m], xs[i]);
            p[i] = (xa * p[i] - xb * p[i - 1]) / (xa - xb);
        }
        diag.push(p[m]);
    }
    diag
}
