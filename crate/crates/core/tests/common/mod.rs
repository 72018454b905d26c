//! Independent oracles shared by the integration tests.
//!
//! Nothing here calls into the library's Jost machinery: the s-wave
//! conditions are written directly in terms of `sin` and `cos` and solved by
//! bisection, and norms come from elementary integrals.

#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x6a6f_7374;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

/// Seeded uniform samples in a rectangle of the k plane.
pub fn random_ks(n: usize, re: (f64, f64), im: (f64, f64), seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| c(rng.gen_range(re.0..re.1), rng.gen_range(im.0..im.1)))
        .collect()
}

fn bisect(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut glo = g(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let gm = g(mid);
        if gm == 0.0 {
            return mid;
        }
        if (gm < 0.0) == (glo < 0.0) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi.abs() {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Sign changes of `g` on a uniform scan of `(lo, hi)`, each refined by bisection.
fn roots(g: impl Fn(f64) -> f64 + Copy, lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let xs: Vec<f64> = (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect();
    xs.windows(2)
        .filter(|w| g(w[0]).signum() != g(w[1]).signum())
        .map(|w| bisect(g, w[0], w[1]))
        .collect()
}

/// Every `κ > 0` with `tan(qa) = -q/κ`, `q² = V0 - κ²`, deepest first.
pub fn bound_kappas(v0: f64, a: f64) -> Vec<f64> {
    let g = |kappa: f64| {
        let q = (v0 - kappa * kappa).sqrt();
        q * (q * a).cos() + kappa * (q * a).sin()
    };
    let top = v0.sqrt();
    let mut ks = roots(g, top * 1e-9, top * (1.0 - 1e-12), 4000);
    ks.sort_by(|x, y| y.total_cmp(x));
    ks
}

/// Every `γ > 0` with `q cot(qa) = γ`, `q² = V0 - γ²`: s-wave zeros at `k = iγ`.
pub fn virtual_gammas(v0: f64, a: f64) -> Vec<f64> {
    let g = |gamma: f64| {
        let q = (v0 - gamma * gamma).sqrt();
        q * (q * a).cos() - gamma * (q * a).sin()
    };
    let top = v0.sqrt();
    roots(g, top * 1e-9, top * (1.0 - 1e-12), 4000)
}

/// `∫_0^∞ φ_0(r)² dr` for the s-wave bound state `k = -iκ` of a square well,
/// with `φ_0 = sin(qr)/q` inside and a decaying exponential outside.
pub fn bound_norm(v0: f64, a: f64, kappa: f64) -> f64 {
    let q = (v0 - kappa * kappa).sqrt();
    let inside = (a / 2.0 - (2.0 * q * a).sin() / (4.0 * q)) / (q * q);
    let edge = (q * a).sin() / q;
    inside + edge * edge / (2.0 * kappa)
}

/// Composite Simpson rule with `n` (even) panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + h * i as f64);
    }
    s * h / 3.0
}

/// Minimum-modulus points of `|g|` on a lattice: interior local minima of a
/// coarse scan, the crude check on where zeros should be.
pub fn lattice_minima(
    g: impl Fn(Complex64) -> f64,
    re: (f64, f64),
    im: (f64, f64),
    n: usize,
    below: f64,
) -> Vec<Complex64> {
    let at = |i: usize, j: usize| {
        c(
            re.0 + (re.1 - re.0) * i as f64 / n as f64,
            im.0 + (im.1 - im.0) * j as f64 / n as f64,
        )
    };
    let vals: Vec<Vec<f64>> = (0..=n).map(|i| (0..=n).map(|j| g(at(i, j))).collect()).collect();
    let mut out = Vec::new();
    for i in 1..n {
        for j in 1..n {
            let v = vals[i][j];
            let neighbours = [(i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1), (i - 1, j - 1), (i + 1, j + 1), (i - 1, j + 1), (i + 1, j - 1)];
            if v < below && neighbours.iter().all(|&(a, b)| v < vals[a][b]) {
                out.push(at(i, j));
            }
        }
    }
    out
}
