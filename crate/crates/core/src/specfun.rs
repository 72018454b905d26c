//! Spherical Bessel, Neumann and Hankel functions of complex argument.
//!
//! `h_minus` is the incoming-convention Hankel function `h⁻_l = j_l - i n_l`,
//! which behaves as `i^{l+1} e^{-iz} / z` for large `|z|`.

use num_complex::Complex64;

use crate::error::{JostError, Result};
use crate::model::I;

/// Below this modulus `j_l` is summed from its power series.
pub const SERIES_RADIUS: f64 = 0.5;
const SERIES_REL_TOL: f64 = 1e-18;
const SERIES_MAX_TERMS: usize = 200;
/// `e^{|Im z|}` must stay representable.
const MAX_IMAG: f64 = 700.0;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `(2l+1)!! = 1·3·5···(2l+1)`; errors once the product leaves `u128`.
pub fn double_factorial_odd(l: usize) -> Result<u128> {
    let mut acc: u128 = 1;
    for m in (1..=2 * l as u128 + 1).step_by(2) {
        acc = acc.checked_mul(m).ok_or_else(|| JostError::InvalidParameter {
            name: "l",
            detail: format!("(2l+1)!! overflows u128 for l = {l}"),
        })?;
    }
    Ok(acc)
}

/// Floating-point `(2l+1)!!`, finite for every `l` used in practice.
pub fn double_factorial_odd_f64(l: usize) -> f64 {
    (0..=l).map(|m| (2 * m + 1) as f64).product()
}

fn check_range(what: &'static str, z: Complex64) -> Result<()> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(JostError::Domain {
            what,
            detail: format!("non-finite argument {z}"),
        });
    }
    if z.im.abs() > MAX_IMAG {
        return Err(JostError::Range { what, im_abs: z.im.abs() });
    }
    Ok(())
}

/// Power series `Σ_n (-z²/2)^n / (n! (2l+3)(2l+5)···(2l+2n+1))`, i.e.
/// `j_l(z) (2l+1)!! / z^l`. Also returns the same sum with each term weighted
/// by `(l + 2n)`, which the derivative needs.
fn reduced_series(l: usize, z: Complex64) -> (Complex64, Complex64) {
    let x = -z * z * 0.5;
    let mut term = ONE;
    let mut sum = ONE;
    let mut weighted = Complex64::new(l as f64, 0.0);
    for n in 0..SERIES_MAX_TERMS {
        term *= x / ((n + 1) as f64 * (2 * l + 2 * n + 3) as f64);
        sum += term;
        weighted += term * (l + 2 * n + 2) as f64;
        if term.norm() < SERIES_REL_TOL * sum.norm() {
            break;
        }
    }
    (sum, weighted)
}

fn j0_closed(z: Complex64) -> Complex64 {
    z.sin() / z
}

fn j1_closed(z: Complex64) -> Complex64 {
    z.sin() / (z * z) - z.cos() / z
}

/// Miller's downward recurrence, normalised against the closed forms of
/// `j_0` and `j_1` in the least-squares sense.
fn j_downward(l: usize, z: Complex64) -> Complex64 {
    let start = l + 30 + 2 * z.norm().ceil() as usize;
    let mut upper = ZERO;
    let mut current = Complex64::new(1e-30, 0.0);
    let mut at_l = ZERO;
    let mut at_1 = ZERO;
    let mut at_0 = ZERO;
    for n in (1..=start).rev() {
        let lower = (2 * n + 1) as f64 / z * current - upper;
        upper = current;
        current = lower;
        if n - 1 == l {
            at_l = current;
        }
        if n == 2 {
            at_1 = current;
        }
        if n == 1 {
            at_0 = current;
        }
        let mag = current.norm();
        if mag > 1e250 {
            upper /= mag;
            current /= mag;
            at_l /= mag;
            at_1 /= mag;
            at_0 /= mag;
        }
    }
    if l == 0 {
        at_l = at_0;
    }
    let (t0, t1) = (j0_closed(z), j1_closed(z));
    let scale = (t0 * at_0.conj() + t1 * at_1.conj()) / (at_0.norm_sqr() + at_1.norm_sqr());
    at_l * scale
}

pub fn spherical_j(l: usize, z: Complex64) -> Result<Complex64> {
    check_range("spherical_j", z)?;
    let mag = z.norm();
    if mag < SERIES_RADIUS {
        let (sum, _) = reduced_series(l, z);
        return Ok(z.powu(l as u32) / double_factorial_odd_f64(l) * sum);
    }
    Ok(match l {
        0 => j0_closed(z),
        1 => j1_closed(z),
        _ if mag > l as f64 => {
            let (mut prev, mut cur) = (j0_closed(z), j1_closed(z));
            for m in 1..l {
                let next = (2 * m + 1) as f64 / z * cur - prev;
                prev = cur;
                cur = next;
            }
            cur
        }
        _ => j_downward(l, z),
    })
}

pub fn spherical_j_deriv(l: usize, z: Complex64) -> Result<Complex64> {
    if z.norm() < SERIES_RADIUS {
        check_range("spherical_j_deriv", z)?;
        if z == ZERO {
            return Ok(if l == 1 { Complex64::new(1.0 / 3.0, 0.0) } else { ZERO });
        }
        let (_, weighted) = reduced_series(l, z);
        return Ok(z.powu(l as u32) / z / double_factorial_odd_f64(l) * weighted);
    }
    if l == 0 {
        return Ok(-spherical_j(1, z)?);
    }
    Ok(spherical_j(l - 1, z)? - (l + 1) as f64 / z * spherical_j(l, z)?)
}

fn require_nonzero(what: &'static str, z: Complex64) -> Result<()> {
    if z == ZERO {
        return Err(JostError::Domain {
            what,
            detail: "singular at z = 0".into(),
        });
    }
    Ok(())
}

pub fn spherical_n(l: usize, z: Complex64) -> Result<Complex64> {
    check_range("spherical_n", z)?;
    require_nonzero("spherical_n", z)?;
    let (s, c) = (z.sin(), z.cos());
    let n0 = -c / z;
    let n1 = -c / (z * z) - s / z;
    Ok(match l {
        0 => n0,
        1 => n1,
        2 => (-3.0 / (z * z * z) + 1.0 / z) * c - 3.0 * s / (z * z),
        _ => {
            let (mut prev, mut cur) = (n0, n1);
            for m in 1..l {
                let next = (2 * m + 1) as f64 / z * cur - prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    })
}

pub fn spherical_n_deriv(l: usize, z: Complex64) -> Result<Complex64> {
    if l == 0 {
        return Ok(-spherical_n(1, z)?);
    }
    Ok(spherical_n(l - 1, z)? - (l + 1) as f64 / z * spherical_n(l, z)?)
}

/// Coefficients `(l+m)! / (m! (l-m)!)` of the terminating Hankel expansion.
fn hankel_coefficients(l: usize) -> impl Iterator<Item = f64> {
    (0..=l).scan(1.0_f64, move |c, m| {
        let out = *c;
        *c *= ((l + m + 1) * (l - m)) as f64 / (m + 1) as f64;
        Some(out)
    })
}

/// `Σ_m c_m (-i / 2z)^m`; equal to `e^{iz} z h⁻_l(z) / i^{l+1}`.
fn hankel_poly(l: usize, z: Complex64) -> Complex64 {
    let x = -I / (2.0 * z);
    let mut pow = ONE;
    let mut sum = ZERO;
    for c in hankel_coefficients(l) {
        sum += pow * c;
        pow *= x;
    }
    sum
}

fn hankel_poly_deriv(l: usize, z: Complex64) -> Complex64 {
    let x = -I / (2.0 * z);
    let mut pow = ONE;
    let mut sum = ZERO;
    for (m, c) in hankel_coefficients(l).enumerate() {
        sum -= pow * (c * m as f64);
        pow *= x;
    }
    sum / z
}

fn i_pow(n: usize) -> Complex64 {
    match n % 4 {
        0 => ONE,
        1 => I,
        2 => -ONE,
        _ => -I,
    }
}

/// `h⁻_l(z) = j_l(z) - i n_l(z)`, summed from its terminating closed form so
/// that it stays accurate where `j_l` and `n_l` are exponentially large.
pub fn spherical_h_minus(l: usize, z: Complex64) -> Result<Complex64> {
    require_nonzero("spherical_h_minus", z)?;
    if !(z.re.is_finite() && z.im.is_finite()) || z.im > MAX_IMAG {
        return Err(JostError::Range { what: "spherical_h_minus", im_abs: z.im.abs() });
    }
    Ok(i_pow(l + 1) * (-I * z).exp() / z * hankel_poly(l, z))
}

pub fn spherical_h_minus_deriv(l: usize, z: Complex64) -> Result<Complex64> {
    if l == 0 {
        return Ok(-spherical_h_minus(1, z)?);
    }
    Ok(spherical_h_minus(l - 1, z)? - (l + 1) as f64 / z * spherical_h_minus(l, z)?)
}

/// `j_l` and `n_l` at one argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalTriple {
    pub j: Complex64,
    pub n: Complex64,
}

impl SphericalTriple {
    pub fn new(l: usize, z: Complex64) -> Result<Self> {
        Ok(Self {
            j: spherical_j(l, z)?,
            n: spherical_n(l, z)?,
        })
    }

    pub fn h_minus(&self) -> Complex64 {
        self.j - I * self.n
    }
}

/// `W[u, v] = u v' - u' v`.
pub fn wronskian(u: Complex64, du: Complex64, v: Complex64, dv: Complex64) -> Complex64 {
    u * dv - du * v
}

/// `q^{-l} j_l(q r)` together with its `r`-derivative `q^{1-l} j_l'(q r)`.
///
/// Both stay finite as `q -> 0`, which keeps the square-well formulas valid
/// at the threshold `k^2 = -V0`.
pub fn scaled_j(l: usize, q: Complex64, r: f64) -> Result<(Complex64, Complex64)> {
    let z = q * r;
    if z.norm() < SERIES_RADIUS {
        check_range("scaled_j", z)?;
        let (sum, weighted) = reduced_series(l, z);
        let pref = r.powi(l as i32) / double_factorial_odd_f64(l);
        let deriv = if r == 0.0 {
            if l == 1 {
                Complex64::new(1.0 / 3.0, 0.0)
            } else {
                ZERO
            }
        } else {
            pref / r * weighted
        };
        return Ok((pref * sum, deriv));
    }
    let ql = q.powu(l as u32);
    Ok((spherical_j(l, z)? / ql, q / ql * spherical_j_deriv(l, z)?))
}

/// The exterior irregular solution `f_l(k, r) = -i k r h⁻_l(k r)` and its
/// `r`-derivative. At `k = 0` only `l = 0` is defined (`f_0 = 1`).
pub fn outgoing_solution(l: usize, k: Complex64, r: f64) -> Result<(Complex64, Complex64)> {
    if k == ZERO {
        if l == 0 {
            return Ok((ONE, ZERO));
        }
        return Err(JostError::Domain {
            what: "outgoing_solution",
            detail: format!("k = 0 is singular for l = {l}"),
        });
    }
    if !(r > 0.0) {
        return Err(JostError::Domain {
            what: "outgoing_solution",
            detail: format!("r must be positive, got {r}"),
        });
    }
    outgoing_solution_at(l, k, Complex64::new(r, 0.0))
}

/// As [`outgoing_solution`], at a complex radius (used on deformed contours).
pub fn outgoing_solution_at(l: usize, k: Complex64, r: Complex64) -> Result<(Complex64, Complex64)> {
    let z = k * r;
    require_nonzero("outgoing_solution", z)?;
    if z.im > MAX_IMAG {
        return Err(JostError::Range { what: "outgoing_solution", im_abs: z.im });
    }
    let phase = i_pow(l) * (-I * z).exp();
    let p = hankel_poly(l, z);
    let dp = hankel_poly_deriv(l, z);
    Ok((phase * p, phase * k * (dp - I * p)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64, rel: f64) -> bool {
        (a - b).norm() <= rel * b.norm().max(1e-300)
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial_odd(0).unwrap(), 1);
        assert_eq!(double_factorial_odd(2).unwrap(), 15);
        // product-loop oracle
        let oracle: u128 = (0..=10u128).map(|m| 2 * m + 1).product();
        assert_eq!(oracle, 13_749_310_575);
        assert_eq!(double_factorial_odd(10).unwrap(), oracle);
        assert!(double_factorial_odd(60).is_err());
    }

    #[test]
    fn values_at_origin() {
        assert_eq!(spherical_j(0, ZERO).unwrap(), ONE);
        assert_eq!(spherical_j(1, ZERO).unwrap(), ZERO);
        assert_eq!(spherical_j(3, ZERO).unwrap(), ZERO);
        assert!(spherical_n(0, ZERO).is_err());
        assert!(spherical_h_minus(1, ZERO).is_err());
    }

    #[test]
    fn j1_at_half_matches_closed_form() {
        let z = 0.5_f64;
        let oracle = z.sin() / (z * z) - z.cos() / z;
        assert!((oracle - 0.162_537_030).abs() < 1e-8);
        let got = spherical_j(1, c(z, 0.0)).unwrap();
        assert!(close(got, c(oracle, 0.0), 1e-14));
        // just inside the series radius
        let got = spherical_j(1, c(0.499_999, 0.0)).unwrap();
        let z = 0.499_999_f64;
        assert!(close(got, c(z.sin() / (z * z) - z.cos() / z, 0.0), 1e-13));
    }

    #[test]
    fn n0_at_one() {
        let got = spherical_n(0, ONE).unwrap();
        assert!(close(got, c(-1.0_f64.cos(), 0.0), 1e-15));
        assert!((got.re + 0.540_302_31).abs() < 1e-8);
    }

    #[test]
    fn h0_closed_form() {
        for z in [c(1.0, 0.0), c(0.3, -2.0), c(-4.0, 1.5)] {
            let h = spherical_h_minus(0, z).unwrap();
            assert!(close(h, I * (-I * z).exp() / z, 1e-14));
            let t = SphericalTriple::new(0, z).unwrap();
            assert!(close(t.h_minus(), h, 1e-13));
        }
    }

    #[test]
    fn hankel_matches_j_minus_i_n() {
        for l in 0..6 {
            for z in [c(0.7, 0.2), c(3.0, -1.0), c(-2.5, 0.8), c(8.0, 0.0)] {
                let t = SphericalTriple::new(l, z).unwrap();
                let h = spherical_h_minus(l, z).unwrap();
                assert!(close(h, t.h_minus(), 1e-11), "l={l} z={z}");
            }
        }
    }

    #[test]
    fn recurrence_oracle_for_l2() {
        for z in [c(1.3, 0.4), c(5.0, -2.0), c(0.6, 0.0)] {
            let j2 = 3.0 / z * spherical_j(1, z).unwrap() - spherical_j(0, z).unwrap();
            let n2 = 3.0 / z * spherical_n(1, z).unwrap() - spherical_n(0, z).unwrap();
            assert!(close(spherical_j(2, z).unwrap(), j2, 1e-12));
            assert!(close(spherical_n(2, z).unwrap(), n2, 1e-12));
        }
    }

    #[test]
    fn downward_recurrence_against_series() {
        // |z| < l uses Miller's algorithm; the series converges everywhere.
        for l in [3usize, 6, 12] {
            for z in [c(1.5, 0.5), c(2.0, -1.0), c(0.9, 0.0)] {
                let (s, _) = reduced_series(l, z);
                let oracle = z.powu(l as u32) / double_factorial_odd_f64(l) * s;
                assert!(close(spherical_j(l, z).unwrap(), oracle, 1e-12), "l={l} z={z}");
            }
        }
    }

    #[test]
    fn derivative_against_difference_quotient() {
        let h = 1e-5;
        for l in 0..4 {
            for z in [c(0.3, 0.1), c(2.0, 0.5), c(6.0, -1.0)] {
                let fd = (spherical_j(l, z + h).unwrap() - spherical_j(l, z - h).unwrap()) / (2.0 * h);
                assert!(close(spherical_j_deriv(l, z).unwrap(), fd, 1e-8), "l={l} z={z}");
                let fd = (spherical_h_minus(l, z + h).unwrap() - spherical_h_minus(l, z - h).unwrap())
                    / (2.0 * h);
                assert!(close(spherical_h_minus_deriv(l, z).unwrap(), fd, 1e-8));
            }
        }
    }

    #[test]
    fn range_errors() {
        assert!(matches!(spherical_j(0, c(1.0, 800.0)), Err(JostError::Range { .. })));
        assert!(matches!(spherical_n(1, c(1.0, -800.0)), Err(JostError::Range { .. })));
        // h⁻ decays for Im z -> -inf
        assert!(spherical_h_minus(0, c(1.0, -800.0)).is_ok());
    }

    #[test]
    fn wronskian_basics() {
        let (u, du) = (c(1.2, -0.3), c(0.4, 2.0));
        assert_eq!(wronskian(u, du, u, du), ZERO);
        let alpha = c(0.5, 1.5);
        let (v, dv) = (c(-2.0, 0.1), c(0.7, 0.7));
        assert!(close(wronskian(alpha * u, alpha * du, v, dv), alpha * wronskian(u, du, v, dv), 1e-15));
        // free l = 0 pair: f = e^{-ikr}, phi = sin(kr)/k
        let k = c(1.3, 0.4);
        for r in [0.2, 1.0, 3.7] {
            let f = (-I * k * r).exp();
            let df = -I * k * f;
            let phi = (k * r).sin() / k;
            let dphi = (k * r).cos();
            assert!(close(wronskian(f, df, phi, dphi), ONE, 1e-13));
        }
    }

    #[test]
    fn hankel_asymptotics() {
        let ratio = |l: usize, x: f64| {
            let z = c(x, 0.0);
            z * spherical_h_minus(l, z).unwrap() * (I * z).exp() / i_pow(l + 1)
        };
        assert!((ratio(0, 50.0) - ONE).norm() < 1e-3);
        assert!((ratio(0, 100.0) - ONE).norm() < 1e-4);
        // for l >= 1 the leading correction is -i l(l+1) / (2z)
        for l in 1..4 {
            for x in [50.0, 100.0] {
                let dev = (ratio(l, x) - ONE).norm();
                let lead = (l * (l + 1)) as f64 / (2.0 * x);
                assert!((dev - lead).abs() < 0.1 * lead, "l={l} x={x} dev={dev}");
            }
        }
    }

    #[test]
    fn outgoing_solution_matches_hankel() {
        for l in 0..4 {
            let k = c(1.1, -0.7);
            for r in [0.5, 2.0] {
                let (f, df) = outgoing_solution(l, k, r).unwrap();
                let z = k * r;
                let expect = -I * z * spherical_h_minus(l, z).unwrap();
                let dexpect = -I * k * spherical_h_minus(l, z).unwrap()
                    - I * z * k * spherical_h_minus_deriv(l, z).unwrap();
                assert!(close(f, expect, 1e-13));
                assert!(close(df, dexpect, 1e-12));
            }
        }
        assert_eq!(outgoing_solution(0, ZERO, 1.0).unwrap(), (ONE, ZERO));
        assert!(outgoing_solution(1, ZERO, 1.0).is_err());
    }

    #[test]
    fn scaled_j_is_continuous_across_series_switch() {
        let q = c(0.5, 0.0);
        for l in 0..4 {
            let (a, da) = scaled_j(l, q, 0.999_999_9).unwrap();
            let (b, db) = scaled_j(l, q, 1.000_000_1).unwrap();
            assert!((a - b).norm() < 1e-7);
            assert!((da - db).norm() < 1e-7);
        }
        // q -> 0 limit: r^l / (2l+1)!!
        let (v, _) = scaled_j(2, ZERO, 1.5).unwrap();
        assert!(close(v, c(1.5f64.powi(2) / 15.0, 0.0), 1e-15));
    }
}

#[cfg(test)]
mod properties {
    use super::*;
    use proptest::prelude::*;

    fn polar(m: f64, t: f64) -> Complex64 {
        Complex64::from_polar(m, t)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn cross_product_identity(l in 1usize..6, m in 0.1f64..20.0, t in -3.1f64..3.1) {
            // The products j n are of size e^{2|Im z|}/|z|^2 while the identity is
            // 1/z^2, so a fixed relative tolerance only makes sense for moderate |Im z|.
            let z = polar(m, t);
            prop_assume!(z.im.abs() <= 5.0);
            let lhs = spherical_j(l, z).unwrap() * spherical_n(l - 1, z).unwrap()
                - spherical_j(l - 1, z).unwrap() * spherical_n(l, z).unwrap();
            let rhs = 1.0 / (z * z);
            prop_assert!((lhs - rhs).norm() < 1e-10 * rhs.norm(), "z={z} lhs={lhs} rhs={rhs}");
        }

        #[test]
        fn cross_product_identity_conditioned(l in 1usize..6, m in 0.1f64..20.0, t in -3.1f64..3.1) {
            let z = polar(m, t);
            let a = spherical_j(l, z).unwrap() * spherical_n(l - 1, z).unwrap();
            let b = spherical_j(l - 1, z).unwrap() * spherical_n(l, z).unwrap();
            let rhs = 1.0 / (z * z);
            let bound = 1e-10 * rhs.norm() + 1e-13 * (a.norm() + b.norm());
            prop_assert!((a - b - rhs).norm() < bound, "z={z}");
        }

        #[test]
        fn series_and_recurrence_agree(l in 0usize..5, m in 0.3f64..1.0, t in -3.1f64..3.1) {
            let z = polar(m, t);
            let (s, _) = reduced_series(l, z);
            let series = z.powu(l as u32) / double_factorial_odd_f64(l) * s;
            let rec = match l {
                0 => j0_closed(z),
                1 => j1_closed(z),
                _ => j_downward(l, z),
            };
            prop_assert!((series - rec).norm() <= 1e-12 * series.norm().max(1e-300),
                "l={l} z={z} series={series} rec={rec}");
        }
    }
}
