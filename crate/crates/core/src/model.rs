//! Shared conventions and value types.
//!
//! Units: hbar^2/(2m) = 1 throughout, so the energy is `E = k^2` and the
//! momentum inside an attractive well of depth `V0` is `q^2 = k^2 + V0`.
//!
//! Half-plane convention: the irregular solution behaves as `e^{-ikr}` at large
//! `r`. Bound states therefore sit on the negative imaginary axis, virtual
//! states on the positive imaginary axis, and resonances in the upper half
//! plane off the axis.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{JostError, Result};

pub const UNITS_LINE: &str = "hbar^2/2m = 1; E = k^2";

pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Complex wavenumber, in units of inverse length.
pub type Momentum = Complex64;

/// Energy `E = k^2` in the `hbar^2/2m = 1` convention.
pub fn energy(k: Momentum) -> Complex64 {
    k * k
}

pub fn is_finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

pub(crate) fn ensure_finite(what: &'static str, k: Momentum) -> Result<()> {
    if is_finite(k) {
        Ok(())
    } else {
        Err(JostError::Domain {
            what,
            detail: format!("non-finite momentum {k}"),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PoleClass {
    Bound,
    Virtual,
    Resonant,
}

impl PoleClass {
    pub fn as_str(self) -> &'static str {
        match self {
            PoleClass::Bound => "bound",
            PoleClass::Virtual => "virtual",
            PoleClass::Resonant => "resonant",
        }
    }
}

impl std::fmt::Display for PoleClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Classifies a Jost zero. `tol` is relative: a zero counts as lying on the
/// imaginary axis when `|Re k0| < tol * (1 + |k0|)`.
pub fn classify(k0: Momentum, tol: f64) -> Result<PoleClass> {
    if !(tol > 0.0) {
        return Err(JostError::InvalidParameter {
            name: "tol",
            detail: format!("must be positive, got {tol}"),
        });
    }
    ensure_finite("classify", k0)?;
    let on_axis = k0.re.abs() < tol * (1.0 + k0.norm());
    match (on_axis, k0.im > 0.0) {
        (true, false) => Ok(PoleClass::Bound),
        (true, true) => Ok(PoleClass::Virtual),
        (false, true) => Ok(PoleClass::Resonant),
        (false, false) => Err(JostError::Unclassifiable { k0 }),
    }
}
