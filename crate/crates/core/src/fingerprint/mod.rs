//! Spatial fingerprints, dictionaries, matched-filter localization and
//! ambiguity probing.

mod dictionary;
mod grid;
mod probe;

pub use dictionary::{build_dictionary, localize, localize_fingerprint, Dictionary, Localization};
pub use grid::{AxisRange, PositionGrid};
pub use probe::{ambiguity_probe, half_power_width, ProbeAxis, ProbeCurve, HALF_POWER};

use num_complex::Complex64;

use crate::domain::{ChannelAxis, Measurement};
use crate::error::{Error, Result};

/// Per-channel unit-normalized concatenation `[s_x/|s_x|; s_y/|s_y|]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Fingerprint {
    values: Vec<Complex64>,
}

impl Fingerprint {
    /// Builds a fingerprint from already-normalized halves.
    ///
    /// Each half must have unit norm to within `1e-9`.
    pub fn from_values(values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() || !values.len().is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "fingerprint length must be a positive even number (got {})",
                values.len()
            )));
        }
        let fp = Self { values };
        for half in [fp.x_half(), fp.y_half()] {
            let n = stable_norm(half);
            if (n - 1.0).abs() > 1e-9 {
                return Err(Error::DegenerateMeasurement(format!("fingerprint half has norm {n}, expected 1")));
            }
        }
        Ok(fp)
    }

    /// Number of frequency points M (the vector holds 2M values).
    pub fn m(&self) -> usize {
        self.values.len() / 2
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn x_half(&self) -> &[Complex64] {
        &self.values[..self.m()]
    }

    pub fn y_half(&self) -> &[Complex64] {
        &self.values[self.m()..]
    }

    pub fn half(&self, axis: ChannelAxis) -> &[Complex64] {
        match axis {
            ChannelAxis::XScan => self.x_half(),
            ChannelAxis::YScan => self.y_half(),
        }
    }
}

/// Euclidean norm, scaled so tiny or huge entries neither underflow nor overflow.
pub(crate) fn stable_norm(v: &[Complex64]) -> f64 {
    let scale = v.iter().map(|c| c.re.abs().max(c.im.abs())).fold(0.0, f64::max);
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    let inv = 1.0 / scale;
    let sum: f64 = v.iter().map(|c| (c * inv).norm_sqr()).sum();
    scale * sum.sqrt()
}

fn normalize(v: &[Complex64], axis: ChannelAxis) -> Result<Vec<Complex64>> {
    let scale = v.iter().map(|c| c.re.abs().max(c.im.abs())).fold(0.0, f64::max);
    if scale == 0.0 || !scale.is_finite() {
        return Err(Error::DegenerateMeasurement(format!("{axis:?} channel has zero or non-finite norm")));
    }
    // rescale first so the unit-norm step works on O(1) values
    let inv = 1.0 / scale;
    let scaled: Vec<Complex64> = v.iter().map(|c| c * inv).collect();
    let n = scaled.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    Ok(scaled.into_iter().map(|c| c / n).collect())
}

/// Normalizes each channel of `meas` and concatenates x then y.
pub fn build_fingerprint(meas: &Measurement) -> Result<Fingerprint> {
    let mut values = normalize(meas.s_x(), ChannelAxis::XScan)?;
    values.extend(normalize(meas.s_y(), ChannelAxis::YScan)?);
    let fp = Fingerprint { values };
    debug_assert!(ChannelAxis::BOTH.iter().all(|&a| (stable_norm(fp.half(a)) - 1.0).abs() < 1e-12));
    Ok(fp)
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(u, v)| u * v.conj()).sum()
}

/// Mean of the per-channel coherent correlation magnitudes, in `[0, 1]`.
pub fn similarity(a: &Fingerprint, b: &Fingerprint) -> Result<f64> {
    if a.m() != b.m() {
        return Err(Error::DimensionMismatch { expected: a.m(), actual: b.m() });
    }
    Ok(similarity_unchecked(a, b))
}

pub(crate) fn similarity_unchecked(a: &Fingerprint, b: &Fingerprint) -> f64 {
    let sx = inner(a.x_half(), b.x_half()).norm();
    let sy = inner(a.y_half(), b.y_half()).norm();
    (0.5 * (sx + sy)).min(1.0)
}
