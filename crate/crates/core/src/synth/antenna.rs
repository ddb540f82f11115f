use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use crate::domain::{wavelength, ChannelAxis, Position};
use crate::error::{Error, Result};

/// Analytic stand-in for the directional response `G(m, p)`.
///
/// Gaussian mainlobe whose one-way half-power beamwidth is `λ(f) / L`. The
/// taper acts only in the channel's scan plane; the gain is real and
/// non-negative.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AntennaModel {
    /// Physical radiating length, m.
    pub length: f64,
    /// Square the one-way pattern (transmit and receive through the same line).
    pub two_way: bool,
}

impl Default for AntennaModel {
    fn default() -> Self {
        Self { length: 0.12, two_way: true }
    }
}

impl AntennaModel {
    pub fn new(length: f64, two_way: bool) -> Result<Self> {
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::InvalidParameter(format!("antenna length must be positive (got {length})")));
        }
        Ok(Self { length, two_way })
    }

    /// One-way half-power beamwidth at `f`, rad.
    pub fn half_power_beamwidth(&self, f: f64) -> f64 {
        wavelength(f) / self.length
    }

    /// Gain toward `p` for a beam steered to `theta_beam` in `axis`'s plane.
    pub fn gain(&self, f: f64, theta_beam: f64, p: &Position, axis: ChannelAxis) -> f64 {
        let off = (axis.angle_of(p) - theta_beam) / self.half_power_beamwidth(f);
        let one_way = (-4.0 * LN_2 * off * off).exp();
        if self.two_way {
            one_way * one_way
        } else {
            one_way
        }
    }
}

/// Free-function form of [`AntennaModel::gain`].
pub fn antenna_gain(model: &AntennaModel, f: f64, theta_beam: f64, p: &Position, axis: ChannelAxis) -> f64 {
    model.gain(f, theta_beam, p, axis)
}

#[cfg(test)]
mod tests {
    use super::*;

    const F: f64 = 63e9;

    #[test]
    fn peak_is_unity() {
        let a = AntennaModel::default();
        let p = Position::new(0.0, 0.0, 2.0);
        assert_eq!(a.gain(F, 0.0, &p, ChannelAxis::XScan), 1.0);
    }

    #[test]
    fn half_power_offsets() {
        let hp = AntennaModel::default().half_power_beamwidth(F);
        let p = Position::new(0.0, 0.0, 2.0);
        let one = AntennaModel::new(0.12, false).unwrap();
        let two = AntennaModel::new(0.12, true).unwrap();
        // beam steered hp/2 away from the target
        assert!((one.gain(F, hp / 2.0, &p, ChannelAxis::XScan) - 0.5).abs() < 1e-12);
        assert!((two.gain(F, hp / 2.0, &p, ChannelAxis::XScan) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn no_taper_in_orthogonal_plane() {
        let a = AntennaModel::default();
        let p = Position::new(0.0, 1.5, 2.0);
        assert_eq!(a.gain(F, 0.0, &p, ChannelAxis::XScan), 1.0);
        assert!(a.gain(F, 0.0, &p, ChannelAxis::YScan) < 1e-6);
    }

    #[test]
    fn beamwidth_scales_with_wavelength() {
        let a = AntennaModel::default();
        assert!((a.half_power_beamwidth(F) - crate::SPEED_OF_LIGHT / F / 0.12).abs() < 1e-15);
        assert!(a.half_power_beamwidth(60e9) > a.half_power_beamwidth(66e9));
        assert!(AntennaModel::new(0.0, true).is_err());
    }
}
