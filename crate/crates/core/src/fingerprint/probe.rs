use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use super::dictionary::reference_fingerprint;
use super::similarity_unchecked;
use crate::dispersion::DispersionModel;
use crate::domain::{FrequencyPlan, Position};
use crate::error::{Error, Result};
use crate::synth::{AntennaModel, Simulator};

/// Similarity threshold that defines the resolution width.
pub const HALF_POWER: f64 = FRAC_1_SQRT_2;

/// Displacement direction for an ambiguity probe.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ProbeAxis {
    /// Arbitrary direction; normalized before use.
    Direction(Position),
    /// Radially away from the phase center.
    Range,
}

impl ProbeAxis {
    fn unit_vector(&self, p0: &Position) -> Result<Position> {
        let v = match self {
            ProbeAxis::Direction(d) => *d,
            ProbeAxis::Range => *p0,
        };
        let n = v.norm();
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::InvalidParameter(format!("probe direction {v:?} has no length")));
        }
        Ok(Position::new(v.x / n, v.y / n, v.z / n))
    }
}

/// Similarity of displaced fingerprints to the reference fingerprint.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeCurve {
    /// `(offset_m, similarity)` in input order.
    pub points: Vec<(f64, f64)>,
    /// Offset magnitude at which the curve first falls below [`HALF_POWER`].
    pub half_power_width: Option<f64>,
}

/// Samples `similarity(F(p0), F(p0 + Δ û))` for each offset `Δ`.
pub fn ambiguity_probe(
    p0: &Position,
    axis: ProbeAxis,
    offsets: &[f64],
    plan: &FrequencyPlan,
    model: &DispersionModel,
    antenna: &AntennaModel,
) -> Result<ProbeCurve> {
    let dir = axis.unit_vector(p0)?;
    let sim = Simulator::new(*plan, model, *antenna)?;
    let reference = reference_fingerprint(&sim, *p0)?;
    let points = offsets
        .iter()
        .map(|&d| {
            let fp = reference_fingerprint(&sim, p0.add_scaled(&dir, d))?;
            Ok((d, similarity_unchecked(&reference, &fp)))
        })
        .collect::<Result<Vec<_>>>()?;
    let half_power_width = half_power_width(&points, HALF_POWER);
    Ok(ProbeCurve { points, half_power_width })
}

/// Smallest `|Δ|` where the curve first drops below `threshold`, walking
/// outward from zero on each side and interpolating linearly between the
/// bracketing samples. The reference point `(0, 1)` is implied.
pub fn half_power_width(points: &[(f64, f64)], threshold: f64) -> Option<f64> {
    let side = |sign: f64| -> Option<f64> {
        let mut pts: Vec<(f64, f64)> =
            points.iter().filter(|(d, _)| d * sign > 0.0).map(|&(d, s)| (d.abs(), s)).collect();
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut prev = (0.0, 1.0);
        for (d, s) in pts {
            if s < threshold {
                let t = (prev.1 - threshold) / (prev.1 - s);
                return Some(prev.0 + t * (d - prev.0));
            }
            prev = (d, s);
        }
        None
    };
    match (side(1.0), side(-1.0)) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn width_interpolates_between_samples() {
        let pts = [(-1.0, 0.5), (0.0, 1.0), (1.0, 0.9), (2.0, 0.5)];
        // left side crosses at |Δ| = (1 - 0.7071)/0.5
        let w = half_power_width(&pts, HALF_POWER).unwrap();
        assert!((w - (1.0 - HALF_POWER) / 0.5).abs() < 1e-12);
        let right_only = [(0.0, 1.0), (1.0, 0.9), (2.0, 0.5)];
        let w = half_power_width(&right_only, HALF_POWER).unwrap();
        assert!((w - (1.0 + (0.9 - HALF_POWER) / 0.4)).abs() < 1e-12);
        assert_eq!(half_power_width(&[(1.0, 0.9)], HALF_POWER), None);
    }

    #[test]
    fn zero_offset_is_self_match() {
        let plan = FrequencyPlan::new(60e9, 66e9, 64).unwrap();
        let model = DispersionModel::default_for(&plan);
        let p0 = Position::new(0.0, 0.0, 2.0);
        let c = ambiguity_probe(&p0, ProbeAxis::Range, &[0.0], &plan, &model, &AntennaModel::default()).unwrap();
        assert!((c.points[0].1 - 1.0).abs() < 1e-12);
        let bad = ambiguity_probe(&p0, ProbeAxis::Direction(Position::new(0.0, 0.0, 0.0)), &[0.0], &plan, &model, &AntennaModel::default());
        assert!(bad.is_err());
        let behind = ambiguity_probe(&p0, ProbeAxis::Range, &[-3.0], &plan, &model, &AntennaModel::default());
        assert!(behind.is_err());
    }
}
