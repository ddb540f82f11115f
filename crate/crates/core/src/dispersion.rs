//! Frequency-to-beam-angle mapping of the leaky-wave line and the
//! frequency-indexed virtual elements it produces.

use std::f64::consts::FRAC_PI_2;
use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::domain::{ChannelAxis, FrequencyPlan};
use crate::error::{Error, Result};

/// Leaky-wave dispersion relation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum DispersionModel {
    /// `sin θ` varies linearly in frequency across `[f_min, f_max]`.
    LinearSine { f_min: f64, f_max: f64, theta_min: f64, theta_max: f64 },
    /// Piecewise-linear interpolation over `(frequency_hz, angle_rad)` pairs.
    LookupTable { points: Vec<(f64, f64)> },
}

impl DispersionModel {
    /// Symmetric ±`theta_max` linear-in-sine scan across the plan's band.
    pub fn symmetric(plan: &FrequencyPlan, theta_max: f64) -> Result<Self> {
        Self::linear_sine(plan.f_min(), plan.f_max(), -theta_max, theta_max)
    }

    /// The ±60° default scan.
    pub fn default_for(plan: &FrequencyPlan) -> Self {
        Self::symmetric(plan, 60f64.to_radians()).expect("±60° is a valid scan")
    }

    pub fn linear_sine(f_min: f64, f_max: f64, theta_min: f64, theta_max: f64) -> Result<Self> {
        if !(f_min > 0.0 && f_max > f_min && f_max.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "dispersion band requires f_max > f_min > 0 (got {f_min}, {f_max})"
            )));
        }
        check_angle_pair(theta_min, theta_max)?;
        Ok(Self::LinearSine { f_min, f_max, theta_min, theta_max })
    }

    pub fn lookup_table(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidParameter("lookup table needs at least two rows".into()));
        }
        for &(f, th) in &points {
            if !(f.is_finite() && th.is_finite()) || th.abs() >= FRAC_PI_2 {
                return Err(Error::InvalidParameter(format!("lookup row ({f}, {th}) out of range")));
            }
        }
        for w in points.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::InvalidParameter("lookup frequencies must strictly increase".into()));
            }
            if w[1].1 <= w[0].1 {
                return Err(Error::InvalidParameter("lookup angles must strictly increase".into()));
            }
        }
        Ok(Self::LookupTable { points })
    }

    /// Reads a `frequency_hz,angle_deg` CSV with a mandatory header row.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(reader);
        let headers = rdr.headers().map_err(|e| parse_err(1, e))?.clone();
        let names: Vec<&str> = headers.iter().collect();
        if names != ["frequency_hz", "angle_deg"] {
            return Err(Error::Parse {
                line: 1,
                msg: format!("expected header frequency_hz,angle_deg, found {}", names.join(",")),
            });
        }
        let mut points = Vec::new();
        for rec in rdr.records() {
            let rec = rec.map_err(|e| {
                let line = e.position().map_or(0, |p| p.line());
                parse_err(line, e)
            })?;
            let line = rec.position().map_or(0, |p| p.line());
            if rec.len() != 2 {
                return Err(Error::Parse { line, msg: format!("expected 2 fields, found {}", rec.len()) });
            }
            let num = |i: usize| -> Result<f64> {
                rec[i].parse::<f64>().map_err(|e| Error::Parse { line, msg: format!("{:?}: {e}", &rec[i]) })
            };
            points.push((num(0)?, num(1)?.to_radians()));
        }
        Self::lookup_table(points)
    }

    /// Calibrated frequency span.
    pub fn band(&self) -> (f64, f64) {
        match self {
            DispersionModel::LinearSine { f_min, f_max, .. } => (*f_min, *f_max),
            DispersionModel::LookupTable { points } => (points[0].0, points[points.len() - 1].0),
        }
    }

    /// Beam angle (rad) at frequency `f`.
    pub fn beam_angle(&self, f: f64) -> Result<f64> {
        let (lo, hi) = self.band();
        if !(f >= lo && f <= hi) {
            return Err(Error::OutOfBand { freq_hz: f, lo_hz: lo, hi_hz: hi });
        }
        Ok(match self {
            DispersionModel::LinearSine { f_min, f_max, theta_min, theta_max } => {
                let u = (f - f_min) / (f_max - f_min);
                let (s0, s1) = (theta_min.sin(), theta_max.sin());
                (s0 + (s1 - s0) * u).clamp(-1.0, 1.0).asin()
            }
            DispersionModel::LookupTable { points } => {
                // first row whose frequency is >= f
                let hi_idx = points.partition_point(|&(pf, _)| pf < f).max(1);
                let (f0, t0) = points[hi_idx - 1];
                let (f1, t1) = points[hi_idx];
                t0 + (t1 - t0) * (f - f0) / (f1 - f0)
            }
        })
    }
}

fn check_angle_pair(theta_min: f64, theta_max: f64) -> Result<()> {
    let inside = |t: f64| t.is_finite() && t.abs() < FRAC_PI_2;
    if !(inside(theta_min) && inside(theta_max) && theta_min < theta_max) {
        return Err(Error::InvalidParameter(format!(
            "scan angles must satisfy -pi/2 < theta_min < theta_max < pi/2 (got {theta_min}, {theta_max})"
        )));
    }
    Ok(())
}

fn parse_err(line: u64, e: csv::Error) -> Error {
    Error::Parse { line, msg: e.to_string() }
}

/// Free-function form of [`DispersionModel::beam_angle`].
pub fn beam_angle(model: &DispersionModel, f: f64) -> Result<f64> {
    model.beam_angle(f)
}

/// One frequency point of the synthesized aperture.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VirtualElement {
    /// Zero-based frequency index.
    pub m: usize,
    pub freq: f64,
    pub theta: f64,
    pub axis: ChannelAxis,
}

/// Enumerates the virtual elements of `plan` along `axis`.
pub fn virtual_aperture(plan: &FrequencyPlan, model: &DispersionModel, axis: ChannelAxis) -> Result<Vec<VirtualElement>> {
    plan.frequency_grid()
        .into_iter()
        .enumerate()
        .map(|(m, freq)| Ok(VirtualElement { m, freq, theta: model.beam_angle(freq)?, axis }))
        .collect()
}
