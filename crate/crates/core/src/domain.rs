//! Shared domain types, physical constants and geometry conventions.
//!
//! Coordinates: the antenna phase center sits at the origin and boresight is
//! `+z`. The x-scan channel steers in the x–z plane (azimuth
//! `atan2(x, z)`), the y-scan channel in the y–z plane (elevation
//! `atan2(y, z)`).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Speed of light in vacuum, m/s (exact SI value).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Wavelength in meters at frequency `freq_hz`.
#[inline]
pub fn wavelength(freq_hz: f64) -> f64 {
    SPEED_OF_LIGHT / freq_hz
}

/// A point in the sensing volume, meters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Position {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Position {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn add_scaled(&self, dir: &Position, t: f64) -> Position {
        Position::new(self.x + t * dir.x, self.y + t * dir.y, self.z + t * dir.z)
    }

    pub fn distance(&self, other: &Position) -> f64 {
        let d = Position::new(self.x - other.x, self.y - other.y, self.z - other.z);
        d.norm()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    /// Checks the forward-half-space, off-origin precondition.
    pub fn check_forward(&self) -> Result<()> {
        if !(self.x.is_finite() && self.y.is_finite() && self.z.is_finite()) {
            return Err(Error::DegenerateGeometry(format!("non-finite position {self:?}")));
        }
        if self.norm() == 0.0 {
            return Err(Error::DegenerateGeometry("position at the phase center".into()));
        }
        if self.z <= 0.0 {
            return Err(Error::DegenerateGeometry(format!(
                "position {self:?} not in the forward half-space (z > 0)"
            )));
        }
        Ok(())
    }
}

/// Monostatic range from the phase center.
pub fn range_of(p: &Position) -> Result<f64> {
    let r = p.norm();
    if r == 0.0 || !r.is_finite() {
        return Err(Error::DegenerateGeometry(format!("range undefined at {p:?}")));
    }
    Ok(r)
}

/// The M-point center-frequency grid that forms the virtual aperture.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrequencyPlan {
    f_min: f64,
    f_max: f64,
    m: usize,
}

impl FrequencyPlan {
    pub fn new(f_min: f64, f_max: f64, m: usize) -> Result<Self> {
        if !(f_min.is_finite() && f_max.is_finite()) || f_min <= 0.0 || f_max <= f_min {
            return Err(Error::InvalidParameter(format!(
                "frequency plan requires f_max > f_min > 0 (got {f_min}, {f_max})"
            )));
        }
        if m == 0 {
            return Err(Error::InvalidParameter("frequency plan requires M >= 1".into()));
        }
        Ok(Self { f_min, f_max, m })
    }

    pub fn f_min(&self) -> f64 {
        self.f_min
    }

    pub fn f_max(&self) -> f64 {
        self.f_max
    }

    /// Number of frequency points (virtual elements).
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn bandwidth(&self) -> f64 {
        self.f_max - self.f_min
    }

    /// Swept bandwidth of one chirp when the band is tiled contiguously.
    pub fn sub_band(&self) -> f64 {
        self.bandwidth() / self.m as f64
    }

    pub fn center(&self) -> f64 {
        0.5 * (self.f_min + self.f_max)
    }

    /// Center frequency of sub-band `idx` (zero-based).
    pub fn frequency(&self, idx: usize) -> f64 {
        self.f_min + (idx as f64 + 0.5) * self.sub_band()
    }

    pub fn frequency_grid(&self) -> Vec<f64> {
        (0..self.m).map(|i| self.frequency(i)).collect()
    }
}

/// Free-function form of [`FrequencyPlan::frequency_grid`].
pub fn frequency_grid(plan: &FrequencyPlan) -> Vec<f64> {
    plan.frequency_grid()
}

/// Short-term chirp parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChirpConfig {
    /// Chirp duration T_c, s.
    pub duration: f64,
    /// Tx/Rx guard interval, s.
    pub guard: f64,
    /// Chirp slope, Hz/s.
    pub slope: f64,
    /// Samples per chirp.
    pub samples: usize,
    /// Baseband sample rate, Hz.
    pub sample_rate: f64,
}

impl ChirpConfig {
    pub const DEFAULT_DURATION: f64 = 100e-6;
    pub const DEFAULT_GUARD: f64 = 5e-6;
    pub const DEFAULT_SAMPLES: usize = 64;
    pub const DEFAULT_SAMPLE_RATE: f64 = 1e6;

    pub fn validate(&self) -> Result<()> {
        let ok = self.duration > 0.0
            && self.guard >= 0.0
            && self.slope > 0.0
            && self.samples >= 2
            && self.sample_rate > 0.0
            && self.duration.is_finite()
            && self.guard.is_finite()
            && self.slope.is_finite()
            && self.sample_rate.is_finite();
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("invalid chirp configuration {self:?}")))
        }
    }

    /// Default chirp whose swept bandwidth tiles `plan` exactly.
    pub fn for_plan(plan: &FrequencyPlan) -> Self {
        Self {
            duration: Self::DEFAULT_DURATION,
            guard: Self::DEFAULT_GUARD,
            slope: plan.sub_band() / Self::DEFAULT_DURATION,
            samples: Self::DEFAULT_SAMPLES,
            sample_rate: Self::DEFAULT_SAMPLE_RATE,
        }
    }

    pub fn swept_bandwidth(&self) -> f64 {
        self.slope * self.duration
    }

    /// Checks that consecutive chirps tile the plan's band (relative 1e-9).
    pub fn check_tiles(&self, plan: &FrequencyPlan) -> Result<()> {
        self.validate()?;
        let want = plan.sub_band();
        if ((self.swept_bandwidth() - want) / want).abs() > 1e-9 {
            return Err(Error::InvalidParameter(format!(
                "chirp sweeps {} Hz but the plan needs {} Hz per chirp",
                self.swept_bandwidth(),
                want
            )));
        }
        Ok(())
    }

    pub fn frame_duration(&self, plan: &FrequencyPlan) -> f64 {
        plan.m() as f64 * self.duration
    }
}

/// One of the two orthogonal scan channels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChannelAxis {
    XScan,
    YScan,
}

impl ChannelAxis {
    pub const BOTH: [ChannelAxis; 2] = [ChannelAxis::XScan, ChannelAxis::YScan];

    /// Angle of `p` in this channel's scan plane.
    pub fn angle_of(self, p: &Position) -> f64 {
        match self {
            ChannelAxis::XScan => p.x.atan2(p.z),
            ChannelAxis::YScan => p.y.atan2(p.z),
        }
    }

    pub fn index(self) -> u64 {
        match self {
            ChannelAxis::XScan => 0,
            ChannelAxis::YScan => 1,
        }
    }
}

/// Near-field point scatterer.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Target {
    pub position: Position,
    pub alpha_x: Complex64,
    pub alpha_y: Complex64,
}

impl Target {
    pub fn new(position: Position, alpha: Complex64) -> Result<Self> {
        Self::with_channels(position, alpha, alpha)
    }

    pub fn with_channels(position: Position, alpha_x: Complex64, alpha_y: Complex64) -> Result<Self> {
        position.check_forward()?;
        Ok(Self { position, alpha_x, alpha_y })
    }

    /// Unit-reflectivity target.
    pub fn unit(position: Position) -> Result<Self> {
        Self::new(position, Complex64::new(1.0, 0.0))
    }

    pub fn alpha(&self, axis: ChannelAxis) -> Complex64 {
        match axis {
            ChannelAxis::XScan => self.alpha_x,
            ChannelAxis::YScan => self.alpha_y,
        }
    }
}

/// Signal-to-noise setting.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Snr {
    Noiseless,
    Db(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseConfig {
    pub snr: Snr,
    pub seed: u64,
}

impl NoiseConfig {
    pub const fn noiseless() -> Self {
        Self { snr: Snr::Noiseless, seed: 0 }
    }

    pub const fn with_snr_db(snr_db: f64, seed: u64) -> Self {
        Self { snr: Snr::Db(snr_db), seed }
    }

    /// Per-sample complex noise variance for a given mean signal power.
    pub fn variance(&self, signal_power: f64) -> f64 {
        match self.snr {
            Snr::Noiseless => 0.0,
            Snr::Db(db) => signal_power / 10f64.powf(db / 10.0),
        }
    }
}

impl Default for NoiseConfig {
    fn default() -> Self {
        Self::noiseless()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    pub targets: Vec<Target>,
    pub noise: NoiseConfig,
}

impl Scene {
    pub fn single(target: Target) -> Self {
        Self { targets: vec![target], noise: NoiseConfig::noiseless() }
    }
}

/// Dual-channel measurement indexed by frequency point.
#[derive(Clone, Debug, PartialEq)]
pub struct Measurement {
    plan: FrequencyPlan,
    s_x: Vec<Complex64>,
    s_y: Vec<Complex64>,
}

impl Measurement {
    pub fn new(plan: FrequencyPlan, s_x: Vec<Complex64>, s_y: Vec<Complex64>) -> Result<Self> {
        for v in [&s_x, &s_y] {
            if v.len() != plan.m() {
                return Err(Error::DimensionMismatch { expected: plan.m(), actual: v.len() });
            }
        }
        Ok(Self { plan, s_x, s_y })
    }

    pub fn plan(&self) -> &FrequencyPlan {
        &self.plan
    }

    pub fn s_x(&self) -> &[Complex64] {
        &self.s_x
    }

    pub fn s_y(&self) -> &[Complex64] {
        &self.s_y
    }

    pub fn channel(&self, axis: ChannelAxis) -> &[Complex64] {
        match axis {
            ChannelAxis::XScan => &self.s_x,
            ChannelAxis::YScan => &self.s_y,
        }
    }

    /// Multiplies both channels by `k`.
    pub fn scaled(&self, k: Complex64) -> Self {
        Self {
            plan: self.plan,
            s_x: self.s_x.iter().map(|s| s * k).collect(),
            s_y: self.s_y.iter().map(|s| s * k).collect(),
        }
    }

    /// Elementwise sum; both measurements must share a plan.
    pub fn sum(&self, other: &Measurement) -> Result<Self> {
        if self.plan != other.plan {
            return Err(Error::DimensionMismatch { expected: self.plan.m(), actual: other.plan.m() });
        }
        let add = |a: &[Complex64], b: &[Complex64]| a.iter().zip(b).map(|(x, y)| x + y).collect();
        Ok(Self { plan: self.plan, s_x: add(&self.s_x, &other.s_x), s_y: add(&self.s_y, &other.s_y) })
    }
}
