//! Short-term dechirp processing: beat-tone synthesis and its DFT.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::domain::{ChirpConfig, SPEED_OF_LIGHT};
use crate::error::{Error, Result};

/// Range profile `S_m(R)` of one chirp.
#[derive(Clone, Debug, PartialEq)]
pub struct RangeProfile {
    /// Unnormalized DFT of the beat signal, one value per bin.
    pub bins: Vec<Complex64>,
    /// Range of each bin, m.
    pub ranges: Vec<f64>,
}

impl RangeProfile {
    pub fn peak_bin(&self) -> usize {
        argmax_abs(&self.bins)
    }

    /// Bins whose magnitude exceeds both neighbours (non-circular).
    pub fn local_maxima(&self) -> Vec<usize> {
        let mag: Vec<f64> = self.bins.iter().map(|c| c.norm()).collect();
        (0..mag.len())
            .filter(|&i| {
                let left = i == 0 || mag[i] > mag[i - 1];
                let right = i + 1 == mag.len() || mag[i] > mag[i + 1];
                left && right
            })
            .collect()
    }
}

/// Beat frequency of a target at range `r`, Hz.
pub fn beat_frequency(chirp: &ChirpConfig, r: f64) -> f64 {
    2.0 * chirp.slope * r / SPEED_OF_LIGHT
}

/// Range mapped to DFT bin `q`.
pub fn bin_range(chirp: &ChirpConfig, q: usize) -> f64 {
    SPEED_OF_LIGHT * q as f64 * chirp.sample_rate / (2.0 * chirp.slope * chirp.samples as f64)
}

/// Sampled beat signal `b(t_n) = Σ A exp(j 2π f_b t_n)`.
pub fn beat_signal(chirp: &ChirpConfig, targets: &[(f64, Complex64)]) -> Result<Vec<Complex64>> {
    chirp.validate()?;
    let nyquist = chirp.sample_rate / 2.0;
    for &(r, _) in targets {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::DegenerateGeometry(format!("target range {r} must be positive")));
        }
        let fb = beat_frequency(chirp, r);
        if fb >= nyquist {
            return Err(Error::Aliasing { beat_hz: fb, fs_hz: chirp.sample_rate });
        }
    }
    Ok((0..chirp.samples)
        .map(|n| {
            let t = n as f64 / chirp.sample_rate;
            targets
                .iter()
                .map(|&(r, a)| a * Complex64::from_polar(1.0, TAU * beat_frequency(chirp, r) * t))
                .sum()
        })
        .collect())
}

/// Dechirp-FFT range profile for a set of `(range, amplitude)` returns.
pub fn dechirp_range_profile(chirp: &ChirpConfig, targets: &[(f64, Complex64)]) -> Result<RangeProfile> {
    let mut bins = beat_signal(chirp, targets)?;
    let fft = FftPlanner::new().plan_fft_forward(bins.len());
    fft.process(&mut bins);
    let ranges = (0..chirp.samples).map(|q| bin_range(chirp, q)).collect();
    Ok(RangeProfile { bins, ranges })
}

pub(crate) fn argmax_abs(v: &[Complex64]) -> usize {
    let mut best = 0;
    let mut best_mag = f64::NEG_INFINITY;
    for (i, c) in v.iter().enumerate() {
        let mag = c.norm_sqr();
        if mag > best_mag {
            best = i;
            best_mag = mag;
        }
    }
    best
}
