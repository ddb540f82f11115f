//! Monte-Carlo localization error versus SNR.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::domain::{NoiseConfig, Position, Scene, Snr, Target};
use crate::error::{Error, Result};
use crate::fingerprint::{localize, Dictionary};
use crate::synth::noise::derive_seed;
use crate::synth::Simulator;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub snr: Snr,
    pub trials: usize,
    pub rmse_m: f64,
    /// Per-trial Euclidean error, in trial order.
    pub errors_m: Vec<f64>,
}

/// Seed for trial `trial` at SNR index `snr_index`.
pub fn trial_seed(seed: u64, snr_index: usize, trial: usize) -> u64 {
    derive_seed(seed, &[snr_index as u64, trial as u64])
}

/// Localization error of `scene`'s first target over `trials` seeded noise
/// realizations per SNR value.
pub fn snr_sweep(
    sim: &Simulator,
    dict: &Dictionary,
    targets: &[Target],
    snrs: &[Snr],
    trials: usize,
    seed: u64,
) -> Result<Vec<SweepPoint>> {
    if trials == 0 {
        return Err(Error::InvalidParameter("sweep needs at least one trial".into()));
    }
    let truth: Position = targets
        .first()
        .ok_or_else(|| Error::InvalidParameter("sweep scene has no targets".into()))?
        .position;
    snrs.iter()
        .enumerate()
        .map(|(si, &snr)| {
            let errors_m = (0..trials)
                .into_par_iter()
                .map(|t| {
                    let scene = Scene { targets: targets.to_vec(), noise: NoiseConfig { snr, seed: trial_seed(seed, si, t) } };
                    let meas = sim.measure(&scene)?;
                    Ok(localize(&meas, dict)?.position.distance(&truth))
                })
                .collect::<Result<Vec<f64>>>()?;
            let rmse_m = (errors_m.iter().map(|e| e * e).sum::<f64>() / trials as f64).sqrt();
            Ok(SweepPoint { snr, trials, rmse_m, errors_m })
        })
        .collect()
}
