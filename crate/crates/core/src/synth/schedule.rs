use serde::{Deserialize, Serialize};

use crate::dispersion::DispersionModel;
use crate::domain::{ChirpConfig, FrequencyPlan};
use crate::error::{Error, Result};

/// Timing of one chirp slot in the TDD frame.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChirpSlot {
    /// Zero-based frequency index.
    pub m: usize,
    pub t_start: f64,
    pub t_tx_end: f64,
    pub t_rx_start: f64,
    pub t_rx_end: f64,
    pub freq: f64,
    pub theta: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameSchedule {
    pub entries: Vec<ChirpSlot>,
    pub frame_duration: f64,
}

/// Lays out the M chirp slots of one frame: Tx, guard, then Rx in each slot.
pub fn frame_schedule(plan: &FrequencyPlan, chirp: &ChirpConfig, model: &DispersionModel) -> Result<FrameSchedule> {
    chirp.validate()?;
    if chirp.guard >= chirp.duration / 2.0 {
        return Err(Error::InvalidParameter(format!(
            "guard interval {} s must be shorter than half the chirp ({} s)",
            chirp.guard, chirp.duration
        )));
    }
    let window = (chirp.duration - chirp.guard) / 2.0;
    let entries = plan
        .frequency_grid()
        .into_iter()
        .enumerate()
        .map(|(m, freq)| {
            let t_start = m as f64 * chirp.duration;
            let t_tx_end = t_start + window;
            Ok(ChirpSlot {
                m,
                t_start,
                t_tx_end,
                t_rx_start: t_tx_end + chirp.guard,
                t_rx_end: t_start + chirp.duration,
                freq,
                theta: model.beam_angle(freq)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FrameSchedule { entries, frame_duration: chirp.frame_duration(plan) })
}
