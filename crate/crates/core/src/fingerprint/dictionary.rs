use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{build_fingerprint, similarity_unchecked, Fingerprint, PositionGrid};
use crate::dispersion::DispersionModel;
use crate::domain::{FrequencyPlan, Measurement, Position, Scene, Target};
use crate::error::{Error, Result};
use crate::synth::{AntennaModel, Simulator};

/// Noiseless unit-reflectivity fingerprints, one per grid point.
#[derive(Clone, Debug, PartialEq)]
pub struct Dictionary {
    grid: PositionGrid,
    entries: Vec<Fingerprint>,
}

impl Dictionary {
    pub fn from_parts(grid: PositionGrid, entries: Vec<Fingerprint>) -> Result<Self> {
        if entries.len() != grid.len() {
            return Err(Error::DimensionMismatch { expected: grid.len(), actual: entries.len() });
        }
        if let Some(first) = entries.first() {
            if let Some(bad) = entries.iter().find(|e| e.m() != first.m()) {
                return Err(Error::DimensionMismatch { expected: first.m(), actual: bad.m() });
            }
        }
        Ok(Self { grid, entries })
    }

    pub fn grid(&self) -> &PositionGrid {
        &self.grid
    }

    pub fn entries(&self) -> &[Fingerprint] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Frequency points per channel.
    pub fn m(&self) -> usize {
        self.entries.first().map_or(0, Fingerprint::m)
    }
}

/// Fingerprint of a lone unit-reflectivity scatterer at `p`.
pub(crate) fn reference_fingerprint(sim: &Simulator, p: Position) -> Result<Fingerprint> {
    let scene = Scene::single(Target::new(p, Complex64::new(1.0, 0.0))?);
    build_fingerprint(&sim.noiseless(&scene)?)
}

/// Builds the dictionary for `grid`; entries are computed in parallel and
/// stored in grid order.
pub fn build_dictionary(
    grid: &PositionGrid,
    plan: &FrequencyPlan,
    model: &DispersionModel,
    antenna: &AntennaModel,
) -> Result<Dictionary> {
    let sim = Simulator::new(*plan, model, *antenna)?;
    let entries = (0..grid.len())
        .into_par_iter()
        .map(|i| reference_fingerprint(&sim, grid.position(i)))
        .collect::<Result<Vec<_>>>()?;
    Dictionary::from_parts(*grid, entries)
}

/// Best-matching grid point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Localization {
    pub position: Position,
    pub score: f64,
    pub grid_index: usize,
}

/// Matched-filter search of `fp` over the dictionary; ties go to the lowest
/// grid index.
pub fn localize_fingerprint(fp: &Fingerprint, dict: &Dictionary) -> Result<Localization> {
    if dict.is_empty() {
        return Err(Error::InvalidParameter("dictionary is empty".into()));
    }
    if fp.m() != dict.m() {
        return Err(Error::DimensionMismatch { expected: dict.m(), actual: fp.m() });
    }
    let scores: Vec<f64> = dict.entries.par_iter().map(|e| similarity_unchecked(fp, e)).collect();
    let mut best = 0;
    for (i, &s) in scores.iter().enumerate() {
        if s > scores[best] {
            best = i;
        }
    }
    Ok(Localization { position: dict.grid.position(best), score: scores[best], grid_index: best })
}

pub fn localize(meas: &Measurement, dict: &Dictionary) -> Result<Localization> {
    if meas.plan().m() != dict.m() {
        return Err(Error::DimensionMismatch { expected: dict.m(), actual: meas.plan().m() });
    }
    localize_fingerprint(&build_fingerprint(meas)?, dict)
}
