use serde::{Deserialize, Serialize};

use crate::domain::Position;
use crate::error::{Error, Result};

/// Evenly spaced samples over `[min, max]`; a single sample sits at `min`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxisRange {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl AxisRange {
    pub fn new(min: f64, max: f64, count: usize) -> Result<Self> {
        if count == 0 || !(min.is_finite() && max.is_finite()) || max < min || (count > 1 && max == min) {
            return Err(Error::InvalidParameter(format!("invalid grid axis [{min}, {max}] x {count}")));
        }
        Ok(Self { min, max, count })
    }

    /// Degenerate axis holding one value.
    pub fn fixed(v: f64) -> Self {
        Self { min: v, max: v, count: 1 }
    }

    pub fn spacing(&self) -> f64 {
        if self.count > 1 {
            (self.max - self.min) / (self.count - 1) as f64
        } else {
            0.0
        }
    }

    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.count && self.count > 1 {
            self.max
        } else {
            self.min + i as f64 * self.spacing()
        }
    }
}

/// Axis-aligned box of candidate positions, enumerated x-fastest, then y,
/// then z.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PositionGrid {
    pub x: AxisRange,
    pub y: AxisRange,
    pub z: AxisRange,
}

impl PositionGrid {
    pub fn new(x: AxisRange, y: AxisRange, z: AxisRange) -> Result<Self> {
        for a in [x, y, z] {
            AxisRange::new(a.min, a.max, a.count)?;
        }
        if z.min <= 0.0 {
            return Err(Error::InvalidParameter(format!("grid z range must be positive (min {})", z.min)));
        }
        Ok(Self { x, y, z })
    }

    /// Single-point grid.
    pub fn point(p: Position) -> Result<Self> {
        Self::new(AxisRange::fixed(p.x), AxisRange::fixed(p.y), AxisRange::fixed(p.z))
    }

    pub fn len(&self) -> usize {
        self.x.count * self.y.count * self.z.count
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, ix: usize, iy: usize, iz: usize) -> usize {
        ix + self.x.count * (iy + self.y.count * iz)
    }

    pub fn unravel(&self, idx: usize) -> (usize, usize, usize) {
        let ix = idx % self.x.count;
        let rest = idx / self.x.count;
        (ix, rest % self.y.count, rest / self.y.count)
    }

    pub fn position(&self, idx: usize) -> Position {
        let (ix, iy, iz) = self.unravel(idx);
        Position::new(self.x.value(ix), self.y.value(iy), self.z.value(iz))
    }

    pub fn positions(&self) -> impl Iterator<Item = Position> + '_ {
        (0..self.len()).map(|i| self.position(i))
    }

    /// Largest per-axis spacing.
    pub fn max_spacing(&self) -> f64 {
        self.x.spacing().max(self.y.spacing()).max(self.z.spacing())
    }
}
