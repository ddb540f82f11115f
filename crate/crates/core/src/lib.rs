//! Frequency-scanned virtual-aperture sensing simulator.
//!
//! A single RF chain sweeps its chirp center frequency across a band; a
//! dispersive leaky-wave line maps each frequency to a beam direction, so the
//! frequency grid acts as an aperture. This crate synthesizes the resulting
//! dual-channel measurements, turns them into normalized spatial
//! fingerprints, localizes targets against a fingerprint dictionary and
//! evaluates the architecture trade-off metrics.

pub mod archcomp;
pub mod dispersion;
pub mod domain;
pub mod error;
pub mod fingerprint;
pub mod io;
pub mod sweep;
pub mod synth;

pub use num_complex::Complex64;

pub use dispersion::{beam_angle, virtual_aperture, DispersionModel, VirtualElement};
pub use domain::{
    frequency_grid, range_of, wavelength, ChannelAxis, ChirpConfig, FrequencyPlan, Measurement, NoiseConfig,
    Position, Scene, Snr, Target, SPEED_OF_LIGHT,
};
pub use error::{Error, Result};
pub use fingerprint::{
    ambiguity_probe, build_dictionary, build_fingerprint, localize, similarity, Dictionary, Fingerprint,
    AxisRange, Localization, PositionGrid, ProbeAxis, ProbeCurve,
};
pub use synth::{simulate_measurement, AntennaModel, Simulator};
pub use archcomp::{compare, ArchitectureSpec, ComparisonReport};
pub use sweep::{snr_sweep, SweepPoint};
