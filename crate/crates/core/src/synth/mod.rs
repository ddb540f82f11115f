//! Measurement physics: per-frequency sample synthesis, scene superposition
//! with additive noise, dechirp range profiles and the frame timing.

mod antenna;
mod dechirp;
pub mod noise;
mod schedule;

pub use antenna::{antenna_gain, AntennaModel};
pub use dechirp::{beat_frequency, beat_signal, bin_range, dechirp_range_profile, RangeProfile};
pub use schedule::{frame_schedule, ChirpSlot, FrameSchedule};

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::dispersion::{virtual_aperture, DispersionModel};
use crate::domain::{range_of, ChannelAxis, FrequencyPlan, Measurement, Position, Scene, SPEED_OF_LIGHT};
use crate::error::Result;

/// Round-trip propagation phase `4π f R(p) / c`, unwrapped.
pub fn phase_curvature(f: f64, p: &Position) -> Result<f64> {
    Ok(4.0 * PI * f * range_of(p)? / SPEED_OF_LIGHT)
}

/// Noiseless sample `α G exp(-j 4π f R(p) / c)`.
pub fn synthesize_sample(f: f64, p: &Position, alpha: Complex64, gain: Complex64) -> Result<Complex64> {
    let phase = phase_curvature(f, p)?;
    Ok(alpha * gain * Complex64::from_polar(1.0, -phase))
}

/// Everything needed to turn a scene into a measurement.
#[derive(Clone, Debug)]
pub struct Simulator {
    plan: FrequencyPlan,
    antenna: AntennaModel,
    freqs: Vec<f64>,
    thetas: Vec<f64>,
}

impl Simulator {
    pub fn new(plan: FrequencyPlan, model: &DispersionModel, antenna: AntennaModel) -> Result<Self> {
        // both channels share one dispersion curve
        let elements = virtual_aperture(&plan, model, ChannelAxis::XScan)?;
        Ok(Self {
            plan,
            antenna,
            freqs: elements.iter().map(|e| e.freq).collect(),
            thetas: elements.iter().map(|e| e.theta).collect(),
        })
    }

    pub fn plan(&self) -> &FrequencyPlan {
        &self.plan
    }

    pub fn antenna(&self) -> &AntennaModel {
        &self.antenna
    }

    /// Noiseless response of one channel to a single scatterer.
    pub fn channel_response(&self, p: &Position, alpha: Complex64, axis: ChannelAxis) -> Result<Vec<Complex64>> {
        p.check_forward()?;
        self.freqs
            .iter()
            .zip(&self.thetas)
            .map(|(&f, &theta)| {
                let g = self.antenna.gain(f, theta, p, axis);
                synthesize_sample(f, p, alpha, Complex64::new(g, 0.0))
            })
            .collect()
    }

    /// Noiseless superposition over every target in the scene.
    pub fn noiseless(&self, scene: &Scene) -> Result<Measurement> {
        let m = self.plan.m();
        let mut chans = [vec![Complex64::default(); m], vec![Complex64::default(); m]];
        for t in &scene.targets {
            for (axis, acc) in ChannelAxis::BOTH.iter().zip(chans.iter_mut()) {
                let resp = self.channel_response(&t.position, t.alpha(*axis), *axis)?;
                acc.iter_mut().zip(resp).for_each(|(a, r)| *a += r);
            }
        }
        let [s_x, s_y] = chans;
        Measurement::new(self.plan, s_x, s_y)
    }

    /// Scene measurement including additive noise.
    pub fn measure(&self, scene: &Scene) -> Result<Measurement> {
        let clean = self.noiseless(scene)?;
        let m = self.plan.m();
        let power = (clean.s_x().iter().chain(clean.s_y()).map(|s| s.norm_sqr()).sum::<f64>()) / (2 * m) as f64;
        let variance = scene.noise.variance(power);
        if variance == 0.0 {
            return Ok(clean);
        }
        let seed = scene.noise.seed;
        let add = |axis: ChannelAxis, v: &[Complex64]| -> Vec<Complex64> {
            v.iter().enumerate().map(|(i, s)| s + noise::complex_gaussian(seed, axis, i, variance)).collect()
        };
        Measurement::new(self.plan, add(ChannelAxis::XScan, clean.s_x()), add(ChannelAxis::YScan, clean.s_y()))
    }
}

/// One-shot measurement of `scene`.
pub fn simulate_measurement(
    scene: &Scene,
    plan: &FrequencyPlan,
    model: &DispersionModel,
    antenna: &AntennaModel,
) -> Result<Measurement> {
    Simulator::new(*plan, model, *antenna)?.measure(scene)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{NoiseConfig, Target};
    use proptest::prelude::*;

    fn setup(m: usize) -> (FrequencyPlan, DispersionModel, AntennaModel) {
        let plan = FrequencyPlan::new(60e9, 66e9, m).unwrap();
        (plan, DispersionModel::default_for(&plan), AntennaModel::default())
    }

    const ONE: Complex64 = Complex64::new(1.0, 0.0);

    #[test]
    fn zero_reflectivity_or_gain_is_zero() {
        let p = Position::new(0.1, 0.2, 1.0);
        assert_eq!(synthesize_sample(60e9, &p, Complex64::default(), ONE).unwrap(), Complex64::default());
        assert_eq!(synthesize_sample(60e9, &p, ONE, Complex64::default()).unwrap(), Complex64::default());
    }

    #[test]
    fn half_turn_sample() {
        let r = SPEED_OF_LIGHT / 2.4e11;
        let p = Position::new(0.0, 0.0, r);
        let s = synthesize_sample(60e9, &p, ONE, ONE).unwrap();
        assert!((s - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        assert!((phase_curvature(60e9, &p).unwrap() - PI).abs() < 1e-12);
        let p2 = Position::new(0.0, 0.0, 2.0 * r);
        assert!((phase_curvature(60e9, &p2).unwrap() - 2.0 * PI).abs() < 1e-12);
        assert_eq!(phase_curvature(0.0, &p).unwrap(), 0.0);
        assert!(phase_curvature(60e9, &Position::new(0.0, 0.0, 0.0)).is_err());
    }

    #[test]
    fn empty_scene_is_silent() {
        let (plan, model, ant) = setup(16);
        let scene = Scene { targets: vec![], noise: NoiseConfig::with_snr_db(10.0, 3) };
        let meas = simulate_measurement(&scene, &plan, &model, &ant).unwrap();
        assert!(meas.s_x().iter().chain(meas.s_y()).all(|s| *s == Complex64::default()));
    }

    #[test]
    fn single_target_matches_scalar_model() {
        let (plan, model, ant) = setup(32);
        let p = Position::new(0.2, -0.1, 1.5);
        let ax = Complex64::new(0.5, 0.25);
        let ay = Complex64::new(-0.3, 1.0);
        let scene = Scene::single(Target::with_channels(p, ax, ay).unwrap());
        let meas = simulate_measurement(&scene, &plan, &model, &ant).unwrap();
        for (i, f) in plan.frequency_grid().into_iter().enumerate() {
            let th = model.beam_angle(f).unwrap();
            let gx = Complex64::new(ant.gain(f, th, &p, ChannelAxis::XScan), 0.0);
            let gy = Complex64::new(ant.gain(f, th, &p, ChannelAxis::YScan), 0.0);
            assert_eq!(meas.s_x()[i], synthesize_sample(f, &p, ax, gx).unwrap());
            assert_eq!(meas.s_y()[i], synthesize_sample(f, &p, ay, gy).unwrap());
        }
    }

    #[test]
    fn two_targets_superpose() {
        let (plan, model, ant) = setup(32);
        let a = Target::unit(Position::new(0.1, 0.0, 1.0)).unwrap();
        let b = Target::new(Position::new(-0.2, 0.3, 2.0), Complex64::new(0.0, 2.0)).unwrap();
        let both = Scene { targets: vec![a, b], noise: NoiseConfig::noiseless() };
        let ma = simulate_measurement(&Scene::single(a), &plan, &model, &ant).unwrap();
        let mb = simulate_measurement(&Scene::single(b), &plan, &model, &ant).unwrap();
        let mab = simulate_measurement(&both, &plan, &model, &ant).unwrap();
        let sum = ma.sum(&mb).unwrap();
        for (u, v) in mab.s_x().iter().chain(mab.s_y()).zip(sum.s_x().iter().chain(sum.s_y())) {
            assert!((u - v).norm() <= 1e-15 * (1.0 + v.norm()));
        }
    }

    #[test]
    fn degenerate_target_rejected() {
        let (plan, model, ant) = setup(4);
        let bad = Target { position: Position::new(0.0, 0.0, 0.0), alpha_x: ONE, alpha_y: ONE };
        assert!(simulate_measurement(&Scene::single(bad), &plan, &model, &ant).is_err());
    }

    #[test]
    fn band_error_propagates() {
        let plan = FrequencyPlan::new(60e9, 66e9, 4).unwrap();
        let narrow = DispersionModel::linear_sine(61e9, 65e9, -1.0, 1.0).unwrap();
        assert!(Simulator::new(plan, &narrow, AntennaModel::default()).is_err());
    }

    #[test]
    fn noise_hits_requested_snr() {
        let (plan, model, ant) = setup(128);
        let target = Target::unit(Position::new(0.0, 0.0, 2.0)).unwrap();
        let sim = Simulator::new(plan, &model, ant).unwrap();
        let clean = sim.noiseless(&Scene::single(target)).unwrap();
        let p_sig: f64 = clean.s_x().iter().chain(clean.s_y()).map(|s| s.norm_sqr()).sum::<f64>() / 256.0;
        let mut acc = 0.0;
        let trials = 200;
        for seed in 0..trials {
            let scene = Scene { targets: vec![target], noise: NoiseConfig::with_snr_db(0.0, seed) };
            let noisy = sim.measure(&scene).unwrap();
            let diff = noisy.sum(&clean.scaled(Complex64::new(-1.0, 0.0))).unwrap();
            acc += diff.s_x().iter().chain(diff.s_y()).map(|s| s.norm_sqr()).sum::<f64>() / 256.0;
        }
        let ratio = acc / trials as f64 / p_sig;
        assert!((ratio - 1.0).abs() < 0.05, "{ratio}");
    }

    #[test]
    fn noise_is_reproducible() {
        let (plan, model, ant) = setup(64);
        let scene = Scene {
            targets: vec![Target::unit(Position::new(0.1, 0.1, 1.0)).unwrap()],
            noise: NoiseConfig::with_snr_db(5.0, 99),
        };
        let a = simulate_measurement(&scene, &plan, &model, &ant).unwrap();
        let b = simulate_measurement(&scene, &plan, &model, &ant).unwrap();
        assert_eq!(a, b);
        let other = Scene { noise: NoiseConfig::with_snr_db(5.0, 100), ..scene };
        assert_ne!(a, simulate_measurement(&other, &plan, &model, &ant).unwrap());
    }

    proptest! {
        #[test]
        fn sample_phase_matches_scalar_evaluation(
            f in 1e9..100e9f64,
            x in -2.0..2.0f64, y in -2.0..2.0f64, z in 0.05..4.0f64,
            ar in -2.0..2.0f64, ai in -2.0..2.0f64, g in 0.01..1.0f64,
        ) {
            let alpha = Complex64::new(ar, ai);
            prop_assume!(alpha.norm() > 1e-3);
            let p = Position::new(x, y, z);
            let s = synthesize_sample(f, &p, alpha, Complex64::new(g, 0.0)).unwrap();
            let r = (x * x + y * y + z * z).sqrt();
            let expected = ai.atan2(ar) - 4.0 * PI * f * r / SPEED_OF_LIGHT;
            let diff = (s.arg() - expected).rem_euclid(2.0 * PI);
            let wrapped = diff.min(2.0 * PI - diff);
            // phase magnitude reaches ~1e4 rad; allow for its rounding
            prop_assert!(wrapped < 1e-9, "{}", wrapped);
            prop_assert!((s.norm() - alpha.norm() * g).abs() < 1e-12);
        }
    }
}
