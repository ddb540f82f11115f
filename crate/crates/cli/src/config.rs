//! JSON experiment configuration.
//!
//! Every physical quantity carries a unit suffix; angles are degrees.
//! Unknown keys are rejected.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use faa_core::archcomp::ArchitectureSpec;
use faa_core::fingerprint::{AxisRange, PositionGrid};
use faa_core::{
    AntennaModel, ChirpConfig, Complex64, DispersionModel, FrequencyPlan, NoiseConfig, Position, Scene, Snr, Target,
};

use crate::error::CliError;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plan: Option<PlanSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dispersion: Option<DispersionSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antenna: Option<AntennaSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chirp: Option<ChirpSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scene: Option<SceneSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub architectures: Option<Vec<ArchitectureSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_query_m: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanSection {
    pub f_min_hz: f64,
    pub f_max_hz: f64,
    pub m: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DispersionSection {
    LinearSine {
        theta_max_deg: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        theta_min_deg: Option<f64>,
    },
    LookupTable {
        table_path: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AntennaSection {
    pub l_phys_m: f64,
    #[serde(default = "default_true")]
    pub two_way: bool,
}

fn default_true() -> bool {
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChirpSection {
    pub t_c_s: f64,
    pub t_guard_s: f64,
    pub n_s: usize,
    pub f_s_hz: f64,
    pub slope_hz_per_s: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetSection {
    pub x_m: f64,
    pub y_m: f64,
    pub z_m: f64,
    #[serde(default = "one")]
    pub alpha_re: f64,
    #[serde(default)]
    pub alpha_im: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_x_re: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_x_im: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_y_re: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_y_im: Option<f64>,
}

fn one() -> f64 {
    1.0
}

/// Either a finite SNR in dB or the string `"noiseless"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SnrSetting {
    Db(f64),
    Label(String),
}

impl SnrSetting {
    pub fn resolve(&self) -> Result<Snr, CliError> {
        match self {
            SnrSetting::Db(v) if v.is_finite() => Ok(Snr::Db(*v)),
            SnrSetting::Label(s) if s == "noiseless" => Ok(Snr::Noiseless),
            other => Err(CliError::Config(format!("snr_db must be a number or \"noiseless\", got {other:?}"))),
        }
    }
}

impl Default for SnrSetting {
    fn default() -> Self {
        SnrSetting::Label("noiseless".into())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneSection {
    #[serde(default)]
    pub targets: Vec<TargetSection>,
    #[serde(default)]
    pub snr_db: SnrSetting,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub x_min_m: f64,
    pub x_max_m: f64,
    pub n_x: usize,
    pub y_min_m: f64,
    pub y_max_m: f64,
    pub n_y: usize,
    pub z_min_m: f64,
    pub z_max_m: f64,
    pub n_z: usize,
}

fn section<'a, T>(s: &'a Option<T>, name: &str) -> Result<&'a T, CliError> {
    s.as_ref().ok_or_else(|| CliError::Config(format!("config is missing the '{name}' section")))
}

fn cfg<T>(r: faa_core::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| CliError::Config(e.to_string()))
}

fn axis(min: f64, max: f64, n: usize) -> faa_core::Result<AxisRange> {
    if n == 1 && min == max {
        Ok(AxisRange::fixed(min))
    } else {
        AxisRange::new(min, max, n)
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<(Self, PathBuf), CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok((Self::from_json(&text)?, base))
    }

    pub fn plan(&self) -> Result<FrequencyPlan, CliError> {
        let p = section(&self.plan, "plan")?;
        cfg(FrequencyPlan::new(p.f_min_hz, p.f_max_hz, p.m))
    }

    /// Dispersion model; lookup-table paths resolve relative to `base`.
    pub fn dispersion(&self, base: &Path) -> Result<DispersionModel, CliError> {
        let plan = self.plan()?;
        let model = match section(&self.dispersion, "dispersion")? {
            DispersionSection::LinearSine { theta_max_deg, theta_min_deg } => cfg(DispersionModel::linear_sine(
                plan.f_min(),
                plan.f_max(),
                theta_min_deg.unwrap_or(-theta_max_deg).to_radians(),
                theta_max_deg.to_radians(),
            ))?,
            DispersionSection::LookupTable { table_path } => {
                let path = base.join(table_path);
                let file = std::fs::File::open(&path)
                    .map_err(|e| CliError::Config(format!("cannot open lookup table {}: {e}", path.display())))?;
                DispersionModel::from_csv(file)
                    .map_err(|e| CliError::Config(format!("lookup table {}: {e}", path.display())))?
            }
        };
        let (lo, hi) = model.band();
        let grid = plan.frequency_grid();
        if grid[0] < lo || grid[grid.len() - 1] > hi {
            return Err(CliError::Config(format!(
                "frequency plan [{}, {}] Hz exceeds the dispersion band [{lo}, {hi}] Hz",
                grid[0],
                grid[grid.len() - 1]
            )));
        }
        Ok(model)
    }

    pub fn antenna(&self) -> Result<AntennaModel, CliError> {
        let a = section(&self.antenna, "antenna")?;
        cfg(AntennaModel::new(a.l_phys_m, a.two_way))
    }

    pub fn chirp(&self) -> Result<Option<ChirpConfig>, CliError> {
        let Some(c) = &self.chirp else { return Ok(None) };
        let chirp = ChirpConfig {
            duration: c.t_c_s,
            guard: c.t_guard_s,
            slope: c.slope_hz_per_s,
            samples: c.n_s,
            sample_rate: c.f_s_hz,
        };
        cfg(chirp.check_tiles(&self.plan()?))?;
        Ok(Some(chirp))
    }

    /// Scene with an optional seed override.
    pub fn scene(&self, seed_override: Option<u64>) -> Result<Scene, CliError> {
        let s = section(&self.scene, "scene")?;
        let targets = s
            .targets
            .iter()
            .map(|t| {
                let alpha = Complex64::new(t.alpha_re, t.alpha_im);
                let ax = Complex64::new(t.alpha_x_re.unwrap_or(alpha.re), t.alpha_x_im.unwrap_or(alpha.im));
                let ay = Complex64::new(t.alpha_y_re.unwrap_or(alpha.re), t.alpha_y_im.unwrap_or(alpha.im));
                cfg(Target::with_channels(Position::new(t.x_m, t.y_m, t.z_m), ax, ay))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let noise = NoiseConfig { snr: s.snr_db.resolve()?, seed: seed_override.unwrap_or(s.seed) };
        Ok(Scene { targets, noise })
    }

    pub fn grid(&self) -> Result<PositionGrid, CliError> {
        let g = section(&self.grid, "grid")?;
        cfg(axis(g.x_min_m, g.x_max_m, g.n_x)
            .and_then(|x| Ok((x, axis(g.y_min_m, g.y_max_m, g.n_y)?, axis(g.z_min_m, g.z_max_m, g.n_z)?)))
            .and_then(|(x, y, z)| PositionGrid::new(x, y, z)))
    }

    pub fn architectures(&self) -> Vec<ArchitectureSpec> {
        self.architectures.clone().unwrap_or_else(faa_core::archcomp::reference_architectures)
    }

    pub fn query_range(&self) -> f64 {
        self.r_query_m.unwrap_or(3.0)
    }

    /// The 60–66 GHz, M = 128 configuration with one on-grid target and a
    /// 9×9×9 grid whose 0.25 m spacing is exact in binary.
    pub fn reference() -> Self {
        ExperimentConfig {
            plan: Some(PlanSection { f_min_hz: 60e9, f_max_hz: 66e9, m: 128 }),
            dispersion: Some(DispersionSection::LinearSine { theta_max_deg: 60.0, theta_min_deg: None }),
            antenna: Some(AntennaSection { l_phys_m: 0.12, two_way: true }),
            chirp: Some(ChirpSection {
                t_c_s: ChirpConfig::DEFAULT_DURATION,
                t_guard_s: ChirpConfig::DEFAULT_GUARD,
                n_s: ChirpConfig::DEFAULT_SAMPLES,
                f_s_hz: ChirpConfig::DEFAULT_SAMPLE_RATE,
                slope_hz_per_s: 6e9 / 128.0 / ChirpConfig::DEFAULT_DURATION,
            }),
            scene: Some(SceneSection {
                targets: vec![TargetSection {
                    x_m: 0.25,
                    y_m: -0.25,
                    z_m: 2.0,
                    alpha_re: 1.0,
                    alpha_im: 0.0,
                    alpha_x_re: None,
                    alpha_x_im: None,
                    alpha_y_re: None,
                    alpha_y_im: None,
                }],
                snr_db: SnrSetting::Label("noiseless".into()),
                seed: 1,
            }),
            grid: Some(GridSection {
                x_min_m: -1.0,
                x_max_m: 1.0,
                n_x: 9,
                y_min_m: -1.0,
                y_max_m: 1.0,
                n_y: 9,
                z_min_m: 1.0,
                z_max_m: 3.0,
                n_z: 9,
            }),
            architectures: Some(faa_core::archcomp::reference_architectures()),
            r_query_m: Some(3.0),
        }
    }
}
