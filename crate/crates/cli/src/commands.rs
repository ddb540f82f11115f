use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use faa_core::fingerprint::{ambiguity_probe, build_dictionary, build_fingerprint, localize, ProbeAxis};
use faa_core::io::{fmt_f64, read_dictionary, read_measurement, write_dictionary, write_measurement};
use faa_core::sweep::snr_sweep;
use faa_core::{archcomp, FrequencyPlan, Measurement, Position, Simulator, Snr};

use crate::config::ExperimentConfig;
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "faa", version, about = "Frequency-scanned virtual-aperture sensing simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Experiment configuration (JSON).
    #[arg(long)]
    pub config: PathBuf,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Overrides the scene seed.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Synthesize a dual-channel measurement CSV.
    Simulate {
        #[command(flatten)]
        common: Common,
    },
    /// Normalized fingerprint of a measurement CSV.
    Fingerprint {
        #[command(flatten)]
        common: Common,
        /// Measurement CSV produced by `simulate`.
        #[arg(long)]
        measurement: PathBuf,
    },
    /// Build the fingerprint dictionary CSV for the configured grid.
    Dict {
        #[command(flatten)]
        common: Common,
    },
    /// Match a measurement CSV against the dictionary.
    Localize {
        #[command(flatten)]
        common: Common,
        /// Measurement CSV produced by `simulate`.
        #[arg(long)]
        measurement: PathBuf,
        /// Precomputed dictionary CSV; built from the config grid otherwise.
        #[arg(long)]
        dictionary: Option<PathBuf>,
    },
    /// Sample the ambiguity curve around a reference point.
    Probe {
        #[command(flatten)]
        common: Common,
        /// Reference point `x,y,z` in meters.
        #[arg(long, allow_hyphen_values = true)]
        p0: String,
        /// `range`, `x`, `y`, `z` or a direction `dx,dy,dz`.
        #[arg(long, default_value = "range", allow_hyphen_values = true)]
        axis: String,
        /// Largest offset, m.
        #[arg(long)]
        span: f64,
        /// Samples on each side of zero.
        #[arg(long, default_value_t = 100)]
        steps: usize,
        /// Summary JSON path; printed to stderr when omitted.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Architecture comparison report (JSON, plus a text table).
    Compare {
        #[command(flatten)]
        common: Common,
        /// Text table path; printed to stderr when omitted.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Localization RMSE versus SNR.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Comma-separated SNR values in dB; `noiseless` allowed.
        #[arg(long, default_value = "-10,0,10,20,30,noiseless", allow_hyphen_values = true)]
        snr: String,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
}

fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    let res = match path {
        Some(p) => File::create(p).and_then(|mut f| f.write_all(bytes)),
        None => std::io::stdout().lock().write_all(bytes),
    };
    res.map_err(|e| CliError::Runtime(format!("write failed: {e}")))
}

fn emit_side(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(_) => emit(path, bytes),
        None => std::io::stderr()
            .lock()
            .write_all(bytes)
            .map_err(|e| CliError::Runtime(format!("write failed: {e}"))),
    }
}

fn json<T: Serialize>(v: &T) -> Result<Vec<u8>, CliError> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| CliError::Runtime(e.to_string()))?;
    s.push('\n');
    Ok(s.into_bytes())
}

fn parse_triple(s: &str, what: &str) -> Result<Position, CliError> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Config(format!("{what} '{s}': {e}")))?;
    match parts[..] {
        [x, y, z] => Ok(Position::new(x, y, z)),
        _ => Err(CliError::Config(format!("{what} '{s}' needs three comma-separated values"))),
    }
}

pub fn parse_axis(s: &str) -> Result<ProbeAxis, CliError> {
    Ok(match s.trim() {
        "range" => ProbeAxis::Range,
        "x" => ProbeAxis::Direction(Position::new(1.0, 0.0, 0.0)),
        "y" => ProbeAxis::Direction(Position::new(0.0, 1.0, 0.0)),
        "z" => ProbeAxis::Direction(Position::new(0.0, 0.0, 1.0)),
        other => ProbeAxis::Direction(parse_triple(other, "axis")?),
    })
}

pub fn parse_snr_list(s: &str) -> Result<Vec<Snr>, CliError> {
    s.split(',')
        .map(|t| match t.trim() {
            "noiseless" => Ok(Snr::Noiseless),
            v => v
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .map(Snr::Db)
                .ok_or_else(|| CliError::Config(format!("bad SNR value '{v}'"))),
        })
        .collect()
}

fn simulator(cfg: &ExperimentConfig, base: &Path) -> Result<(Simulator, faa_core::DispersionModel), CliError> {
    let plan = cfg.plan()?;
    let model = cfg.dispersion(base)?;
    let sim = Simulator::new(plan, &model, cfg.antenna()?).map_err(|e| CliError::Config(e.to_string()))?;
    Ok((sim, model))
}

#[derive(Serialize)]
struct LocalizationOut {
    estimate: [f64; 3],
    score: f64,
    grid_index: usize,
    dictionary_size: usize,
}

#[derive(Serialize)]
struct ProbeSummary {
    p0: [f64; 3],
    direction: [f64; 3],
    offsets: usize,
    half_power_width_m: Option<f64>,
    /// Width divided by the reference range.
    half_power_width_rad: Option<f64>,
}

pub fn simulate_csv(cfg: &ExperimentConfig, base: &Path, seed: Option<u64>) -> Result<Vec<u8>, CliError> {
    let (sim, model) = simulator(cfg, base)?;
    cfg.chirp()?;
    let scene = cfg.scene(seed)?;
    let meas = sim.measure(&scene)?;
    let mut buf = Vec::new();
    write_measurement(&mut buf, &meas, &model)?;
    Ok(buf)
}

fn load_measurement(path: &Path, plan: &FrequencyPlan) -> Result<Measurement, CliError> {
    let file = File::open(path).map_err(|e| CliError::Config(format!("cannot open {}: {e}", path.display())))?;
    read_measurement(file, plan).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate { common } => {
            let (cfg, base) = ExperimentConfig::load(&common.config)?;
            emit(common.out.as_deref(), &simulate_csv(&cfg, &base, common.seed)?)
        }
        Command::Fingerprint { common, measurement } => {
            let (cfg, _) = ExperimentConfig::load(&common.config)?;
            let plan = cfg.plan()?;
            let fp = build_fingerprint(&load_measurement(&measurement, &plan)?)?;
            let mut csv = String::from("m,f_hz,fx_re,fx_im,fy_re,fy_im\n");
            for (i, (x, y)) in fp.x_half().iter().zip(fp.y_half()).enumerate() {
                csv.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    i + 1,
                    fmt_f64(plan.frequency(i)),
                    fmt_f64(x.re),
                    fmt_f64(x.im),
                    fmt_f64(y.re),
                    fmt_f64(y.im)
                ));
            }
            emit(common.out.as_deref(), csv.as_bytes())
        }
        Command::Dict { common } => {
            let (cfg, base) = ExperimentConfig::load(&common.config)?;
            let (sim, model) = simulator(&cfg, &base)?;
            let dict = build_dictionary(&cfg.grid()?, sim.plan(), &model, sim.antenna())?;
            let mut buf = Vec::new();
            write_dictionary(&mut buf, &dict)?;
            emit(common.out.as_deref(), &buf)
        }
        Command::Localize { common, measurement, dictionary } => {
            let (cfg, base) = ExperimentConfig::load(&common.config)?;
            let meas = load_measurement(&measurement, &cfg.plan()?)?;
            let dict = match dictionary {
                Some(path) => {
                    let file = File::open(&path)
                        .map_err(|e| CliError::Config(format!("cannot open {}: {e}", path.display())))?;
                    read_dictionary(file).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?
                }
                None => {
                    let (sim, model) = simulator(&cfg, &base)?;
                    build_dictionary(&cfg.grid()?, sim.plan(), &model, sim.antenna())?
                }
            };
            let loc = localize(&meas, &dict)?;
            let out = LocalizationOut {
                estimate: loc.position.to_array(),
                score: loc.score,
                grid_index: loc.grid_index,
                dictionary_size: dict.len(),
            };
            emit(common.out.as_deref(), &json(&out)?)
        }
        Command::Probe { common, p0, axis, span, steps, summary } => {
            let (cfg, base) = ExperimentConfig::load(&common.config)?;
            let (sim, model) = simulator(&cfg, &base)?;
            let p0 = parse_triple(&p0, "p0")?;
            let axis = parse_axis(&axis)?;
            if !(span > 0.0 && span.is_finite()) || steps == 0 {
                return Err(CliError::Config("probe needs span > 0 and steps >= 1".into()));
            }
            let offsets: Vec<f64> = (-(steps as i64)..=steps as i64).map(|k| span * k as f64 / steps as f64).collect();
            let curve = ambiguity_probe(&p0, axis, &offsets, sim.plan(), &model, sim.antenna())?;
            let mut csv = String::from("offset_m,similarity\n");
            for (d, s) in &curve.points {
                csv.push_str(&format!("{},{}\n", fmt_f64(*d), fmt_f64(*s)));
            }
            let direction = match axis {
                ProbeAxis::Range => p0,
                ProbeAxis::Direction(d) => d,
            };
            let n = direction.norm();
            let summary_out = ProbeSummary {
                p0: p0.to_array(),
                direction: [direction.x / n, direction.y / n, direction.z / n],
                offsets: offsets.len(),
                half_power_width_m: curve.half_power_width,
                half_power_width_rad: curve.half_power_width.map(|w| w / p0.norm()),
            };
            emit(common.out.as_deref(), csv.as_bytes())?;
            emit_side(summary.as_deref(), &json(&summary_out)?)
        }
        Command::Compare { common, table } => {
            let (cfg, _) = ExperimentConfig::load(&common.config)?;
            let report = archcomp::compare(&cfg.architectures(), cfg.query_range())
                .map_err(|e| CliError::Config(e.to_string()))?;
            emit(common.out.as_deref(), &json(&report)?)?;
            emit_side(table.as_deref(), report.to_text_table().as_bytes())
        }
        Command::Sweep { common, snr, trials } => {
            let (cfg, base) = ExperimentConfig::load(&common.config)?;
            if trials == 0 {
                return Err(CliError::Config("trials must be at least 1".into()));
            }
            let snrs = parse_snr_list(&snr)?;
            let (sim, model) = simulator(&cfg, &base)?;
            let scene = cfg.scene(common.seed)?;
            if scene.targets.is_empty() {
                return Err(CliError::Config("sweep needs at least one target".into()));
            }
            let dict = build_dictionary(&cfg.grid()?, sim.plan(), &model, sim.antenna())?;
            let points = snr_sweep(&sim, &dict, &scene.targets, &snrs, trials, scene.noise.seed)?;
            let mut csv = String::from("snr_db,rmse_m,trials\n");
            for p in points {
                let label = match p.snr {
                    Snr::Db(v) => v.to_string(),
                    Snr::Noiseless => "noiseless".to_string(),
                };
                csv.push_str(&format!("{label},{},{}\n", fmt_f64(p.rmse_m), p.trials));
            }
            emit(common.out.as_deref(), csv.as_bytes())
        }
    }
}
