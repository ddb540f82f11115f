//! Analytic architecture trade-off metrics: range and angular resolution,
//! resolution-cell volume and the architectural efficiency
//! `η = θ_res⁻¹ / (RF chains × physical size)`.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::domain::{wavelength, SPEED_OF_LIGHT};
use crate::error::{Error, Result};

/// Relative gap above which a printed efficiency is flagged as inconsistent
/// with the computed one.
pub const ETA_DISCREPANCY_TOLERANCE: f64 = 0.01;

/// Range resolution `c / 2B`, m.
pub fn range_resolution(bandwidth_hz: f64) -> f64 {
    SPEED_OF_LIGHT / (2.0 * bandwidth_hz)
}

/// Frequency-synthesized aperture `M λ / 2`, m.
pub fn effective_aperture(points: usize, f_ref_hz: f64) -> f64 {
    points as f64 * wavelength(f_ref_hz) / 2.0
}

/// `λ / D`, rad. Equals `2 / M` when `D` is the effective aperture.
pub fn angular_resolution_virtual(f_ref_hz: f64, aperture_m: f64) -> f64 {
    wavelength(f_ref_hz) / aperture_m
}

/// Coherent-gain physical array resolution `λ / (L √3)`, rad.
pub fn angular_resolution_mimo(f_ref_hz: f64, length_m: f64) -> f64 {
    wavelength(f_ref_hz) / (length_m * 3f64.sqrt())
}

/// Resolution cell `(θ_az R)(θ_el R) ΔR`, m³.
pub fn resolution_cell_volume(theta_az: f64, theta_el: f64, delta_r: f64, range: f64) -> f64 {
    (theta_az * range) * (theta_el * range) * delta_r
}

/// Architectural efficiency, m⁻¹·rad⁻¹.
pub fn efficiency(theta_res: f64, chains: u32, length_m: f64) -> f64 {
    (1.0 / theta_res) / (chains as f64 * length_m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ApertureKind {
    Virtual,
    Physical,
}

/// One architecture under comparison.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArchitectureSpec {
    pub name: String,
    pub rf_chains: u32,
    pub physical_size_m: f64,
    /// Total occupied bandwidth.
    pub bandwidth_hz: f64,
    /// Frequency points per chain (virtual) or element count (physical).
    pub points: usize,
    pub aperture_kind: ApertureKind,
    pub f_ref_hz: f64,
    pub power_mw: f64,
    pub cost_usd: f64,
    pub fov_deg: f64,
    /// Efficiency as printed in the reference comparison table.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub paper_eta: Option<f64>,
    /// Angular resolution the reference table plugs into its η fraction.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub paper_angular_resolution_rad: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polarization_observability: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noise_rejection: Option<String>,
}

impl ArchitectureSpec {
    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v > 0.0 && v.is_finite();
        if self.rf_chains < 1
            || self.points < 1
            || !positive(self.physical_size_m)
            || !positive(self.bandwidth_hz)
            || !positive(self.f_ref_hz)
            || !(self.fov_deg > 0.0 && self.fov_deg < 90.0)
        {
            return Err(Error::InvalidParameter(format!("invalid architecture spec '{}'", self.name)));
        }
        Ok(())
    }

    pub fn effective_aperture(&self) -> f64 {
        match self.aperture_kind {
            ApertureKind::Virtual => effective_aperture(self.points, self.f_ref_hz),
            ApertureKind::Physical => self.physical_size_m,
        }
    }

    pub fn angular_resolution(&self) -> f64 {
        match self.aperture_kind {
            ApertureKind::Virtual => angular_resolution_virtual(self.f_ref_hz, self.effective_aperture()),
            ApertureKind::Physical => angular_resolution_mimo(self.f_ref_hz, self.physical_size_m),
        }
    }
}

/// The three configurations of the 12 cm / 6 GHz case study, including the
/// printed reference values.
pub fn reference_architectures() -> Vec<ArchitectureSpec> {
    let base = |name: &str, chains, points, kind, f_ref, power, cost, eta, theta: f64| ArchitectureSpec {
        name: name.to_string(),
        rf_chains: chains,
        physical_size_m: 0.12,
        bandwidth_hz: 6e9,
        points,
        aperture_kind: kind,
        f_ref_hz: f_ref,
        power_mw: power,
        cost_usd: cost,
        fov_deg: 60.0,
        paper_eta: Some(eta),
        paper_angular_resolution_rad: Some(theta),
        polarization_observability: None,
        noise_rejection: None,
    };
    let mut specs = vec![
        base("FaA-Single", 1, 128, ApertureKind::Virtual, 63e9, 850.0, 55.0, 926.0, 0.0157),
        base("FaA-Dual", 2, 64, ApertureKind::Virtual, 63e9, 1400.0, 90.0, 231.0, 0.0314),
        base("1T3R-MIMO", 4, 4, ApertureKind::Physical, 60e9, 1600.0, 100.0, 58.0, 0.0244),
    ];
    for (s, (pol, noise)) in specs.iter_mut().zip([("Low", "Medium"), ("High", "Medium"), ("Medium", "High")]) {
        s.polarization_observability = Some(pol.into());
        s.noise_rejection = Some(noise.into());
    }
    specs
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArchitectureRow {
    pub name: String,
    pub aperture_kind: ApertureKind,
    pub rf_chains: u32,
    pub physical_size_m: f64,
    pub range_resolution_m: f64,
    pub effective_aperture_m: f64,
    pub angular_resolution_rad: f64,
    pub angular_resolution_deg: f64,
    pub cell_volume_m3: f64,
    /// η from the modelled angular resolution.
    pub eta: f64,
    /// η from the reference table's own fraction inputs, when supplied.
    pub eta_from_paper_inputs: Option<f64>,
    /// η as printed in the reference table, when supplied.
    pub paper_eta: Option<f64>,
    /// Printed η disagrees with the computed η by more than [`ETA_DISCREPANCY_TOLERANCE`].
    pub eta_discrepancy: bool,
    pub power_mw: f64,
    pub cost_usd: f64,
    pub fov_deg: f64,
    pub polarization_observability: Option<String>,
    pub noise_rejection: Option<String>,
}

/// Ratios of `numerator` over `denominator` architectures.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairRatio {
    pub numerator: String,
    pub denominator: String,
    pub eta_ratio: f64,
    pub paper_eta_ratio: Option<f64>,
    /// Denominator cell volume over numerator cell volume ("times finer").
    pub cell_volume_advantage: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub query_range_m: f64,
    pub rows: Vec<ArchitectureRow>,
    pub ratios: Vec<PairRatio>,
}

fn row(spec: &ArchitectureSpec, range: f64) -> ArchitectureRow {
    let theta = spec.angular_resolution();
    let delta_r = range_resolution(spec.bandwidth_hz);
    let cell = match spec.aperture_kind {
        // crossed x/y scans resolve both angular axes
        ApertureKind::Virtual => resolution_cell_volume(theta, theta, delta_r, range),
        // a linear array leaves the orthogonal axis limited only by the FoV
        ApertureKind::Physical => {
            (theta * range) * (2.0 * range * spec.fov_deg.to_radians().tan()) * delta_r
        }
    };
    let eta = efficiency(theta, spec.rf_chains, spec.physical_size_m);
    let eta_discrepancy = spec.paper_eta.is_some_and(|p| ((p - eta) / eta).abs() > ETA_DISCREPANCY_TOLERANCE);
    ArchitectureRow {
        name: spec.name.clone(),
        aperture_kind: spec.aperture_kind,
        rf_chains: spec.rf_chains,
        physical_size_m: spec.physical_size_m,
        range_resolution_m: delta_r,
        effective_aperture_m: spec.effective_aperture(),
        angular_resolution_rad: theta,
        angular_resolution_deg: theta.to_degrees(),
        cell_volume_m3: cell,
        eta,
        eta_from_paper_inputs: spec
            .paper_angular_resolution_rad
            .map(|t| efficiency(t, spec.rf_chains, spec.physical_size_m)),
        paper_eta: spec.paper_eta,
        eta_discrepancy,
        power_mw: spec.power_mw,
        cost_usd: spec.cost_usd,
        fov_deg: spec.fov_deg,
        polarization_observability: spec.polarization_observability.clone(),
        noise_rejection: spec.noise_rejection.clone(),
    }
}

/// Evaluates every architecture at `query_range` and all ordered pair ratios.
pub fn compare(specs: &[ArchitectureSpec], query_range: f64) -> Result<ComparisonReport> {
    if specs.is_empty() {
        return Err(Error::InvalidParameter("no architectures to compare".into()));
    }
    if !(query_range > 0.0 && query_range.is_finite()) {
        return Err(Error::InvalidParameter(format!("query range must be positive (got {query_range})")));
    }
    for s in specs {
        s.validate()?;
    }
    let rows: Vec<ArchitectureRow> = specs.iter().map(|s| row(s, query_range)).collect();
    let mut ratios = Vec::new();
    for (i, a) in rows.iter().enumerate() {
        for (j, b) in rows.iter().enumerate() {
            if i == j {
                continue;
            }
            ratios.push(PairRatio {
                numerator: a.name.clone(),
                denominator: b.name.clone(),
                eta_ratio: a.eta / b.eta,
                paper_eta_ratio: a.paper_eta.zip(b.paper_eta).map(|(x, y)| x / y),
                cell_volume_advantage: b.cell_volume_m3 / a.cell_volume_m3,
            });
        }
    }
    Ok(ComparisonReport { query_range_m: query_range, rows, ratios })
}

fn opt(v: Option<f64>, prec: usize) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.prec$}"))
}

impl ComparisonReport {
    /// Aligned text table, one column per architecture.
    pub fn to_text_table(&self) -> String {
        let r = self.query_range_m;
        let mut lines: Vec<(String, Vec<String>)> = vec![("Metric".into(), self.rows.iter().map(|x| x.name.clone()).collect())];
        let mut add = |label: String, f: &dyn Fn(&ArchitectureRow) -> String| {
            lines.push((label, self.rows.iter().map(f).collect()));
        };
        add("RF chains".into(), &|x| x.rf_chains.to_string());
        add("Physical size (mm)".into(), &|x| format!("{:.1}", x.physical_size_m * 1e3));
        add("Effective aperture (mm)".into(), &|x| format!("{:.1}", x.effective_aperture_m * 1e3));
        add("Range resolution (cm)".into(), &|x| format!("{:.3}", x.range_resolution_m * 1e2));
        add("Angular resolution (rad)".into(), &|x| format!("{:.6}", x.angular_resolution_rad));
        add("Angular resolution (deg)".into(), &|x| format!("{:.4}", x.angular_resolution_deg));
        add(format!("3D cell at {r} m (m^3)"), &|x| format!("{:.3e}", x.cell_volume_m3));
        add("FoV (deg)".into(), &|x| format!("±{}", x.fov_deg));
        add("Power (mW)".into(), &|x| format!("{}", x.power_mw));
        add("Unit cost (USD)".into(), &|x| format!("{}", x.cost_usd));
        add("eta computed (1/(m rad))".into(), &|x| format!("{:.1}", x.eta));
        add("eta from printed inputs".into(), &|x| opt(x.eta_from_paper_inputs, 1));
        add("eta printed".into(), &|x| opt(x.paper_eta, 1));
        add("eta discrepancy".into(), &|x| if x.eta_discrepancy { "YES".into() } else { "no".into() });
        add("Polarization observability".into(), &|x| x.polarization_observability.clone().unwrap_or_else(|| "-".into()));
        add("Noise rejection".into(), &|x| x.noise_rejection.clone().unwrap_or_else(|| "-".into()));

        let ncols = self.rows.len() + 1;
        let mut widths = vec![0usize; ncols];
        for (label, cells) in &lines {
            widths[0] = widths[0].max(label.chars().count());
            for (i, c) in cells.iter().enumerate() {
                widths[i + 1] = widths[i + 1].max(c.chars().count());
            }
        }
        let mut out = String::new();
        for (label, cells) in &lines {
            let _ = write!(out, "{label:<w$}", w = widths[0]);
            for (i, c) in cells.iter().enumerate() {
                let _ = write!(out, "  {c:>w$}", w = widths[i + 1]);
            }
            out.push('\n');
        }
        if !self.ratios.is_empty() {
            out.push('\n');
            for p in &self.ratios {
                let _ = writeln!(
                    out,
                    "{} / {}: eta x{:.2} (printed {}), cell volume x{:.1} finer",
                    p.numerator,
                    p.denominator,
                    p.eta_ratio,
                    opt(p.paper_eta_ratio, 2),
                    p.cell_volume_advantage
                );
            }
        }
        if self.rows.iter().any(|x| x.eta_discrepancy) {
            out.push_str("\nnote: printed eta values are not reproduced by the eta formula applied to the listed inputs\n");
        }
        out
    }
}

impl fmt::Display for ComparisonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text_table())
    }
}
