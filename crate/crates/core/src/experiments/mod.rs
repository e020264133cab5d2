//! Named, config-driven experiments that regenerate the reference curves.
//!
//! Each experiment ships a default INI config; `run` parses it (or a user
//! file), executes, and returns a table, a plot description and an optional
//! key/value summary. [`write_outputs`] turns that into
//! `<out>/<name>.csv` and `<out>/<name>.svg`.

mod config;
mod output;
mod runs;

use std::fs;
use std::path::{Path, PathBuf};

pub use config::{ExperimentConfig, DEFAULT_SEED};
pub use output::{render_svg, PlotSpec, Table};

use crate::error::{Error, Result};

/// Result of one experiment run.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutput {
    pub table: Table,
    pub plot: PlotSpec,
    pub summary: Vec<(String, String)>,
}

impl ExperimentOutput {
    pub fn summary_value(&self, key: &str) -> Option<&str> {
        self.summary.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// One `key = value` line per summary entry.
    pub fn summary_text(&self) -> String {
        self.summary.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }
}

pub struct Experiment {
    pub name: &'static str,
    pub description: &'static str,
    pub default_config: &'static str,
    run: fn(&ExperimentConfig) -> Result<ExperimentOutput>,
}

impl Experiment {
    pub fn run(&self, cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
        (self.run)(cfg)
    }
}

macro_rules! experiment {
    ($name:literal, $desc:literal, $f:path) => {
        Experiment {
            name: $name,
            description: $desc,
            default_config: include_str!(concat!("../../configs/", $name, ".ini")),
            run: $f,
        }
    };
}

static REGISTRY: [Experiment; 12] = [
    experiment!("autocorr-fourier", "spatial autocorrelation of the Fourier plane-wave field vs Clarke", runs::autocorr_fourier),
    experiment!("autocorr-green", "spatial autocorrelation of the dyadic scattering field vs Clarke", runs::autocorr_green),
    experiment!("capacity-bound", "exact LoS capacity vs the closed-form upper bound", runs::capacity_bound),
    experiment!("capacity-spacing", "Fourier-model capacity vs receive element spacing", runs::capacity_spacing),
    experiment!("directivity", "Chu and Harrington directivity limits vs electrical size", runs::directivity),
    experiment!("dof-saturation", "effective DOF vs element count for a fixed aperture", runs::dof_saturation),
    experiment!("eigen-spacing", "channel eigenvalues vs receive element spacing", runs::eigen_spacing),
    experiment!("limits", "Chu and Harrington gain and Q table", runs::limits),
    experiment!("packing", "epsilon-capacity of a line-to-line link with a pattern constraint", runs::packing),
    experiment!("polarization", "singular values of the co- and cross-polarized LoS blocks", runs::polarization),
    experiment!("precoders", "MRT, ZF and MMSE spectral efficiency vs SNR", runs::precoders),
    experiment!("quality-factor", "Chu and Harrington minimum Q vs electrical size", runs::quality_factor),
];

/// All experiments in alphabetical order.
pub fn registry() -> &'static [Experiment] {
    &REGISTRY
}

pub fn find(name: &str) -> Option<&'static Experiment> {
    REGISTRY.iter().find(|e| e.name == name)
}

/// Resolves the config (user text or the shipped default) and runs it.
pub fn run_named(name: &str, config_text: Option<&str>, seed: Option<u64>) -> Result<ExperimentOutput> {
    let exp = find(name).ok_or_else(|| Error::Config(format!("unknown experiment {name:?}")))?;
    let cfg = ExperimentConfig::parse(name, config_text.unwrap_or(exp.default_config), seed)?;
    exp.run(&cfg)
}

/// Writes `<name>.csv`, `<name>.svg` and, when non-empty,
/// `<name>_summary.txt` into `dir`.
pub fn write_outputs(name: &str, out: &ExperimentOutput, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let csv = dir.join(format!("{name}.csv"));
    fs::write(&csv, out.table.to_csv())?;
    written.push(csv);
    let svg = dir.join(format!("{name}.svg"));
    fs::write(&svg, render_svg(&out.table, &out.plot)?)?;
    written.push(svg);
    if !out.summary.is_empty() {
        let p = dir.join(format!("{name}_summary.txt"));
        fs::write(&p, out.summary_text())?;
        written.push(p);
    }
    Ok(written)
}
