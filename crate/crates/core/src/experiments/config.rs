use ini::Ini;

use crate::em::CarrierConfig;
use crate::error::{Error, Result};

pub const DEFAULT_SEED: u64 = 42;

/// Parsed experiment settings: INI sections plus the resolved seed.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub name: String,
    pub seed: u64,
    ini: Ini,
}

impl ExperimentConfig {
    /// Parses INI text. A `[run] seed` entry sets the seed; `seed_override`
    /// wins over it.
    pub fn parse(name: &str, text: &str, seed_override: Option<u64>) -> Result<Self> {
        let ini = Ini::load_from_str(text).map_err(|e| Error::Config(format!("{name}: {e}")))?;
        let mut cfg = ExperimentConfig {
            name: name.to_string(),
            seed: DEFAULT_SEED,
            ini,
        };
        if let Some(s) = cfg.opt_raw("run", "seed") {
            cfg.seed = s
                .parse()
                .map_err(|_| Error::Config(format!("[run] seed: expected an unsigned integer, got {s:?}")))?;
        }
        if let Some(s) = seed_override {
            cfg.seed = s;
        }
        Ok(cfg)
    }

    fn opt_raw(&self, section: &str, key: &str) -> Option<&str> {
        self.ini.section(Some(section)).and_then(|s| s.get(key)).map(str::trim)
    }

    fn raw(&self, section: &str, key: &str) -> Result<&str> {
        self.opt_raw(section, key)
            .ok_or_else(|| Error::Config(format!("missing [{section}] {key}")))
    }

    pub fn f64(&self, section: &str, key: &str) -> Result<f64> {
        let s = self.raw(section, key)?;
        s.parse()
            .map_err(|_| Error::Config(format!("[{section}] {key}: expected a number, got {s:?}")))
    }

    pub fn usize(&self, section: &str, key: &str) -> Result<usize> {
        let s = self.raw(section, key)?;
        s.parse()
            .map_err(|_| Error::Config(format!("[{section}] {key}: expected a non-negative integer, got {s:?}")))
    }

    pub fn f64_list(&self, section: &str, key: &str) -> Result<Vec<f64>> {
        let s = self.raw(section, key)?;
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse()
                    .map_err(|_| Error::Config(format!("[{section}] {key}: bad list item {t:?}")))
            })
            .collect()
    }

    pub fn usize_list(&self, section: &str, key: &str) -> Result<Vec<usize>> {
        let s = self.raw(section, key)?;
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse()
                    .map_err(|_| Error::Config(format!("[{section}] {key}: bad list item {t:?}")))
            })
            .collect()
    }

    /// `[carrier]` with either `frequency_hz` or `wavelength_m`.
    pub fn carrier(&self) -> Result<CarrierConfig> {
        let c = match (self.opt_raw("carrier", "frequency_hz"), self.opt_raw("carrier", "wavelength_m")) {
            (Some(_), None) => CarrierConfig::from_frequency(self.f64("carrier", "frequency_hz")?),
            (None, Some(_)) => CarrierConfig::from_wavelength(self.f64("carrier", "wavelength_m")?),
            (Some(_), Some(_)) => {
                return Err(Error::Config("[carrier] give frequency_hz or wavelength_m, not both".into()))
            }
            (None, None) => return Err(Error::Config("[carrier] needs frequency_hz or wavelength_m".into())),
        };
        c.map_err(|e| Error::Config(format!("[carrier] {e}")))
    }

    /// Evenly spaced grid `[section] {prefix}_min, {prefix}_max, {prefix}_points`.
    pub fn grid(&self, section: &str, prefix: &str) -> Result<Vec<f64>> {
        let lo = self.f64(section, &format!("{prefix}_min"))?;
        let hi = self.f64(section, &format!("{prefix}_max"))?;
        let n = self.usize(section, &format!("{prefix}_points"))?;
        if n < 2 || !(hi > lo) {
            return Err(Error::Config(format!("[{section}] {prefix}: need points ≥ 2 and max > min")));
        }
        Ok((0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect())
    }
}
