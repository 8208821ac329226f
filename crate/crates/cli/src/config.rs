use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

/// Settings read from a TOML file; command-line flags override them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: Option<u64>,
    pub out: PathBuf,
    /// Samples per twist period.
    pub density: usize,
    /// Keep every `json_stride`-th sample in JSON reports.
    pub json_stride: usize,
    pub max_denominator: i64,
    pub rational_tol: f64,
    pub ode: OdeConfig,
    pub de: DeConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OdeConfig {
    pub rtol: f64,
    pub atol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DeConfig {
    pub population: usize,
    pub mutation: f64,
    pub crossover: f64,
    pub max_generations: usize,
    pub tol: f64,
    pub polish: bool,
    /// Resolution of the pre-screening grid used when no rectangle is given.
    pub grid: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: None,
            out: PathBuf::from("out"),
            density: crtwist::invariants::DEFAULT_DENSITY,
            json_stride: 8,
            max_denominator: 1000,
            rational_tol: 1e-6,
            ode: OdeConfig::default(),
            de: DeConfig::default(),
        }
    }
}

impl Default for OdeConfig {
    fn default() -> Self {
        let o = crtwist::ode::Options::default();
        OdeConfig {
            rtol: o.rtol,
            atol: o.atol,
        }
    }
}

impl Default for DeConfig {
    fn default() -> Self {
        DeConfig {
            population: 40,
            mutation: 0.8,
            crossover: 0.9,
            max_generations: 300,
            tol: 1e-6,
            polish: true,
            grid: 60,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let cfg: RunConfig =
            toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("ode.rtol", self.ode.rtol),
            ("ode.atol", self.ode.atol),
            ("de.tol", self.de.tol),
            ("de.mutation", self.de.mutation),
            ("rational_tol", self.rational_tol),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                bail!("config: {name} must be positive, got {v}");
            }
        }
        if !(0.0..=1.0).contains(&self.de.crossover) {
            bail!("config: de.crossover must lie in [0, 1]");
        }
        if self.de.population < 8 {
            bail!("config: de.population must be at least 8");
        }
        if self.density < 16 {
            bail!("config: density must be at least 16");
        }
        if self.json_stride == 0 || self.de.grid < 2 || self.max_denominator < 1 {
            bail!("config: json_stride, de.grid and max_denominator must be positive");
        }
        Ok(())
    }

    pub fn ode_options(&self) -> crtwist::ode::Options {
        crtwist::ode::Options {
            rtol: self.ode.rtol,
            atol: self.ode.atol,
            ..Default::default()
        }
    }

    pub fn require_seed(&self) -> Result<u64> {
        self.seed
            .context("a seed is required for search commands (--seed N or `seed` in the config)")
    }
}
