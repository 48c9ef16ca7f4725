use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::pde::{InitialProfileSpec, SolverConfig, STABILITY_LIMIT};
use crate::scattering::ZGridSpec;
use crate::{Error, Result};

/// Where the initial profile comes from: a built-in kink or a CSV file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ProfileSource {
    Builtin(InitialProfileSpec),
    File { file: PathBuf },
}

/// Discretisation of the direct scattering problem.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScatterSettings {
    /// Built-in profiles are sampled on `[-half_width, half_width]`.
    pub half_width: f64,
    pub dx: f64,
    pub background_tolerance: f64,
    /// Samples of `s11` along the unit arc when locating eigenvalues.
    pub arc_samples: usize,
}

impl Default for ScatterSettings {
    fn default() -> Self {
        Self { half_width: 25.0, dx: 0.01, background_tolerance: 1e-8, arc_samples: 512 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpongeSettings {
    pub width: f64,
    pub rate: f64,
}

impl Default for SpongeSettings {
    fn default() -> Self {
        Self { width: 10.0, rate: 5.0 }
    }
}

fn default_dt_factor() -> f64 {
    crate::pde::DEFAULT_STABILITY_FACTOR
}

fn default_output() -> PathBuf {
    PathBuf::from("out")
}

/// Everything a run needs. JSON keys match the field names, except the
/// half-width of the evolution domain which is `L`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub profile: ProfileSource,
    /// Evolution domain is `[-L, L]`.
    #[serde(rename = "L")]
    pub l: f64,
    pub dx: f64,
    #[serde(default = "default_dt_factor")]
    pub dt_factor: f64,
    #[serde(default)]
    pub z_grid: ZGridSpec,
    pub xi_values: Vec<f64>,
    pub t_values: Vec<f64>,
    #[serde(default = "default_output")]
    pub output_dir: PathBuf,
    /// Smallest `t` in the decay fits; `None` uses the upper half of `t_values`.
    #[serde(default)]
    pub fit_t_min: Option<f64>,
    #[serde(default)]
    pub scatter: ScatterSettings,
    #[serde(default)]
    pub sponge: SpongeSettings,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| {
            Error::InvalidInput(format!("config line {}, column {}: {e}", e.line(), e.column()))
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::InvalidInput(format!("cannot read config {}: {e}", path.display()))
        })?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn solver_config(&self) -> SolverConfig {
        SolverConfig {
            sponge_width: self.sponge.width,
            sponge_rate: self.sponge.rate,
            stability_factor: self.dt_factor,
        }
    }

    pub fn dt(&self) -> f64 {
        self.dt_factor * self.dx * self.dx
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |field: &str, msg: String| Err(Error::InvalidInput(format!("{field}: {msg}")));
        if let ProfileSource::Builtin(p) = &self.profile {
            p.validate().map_err(|e| Error::InvalidInput(format!("profile: {e}")))?;
        }
        if !(self.dx > 0.0) {
            return bad("dx", format!("must be positive, got {}", self.dx));
        }
        if !(self.l > 0.0) {
            return bad("L", format!("must be positive, got {}", self.l));
        }
        if crate::scattering::steps_in(self.l, self.dx).is_err() {
            return bad("L", format!("{} is not a whole number of dx = {}", self.l, self.dx));
        }
        if !(self.dt_factor > 0.0 && self.dt_factor <= STABILITY_LIMIT) {
            return bad("dt_factor", format!("must lie in (0, {STABILITY_LIMIT}], got {}", self.dt_factor));
        }
        self.z_grid.validate().map_err(|e| Error::InvalidInput(format!("z_grid: {e}")))?;
        if self.xi_values.is_empty() {
            return bad("xi_values", "must not be empty".into());
        }
        for &xi in &self.xi_values {
            if !xi.is_finite() || xi.abs() <= 1.0 + 1e-9 {
                return bad("xi_values", format!("xi = {xi} lies in the solitonic region |xi| <= 1"));
            }
        }
        if self.t_values.is_empty() || self.t_values.iter().any(|&t| !(t > 0.0) || !t.is_finite()) {
            return bad("t_values", "must be a nonempty list of positive times".into());
        }
        if self.t_values.windows(2).any(|w| !(w[1] > w[0])) {
            return bad("t_values", "must be strictly increasing".into());
        }
        if let Some(t) = self.fit_t_min {
            let last = *self.t_values.last().unwrap();
            if !(t <= last) {
                return bad("fit_t_min", format!("{t} exceeds the last time {last}"));
            }
        }
        let s = &self.scatter;
        if !(s.half_width > 0.0 && s.dx > 0.0 && s.background_tolerance >= 0.0) || s.arc_samples < 16 {
            return bad("scatter", "needs half_width, dx > 0 and arc_samples >= 16".into());
        }
        if !(self.sponge.width > 0.0 && self.sponge.rate >= 0.0) {
            return bad("sponge", "width must be positive and rate nonnegative".into());
        }
        let xi_max = self.xi_values.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        let t_max = *self.t_values.last().unwrap();
        let need = 2.0 * xi_max * t_max + 3.0 * self.sponge.width;
        if self.l < need {
            return bad("L", format!("{} is too small: rays need L >= 2 max|xi| t_max + 3 sponge widths = {need}", self.l));
        }
        Ok(())
    }
}
