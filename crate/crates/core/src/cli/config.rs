//! Instance configuration: the JSON accepted by `eval` and `crosscheck` and
//! emitted by `gen`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bporacle::OracleOptions;
use crate::exactpoly::CPoly1;
use crate::numkernel::AdaptiveOptions;
use crate::rootsys::AlgebraId;
use crate::surface::{GenericityConfig, LocalHitchinData, SurfaceError, TangentData};

type C = Complex64;

/// Version of the report and config JSON layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid config: {0}")]
    Invalid(String),
}

/// A tangent vector as two ascending coefficient lists `[comp1, comp2]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TangentConfig(#[serde(with = "crate::cjson::list")] pub Vec<C>, #[serde(with = "crate::cjson::list")] pub Vec<C>);

impl TangentConfig {
    pub fn to_tangent(&self) -> TangentData {
        TangentData::new(CPoly1::new(self.0.clone()), CPoly1::new(self.1.clone()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OracleSettings {
    /// Initial samples per contour (power of two).
    pub samples: usize,
    /// Sample-count ceiling for the adaptive schedule.
    pub max_samples: usize,
    /// Contour size as a fraction of the distance to the nearest other feature.
    pub contour_factor: f64,
    /// Relative change of `a_{-2}` accepted as converged.
    pub stability_tol: f64,
    /// Allowed `max_{k>=3} |a_{-k}| / |a_{-2}|`.
    pub tail_tol: f64,
    /// Closed-form vs oracle gate used by `crosscheck`.
    pub tol: f64,
}

impl Default for OracleSettings {
    fn default() -> Self {
        let a = AdaptiveOptions::default();
        let o = OracleOptions::default();
        Self {
            samples: a.n0,
            max_samples: a.n_max,
            contour_factor: o.contour_factor,
            stability_tol: a.rel_tol,
            tail_tol: o.tail_tol,
            tol: 1e-6,
        }
    }
}

impl OracleSettings {
    pub fn options(&self) -> OracleOptions {
        OracleOptions {
            contour_factor: self.contour_factor,
            adaptive: AdaptiveOptions { n0: self.samples, n_max: self.max_samples, rel_tol: self.stability_tol },
            tail_tol: self.tail_tol,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceConfig {
    pub algebra: AlgebraId,
    pub radius: f64,
    #[serde(with = "crate::cjson::list")]
    pub beta1: Vec<C>,
    #[serde(with = "crate::cjson::list")]
    pub beta2: Vec<C>,
    pub u: TangentConfig,
    pub v: TangentConfig,
    pub w: TangentConfig,
    #[serde(default)]
    pub oracle: OracleSettings,
    #[serde(default)]
    pub genericity: GenericityConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

fn positive(name: &str, x: f64) -> Result<(), ConfigError> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(ConfigError::Invalid(format!("{name} must be positive and finite, got {x}")))
    }
}

fn coefficients(name: &str, v: &[C]) -> Result<(), ConfigError> {
    if v.is_empty() {
        return Err(ConfigError::Invalid(format!("{name}: coefficient list is empty")));
    }
    if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(ConfigError::Invalid(format!("{name}: non-finite coefficient")));
    }
    Ok(())
}

impl InstanceConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let cfg: InstanceConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        positive("radius", self.radius)?;
        coefficients("beta1", &self.beta1)?;
        coefficients("beta2", &self.beta2)?;
        for (name, t) in [("u", &self.u), ("v", &self.v), ("w", &self.w)] {
            coefficients(&format!("{name}[0]"), &t.0)?;
            coefficients(&format!("{name}[1]"), &t.1)?;
        }
        let o = &self.oracle;
        for (name, x) in [
            ("oracle.contour_factor", o.contour_factor),
            ("oracle.stability_tol", o.stability_tol),
            ("oracle.tail_tol", o.tail_tol),
            ("oracle.tol", o.tol),
            ("genericity.eps", self.genericity.eps),
            ("genericity.separation", self.genericity.separation),
            ("genericity.root_tol", self.genericity.root_tol),
        ] {
            positive(name, x)?;
        }
        if !o.samples.is_power_of_two() || o.samples < 8 {
            return Err(ConfigError::Invalid(format!("oracle.samples must be a power of two >= 8, got {}", o.samples)));
        }
        if o.max_samples < o.samples {
            return Err(ConfigError::Invalid("oracle.max_samples is below oracle.samples".into()));
        }
        Ok(())
    }

    pub fn data(&self) -> Result<LocalHitchinData, SurfaceError> {
        LocalHitchinData::new(self.algebra, self.radius, CPoly1::new(self.beta1.clone()), CPoly1::new(self.beta2.clone()))
    }

    pub fn tangents(&self) -> [TangentData; 3] {
        [self.u.to_tangent(), self.v.to_tangent(), self.w.to_tangent()]
    }
}
