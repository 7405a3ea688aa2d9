//! JSON configuration files. User-facing units are µm, THz (10¹² rad/s),
//! mW, MHz and m; everything is converted to SI with rad/s frequencies.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::constants::omega_from_wavelength;
use crate::dispersion::{DispersionModel, FiberSpec, TaylorDispersion, DEFAULT_N2};
use crate::error::{Error, Result};
use crate::numerics::QuadratureSpec;
use crate::sfwm::{PumpSpec, SourceConfig};

/// One terahertz of angular bandwidth, rad/s.
pub const THZ: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ModelName {
    #[default]
    StepIndexPcf,
    TaylorCoefficients,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaylorFile {
    pub lambda_ref_um: f64,
    /// β0, β1, ... in s^n/m.
    pub beta: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberFile {
    pub core_radius_um: f64,
    pub air_fill_fraction: f64,
    pub length_m: f64,
    #[serde(default, rename = "n2_m2_per_W", skip_serializing_if = "Option::is_none")]
    pub n2_m2_per_w: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub taylor: Option<TaylorFile>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PumpFile {
    pub wavelength_um: f64,
    #[serde(rename = "sigma_THz")]
    pub sigma_thz: f64,
    #[serde(rename = "avg_power_mW")]
    pub avg_power_mw: f64,
    #[serde(default, rename = "rep_rate_MHz", skip_serializing_if = "Option::is_none")]
    pub rep_rate_mhz: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub fiber: FiberFile,
    pub pump1: PumpFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pump2: Option<PumpFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quadrature: Option<QuadratureSpec>,
}

fn schema_error(path: &str, message: impl Into<String>) -> Error {
    Error::Config {
        path: path.to_string(),
        message: message.into(),
    }
}

impl PumpFile {
    fn to_spec(self, path: &str) -> Result<PumpSpec> {
        let finite = |v: f64, field: &str| {
            if v.is_finite() {
                Ok(v)
            } else {
                Err(schema_error(&format!("{path}.{field}"), "must be finite"))
            }
        };
        let wavelength = finite(self.wavelength_um, "wavelength_um")?;
        if !(wavelength > 0.0) {
            return Err(schema_error(&format!("{path}.wavelength_um"), "must be positive"));
        }
        if !(finite(self.sigma_thz, "sigma_THz")? >= 0.0) {
            return Err(schema_error(&format!("{path}.sigma_THz"), "must be non-negative"));
        }
        if !(finite(self.avg_power_mw, "avg_power_mW")? >= 0.0) {
            return Err(schema_error(&format!("{path}.avg_power_mW"), "must be non-negative"));
        }
        let rep_rate = match self.rep_rate_mhz {
            Some(f) if !(f > 0.0) || !f.is_finite() => {
                return Err(schema_error(&format!("{path}.rep_rate_MHz"), "must be positive"))
            }
            Some(f) => Some(f * 1e6),
            None if self.sigma_thz > 0.0 => {
                return Err(schema_error(&format!("{path}.rep_rate_MHz"), "required for pulsed pumps"))
            }
            None => None,
        };
        Ok(PumpSpec {
            omega: omega_from_wavelength(wavelength * 1e-6),
            sigma: self.sigma_thz * THZ,
            avg_power: self.avg_power_mw * 1e-3,
            rep_rate,
        })
    }
}

impl FiberFile {
    fn to_spec(&self) -> Result<FiberSpec> {
        let model = match (self.model, &self.taylor) {
            (Some(ModelName::StepIndexPcf), Some(_)) => {
                return Err(schema_error("fiber.taylor", "only allowed with model \"taylor_coefficients\""))
            }
            (None | Some(ModelName::StepIndexPcf), None) => DispersionModel::StepIndexPcf,
            (Some(ModelName::TaylorCoefficients), None) => {
                return Err(schema_error("fiber.taylor", "required for model \"taylor_coefficients\""))
            }
            (_, Some(t)) => {
                if !(t.lambda_ref_um > 0.0) || !t.lambda_ref_um.is_finite() {
                    return Err(schema_error("fiber.taylor.lambda_ref_um", "must be positive"));
                }
                let omega = omega_from_wavelength(t.lambda_ref_um * 1e-6);
                let taylor = TaylorDispersion::new(omega, t.beta.clone())
                    .map_err(|e| schema_error("fiber.taylor.beta", e.to_string()))?;
                DispersionModel::Taylor(taylor)
            }
        };
        let spec = FiberSpec {
            core_radius: self.core_radius_um * 1e-6,
            air_fill_fraction: self.air_fill_fraction,
            length: self.length_m,
            n2: self.n2_m2_per_w.unwrap_or(DEFAULT_N2),
            model,
        };
        spec.validate().map_err(|e| schema_error("fiber", e.to_string()))?;
        Ok(spec)
    }
}

impl ConfigFile {
    pub fn to_source_config(&self) -> Result<SourceConfig> {
        let fiber = self.fiber.to_spec()?;
        let pump1 = self.pump1.to_spec("pump1")?;
        let (pump2, degenerate) = match self.pump2 {
            Some(p) => (p.to_spec("pump2")?, false),
            None => (pump1, true),
        };
        let quadrature = self.quadrature.unwrap_or_default();
        quadrature
            .validate()
            .map_err(|e| schema_error("quadrature", e.to_string()))?;
        let config = SourceConfig {
            fiber,
            pump1,
            pump2,
            quadrature,
            degenerate,
        };
        config.validate().map_err(|e| schema_error("", e.to_string()))?;
        Ok(config)
    }
}

/// Parses a configuration document. Schema errors carry the JSON path.
pub fn parse_config_file(text: &str) -> Result<ConfigFile> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        schema_error(&path, e.into_inner().to_string())
    })
}

pub fn parse_config(text: &str) -> Result<SourceConfig> {
    parse_config_file(text)?.to_source_config()
}

pub fn load_config(path: impl AsRef<Path>) -> Result<SourceConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| schema_error("", format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text)
}
