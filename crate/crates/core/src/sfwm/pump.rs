use std::f64::consts::PI;

use crate::constants::{omega_from_wavelength, wavelength_from_omega, HBAR};
use crate::error::{Error, Result};

/// One pump field. `sigma == 0` encodes a monochromatic pump.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PumpSpec {
    /// Carrier angular frequency, rad/s.
    pub omega: f64,
    /// Gaussian envelope width, rad/s.
    pub sigma: f64,
    /// Average power, W.
    pub avg_power: f64,
    /// Repetition rate, Hz. Not needed for monochromatic pumps.
    pub rep_rate: Option<f64>,
}

impl PumpSpec {
    pub fn pulsed(wavelength: f64, sigma: f64, avg_power: f64, rep_rate: f64) -> Self {
        Self {
            omega: omega_from_wavelength(wavelength),
            sigma,
            avg_power,
            rep_rate: Some(rep_rate),
        }
    }

    pub fn cw(wavelength: f64, power: f64) -> Self {
        Self {
            omega: omega_from_wavelength(wavelength),
            sigma: 0.0,
            avg_power: power,
            rep_rate: None,
        }
    }

    pub fn wavelength(&self) -> f64 {
        wavelength_from_omega(self.omega)
    }

    pub fn is_cw(&self) -> bool {
        self.sigma == 0.0
    }

    pub fn with_power(self, avg_power: f64) -> Self {
        Self { avg_power, ..self }
    }

    pub fn with_sigma(self, sigma: f64) -> Self {
        Self { sigma, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if !(self.omega > 0.0) || !self.omega.is_finite() {
            return bad(format!("pump frequency must be positive, got {}", self.omega));
        }
        if !(self.sigma >= 0.0) || !self.sigma.is_finite() {
            return bad(format!("pump bandwidth must be non-negative, got {}", self.sigma));
        }
        if !(self.avg_power >= 0.0) || !self.avg_power.is_finite() {
            return bad(format!("pump power must be non-negative, got {}", self.avg_power));
        }
        match self.rep_rate {
            Some(f) if !(f > 0.0) || !f.is_finite() => bad(format!("repetition rate must be positive, got {f}")),
            None if !self.is_cw() => bad("a pulsed pump needs a repetition rate".into()),
            _ => Ok(()),
        }
    }

    fn rep_rate_for_pulses(&self) -> Result<f64> {
        if self.is_cw() {
            return Err(Error::Monochromatic("peak power and pulse photon number are undefined"));
        }
        self.rep_rate
            .ok_or_else(|| Error::InvalidParameter("a pulsed pump needs a repetition rate".into()))
    }
}

/// Peak power `P = p sigma / (f_r sqrt(2 pi))`.
pub fn peak_power(pump: &PumpSpec) -> Result<f64> {
    let f_r = pump.rep_rate_for_pulses()?;
    Ok(pump.avg_power * pump.sigma / (f_r * (2.0 * PI).sqrt()))
}

/// Pump photons per pulse, `sqrt(2 pi) P / (hbar w sigma)`.
pub fn photons_per_pulse(pump: &PumpSpec) -> Result<f64> {
    let p = peak_power(pump)?;
    Ok((2.0 * PI).sqrt() * p / (HBAR * pump.omega * pump.sigma))
}

/// Unit-normalized spectral amplitude `2^(1/4) / (pi^(1/4) sqrt(sigma)) exp(-(w - w0)^2 / sigma^2)`.
pub fn pump_envelope(pump: &PumpSpec, omega: f64) -> f64 {
    let x = (omega - pump.omega) / pump.sigma;
    envelope_peak(pump.sigma) * (-x * x).exp()
}

pub(crate) fn envelope_peak(sigma: f64) -> f64 {
    (2.0f64).powf(0.25) / (PI.powf(0.25) * sigma.sqrt())
}

/// Intensity FWHM in wavelength (m) of a Gaussian envelope of width `sigma` at `omega`.
pub fn bandwidth_fwhm_wavelength(omega: f64, sigma: f64) -> f64 {
    let fwhm_omega = sigma * (2.0 * 2f64.ln()).sqrt();
    let lambda = wavelength_from_omega(omega);
    lambda * lambda * fwhm_omega / (2.0 * PI * crate::constants::C)
}
