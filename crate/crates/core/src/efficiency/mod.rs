//! Conversion efficiency: numerical pulsed integral, closed forms for
//! non-degenerate and degenerate pumps, the monochromatic limit, and
//! the walk-off scales L_max and σ_max.

mod closed;
mod cw;
mod numeric;
mod window;

use serde::Serialize;

use crate::constants::HBAR;
use crate::error::Result;
use crate::sfwm::{photons_per_pulse, PhasematchCenter, Source};

pub use closed::{b_parameter, eta_dp_closed, eta_ndp_closed, l_max, sigma_max, BParameter};
pub use cw::eta_cw;
pub use numeric::{eta_pulsed_numeric, eta_pulsed_numeric_on, pulsed_integral};

/// Shell-to-total ratio below which the window is accepted.
pub const SHELL_TOLERANCE: f64 = 1e-3;
/// Initial bound on |L Δk / 2| at the window edges.
pub const INITIAL_PHASE_BOUND: f64 = 100.0;
/// Maximum number of window doublings.
pub const MAX_EXPANSIONS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    NumericPulsed,
    ClosedNdp,
    ClosedDp,
    Cw,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::NumericPulsed => "numeric_pulsed",
            Method::ClosedNdp => "closed_ndp",
            Method::ClosedDp => "closed_dp",
            Method::Cw => "cw",
        }
    }
}

/// Phase-matched carriers as reported in results, rad/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CenterReport {
    pub omega_s: f64,
    pub omega_i: f64,
    pub lambda_s_um: f64,
    pub lambda_i_um: f64,
    pub residual_per_m: f64,
}

impl From<&PhasematchCenter> for CenterReport {
    fn from(c: &PhasematchCenter) -> Self {
        let um = |w: f64| crate::constants::wavelength_from_omega(w) * 1e6;
        Self {
            omega_s: c.omega_s,
            omega_i: c.omega_i,
            lambda_s_um: um(c.omega_s),
            lambda_i_um: um(c.omega_i),
            residual_per_m: c.residual,
        }
    }
}

/// Convergence record of a windowed integral.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostics {
    /// Summed quadrature error estimate of the spectral integral.
    pub error_estimate: f64,
    /// Bound on |L Δk / 2| at the accepted window edges.
    pub phase_bound: f64,
    pub expansions: usize,
    /// Contribution of the last shell relative to the total.
    pub shell_fraction: f64,
    /// Range of ω_s + ω_i integrated, rad/s (both ends equal for monochromatic pumps).
    pub omega_sum_range: (f64, f64),
    pub subdivisions: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EfficiencyResult {
    pub eta: f64,
    pub pairs_per_second: f64,
    pub method: Method,
    pub gamma: f64,
    pub center: CenterReport,
    pub diagnostics: Option<Diagnostics>,
}

/// Pump photons per second, `(N1 + N2) f_r` for pulses and
/// `(p1 ω2 + p2 ω1) / (ħ ω1 ω2)` for monochromatic pumps.
pub fn pump_photon_rate(source: &Source) -> Result<f64> {
    let (p1, p2) = source.pumps();
    if p1.is_cw() && p2.is_cw() {
        return Ok((p1.avg_power * p2.omega + p2.avg_power * p1.omega) / (HBAR * p1.omega * p2.omega));
    }
    let f_r = p1.rep_rate.unwrap_or_default();
    Ok((photons_per_pulse(p1)? + photons_per_pulse(p2)?) * f_r)
}

/// The source with its pumps in a fixed order (by carrier, then bandwidth),
/// so that integrals do not depend on which pump is labelled first.
pub(crate) fn canonical(source: &Source) -> Result<Option<Source>> {
    let (p1, p2) = source.pumps();
    if (p1.omega, p1.sigma, p1.avg_power) > (p2.omega, p2.sigma, p2.avg_power) {
        Ok(Some(source.with_pumps(*p2, *p1)?))
    } else {
        Ok(None)
    }
}
