use std::f64::consts::PI;

use serde::Serialize;

use crate::constants::{C, HBAR};
use crate::dispersion::{gamma_sfwm, Dispersion};
use crate::error::{Error, Result};
use crate::numerics::erf_ratio;
use crate::sfwm::{photons_per_pulse, Branch, PhasematchCenter, Side, Source};

use super::{canonical, pump_photon_rate, CenterReport, EfficiencyResult, Method};

/// Signal-idler group-velocity mismatch below which the linearized
/// closed forms are reported as divergent, relative to β1.
const DIVERGENCE_THRESHOLD: f64 = 1e-8;

/// Pump walk-off parameter `B = sqrt(σ1² + σ2²) / (σ1 σ2 L |β1(ω1°) − β1(ω2°)|)`;
/// infinite when the pump group velocities coincide.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BParameter {
    pub value: f64,
}

impl BParameter {
    pub fn is_infinite(&self) -> bool {
        self.value.is_infinite()
    }
}

fn require_pulsed(source: &Source, what: &'static str) -> Result<()> {
    let (p1, p2) = source.pumps();
    if p1.is_cw() || p2.is_cw() {
        return Err(Error::Monochromatic(what));
    }
    Ok(())
}

/// |β1(ω1°) − β1(ω2°)|, s/m.
fn pump_mismatch(source: &Source) -> Result<f64> {
    let (p1, p2) = source.pumps();
    if p1.omega == p2.omega {
        return Ok(0.0);
    }
    let f = source.fiber();
    Ok((f.beta1(p1.omega)? - f.beta1(p2.omega)?).abs())
}

pub fn b_parameter(source: &Source) -> Result<BParameter> {
    require_pulsed(source, "B is defined for pulsed pumps")?;
    let (p1, p2) = source.pumps();
    let d = pump_mismatch(source)?;
    let value = if d == 0.0 {
        f64::INFINITY
    } else {
        p1.sigma.hypot(p2.sigma) / (p1.sigma * p2.sigma * source.length() * d)
    };
    Ok(BParameter { value })
}

/// Fiber length beyond which walk-off saturates the efficiency,
/// `L_max = 2√2 sqrt(σ1² + σ2²) / (σ1 σ2 |β1(ω1°) − β1(ω2°)|)`.
pub fn l_max(source: &Source) -> Result<f64> {
    require_pulsed(source, "L_max is defined for pulsed pumps")?;
    let (p1, p2) = source.pumps();
    let d = pump_mismatch(source)?;
    if d == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(2.0 * 2f64.sqrt() * p1.sigma.hypot(p2.sigma) / (p1.sigma * p2.sigma * d))
}

/// Pump bandwidth beyond which walk-off saturates the efficiency,
/// `σ_max = 4 / (L |β1(ω1°) − β1(ω2°)|)`, for equal pump bandwidths.
pub fn sigma_max(source: &Source) -> Result<f64> {
    require_pulsed(source, "sigma_max is defined for pulsed pumps")?;
    let (p1, p2) = source.pumps();
    if p1.sigma != p2.sigma {
        return Err(Error::InvalidParameter("sigma_max assumes equal pump bandwidths".into()));
    }
    let d = pump_mismatch(source)?;
    if d == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(4.0 / (source.length() * d))
}

/// |β1(ω_i°) − β1(ω_s°)| with the divergence check of the closed forms.
fn signal_idler_mismatch(source: &Source, center: &PhasematchCenter) -> Result<f64> {
    let f = source.fiber();
    let (bs, bi) = (f.beta1(center.omega_s)?, f.beta1(center.omega_i)?);
    let d = (bi - bs).abs();
    if d < DIVERGENCE_THRESHOLD * bs.abs() {
        return Err(Error::Divergence { delta_beta1: d });
    }
    Ok(d)
}

/// Closed form for non-degenerate pumps,
/// `η = 2⁵ħ²c²n1n2γ² N1N2/(N1+N2) · erf[(√2 B)⁻¹] h(ω_s°, ω_i°) / (|Δβ1,12| |Δβ1,si|)`,
/// evaluated through erf(x)/x so that it stays finite as the pumps merge.
pub fn eta_ndp_closed(source: &Source) -> Result<EfficiencyResult> {
    require_pulsed(source, "the closed forms need pulsed pumps")?;
    if let Some(swapped) = canonical(source)? {
        return eta_ndp_closed(&swapped);
    }
    let (p1, p2) = source.pumps();
    let center = source.phasematch_center(Branch::Outer, Side::SignalAbove)?;
    let d_si = signal_idler_mismatch(source, &center)?;
    let f = source.fiber();
    let l = source.length();
    let root = p1.sigma.hypot(p2.sigma);
    let x = p1.sigma * p2.sigma * l * pump_mismatch(source)? / (2f64.sqrt() * root);
    let erf_over_mismatch = erf_ratio(x) * p1.sigma * p2.sigma * l / (2f64.sqrt() * root);
    let gamma = gamma_sfwm(&source.config().fiber, p1.omega, p2.omega, center.omega_s, center.omega_i)?;
    let (n1, n2) = (f.effective_index(p1.omega)?, f.effective_index(p2.omega)?);
    let (big_n1, big_n2) = (photons_per_pulse(p1)?, photons_per_pulse(p2)?);
    let h = source.h_function(center.omega_s, center.omega_i)?;
    let eta = 32.0 * HBAR * HBAR * C * C * n1 * n2 * gamma * gamma * big_n1 * big_n2 / (big_n1 + big_n2)
        * erf_over_mismatch
        * h
        / d_si;
    Ok(EfficiencyResult {
        eta,
        pairs_per_second: eta * pump_photon_rate(source)?,
        method: Method::ClosedNdp,
        gamma,
        center: CenterReport::from(&center),
        diagnostics: None,
    })
}

/// Closed form for degenerate pumps,
/// `η = 2⁴ħ²c²n²Lσ N γ² h(ω_s°, ω_i°) / (√π |β1(ω_i°) − β1(ω_s°)|)`.
pub fn eta_dp_closed(source: &Source) -> Result<EfficiencyResult> {
    require_pulsed(source, "the closed forms need pulsed pumps")?;
    let (p1, p2) = source.pumps();
    if p1.omega != p2.omega || p1.sigma != p2.sigma {
        return Err(Error::InvalidParameter(
            "the degenerate closed form needs identical pump carriers and bandwidths".into(),
        ));
    }
    let center = source.phasematch_center(Branch::Outer, Side::SignalAbove)?;
    let d_si = signal_idler_mismatch(source, &center)?;
    let f = source.fiber();
    let n = f.effective_index(p1.omega)?;
    let big_n = photons_per_pulse(p1)?;
    let gamma = gamma_sfwm(&source.config().fiber, p1.omega, p2.omega, center.omega_s, center.omega_i)?;
    let h = source.h_function(center.omega_s, center.omega_i)?;
    let eta = 16.0 * HBAR * HBAR * C * C * n * n * source.length() * p1.sigma * big_n * gamma * gamma * h
        / (PI.sqrt() * d_si);
    Ok(EfficiencyResult {
        eta,
        pairs_per_second: eta * pump_photon_rate(source)?,
        method: Method::ClosedDp,
        gamma,
        center: CenterReport::from(&center),
        diagnostics: None,
    })
}
