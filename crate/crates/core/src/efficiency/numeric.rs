use std::f64::consts::PI;

use crate::constants::{C, HBAR};
use crate::dispersion::{gamma_sfwm, Dispersion};
use crate::error::{Axis, Error, Result};
use crate::numerics::integrate_1d;
use crate::sfwm::{photons_per_pulse, product_center, Branch, PhasematchCenter, PumpRule, Side, Source};

use super::window::lobe_integral;
use super::{
    canonical, pump_photon_rate, CenterReport, Diagnostics, EfficiencyResult, Method, INITIAL_PHASE_BOUND, MAX_EXPANSIONS,
    SHELL_TOLERANCE,
};

/// Half-width of the ω_s + ω_i range in units of sqrt(σ1² + σ2²).
const SUM_HALF_WIDTH: f64 = 4.0;

/// Pulsed conversion efficiency from the full spectral integral, on the
/// outer branch with the signal above the mean pump frequency.
pub fn eta_pulsed_numeric(source: &Source) -> Result<EfficiencyResult> {
    eta_pulsed_numeric_on(source, Branch::Outer, Side::SignalAbove)
}

/// Pulsed conversion efficiency
/// `η = 2⁸ħ²c²n1n2/(2π)³ · L²γ²N1N2/(σ1σ2(N1+N2)) · ∬ h |f|²`
/// over the lobe around the selected phase-matched centre.
pub fn eta_pulsed_numeric_on(source: &Source, branch: Branch, side: Side) -> Result<EfficiencyResult> {
    if let Some(swapped) = canonical(source)? {
        return eta_pulsed_numeric_on(&swapped, branch, side);
    }
    let (p1, p2) = source.pumps();
    if p1.is_cw() || p2.is_cw() {
        return Err(Error::Monochromatic("the numerical pulsed efficiency needs pulsed pumps"));
    }
    let center = source.phasematch_center(branch, side)?;
    let (integral, diagnostics) = pulsed_integral(source, &center)?;
    let fiber = source.fiber();
    let gamma = gamma_sfwm(&source.config().fiber, p1.omega, p2.omega, center.omega_s, center.omega_i)?;
    let (n1, n2) = (fiber.effective_index(p1.omega)?, fiber.effective_index(p2.omega)?);
    let (big_n1, big_n2) = (photons_per_pulse(p1)?, photons_per_pulse(p2)?);
    let l = source.length();
    let prefactor = 256.0 * HBAR * HBAR * C * C * n1 * n2 / (2.0 * PI).powi(3);
    let scale = l * l * gamma * gamma * big_n1 * big_n2 / (p1.sigma * p2.sigma * (big_n1 + big_n2));
    let eta = prefactor * scale * integral;
    Ok(EfficiencyResult {
        eta,
        pairs_per_second: eta * pump_photon_rate(source)?,
        method: Method::NumericPulsed,
        gamma,
        center: CenterReport::from(&center),
        diagnostics: Some(Diagnostics {
            error_estimate: diagnostics.error_estimate * prefactor * scale,
            ..diagnostics
        }),
    })
}

/// `∬ dω_s dω_i h |f|²` over the lobe around `center`, in the rotated
/// coordinates Ω = ω_s + ω_i and δ = (ω_s − ω_i)/2, with the window
/// doubled until the newest shell is below `SHELL_TOLERANCE` of the total.
pub fn pulsed_integral(source: &Source, center: &PhasematchCenter) -> Result<(f64, Diagnostics)> {
    let (p1, p2) = source.pumps();
    let sum0 = source.pump_sum();
    let spread = SUM_HALF_WIDTH * p1.sigma.hypot(p2.sigma);
    let range = (sum0 - spread, sum0 + spread);
    let delta_ref = 0.5 * (center.omega_s - center.omega_i).abs();

    let mut bound = INITIAL_PHASE_BOUND;
    let first = sum_integral(source, range, delta_ref, 0.0, bound)?;
    let mut total = first.0;
    let mut error = first.1;
    let mut subdivisions = first.2;
    for expansion in 1..=MAX_EXPANSIONS {
        let (shell, shell_error, shell_subdivisions) = sum_integral(source, range, delta_ref, bound, 2.0 * bound)?;
        let previous = total;
        total += shell;
        error += shell_error;
        subdivisions += shell_subdivisions;
        bound *= 2.0;
        let fraction = (shell / total).abs();
        if fraction < SHELL_TOLERANCE {
            return Ok((
                total,
                Diagnostics {
                    error_estimate: error,
                    phase_bound: bound,
                    expansions: expansion,
                    shell_fraction: fraction,
                    omega_sum_range: range,
                    subdivisions,
                },
            ));
        }
        if expansion == MAX_EXPANSIONS {
            return Err(Error::WindowFailure {
                expansions: expansion,
                previous,
                last: total,
            });
        }
    }
    unreachable!("the expansion loop always returns")
}

/// Outer integral over Ω of the row integrals between phase bounds `x_in` and `x_out`.
fn sum_integral(source: &Source, range: (f64, f64), delta_ref: f64, x_in: f64, x_out: f64) -> Result<(f64, f64, usize)> {
    let spec = &source.config().quadrature;
    let fiber = source.fiber();
    let shift = source.nonlinear_shift();
    let mut failure: Option<Error> = None;
    let mut subdivisions = 0;
    let row = |omega_sum: f64| -> Result<(f64, usize)> {
        let rule = PumpRule::new(source, omega_sum)?;
        let (wc, _) = product_center(source, omega_sum);
        let reference = fiber.beta(wc)? + fiber.beta(omega_sum - wc)?;
        let half = 0.5 * omega_sum;
        let d = |delta: f64| -> Result<f64> {
            Ok(reference - fiber.beta(half + delta)? - fiber.beta(half - delta)? - shift)
        };
        let slope = |delta: f64| -> Result<f64> { Ok(fiber.beta1(half - delta)? - fiber.beta1(half + delta)?) };
        let g = |delta: f64| -> Result<f64> {
            let (ws, wi) = (half + delta, half - delta);
            let q = fiber.beta(ws)? + fiber.beta(wi)?;
            Ok(source.h_function(ws, wi)? * rule.amplitude(q).norm_sqr())
        };
        let out = lobe_integral(source, omega_sum, delta_ref, d, slope, g, x_in, x_out, spec)?;
        Ok((out.value, out.subdivisions))
    };
    let out = integrate_1d(
        |omega_sum: f64| match row(omega_sum) {
            Ok((v, n)) => {
                subdivisions += n;
                v
            }
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        range.0,
        range.1,
        spec,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let out = out.map_err(|e| e.into_error(Some(Axis::Outer)))?;
    Ok((out.value, out.error, out.subdivisions + subdivisions))
}
