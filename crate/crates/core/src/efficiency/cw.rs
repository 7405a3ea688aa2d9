use std::f64::consts::PI;

use crate::constants::{C, HBAR};
use crate::dispersion::{gamma_sfwm, Dispersion};
use crate::error::{Error, Result};
use crate::numerics::sinc;
use crate::sfwm::{Branch, Side, Source};

use super::window::lobe_integral;
use super::{
    canonical, pump_photon_rate, CenterReport, Diagnostics, EfficiencyResult, Method, INITIAL_PHASE_BOUND, MAX_EXPANSIONS,
    SHELL_TOLERANCE,
};

/// Monochromatic-pump efficiency
/// `η_cw = 2⁵ħc²n1n2/π · L²γ²p1p2/(p1ω2 + p2ω1) · ∫ dω h(ω, ω1 + ω2 − ω) sinc²(L Δk_cw / 2)`.
pub fn eta_cw(source: &Source) -> Result<EfficiencyResult> {
    if let Some(swapped) = canonical(source)? {
        return eta_cw(&swapped);
    }
    let (p1, p2) = source.pumps();
    if !p1.is_cw() || !p2.is_cw() {
        return Err(Error::Pulsed("the monochromatic efficiency needs sigma = 0 for both pumps"));
    }
    let center = source.phasematch_center(Branch::Outer, Side::SignalAbove)?;
    let fiber = source.fiber();
    let sum = source.pump_sum();
    let half = 0.5 * sum;
    let half_length = 0.5 * source.length();
    let shift = source.nonlinear_shift();
    let pumps = fiber.beta(p1.omega)? + fiber.beta(p2.omega)?;
    let delta_ref = 0.5 * (center.omega_s - center.omega_i).abs();
    let spec = &source.config().quadrature;

    let pass = |x_in: f64, x_out: f64| {
        let d = |delta: f64| -> Result<f64> {
            Ok(pumps - fiber.beta(half + delta)? - fiber.beta(half - delta)? - shift)
        };
        let slope = |delta: f64| -> Result<f64> { Ok(fiber.beta1(half - delta)? - fiber.beta1(half + delta)?) };
        let g = |delta: f64| -> Result<f64> {
            let dk = d(delta)?;
            let s = sinc(half_length * dk);
            Ok(source.h_function(half + delta, half - delta)? * s * s)
        };
        lobe_integral(source, sum, delta_ref, d, slope, g, x_in, x_out, spec)
    };

    let mut bound = INITIAL_PHASE_BOUND;
    let first = pass(0.0, bound)?;
    let (mut total, mut error, mut subdivisions) = (first.value, first.error, first.subdivisions);
    let mut accepted = None;
    for expansion in 1..=MAX_EXPANSIONS {
        let shell = pass(bound, 2.0 * bound)?;
        let previous = total;
        total += shell.value;
        error += shell.error;
        subdivisions += shell.subdivisions;
        bound *= 2.0;
        let fraction = (shell.value / total).abs();
        if fraction < SHELL_TOLERANCE {
            accepted = Some((expansion, fraction));
            break;
        }
        if expansion == MAX_EXPANSIONS {
            return Err(Error::WindowFailure {
                expansions: expansion,
                previous,
                last: total,
            });
        }
    }
    let (expansions, shell_fraction) = accepted.expect("loop returns on failure");

    let gamma = gamma_sfwm(&source.config().fiber, p1.omega, p2.omega, center.omega_s, center.omega_i)?;
    let (n1, n2) = (fiber.effective_index(p1.omega)?, fiber.effective_index(p2.omega)?);
    let l = source.length();
    let (a, b) = (p1.avg_power, p2.avg_power);
    let prefactor = 32.0 * HBAR * C * C * n1 * n2 / PI * l * l * gamma * gamma * a * b
        / (a * p2.omega + b * p1.omega);
    let eta = prefactor * total;
    Ok(EfficiencyResult {
        eta,
        pairs_per_second: eta * pump_photon_rate(source)?,
        method: Method::Cw,
        gamma,
        center: CenterReport::from(&center),
        diagnostics: Some(Diagnostics {
            error_estimate: error * prefactor,
            phase_bound: bound,
            expansions,
            shell_fraction,
            omega_sum_range: (sum, sum),
            subdivisions,
        }),
    })
}
