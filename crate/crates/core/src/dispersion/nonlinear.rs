use crate::constants::C;
use crate::error::Result;

use super::fiber::FiberSpec;
use super::mode::effective_area;

/// Nonlinear coefficients of one four-wave interaction, SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonlinearParameters {
    /// Four-wave coefficient, 1/(W m).
    pub gamma_sfwm: f64,
    pub gamma_pump_1: f64,
    pub gamma_pump_2: f64,
    /// Four-wave effective area, m².
    pub a_eff: f64,
}

/// `gamma = n2 sqrt(w1 w2) / (c A_eff)` with the four-wave effective area.
pub fn gamma_sfwm(fiber: &FiberSpec, w1: f64, w2: f64, ws: f64, wi: f64) -> Result<f64> {
    let p = [w1, w2, ws, wi].map(|w| fiber.mode_profile(w));
    let [p1, p2, ps, pi] = p;
    let a = effective_area([&p1?, &p2?, &ps?, &pi?])?;
    Ok(fiber.n2 * (w1 * w2).sqrt() / (C * a))
}

/// Self-phase coefficient `n2 w / (c A_eff)` of a single pump.
pub fn gamma_pump(fiber: &FiberSpec, w: f64) -> Result<f64> {
    let p = fiber.mode_profile(w)?;
    let a = effective_area([&p, &p, &p, &p])?;
    Ok(fiber.n2 * w / (C * a))
}

pub fn nonlinear_parameters(fiber: &FiberSpec, w1: f64, w2: f64, ws: f64, wi: f64) -> Result<NonlinearParameters> {
    let profiles = [w1, w2, ws, wi].map(|w| fiber.mode_profile(w));
    let [p1, p2, ps, pi] = profiles;
    let (p1, p2, ps, pi) = (p1?, p2?, ps?, pi?);
    let a_eff = effective_area([&p1, &p2, &ps, &pi])?;
    let a1 = effective_area([&p1, &p1, &p1, &p1])?;
    let a2 = effective_area([&p2, &p2, &p2, &p2])?;
    Ok(NonlinearParameters {
        gamma_sfwm: fiber.n2 * (w1 * w2).sqrt() / (C * a_eff),
        gamma_pump_1: fiber.n2 * w1 / (C * a1),
        gamma_pump_2: fiber.n2 * w2 / (C * a2),
        a_eff,
    })
}
