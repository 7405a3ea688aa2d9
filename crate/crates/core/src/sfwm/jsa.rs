use std::f64::consts::PI;

use num_complex::Complex64;

use crate::dispersion::Dispersion;
use crate::error::{Axis, Error, Result};
use crate::numerics::{integrate_1d, sinc, GaussLegendre};

use super::pump::pump_envelope;
use super::source::{Branch, PhasematchCenter, Side, Source};

/// `sinc(x) e^{ix}`, the phase-matching kernel at `x = L Δk / 2`.
pub fn phase_kernel(x: f64) -> Complex64 {
    if x.abs() < 0.5 {
        Complex64::from_polar(sinc(x), x)
    } else {
        // (e^{2ix} - 1) / (2ix)
        let (s, c) = (2.0 * x).sin_cos();
        Complex64::new(s, 1.0 - c) / (2.0 * x)
    }
}

/// Centre (rad/s) and width of the product α1(ω) α2(Ω − ω) as a function of ω.
pub(crate) fn product_center(source: &Source, omega_sum: f64) -> (f64, f64) {
    let (p1, p2) = source.pumps();
    let (s1, s2) = (p1.sigma * p1.sigma, p2.sigma * p2.sigma);
    let center = (s2 * p1.omega + s1 * (omega_sum - p2.omega)) / (s1 + s2);
    let width = p1.sigma * p2.sigma / (s1 + s2).sqrt();
    (center, width)
}

fn jsa_prefactor(source: &Source) -> f64 {
    let (p1, p2) = source.pumps();
    (PI * p1.sigma * p2.sigma / 2.0).sqrt()
}

/// Joint spectral amplitude
/// `f = sqrt(π σ1 σ2 / 2) ∫ dω α1(ω) α2(ω_s + ω_i − ω) sinc(L Δk / 2) e^{i L Δk / 2}`
/// by adaptive quadrature over ω1° ± 5σ1 intersected with the second pump's window.
pub fn jsa(omega_s: f64, omega_i: f64, source: &Source) -> Result<Complex64> {
    let (p1, p2) = source.pumps();
    if p1.is_cw() || p2.is_cw() {
        return Err(Error::Monochromatic("the joint spectral amplitude needs pulsed pumps"));
    }
    let sum = omega_s + omega_i;
    let lo = (p1.omega - 5.0 * p1.sigma).max(sum - p2.omega - 5.0 * p2.sigma);
    let hi = (p1.omega + 5.0 * p1.sigma).min(sum - p2.omega + 5.0 * p2.sigma);
    if !(lo < hi) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let half_l = 0.5 * source.length();
    let fiber = source.fiber();
    let signal_idler = fiber.beta(omega_s)? + fiber.beta(omega_i)? + source.nonlinear_shift();
    let mut failure = None;
    let integrand = |w: f64| -> Complex64 {
        let envelope = pump_envelope(p1, w) * pump_envelope(p2, sum - w);
        match fiber.beta(w).and_then(|a| Ok(a + fiber.beta(sum - w)?)) {
            Ok(pumps) => phase_kernel(half_l * (pumps - signal_idler)) * envelope,
            Err(e) => {
                failure.get_or_insert(e);
                Complex64::new(0.0, 0.0)
            }
        }
    };
    let out = integrate_1d(integrand, lo, hi, &source.config().quadrature);
    if let Some(e) = failure {
        return Err(e);
    }
    let out = out.map_err(|e| e.into_error(Some(Axis::Inner)))?;
    Ok(out.value * jsa_prefactor(source))
}

/// Fixed quadrature rule for the pump integral at one value of ω_s + ω_i.
/// Holds weights `A_j` (envelopes times Gauss weights) and pump phases
/// `P_j = β(ω_j) + β(Ω − ω_j)`, so that the amplitude at any signal-idler
/// split costs one pass over the nodes.
#[derive(Debug, Clone)]
pub struct PumpRule {
    pub omega_sum: f64,
    weights: Vec<f64>,
    /// `P_j − γ1P1 − γ2P2 − reference`, kept small to preserve phase accuracy.
    phases: Vec<f64>,
    rotors: Vec<Complex64>,
    reference: f64,
    prefactor: f64,
    half_length: f64,
}

/// Minimum and scaling of the number of panels per oscillation of the
/// pump phase across the window.
const MIN_PANELS: usize = 4;
const PANELS_PER_PERIOD: f64 = 1.0;
const RULE_ORDER: usize = 16;
const RULE_HALF_WIDTH: f64 = 6.0;

impl PumpRule {
    pub fn new(source: &Source, omega_sum: f64) -> Result<Self> {
        Self::with_refinement(source, omega_sum, 1)
    }

    /// As `new`, with `refine` times as many panels.
    pub fn with_refinement(source: &Source, omega_sum: f64, refine: usize) -> Result<Self> {
        let (p1, p2) = source.pumps();
        if p1.is_cw() || p2.is_cw() {
            return Err(Error::Monochromatic("the pump rule needs pulsed pumps"));
        }
        let fiber = source.fiber();
        let (center, width) = product_center(source, omega_sum);
        let (a, b) = (center - RULE_HALF_WIDTH * width, center + RULE_HALF_WIDTH * width);
        let phase = |w: f64| -> Result<f64> { Ok(fiber.beta(w)? + fiber.beta(omega_sum - w)?) };
        // Spread of the pump phase across the window sets the node density.
        let probes = 16;
        let mut pmin = f64::INFINITY;
        let mut pmax = f64::NEG_INFINITY;
        for k in 0..=probes {
            let p = phase(a + (b - a) * k as f64 / probes as f64)?;
            pmin = pmin.min(p);
            pmax = pmax.max(p);
        }
        let periods = source.length() * (pmax - pmin) / (2.0 * PI);
        let panels = ((periods * PANELS_PER_PERIOD).ceil() as usize).max(MIN_PANELS) * refine.max(1);
        let rule = GaussLegendre::new(RULE_ORDER);
        let mut weights = Vec::with_capacity(panels * RULE_ORDER);
        let mut phases = Vec::with_capacity(panels * RULE_ORDER);
        let h = (b - a) / panels as f64;
        for k in 0..panels {
            let (pa, pb) = (a + h * k as f64, a + h * (k + 1) as f64);
            for (w, gw) in rule.mapped(pa, pb) {
                let env = pump_envelope(p1, w) * pump_envelope(p2, omega_sum - w);
                weights.push(gw * env);
                phases.push(phase(w)?);
            }
        }
        let reference = phase(center)? - source.nonlinear_shift();
        let length = source.length();
        for p in &mut phases {
            *p -= reference + source.nonlinear_shift();
        }
        let rotors = phases.iter().map(|&p| Complex64::from_polar(1.0, length * p)).collect();
        Ok(Self {
            omega_sum,
            weights,
            phases,
            rotors,
            reference,
            prefactor: jsa_prefactor(source),
            half_length: 0.5 * length,
        })
    }

    pub fn nodes(&self) -> usize {
        self.weights.len()
    }

    /// Amplitude at signal-idler propagation constant sum `q = β(ω_s) + β(ω_i)`.
    pub fn amplitude(&self, q: f64) -> Complex64 {
        let q = q - self.reference;
        let turn = Complex64::from_polar(1.0, -2.0 * self.half_length * q);
        let mut acc = Complex64::new(0.0, 0.0);
        for ((w, p), r) in self.weights.iter().zip(&self.phases).zip(&self.rotors) {
            let x = self.half_length * (p - q);
            let kernel = if x.abs() < 0.5 {
                phase_kernel(x)
            } else {
                // (e^{2ix} − 1) / (2ix)
                let z = r * turn - 1.0;
                Complex64::new(z.im, -z.re) / (2.0 * x)
            };
            acc += kernel * *w;
        }
        acc * self.prefactor
    }
}

/// Rectangular window in (ω_s, ω_i), rad/s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralWindow {
    pub omega_s: (f64, f64),
    pub omega_i: (f64, f64),
}

/// JSA samples on a rectangular grid; `amplitude[row s][column i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointSpectrumGrid {
    pub omega_s: Vec<f64>,
    pub omega_i: Vec<f64>,
    pub amplitude: Vec<Vec<Complex64>>,
}

impl JointSpectrumGrid {
    /// Row and column of the largest |f|.
    pub fn argmax(&self) -> (usize, usize) {
        let mut best = (0, 0, f64::NEG_INFINITY);
        for (r, row) in self.amplitude.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                if v.norm() > best.2 {
                    best = (r, c, v.norm());
                }
            }
        }
        (best.0, best.1)
    }
}

/// Default grid window around the phase-matched centre: the ridge of
/// Δk = 0 clipped by the pump envelope, and at least a few sinc widths.
pub fn default_window(source: &Source, center: &PhasematchCenter) -> Result<SpectralWindow> {
    let (p1, p2) = source.pumps();
    let fiber = source.fiber();
    let b1p = fiber.beta1(source.pump_sum() - p1.omega)?;
    let gs = b1p - fiber.beta1(center.omega_s)?;
    let gi = b1p - fiber.beta1(center.omega_i)?;
    let grad = gs.hypot(gi);
    let sigma_sum = p1.sigma.hypot(p2.sigma);
    let sinc_half = 6.0 / (source.length() * grad.max(f64::MIN_POSITIVE));
    let tilt = (gi - gs).abs().max(grad * 1e-3);
    let reach = |g: f64| (3.0 * sigma_sum * g.abs() / tilt).min(20.0 * sigma_sum);
    let half_s = sinc_half.max(reach(gi)).max(3.0 * p1.sigma.min(p2.sigma));
    let half_i = sinc_half.max(reach(gs)).max(3.0 * p1.sigma.min(p2.sigma));
    Ok(SpectralWindow {
        omega_s: (center.omega_s - half_s, center.omega_s + half_s),
        omega_i: (center.omega_i - half_i, center.omega_i + half_i),
    })
}

/// JSA on an `n_s × n_i` grid, row-major. Uses the default window around
/// the outer, signal-above centre when `window` is `None`.
pub fn jsa_grid(source: &Source, window: Option<SpectralWindow>, n_s: usize, n_i: usize) -> Result<JointSpectrumGrid> {
    let window = match window {
        Some(w) => w,
        None => default_window(source, &source.phasematch_center(Branch::Outer, Side::SignalAbove)?)?,
    };
    let axis = |(a, b): (f64, f64), n: usize| -> Vec<f64> {
        let n = n.max(2);
        (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect()
    };
    let omega_s = axis(window.omega_s, n_s);
    let omega_i = axis(window.omega_i, n_i);
    let mut amplitude = Vec::with_capacity(omega_s.len());
    for &ws in &omega_s {
        let mut row = Vec::with_capacity(omega_i.len());
        for &wi in &omega_i {
            row.push(jsa(ws, wi, source)?);
        }
        amplitude.push(row);
    }
    Ok(JointSpectrumGrid {
        omega_s,
        omega_i,
        amplitude,
    })
}
