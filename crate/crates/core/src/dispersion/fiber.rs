use crate::constants::{C, omega_from_wavelength};
use crate::error::{Error, Result};
use crate::numerics::{find_root, try_derivative_step, try_second_derivative_step, RootBracket};

use super::mode::{solve_fundamental, ModeProfile, ModeSolution};

/// Kerr coefficient of fused silica, m²/W.
pub const DEFAULT_N2: f64 = 2.6e-20;

/// Relative stencil spacing for frequency derivatives of beta.
pub const STENCIL: f64 = 1e-4;

/// Polynomial propagation constant `beta(w) = sum_n beta_n (w - w_ref)^n / n!`.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorDispersion {
    pub reference_frequency: f64,
    /// beta_0 .. beta_n in s^n/m.
    pub beta_coefficients: Vec<f64>,
}

impl TaylorDispersion {
    pub fn new(reference_frequency: f64, beta_coefficients: Vec<f64>) -> Result<Self> {
        if !(reference_frequency > 0.0) || !reference_frequency.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "Taylor reference frequency must be positive, got {reference_frequency}"
            )));
        }
        if beta_coefficients.len() < 2 {
            return Err(Error::InvalidParameter("Taylor model needs at least beta_0 and beta_1".into()));
        }
        if beta_coefficients.iter().any(|b| !b.is_finite()) {
            return Err(Error::InvalidParameter("Taylor coefficients must be finite".into()));
        }
        Ok(Self {
            reference_frequency,
            beta_coefficients,
        })
    }

    /// Derivative of order `order` of the polynomial at `omega`.
    pub fn derivative(&self, omega: f64, order: usize) -> f64 {
        let x = omega - self.reference_frequency;
        let coeffs = &self.beta_coefficients;
        if order >= coeffs.len() {
            return 0.0;
        }
        // Horner on sum_k c_{k+order} x^k / k!
        let mut acc = 0.0;
        for k in (0..coeffs.len() - order).rev() {
            acc = acc * x / (k + 1) as f64 + coeffs[k + order];
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DispersionModel {
    /// Step-index reduction of the photonic crystal fiber.
    StepIndexPcf,
    Taylor(TaylorDispersion),
}

/// Fiber geometry, length, nonlinearity and dispersion model. Lengths in metres.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberSpec {
    pub core_radius: f64,
    pub air_fill_fraction: f64,
    pub length: f64,
    pub n2: f64,
    pub model: DispersionModel,
}

impl FiberSpec {
    pub fn step_index(core_radius: f64, air_fill_fraction: f64, length: f64) -> Self {
        Self {
            core_radius,
            air_fill_fraction,
            length,
            n2: DEFAULT_N2,
            model: DispersionModel::StepIndexPcf,
        }
    }

    pub fn with_length(&self, length: f64) -> Self {
        Self { length, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str, v: f64| Err(Error::InvalidParameter(format!("{what} = {v}")));
        if !(self.core_radius > 0.0) || !self.core_radius.is_finite() {
            return bad("core radius must be positive; got", self.core_radius);
        }
        if !(self.air_fill_fraction > 0.0 && self.air_fill_fraction < 1.0) {
            return bad("air-fill fraction must lie in (0, 1); got", self.air_fill_fraction);
        }
        if !(self.length > 0.0) || !self.length.is_finite() {
            return bad("fiber length must be positive; got", self.length);
        }
        if !(self.n2 > 0.0) || !self.n2.is_finite() {
            return bad("n2 must be positive; got", self.n2);
        }
        Ok(())
    }

    /// Mode solution of the step-index geometry at `omega`.
    pub fn mode(&self, omega: f64) -> Result<ModeSolution> {
        solve_fundamental(omega, self.core_radius, self.air_fill_fraction)
    }

    /// Normalized fundamental-mode profile at `omega`. Taylor-model fibers
    /// still use their geometric step-index profile.
    pub fn mode_profile(&self, omega: f64) -> Result<ModeProfile> {
        Ok(ModeProfile::from_solution(&self.mode(omega)?))
    }
}

/// Propagation constant and its frequency derivatives.
pub trait Dispersion {
    fn beta(&self, omega: f64) -> Result<f64>;
    fn beta1(&self, omega: f64) -> Result<f64>;
    fn beta2(&self, omega: f64) -> Result<f64>;

    /// Mode effective index `beta c / omega`.
    fn effective_index(&self, omega: f64) -> Result<f64> {
        Ok(self.beta(omega)? * C / omega)
    }
}

/// Direct evaluation: one eigenvalue solve per beta, finite differences
/// with spacing `STENCIL * omega` for the derivatives.
impl Dispersion for FiberSpec {
    fn beta(&self, omega: f64) -> Result<f64> {
        match &self.model {
            DispersionModel::StepIndexPcf => Ok(self.mode(omega)?.beta()),
            DispersionModel::Taylor(t) => Ok(t.derivative(omega, 0)),
        }
    }

    fn beta1(&self, omega: f64) -> Result<f64> {
        match &self.model {
            DispersionModel::StepIndexPcf => try_derivative_step(|w| self.beta(w), omega, STENCIL * omega),
            DispersionModel::Taylor(t) => Ok(t.derivative(omega, 1)),
        }
    }

    fn beta2(&self, omega: f64) -> Result<f64> {
        match &self.model {
            DispersionModel::StepIndexPcf => try_second_derivative_step(|w| self.beta(w), omega, STENCIL * omega),
            DispersionModel::Taylor(t) => Ok(t.derivative(omega, 2)),
        }
    }
}

/// Mode effective index at `omega`, `beta / (omega / c)`.
pub fn effective_index(omega: f64, fiber: &FiberSpec) -> Result<f64> {
    fiber.effective_index(omega)
}

/// Zero-dispersion wavelengths (m) of `fiber` in `[lambda_lo, lambda_hi]`, ascending.
pub fn find_zero_dispersion(fiber: &impl Dispersion, lambda_lo: f64, lambda_hi: f64) -> Result<Vec<f64>> {
    if !(lambda_lo > 0.0 && lambda_lo < lambda_hi) {
        return Err(Error::InvalidParameter(format!(
            "wavelength range [{lambda_lo}, {lambda_hi}] is empty"
        )));
    }
    let n = 240;
    let lambdas: Vec<f64> = (0..=n)
        .map(|k| lambda_lo + (lambda_hi - lambda_lo) * k as f64 / n as f64)
        .collect();
    let b2 = |l: f64| fiber.beta2(omega_from_wavelength(l));
    let mut values = Vec::with_capacity(lambdas.len());
    for &l in &lambdas {
        values.push(b2(l)?);
    }
    let mut roots = Vec::new();
    for k in 0..n {
        let (l0, l1, f0, f1) = (lambdas[k], lambdas[k + 1], values[k], values[k + 1]);
        if f0 == 0.0 {
            roots.push(l0);
            continue;
        }
        if f0 * f1 < 0.0 {
            let g = |l: f64| b2(l).unwrap_or(f64::NAN);
            let bracket = RootBracket::new(l0, l1, f0, f1)?;
            roots.push(find_root(g, bracket, 1e-15)?);
        }
    }
    if values[n] == 0.0 {
        roots.push(lambdas[n]);
    }
    Ok(roots)
}
