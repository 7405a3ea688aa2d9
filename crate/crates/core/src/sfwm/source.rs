use crate::constants::{omega_from_wavelength, wavelength_from_omega};
use crate::dispersion::{gamma_pump, Dispersion, Fiber, FiberSpec, TABLE_BAND};
use crate::error::{Error, Result};
use crate::numerics::{find_all_roots, QuadratureSpec};

use super::pump::{peak_power, PumpSpec};

/// Fiber, both pumps and the quadrature settings: the unit of work.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceConfig {
    pub fiber: FiberSpec,
    pub pump1: PumpSpec,
    pub pump2: PumpSpec,
    pub quadrature: QuadratureSpec,
    pub degenerate: bool,
}

impl SourceConfig {
    /// Both pump photons drawn from one field.
    pub fn degenerate(fiber: FiberSpec, pump: PumpSpec) -> Self {
        Self {
            fiber,
            pump1: pump,
            pump2: pump,
            quadrature: QuadratureSpec::default(),
            degenerate: true,
        }
    }

    pub fn non_degenerate(fiber: FiberSpec, pump1: PumpSpec, pump2: PumpSpec) -> Self {
        Self {
            fiber,
            pump1,
            pump2,
            quadrature: QuadratureSpec::default(),
            degenerate: pump1 == pump2,
        }
    }

    pub fn is_cw(&self) -> bool {
        self.pump1.is_cw() && self.pump2.is_cw()
    }

    pub fn validate(&self) -> Result<()> {
        self.fiber.validate()?;
        self.pump1.validate()?;
        self.pump2.validate()?;
        self.quadrature.validate()?;
        if self.degenerate && self.pump1 != self.pump2 {
            return Err(Error::InvalidParameter("degenerate pumps must be identical".into()));
        }
        if self.pump1.is_cw() != self.pump2.is_cw() {
            return Err(Error::InvalidParameter(
                "mixing a monochromatic and a pulsed pump is not supported".into(),
            ));
        }
        if let (Some(a), Some(b)) = (self.pump1.rep_rate, self.pump2.rep_rate) {
            if !self.is_cw() && a != b {
                return Err(Error::InvalidParameter(
                    "both pulsed pumps must share one repetition rate".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Which Δk = 0 solution to take: farthest from or nearest to the pumps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Branch {
    #[default]
    Outer,
    Inner,
}

/// Whether the signal photon is the one above or below the mean pump frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Side {
    #[default]
    SignalAbove,
    SignalBelow,
}

/// Perfectly phase-matched signal and idler carriers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasematchCenter {
    pub omega_s: f64,
    pub omega_i: f64,
    /// Δk at the returned pair, 1/m.
    pub residual: f64,
}

/// A validated configuration with its fiber table and pump-derived
/// nonlinear quantities.
#[derive(Debug, Clone)]
pub struct Source {
    config: SourceConfig,
    fiber: Fiber,
    gamma_pumps: (f64, f64),
    powers: (f64, f64),
}

const SCAN_POINTS: usize = 4000;

impl Source {
    pub fn new(config: SourceConfig) -> Result<Self> {
        config.validate()?;
        let fiber = Fiber::new(config.fiber.clone())?;
        Self::assemble(config, fiber)
    }

    /// Reuses this source's fiber table for a different configuration of
    /// the same fiber geometry and dispersion model.
    pub fn with_config(&self, config: SourceConfig) -> Result<Self> {
        config.validate()?;
        let same = config.fiber.core_radius == self.config.fiber.core_radius
            && config.fiber.air_fill_fraction == self.config.fiber.air_fill_fraction
            && config.fiber.model == self.config.fiber.model;
        if !same {
            return Self::new(config);
        }
        let fiber = self.fiber.with_length(config.fiber.length)?;
        Self::assemble(config, fiber)
    }

    pub fn with_length(&self, length: f64) -> Result<Self> {
        let mut config = self.config.clone();
        config.fiber.length = length;
        self.with_config(config)
    }

    pub fn with_pumps(&self, pump1: PumpSpec, pump2: PumpSpec) -> Result<Self> {
        let mut config = self.config.clone();
        config.pump1 = pump1;
        config.pump2 = pump2;
        config.degenerate = self.config.degenerate && pump1 == pump2;
        self.with_config(config)
    }

    fn assemble(config: SourceConfig, fiber: Fiber) -> Result<Self> {
        let g1 = gamma_pump(&config.fiber, config.pump1.omega)?;
        let g2 = if config.pump2.omega == config.pump1.omega {
            g1
        } else {
            gamma_pump(&config.fiber, config.pump2.omega)?
        };
        let power = |p: &PumpSpec| if p.is_cw() { Ok(p.avg_power) } else { peak_power(p) };
        let powers = (power(&config.pump1)?, power(&config.pump2)?);
        Ok(Self {
            config,
            fiber,
            gamma_pumps: (g1, g2),
            powers,
        })
    }

    pub fn config(&self) -> &SourceConfig {
        &self.config
    }

    pub fn fiber(&self) -> &Fiber {
        &self.fiber
    }

    pub fn length(&self) -> f64 {
        self.config.fiber.length
    }

    pub fn pumps(&self) -> (&PumpSpec, &PumpSpec) {
        (&self.config.pump1, &self.config.pump2)
    }

    /// Self-phase coefficients of the two pumps, 1/(W m).
    pub fn gamma_pumps(&self) -> (f64, f64) {
        self.gamma_pumps
    }

    /// Peak powers for pulsed pumps, average powers for monochromatic ones.
    pub fn powers(&self) -> (f64, f64) {
        self.powers
    }

    /// Nonlinear phase term `gamma_1 P_1 + gamma_2 P_2`.
    pub fn nonlinear_shift(&self) -> f64 {
        self.gamma_pumps.0 * self.powers.0 + self.gamma_pumps.1 * self.powers.1
    }

    pub fn pump_sum(&self) -> f64 {
        self.config.pump1.omega + self.config.pump2.omega
    }

    /// Frequency band (rad/s) in which signal and idler are searched.
    pub fn band(&self) -> (f64, f64) {
        (omega_from_wavelength(TABLE_BAND.1), omega_from_wavelength(TABLE_BAND.0))
    }

    /// Δk = β(ω) + β(ω_s + ω_i − ω) − β(ω_s) − β(ω_i) − (γ1 P1 + γ2 P2).
    pub fn phase_mismatch(&self, omega: f64, omega_s: f64, omega_i: f64) -> Result<f64> {
        let f = &self.fiber;
        let pumps = f.beta(omega)? + f.beta(omega_s + omega_i - omega)?;
        Ok(pumps - f.beta(omega_s)? - f.beta(omega_i)? - self.nonlinear_shift())
    }

    /// Δk with both pumps at their carriers and ω_i = ω1° + ω2° − ω_s.
    pub fn carrier_mismatch(&self, omega_s: f64) -> Result<f64> {
        self.phase_mismatch(self.config.pump1.omega, omega_s, self.pump_sum() - omega_s)
    }

    /// Half-width (rad/s) of the region around a pump that is never
    /// reported as a phase-matched signal or idler.
    pub fn exclusion(&self, pump: &PumpSpec) -> f64 {
        (3.0 * pump.sigma).max(1e-3 * pump.omega)
    }

    fn excluded(&self, omega: f64) -> bool {
        let (p1, p2) = self.pumps();
        [p1, p2].iter().any(|p| (omega - p.omega).abs() < self.exclusion(p))
    }

    /// All signal frequencies on `side` with Δk = 0 at the pump carriers,
    /// ordered by distance from the mean pump frequency.
    pub fn phasematch_roots(&self, side: Side) -> Result<Vec<f64>> {
        let (lo, hi) = self.band();
        let sum = self.pump_sum();
        let mean = 0.5 * sum;
        let far = (hi - mean).min(mean - lo);
        if !(far > 0.0) {
            return Err(self.no_phasematch(mean, mean, "mean pump frequency outside the modelled band"));
        }
        let sign = match side {
            Side::SignalAbove => 1.0,
            Side::SignalBelow => -1.0,
        };
        let detuning = |d: f64| self.carrier_mismatch(mean + sign * d).unwrap_or(f64::NAN);
        let roots = find_all_roots(detuning, 0.0, far, SCAN_POINTS, 1e-12 * mean);
        Ok(roots
            .into_iter()
            .filter(|&d| d > 0.0)
            .map(|d| mean + sign * d)
            .filter(|&ws| !self.excluded(ws) && !self.excluded(sum - ws))
            .collect())
    }

    fn no_phasematch(&self, a: f64, b: f64, reason: &str) -> Error {
        let (l1, l2) = (wavelength_from_omega(a) * 1e6, wavelength_from_omega(b) * 1e6);
        Error::NoPhasematch {
            lo_um: l1.min(l2),
            hi_um: l1.max(l2),
            reason: reason.into(),
        }
    }

    /// Phase-matched carriers on the requested branch and side.
    pub fn phasematch_center(&self, branch: Branch, side: Side) -> Result<PhasematchCenter> {
        let roots = self.phasematch_roots(side)?;
        let sum = self.pump_sum();
        let (lo, hi) = self.band();
        let scanned = match side {
            Side::SignalAbove => (0.5 * sum, hi.min(sum - lo)),
            Side::SignalBelow => ((sum - hi).max(lo), 0.5 * sum),
        };
        let pick = match branch {
            Branch::Outer => roots.last(),
            Branch::Inner if roots.len() >= 2 => roots.first(),
            Branch::Inner => None,
        };
        let omega_s = match pick {
            Some(&w) => w,
            None if roots.is_empty() => {
                return Err(self.no_phasematch(scanned.0, scanned.1, "no sign change of the phase mismatch"))
            }
            None => {
                return Err(self.no_phasematch(scanned.0, scanned.1, "only one solution, no inner branch"))
            }
        };
        let omega_i = sum - omega_s;
        Ok(PhasematchCenter {
            omega_s,
            omega_i,
            residual: self.carrier_mismatch(omega_s)?,
        })
    }

    /// h(ω_s, ω_i) = ω_s ω_i β1(ω_s) β1(ω_i) / (n²(ω_s) n²(ω_i)).
    pub fn h_function(&self, omega_s: f64, omega_i: f64) -> Result<f64> {
        h_function(omega_s, omega_i, &self.fiber)
    }
}

/// h(ω_s, ω_i) = ω_s ω_i β1(ω_s) β1(ω_i) / (n²(ω_s) n²(ω_i)) with the mode effective index n.
pub fn h_function(omega_s: f64, omega_i: f64, fiber: &impl Dispersion) -> Result<f64> {
    let ns = fiber.effective_index(omega_s)?;
    let ni = fiber.effective_index(omega_i)?;
    Ok(omega_s * omega_i * fiber.beta1(omega_s)? * fiber.beta1(omega_i)? / (ns * ns * ni * ni))
}

/// Δk of one configuration at pump frequency `omega` and signal/idler `omega_s`, `omega_i`.
pub fn phase_mismatch(omega: f64, omega_s: f64, omega_i: f64, source: &Source) -> Result<f64> {
    source.phase_mismatch(omega, omega_s, omega_i)
}

pub fn solve_phasematch_center(source: &Source, branch: Branch, side: Side) -> Result<PhasematchCenter> {
    source.phasematch_center(branch, side)
}
