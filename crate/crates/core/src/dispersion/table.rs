use std::sync::Arc;

use crate::constants::omega_from_wavelength;
use crate::error::Result;
use crate::numerics::Chebyshev;

use super::fiber::{Dispersion, DispersionModel, FiberSpec};

/// Wavelength band (m) covered by the interpolation table.
pub const TABLE_BAND: (f64, f64) = (0.35e-6, 2.6e-6);

const SEGMENT_RATIO: f64 = 1.08;
const NODES: usize = 22;

/// Piecewise Chebyshev interpolant of beta over a frequency band, with
/// beta_1 and beta_2 from the derivative series.
#[derive(Debug, Clone)]
pub struct DispersionTable {
    omega_lo: f64,
    log_ratio: f64,
    segments: Vec<Chebyshev>,
}

impl DispersionTable {
    pub fn build(fiber: &FiberSpec, omega_lo: f64, omega_hi: f64) -> Result<Self> {
        let log_ratio = SEGMENT_RATIO.ln();
        let count = ((omega_hi / omega_lo).ln() / log_ratio).ceil().max(1.0) as usize;
        let mut segments = Vec::with_capacity(count);
        for s in 0..count {
            let a = omega_lo * (log_ratio * s as f64).exp();
            let b = omega_lo * (log_ratio * (s + 1) as f64).exp();
            let nodes = Chebyshev::nodes(a, b, NODES);
            let mut values = Vec::with_capacity(NODES);
            for &w in &nodes {
                values.push(fiber.beta(w)?);
            }
            segments.push(Chebyshev::from_values(a, b, &values));
        }
        Ok(Self {
            omega_lo,
            log_ratio,
            segments,
        })
    }

    pub fn omega_range(&self) -> (f64, f64) {
        (self.segments[0].domain().0, self.segments[self.segments.len() - 1].domain().1)
    }

    fn segment(&self, omega: f64) -> Option<&Chebyshev> {
        let (lo, hi) = self.omega_range();
        if !(omega >= lo && omega <= hi) {
            return None;
        }
        let idx = ((omega / self.omega_lo).ln() / self.log_ratio).floor().max(0.0) as usize;
        self.segments.get(idx.min(self.segments.len() - 1))
    }
}

/// A fiber with a cached dispersion table. Outside the table band, and for
/// Taylor models, evaluation falls back to the direct path.
#[derive(Debug, Clone)]
pub struct Fiber {
    spec: FiberSpec,
    table: Option<Arc<DispersionTable>>,
}

impl Fiber {
    pub fn new(spec: FiberSpec) -> Result<Self> {
        spec.validate()?;
        let table = match spec.model {
            DispersionModel::StepIndexPcf => {
                let lo = omega_from_wavelength(TABLE_BAND.1);
                let hi = omega_from_wavelength(TABLE_BAND.0);
                Some(Arc::new(DispersionTable::build(&spec, lo, hi)?))
            }
            DispersionModel::Taylor(_) => None,
        };
        Ok(Self { spec, table })
    }

    pub fn spec(&self) -> &FiberSpec {
        &self.spec
    }

    pub fn length(&self) -> f64 {
        self.spec.length
    }

    /// Same dispersion, different length; the table is shared.
    pub fn with_length(&self, length: f64) -> Result<Self> {
        let spec = self.spec.with_length(length);
        spec.validate()?;
        Ok(Self {
            spec,
            table: self.table.clone(),
        })
    }

    fn cached(&self, omega: f64) -> Option<&Chebyshev> {
        self.table.as_ref().and_then(|t| t.segment(omega))
    }
}

impl Dispersion for Fiber {
    fn beta(&self, omega: f64) -> Result<f64> {
        match self.cached(omega) {
            Some(c) => Ok(c.value(omega)),
            None => self.spec.beta(omega),
        }
    }

    fn beta1(&self, omega: f64) -> Result<f64> {
        match self.cached(omega) {
            Some(c) => Ok(c.first_derivative(omega)),
            None => self.spec.beta1(omega),
        }
    }

    fn beta2(&self, omega: f64) -> Result<f64> {
        match self.cached(omega) {
            Some(c) => Ok(c.second_derivative(omega)),
            None => self.spec.beta2(omega),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_matches_direct_path() {
        let spec = FiberSpec::step_index(0.97e-6, 0.91, 1.0);
        let fiber = Fiber::new(spec.clone()).unwrap();
        for &l in &[0.36, 0.521, 0.5759, 0.708, 0.9185, 1.042, 1.6, 2.5] {
            let w = omega_from_wavelength(l * 1e-6);
            let (b, bt) = (spec.beta(w).unwrap(), fiber.beta(w).unwrap());
            assert!((b - bt).abs() < 1e-6, "beta at {l}: {b} vs {bt}");
            let (b1, b1t) = (spec.beta1(w).unwrap(), fiber.beta1(w).unwrap());
            assert!(((b1 - b1t) / b1).abs() < 1e-9, "beta1 at {l}: {b1} vs {b1t}");
            let (b2, b2t) = (spec.beta2(w).unwrap(), fiber.beta2(w).unwrap());
            assert!((b2 - b2t).abs() < 1e-4 * b2.abs().max(1e-27), "beta2 at {l}: {b2} vs {b2t}");
        }
    }

    #[test]
    fn falls_back_outside_band() {
        let spec = FiberSpec::step_index(0.5e-6, 0.6, 1.0);
        let fiber = Fiber::new(spec.clone()).unwrap();
        let w = omega_from_wavelength(3.0e-6);
        assert_eq!(fiber.beta(w).unwrap(), spec.beta(w).unwrap());
    }
}
