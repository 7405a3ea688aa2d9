//! Four-wave-mixing physics: pumps, phase mismatch, phase-matched
//! carriers, the h-function and the joint spectral amplitude.

mod jsa;
mod pump;
mod source;

pub use jsa::{
    default_window, jsa, jsa_grid, phase_kernel, JointSpectrumGrid, PumpRule, SpectralWindow,
};
pub(crate) use jsa::product_center;
pub use pump::{bandwidth_fwhm_wavelength, peak_power, photons_per_pulse, pump_envelope, PumpSpec};
pub use source::{
    h_function, phase_mismatch, solve_phasematch_center, Branch, PhasematchCenter, Side, Source, SourceConfig,
};
