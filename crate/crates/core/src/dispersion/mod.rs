//! Fiber dispersion: silica index, fundamental-mode solver, propagation
//! constant and derivatives, zero-dispersion wavelengths, effective area
//! and nonlinear coefficients.

mod fiber;
mod mode;
mod nonlinear;
mod silica;
mod table;

pub use fiber::{
    effective_index, find_zero_dispersion, Dispersion, DispersionModel, FiberSpec, TaylorDispersion, DEFAULT_N2,
    STENCIL,
};
pub use mode::{cladding_index, effective_area, solve_fundamental, transverse_overlap, ModeProfile, ModeSolution};
pub use nonlinear::{gamma_pump, gamma_sfwm, nonlinear_parameters, NonlinearParameters};
pub use silica::{silica_index, silica_index_um, SELLMEIER_RANGE_UM};
pub use table::{DispersionTable, Fiber, TABLE_BAND};

/// Propagation constant at `omega` (1/m).
pub fn beta(omega: f64, fiber: &impl Dispersion) -> crate::Result<f64> {
    fiber.beta(omega)
}

/// Inverse group velocity at `omega` (s/m).
pub fn beta1(omega: f64, fiber: &impl Dispersion) -> crate::Result<f64> {
    fiber.beta1(omega)
}

/// Group-velocity dispersion at `omega` (s²/m).
pub fn beta2(omega: f64, fiber: &impl Dispersion) -> crate::Result<f64> {
    fiber.beta2(omega)
}

/// Normalized fundamental-mode profile at `omega`.
pub fn mode_profile(omega: f64, fiber: &FiberSpec) -> crate::Result<ModeProfile> {
    fiber.mode_profile(omega)
}
