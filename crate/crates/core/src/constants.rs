//! SI constants.

/// Speed of light in vacuum, m/s.
pub const C: f64 = 299_792_458.0;

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Angular frequency (rad/s) of a vacuum wavelength in meters.
pub fn omega_from_wavelength(lambda_m: f64) -> f64 {
    2.0 * std::f64::consts::PI * C / lambda_m
}

/// Vacuum wavelength (m) of an angular frequency in rad/s.
pub fn wavelength_from_omega(omega: f64) -> f64 {
    2.0 * std::f64::consts::PI * C / omega
}
